//! Exact categorical cycle calculus for powers of an abelian variety.
//!
//! The crate is layered bottom-up: [`exact_linalg`] supplies exact arithmetic,
//! [`diagram_cat`] the free rigid tensor category on rank-labelled generators,
//! [`karoubi_kimura`] idempotent completion with Kimura and Hopf machinery,
//! [`exterior_model`] a super-exterior-algebra realization, [`chow_theory`] the
//! numerical and square-zero deformed Chow models, and [`symdist`] the
//! symmetrically distinguished cycle tests built on top.

#![allow(clippy::needless_range_loop)]

pub mod chow_theory;
pub mod diagram_cat;
pub mod exact_linalg;
pub mod exterior_model;
pub mod karoubi_kimura;
pub mod symdist;
