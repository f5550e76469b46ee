//! Karoubi envelope of the free rigid category with Tate twists, radicals and
//! their quotients, Kimura finiteness tests and the symmetric Hopf algebra.

mod hopf;
mod identities;
mod kimura;
mod object;
mod radical;

pub use hopf::{eigen_split, hopf_axiom_check, sym_hopf, HopfReport, HopfStructure, MorphismMatrix};
pub use identities::{incl_excl_sides, kimura_incl_excl_check, poscontr_identity_check, poscontr_sides, MultiPoly};
pub use kimura::{cayley_hamilton_check, is_negative, is_positive, Verdict};
pub use object::{antisymmetrizer, block_symmetry, ext_power, hom_space, rank, sym_power, symmetrizer, FormalObject};
pub use radical::{
    gram_matrix, in_radical, quotient_hom, radical_subspace, standard_realization_kills, QuotientSpace, QuotientSpec,
    RADICAL_GRAM_LIMIT,
};

use crate::diagram_cat::DiagramError;
use crate::exact_linalg::LinalgError;
use crate::exterior_model::ExteriorError;

#[derive(Debug, thiserror::Error)]
pub enum KaroubiError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("annihilation fails; residual has {0} nonzero terms")]
    Residual(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

#[cfg(test)]
mod tests;
