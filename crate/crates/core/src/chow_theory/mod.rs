//! Chow theories on powers of an abelian variety: the numerical theory and
//! its square-zero deformations, with the correspondence calculus.

mod axioms;
mod class;
mod corr;
mod hom;
mod instance;

pub use axioms::{axiom_suite, beauville_check, projection_morphism_check, random_hom, random_iso, Report};
pub use class::CycleClass;
pub use corr::{corr_apply, corr_compose, corr_tensor, corr_transpose, duality_check};
pub use hom::HomMatrix;
pub use instance::{ChowInstance, DeformSpace, InstanceConfig, Mode, WConfig, MAX_BITS};

use crate::exterior_model::ExteriorError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChowError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}
