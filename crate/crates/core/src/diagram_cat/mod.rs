//! The free rigid symmetric ℚ-tensor category on rank-labelled generators,
//! realized as oriented matching diagrams with loop evaluation.

mod diagram;
mod morphism;
mod serial;
mod word;

pub use diagram::{edge_allowed, endpoint_letter, hom_basis, Diagram, EdgeKind};
pub use morphism::{Morphism, RigidCategory};
pub use serial::{format_diagram, format_morphism, parse_diagram, parse_morphism};
pub use word::{Generator, GeneratorTable, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod tests;

use rand::Rng;

use crate::exact_linalg::{int, Scalar};

/// Random combination of up to `terms` basis diagrams with small integer coefficients.
pub fn random_morphism<R: Rng>(rng: &mut R, src: &Word, dst: &Word, terms: usize) -> Morphism {
    let basis = hom_basis(src, dst);
    let mut out = Morphism::zero(src.clone(), dst.clone());
    if basis.is_empty() {
        return out;
    }
    for _ in 0..terms {
        let d = basis[rng.gen_range(0..basis.len())].clone();
        let c: Scalar = int(rng.gen_range(-3..=3));
        out = out.add(&Morphism::from_diagram_coeff(d, c)).expect("same shape");
    }
    out
}
