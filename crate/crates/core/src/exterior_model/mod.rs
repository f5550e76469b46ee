//! Super-exterior-algebra model of the abelian motive: `h¹(A)` is the odd
//! symplectic space `V = ℚ^{2g}` and `h(A^m) = Λ(V^{⊕m})`.

mod exterior;
mod invariants;
mod realize;

pub use exterior::{
    full_mask, mask_indices, masks_of_degree, pairing_matrix, poincare_pair, pullback_monomial, volume_sign,
    wedge_sign, ExteriorVector, Mask,
};
pub use invariants::{
    apply_operator, is_invariant, lowering_operators, raising_operators, sp_invariants, symplectic_class, LieOperator,
};
pub use realize::{omega_matrix, GeneratorSpace, Realization, RealizedMap, SpaceLabel};

use crate::chow_theory::HomMatrix;
use crate::exact_linalg::{pfaffian, to_i64, RationalMatrix, Scalar};
use crate::karoubi_kimura::FormalObject;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `ℚ^{2g}` with basis `e_1..e_g, f_1..f_g` and `ω(e_i, f_i) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    pub g: usize,
}

impl SymplecticSpace {
    pub fn new(g: usize) -> Self {
        SymplecticSpace { g }
    }

    pub fn omega(&self) -> RationalMatrix {
        omega_matrix(self.g)
    }

    /// `ω` in the volume order `e_1, f_1, …, e_g, f_g`.
    pub fn omega_volume_order(&self) -> RationalMatrix {
        let perm: Vec<usize> = (0..self.g).flat_map(|i| [i, self.g + i]).collect();
        let w = self.omega();
        let mut out = RationalMatrix::zeros(2 * self.g, 2 * self.g);
        for (a, &pa) in perm.iter().enumerate() {
            for (b, &pb) in perm.iter().enumerate() {
                out.set(a, b, w.get(pa, pb));
            }
        }
        out
    }

    /// Pfaffian of `ω` in the volume order; equals 1.
    pub fn pfaffian(&self) -> Scalar {
        pfaffian(&self.omega_volume_order()).expect("ω is skew of even size")
    }

    pub fn basis_name(&self, local: usize) -> String {
        if local < self.g {
            format!("e{}", local + 1)
        } else {
            format!("f{}", local - self.g + 1)
        }
    }
}

/// Matrix of `f_*: Λ^d(V^{⊕n}) → Λ^{d+2g(m−n)}(V^{⊕m})` on monomial bases in increasing order.
pub fn pushforward_matrix(g: usize, f: &HomMatrix, d: usize) -> Result<RealizedMap, ExteriorError> {
    let (n, m) = (f.cols(), f.rows());
    let target = d as i64 + 2 * g as i64 * (m as i64 - n as i64);
    if d > 2 * g * n || target < 0 || target as usize > 2 * g * m {
        return Err(ExteriorError::Mismatch(format!(
            "degree {d} has no pushforward along {f}"
        )));
    }
    let target = target as usize;
    let src = masks_of_degree(2 * g * n, d);
    let dst = masks_of_degree(2 * g * m, target);
    let index: std::collections::HashMap<Mask, usize> = dst.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut mat = RationalMatrix::zeros(dst.len(), src.len());
    for (j, k) in src.iter().enumerate() {
        let img = ExteriorVector::monomial(g, n, *k, Scalar::from_integer(1.into())).pushforward(f)?;
        for (t, c) in img.terms() {
            mat.set(index[t], j, c.clone());
        }
    }
    Ok(RealizedMap {
        source: SpaceLabel::Exterior { m: n, degree: d },
        target: SpaceLabel::Exterior { m, degree: target },
        matrix: mat,
    })
}

/// Graded dimensions of the image of a formal object under `N ↦ V` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizedObject {
    pub even_dim: usize,
    pub odd_dim: usize,
    pub superdim: i64,
}

/// Realizes a formal object built from the single generator `N` of rank `-2g`.
pub fn realize_object(g: usize, obj: &FormalObject) -> Result<RealizedObject, ExteriorError> {
    if obj.word.0.iter().any(|l| l.gen != 0) {
        return Err(ExteriorError::Mismatch("only the generator N can be realized".into()));
    }
    let real = Realization::symplectic(g);
    let e = real.realize_diagram(&obj.idempotent)?.matrix;
    let dim = to_i64(&e.trace()).expect("idempotent trace is an integer") as usize;
    let odd = obj.word.len() % 2 == 1;
    Ok(RealizedObject {
        even_dim: if odd { 0 } else { dim },
        odd_dim: if odd { dim } else { 0 },
        superdim: if odd { -(dim as i64) } else { dim as i64 },
    })
}

#[cfg(test)]
mod tests;
