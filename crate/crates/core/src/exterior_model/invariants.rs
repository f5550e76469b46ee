use std::collections::BTreeMap;

use num_traits::One;

use super::exterior::{masks_of_degree, wedge_sign, ExteriorVector, Mask};
use crate::exact_linalg::{kernel_basis, RationalMatrix, Scalar};

/// A Chevalley generator of `sp_{2g}` as a map on `V`: list of `(from_local, to_local, sign)`.
#[derive(Clone, Debug)]
pub struct LieOperator {
    pub moves: Vec<(usize, usize, bool)>,
}

/// Raising operators `E_1..E_g` for `ω(e_i, f_i) = 1` (local indices `e_i = i`, `f_i = g + i`).
pub fn raising_operators(g: usize) -> Vec<LieOperator> {
    let mut ops = Vec::new();
    for i in 0..g.saturating_sub(1) {
        ops.push(LieOperator {
            moves: vec![(i + 1, i, false), (g + i, g + i + 1, true)],
        });
    }
    if g > 0 {
        ops.push(LieOperator {
            moves: vec![(2 * g - 1, g - 1, false)],
        });
    }
    ops
}

/// Lowering operators, the transposes of the raising ones.
pub fn lowering_operators(g: usize) -> Vec<LieOperator> {
    raising_operators(g)
        .into_iter()
        .map(|op| LieOperator {
            moves: op.moves.into_iter().map(|(a, b, s)| (b, a, s)).collect(),
        })
        .collect()
}

/// Action of a Lie operator, extended as a derivation to `Λ(V^{⊕m})`.
pub fn apply_operator(op: &LieOperator, x: &ExteriorVector) -> ExteriorVector {
    let (g, m) = (x.g(), x.m());
    let mut out = ExteriorVector::zero(g, m);
    for (mask, c) in x.terms() {
        for factor in 0..m {
            let base = factor * 2 * g;
            for &(from, to, neg) in &op.moves {
                let fb = 1u128 << (base + from);
                let tb = 1u128 << (base + to);
                if mask & fb == 0 {
                    continue;
                }
                let rest = mask & !fb;
                // replace x_from by x_to in place: move it to the front, swap, move back
                let Some(s1) = wedge_sign(fb, rest) else { continue };
                let Some(s2) = wedge_sign(tb, rest) else { continue };
                let v = if s1 ^ s2 ^ neg { -c.clone() } else { c.clone() };
                out.add_term(rest | tb, v);
            }
        }
    }
    out
}

/// Weight of a monomial: per `i`, the count of `e_i` minus the count of `f_i`.
fn weight(g: usize, m: usize, mask: Mask) -> Vec<i32> {
    let mut w = vec![0; g];
    for factor in 0..m {
        for i in 0..g {
            if mask >> (factor * 2 * g + i) & 1 == 1 {
                w[i] += 1;
            }
            if mask >> (factor * 2 * g + g + i) & 1 == 1 {
                w[i] -= 1;
            }
        }
    }
    w
}

/// Basis of `Λ^d(V^{⊕m})^{sp_{2g}}`: weight-zero vectors killed by all raising operators,
/// in reduced echelon form over increasing monomials.
pub fn sp_invariants(g: usize, m: usize, d: usize) -> Vec<ExteriorVector> {
    if d > 2 * g * m || d % 2 == 1 {
        return Vec::new();
    }
    let zero_weight: Vec<Mask> = masks_of_degree(2 * g * m, d)
        .into_iter()
        .filter(|&k| weight(g, m, k).iter().all(|&x| x == 0))
        .collect();
    let mut rows: BTreeMap<(usize, Mask), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (oi, op) in raising_operators(g).iter().enumerate() {
        for (j, &k) in zero_weight.iter().enumerate() {
            let img = apply_operator(op, &ExteriorVector::monomial(g, m, k, Scalar::one()));
            for (t, c) in img.terms() {
                let next = rows.len();
                let r = *rows.entry((oi, *t)).or_insert(next);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut mat = RationalMatrix::zeros(rows.len(), zero_weight.len());
    for (r, j, c) in entries {
        mat.add_to(r, j, &c);
    }
    let kernel = kernel_basis(&mat);
    // echelonize so that each basis vector has a distinct leading monomial
    let (red, _) = RationalMatrix::from_rows_with_cols(kernel, zero_weight.len()).rref();
    red.to_sparse_rows()
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut v = ExteriorVector::zero(g, m);
            for (j, c) in r {
                v.add_term(zero_weight[j], c);
            }
            v
        })
        .collect()
}

/// Whether every raising and lowering operator annihilates `x`.
pub fn is_invariant(x: &ExteriorVector) -> bool {
    let g = x.g();
    raising_operators(g)
        .iter()
        .chain(lowering_operators(g).iter())
        .all(|op| apply_operator(op, x).is_zero())
        && (0..g).all(|i| x.terms().keys().all(|&k| weight(g, x.m(), k)[i] == 0))
}

/// `h = Σ_i e_i ∧ f_i` on a single factor.
pub fn symplectic_class(g: usize, m: usize, factor: usize) -> ExteriorVector {
    let mut h = ExteriorVector::zero(g, m);
    for i in 0..g {
        let t = ExteriorVector::e(g, m, factor, i)
            .wedge(&ExteriorVector::f(g, m, factor, i))
            .expect("same algebra");
        h = h.add(&t).expect("same algebra");
    }
    h
}
