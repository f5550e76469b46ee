use num_traits::{One, Signed, Zero};

use super::object::{antisymmetrizer, ext_power, rank, sym_power, FormalObject};
use super::radical::in_radical;
use super::KaroubiError;
use crate::diagram_cat::{Morphism, RigidCategory};
use crate::exact_linalg::{to_i64, Scalar};

/// Outcome of a finiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The relevant power vanishes in the radical quotient at exponent `m`.
    Holds {
        m: usize,
    },
    Fails(String),
    Inconclusive {
        bound: usize,
    },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }
}

fn natural(r: &Scalar) -> Option<usize> {
    if r.is_integer() && !r.is_negative() {
        to_i64(r).map(|v| v as usize)
    } else {
        None
    }
}

/// Positive: `Λ^{rank+1} X` vanishes in the radical quotient.
pub fn is_positive(cat: &RigidCategory, x: &FormalObject, bound: usize) -> Result<Verdict, KaroubiError> {
    let r = rank(cat, x)?;
    let Some(d) = natural(&r) else {
        return Ok(Verdict::Fails(format!("rank {r} is not a natural number")));
    };
    if d + 1 > bound {
        return Ok(Verdict::Inconclusive { bound });
    }
    power_vanishes(cat, &ext_power(cat, x, d + 1)?, d + 1, bound, "exterior")
}

/// Negative: `S^{1-rank} X` vanishes in the radical quotient.
pub fn is_negative(cat: &RigidCategory, x: &FormalObject, bound: usize) -> Result<Verdict, KaroubiError> {
    let r = rank(cat, x)?;
    let Some(d) = natural(&-r.clone()) else {
        return Ok(Verdict::Fails(format!("rank {r} is not a non-positive integer")));
    };
    if d + 1 > bound {
        return Ok(Verdict::Inconclusive { bound });
    }
    power_vanishes(cat, &sym_power(cat, x, d + 1)?, d + 1, bound, "symmetric")
}

fn power_vanishes(
    cat: &RigidCategory,
    p: &FormalObject,
    m: usize,
    bound: usize,
    kind: &str,
) -> Result<Verdict, KaroubiError> {
    if m > bound {
        return Ok(Verdict::Inconclusive { bound });
    }
    if in_radical(cat, p, p, &p.idempotent)? {
        Ok(Verdict::Holds { m })
    } else {
        Ok(Verdict::Fails(format!(
            "{kind} power {m} is nonzero in the radical quotient"
        )))
    }
}

/// `Σ_{i=0}^m (-1)^i tr(Λ^i f) f^{m-i}` for an endomorphism `f` of `X`.
pub fn cayley_hamilton_check(
    cat: &RigidCategory,
    x: &FormalObject,
    f: &Morphism,
    m: usize,
) -> Result<Morphism, KaroubiError> {
    let f = FormalObject::restrict(cat, x, x, f)?;
    let mut powers = vec![x.idempotent.clone()];
    for i in 1..=m {
        powers.push(cat.compose(&f, &powers[i - 1])?);
    }
    let mut out = Morphism::zero(x.word.clone(), x.word.clone());
    let mut tensor = Morphism::scalar(Scalar::one());
    for i in 0..=m {
        let tr = if i == 0 {
            Scalar::one()
        } else {
            tensor = tensor.tensor(&f);
            cat.trace(&cat.compose(&antisymmetrizer(i, &x.word), &tensor)?)?
        };
        if tr.is_zero() {
            continue;
        }
        let c = if i % 2 == 1 { -tr } else { tr };
        out = out.add(&powers[m - i].scale(&c))?;
    }
    Ok(out)
}
