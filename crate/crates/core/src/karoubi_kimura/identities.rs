use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::object::{ext_power, rank, FormalObject};
use super::radical::standard_realization_kills;
use super::KaroubiError;
use crate::diagram_cat::{Morphism, RigidCategory, Word};
use crate::exact_linalg::{int, permutations, subsets, to_i64};

/// Integer polynomial in commuting variables, keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u8>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(vec![0; nvars], BigInt::one());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    fn add_term(&mut self, e: Vec<u8>, c: BigInt) {
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Both sides of the inclusion–exclusion identity in `ℚ[α_ij]`, `α_ij` at index `i·n + j`.
pub fn incl_excl_sides(n: usize) -> (MultiPoly, MultiPoly) {
    let nv = n * n;
    let alpha = |i: usize, j: usize| MultiPoly::var(nv, i * n + j);
    let perms = permutations(n);
    let mut left = MultiPoly::zero(nv);
    for s in &perms {
        for t in &perms {
            let term = (0..n).fold(MultiPoly::one(nv), |acc, k| acc.mul(&alpha(s[k], t[k])));
            left = left.add(&term);
        }
    }
    let mut right = MultiPoly::zero(nv);
    for i_set in subsets(n) {
        for j_set in subsets(n) {
            let mut sum = MultiPoly::zero(nv);
            for i in (0..n).filter(|i| i_set >> i & 1 == 1) {
                for j in (0..n).filter(|j| j_set >> j & 1 == 1) {
                    sum = sum.add(&alpha(i, j));
                }
            }
            let term = sum.pow(n);
            let negative = (i_set.count_ones() + j_set.count_ones()) % 2 == 1;
            right = right.add(&if negative { term.neg() } else { term });
        }
    }
    (left, right)
}

pub fn kimura_incl_excl_check(n: usize) -> Result<bool, KaroubiError> {
    if n > 4 {
        return Err(KaroubiError::Precondition(format!(
            "n = {n} exceeds the supported bound 4"
        )));
    }
    let (l, r) = incl_excl_sides(n);
    Ok(l == r)
}

/// Both sides of `f₀ ⊗ a = d (N ⊗ a) ∘ (f ⊗ L^{⊗(d-1)}) ∘ (N' ⊗ a)` for
/// `f: N' ⊗ L → N ⊗ L` and `L` of natural rank `d`.
pub fn poscontr_sides(
    cat: &RigidCategory,
    l: &FormalObject,
    f: &Morphism,
) -> Result<(Morphism, Morphism), KaroubiError> {
    let p = &l.word;
    let k = p.len();
    let r = rank(cat, l)?;
    let d = match to_i64(&r) {
        Some(d) if d >= 1 && r.is_integer() && !r.is_negative() => d as usize,
        _ => {
            return Err(KaroubiError::Precondition(format!(
                "rank {r} of L is not a positive integer"
            )))
        }
    };
    let (sw, tw) = (f.src(), f.dst());
    if sw.len() < k || tw.len() < k || sw.0[sw.len() - k..] != p.0[..] || tw.0[tw.len() - k..] != p.0[..] {
        return Err(KaroubiError::Shape("f must have the form N' ⊗ L → N ⊗ L".into()));
    }
    let n_src = Word(sw.0[..sw.len() - k].to_vec());
    let n_dst = Word(tw.0[..tw.len() - k].to_vec());
    let id_src = Morphism::identity(&n_src);
    let id_dst = Morphism::identity(&n_dst);
    let f = cat.compose_chain(&[&id_src.tensor(&l.idempotent), f, &id_dst.tensor(&l.idempotent)])?;
    let f0 = cat.contract_last(&f, k)?;
    let a = ext_power(cat, l, d)?.idempotent;
    let lhs = f0.tensor(&a);
    let rest = Morphism::identity(&(0..d - 1).fold(Word::unit(), |w, _| w.concat(p)));
    let rhs = cat
        .compose_chain(&[&id_src.tensor(&a), &f.tensor(&rest), &id_dst.tensor(&a)])?
        .scale(&int(d as i64));
    Ok((lhs, rhs))
}

/// Checks the contraction identity in the standard realization.
pub fn poscontr_identity_check(cat: &RigidCategory, l: &FormalObject, f: &Morphism) -> Result<bool, KaroubiError> {
    let (lhs, rhs) = poscontr_sides(cat, l, f)?;
    standard_realization_kills(cat, &lhs.sub(&rhs)?)
}
