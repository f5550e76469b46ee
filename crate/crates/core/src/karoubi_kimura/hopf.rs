use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::object::{hom_space, rank, sym_power, FormalObject};
use super::KaroubiError;
use crate::diagram_cat::{Morphism, RigidCategory, Word};
use crate::exact_linalg::{crt_polys, factorial, int, Poly, Scalar};

/// `Sym N = ⊕_r S^r N` truncated at a degree bound, with `rank N = -2g`.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub g: usize,
    pub degree: usize,
    pub cat: RigidCategory,
    /// `S^r N = (N^{⊗r}, s_r)`.
    pub components: Vec<FormalObject>,
    /// `(r, s) ↦ S^r ⊗ S^s → S^{r+s}`.
    pub mult: BTreeMap<(usize, usize), Morphism>,
    /// `(r, s) ↦ S^{r+s} → S^r ⊗ S^s`.
    pub comult: BTreeMap<(usize, usize), Morphism>,
    pub antipode: Vec<Morphism>,
    /// `𝟏 → S^0`.
    pub unit: Morphism,
    /// `S^0 → 𝟏`.
    pub counit: Morphism,
}

fn n_word(r: usize) -> Word {
    Word::power(0, r)
}

/// `N^{⊗r} ⊗ N^{⊗s} → N^{⊗s} ⊗ N^{⊗r}`.
fn block_swap(r: usize, s: usize) -> Morphism {
    let perm: Vec<usize> = (0..r).map(|i| s + i).chain(0..s).collect();
    Morphism::symmetry(&perm, &n_word(r + s))
}

fn binomial(n: usize, k: usize) -> Scalar {
    Scalar::from_integer(factorial(n as u32) / (factorial(k as u32) * factorial((n - k) as u32)))
}

pub fn sym_hopf(g: usize, degree: usize) -> Result<HopfStructure, KaroubiError> {
    if degree == 0 {
        return Err(KaroubiError::Precondition("degree bound must be at least 1".into()));
    }
    let cat = RigidCategory::single(-2 * g as i64);
    let n = FormalObject::whole(n_word(1));
    let components: Vec<FormalObject> = (0..=degree).map(|r| sym_power(&cat, &n, r)).collect::<Result<_, _>>()?;
    let s = |r: usize| components[r].idempotent.clone();
    let mut mult = BTreeMap::new();
    let mut comult = BTreeMap::new();
    for total in 0..=degree {
        for r in 0..=total {
            let pair = s(r).tensor(&s(total - r));
            mult.insert((r, total - r), cat.compose(&s(total), &pair)?);
            comult.insert(
                (r, total - r),
                cat.compose(&pair, &s(total))?.scale(&binomial(total, r)),
            );
        }
    }
    let antipode = (0..=degree)
        .map(|r| if r % 2 == 0 { s(r) } else { s(r).scale(&-Scalar::one()) })
        .collect();
    let id1 = Morphism::identity(&Word::unit());
    Ok(HopfStructure {
        g,
        degree,
        cat,
        components,
        mult,
        comult,
        antipode,
        unit: id1.clone(),
        counit: id1,
    })
}

impl HopfStructure {
    /// `n_R` on `S^r`: multiplication by `n^r`.
    pub fn multiple(&self, n: i64, r: usize) -> Morphism {
        self.components[r].idempotent.scale(&int(n).pow(r as i32))
    }

    fn s(&self, r: usize) -> &Morphism {
        &self.components[r].idempotent
    }

    fn m(&self, r: usize, s: usize) -> &Morphism {
        &self.mult[&(r, s)]
    }

    fn d(&self, r: usize, s: usize) -> &Morphism {
        &self.comult[&(r, s)]
    }

    /// `Σ_{a+b=r} m_{a,b} ∘ (x_a ⊗ y_b) ∘ Δ_{a,b}`.
    fn convolution(
        &self,
        r: usize,
        x: impl Fn(usize) -> Morphism,
        y: impl Fn(usize) -> Morphism,
    ) -> Result<Morphism, KaroubiError> {
        let mut out = Morphism::zero(n_word(r), n_word(r));
        for a in 0..=r {
            let mid = x(a).tensor(&y(r - a));
            let term = self.cat.compose_chain(&[self.d(a, r - a), &mid, self.m(a, r - a)])?;
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// One line per identity family with its outcome.
#[derive(Clone, Debug, Default)]
pub struct HopfReport {
    pub checks: Vec<(String, bool)>,
}

impl HopfReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    fn record(&mut self, name: &str, ok: bool) {
        match self.checks.iter_mut().find(|(n, _)| n == name) {
            Some(entry) => entry.1 &= ok,
            None => self.checks.push((name.to_string(), ok)),
        }
    }
}

/// Verifies the bialgebra and antipode identities degreewise up to `degree`.
pub fn hopf_axiom_check(h: &HopfStructure, degree: usize) -> Result<HopfReport, KaroubiError> {
    let degree = degree.min(h.degree);
    let cat = &h.cat;
    let mut rep = HopfReport::default();
    let id1 = Morphism::identity(&Word::unit());
    rep.record("counit-unit", cat.compose(&h.counit, &h.unit)? == id1);
    for total in 0..=degree {
        for r in 0..=total {
            let s = total - r;
            rep.record("unit", *h.m(0, total) == *h.s(total) && *h.m(total, 0) == *h.s(total));
            rep.record("counit", *h.d(0, total) == *h.s(total) && *h.d(total, 0) == *h.s(total));
            rep.record(
                "commutativity",
                cat.compose(h.m(s, r), &block_swap(r, s))? == *h.m(r, s),
            );
            rep.record(
                "cocommutativity",
                cat.compose(&block_swap(r, s), h.d(r, s))? == *h.d(s, r),
            );
            for t in 0..=total - r {
                let u = total - r - t;
                let left = cat.compose(h.m(r + t, u), &h.m(r, t).tensor(h.s(u)))?;
                let right = cat.compose(h.m(r, t + u), &h.s(r).tensor(h.m(t, u)))?;
                rep.record("associativity", left == right);
                let left = cat.compose(&h.d(r, t).tensor(h.s(u)), h.d(r + t, u))?;
                let right = cat.compose(&h.s(r).tensor(h.d(t, u)), h.d(r, t + u))?;
                rep.record("coassociativity", left == right);
            }
            rep.record("bialgebra", bialgebra_square(h, r, s)?);
        }
        let expected = if total == 0 {
            h.s(0).clone()
        } else {
            Morphism::zero(n_word(total), n_word(total))
        };
        let left = h.convolution(total, |a| h.antipode[a].clone(), |b| h.s(b).clone())?;
        let right = h.convolution(total, |a| h.s(a).clone(), |b| h.antipode[b].clone())?;
        rep.record("antipode", left == expected && right == expected);
        rep.record("antipode-sign", h.antipode[total] == h.multiple(-1, total));
        let two = h.convolution(total, |a| h.s(a).clone(), |b| h.s(b).clone())?;
        rep.record("multiplication-by-2", two == h.multiple(2, total));
    }
    let top = 2 * h.g + 1;
    if top <= degree {
        rep.record("rank-vanishing", rank(cat, &h.components[top])?.is_zero());
    }
    Ok(rep)
}

/// `Δ ∘ m = (m ⊗ m) ∘ (1 ⊗ τ ⊗ 1) ∘ (Δ ⊗ Δ)` on `S^a ⊗ S^b`, all output components.
fn bialgebra_square(h: &HopfStructure, a: usize, b: usize) -> Result<bool, KaroubiError> {
    let cat = &h.cat;
    for c in 0..=a + b {
        let d = a + b - c;
        let left = cat.compose(h.d(c, d), h.m(a, b))?;
        let mut right = Morphism::zero(n_word(a + b), n_word(a + b));
        for a1 in 0..=a.min(c) {
            let b1 = c - a1;
            if b1 > b {
                continue;
            }
            let (a2, b2) = (a - a1, b - b1);
            let split = h.d(a1, a2).tensor(h.d(b1, b2));
            let swap = Morphism::identity(&n_word(a1))
                .tensor(&block_swap(a2, b1))
                .tensor(&Morphism::identity(&n_word(b2)));
            let merge = h.m(a1, b1).tensor(h.m(a2, b2));
            right = right.add(&cat.compose_chain(&[&split, &swap, &merge])?)?;
        }
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Endomorphism-style matrix of morphisms between direct sums of formal objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismMatrix {
    pub objects: Vec<FormalObject>,
    /// `blocks[i][j]: objects[j] → objects[i]`.
    pub blocks: Vec<Vec<Morphism>>,
}

impl MorphismMatrix {
    pub fn identity(objects: Vec<FormalObject>) -> Self {
        let blocks = (0..objects.len())
            .map(|i| {
                (0..objects.len())
                    .map(|j| {
                        if i == j {
                            objects[i].idempotent.clone()
                        } else {
                            Morphism::zero(objects[j].word.clone(), objects[i].word.clone())
                        }
                    })
                    .collect()
            })
            .collect();
        MorphismMatrix { objects, blocks }
    }

    pub fn diagonal(objects: Vec<FormalObject>, diag: Vec<Morphism>) -> Self {
        let mut out = Self::identity(objects);
        for (i, m) in diag.into_iter().enumerate() {
            out.blocks[i][i] = m;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Morphism::is_zero)
    }

    pub fn nonzero_terms(&self) -> usize {
        self.blocks.iter().flatten().map(Morphism::num_terms).sum()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|row| row.iter().map(|m| m.scale(c)).collect())
            .collect();
        MorphismMatrix {
            objects: self.objects.clone(),
            blocks,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, KaroubiError> {
        let mut blocks = self.blocks.clone();
        for (row, orow) in blocks.iter_mut().zip(&o.blocks) {
            for (m, om) in row.iter_mut().zip(orow) {
                *m = m.add(om)?;
            }
        }
        Ok(MorphismMatrix {
            objects: self.objects.clone(),
            blocks,
        })
    }

    /// `self ∘ o`.
    pub fn compose(&self, cat: &RigidCategory, o: &Self) -> Result<Self, KaroubiError> {
        let k = self.objects.len();
        let mut blocks = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let mut acc = Morphism::zero(self.objects[j].word.clone(), self.objects[i].word.clone());
                for l in 0..k {
                    if self.blocks[i][l].is_zero() || o.blocks[l][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&cat.compose(&self.blocks[i][l], &o.blocks[l][j])?)?;
                }
                row.push(acc);
            }
            blocks.push(row);
        }
        Ok(MorphismMatrix {
            objects: self.objects.clone(),
            blocks,
        })
    }

    /// Horner evaluation `p(self)`.
    pub fn eval_poly(&self, cat: &RigidCategory, p: &Poly) -> Result<Self, KaroubiError> {
        let id = Self::identity(self.objects.clone());
        let mut acc = id.scale(&Scalar::zero());
        for c in p.coeffs().iter().rev() {
            acc = self.compose(cat, &acc)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// Dimension of the endomorphism space of the direct sum.
    pub fn end_dim(&self, cat: &RigidCategory) -> Result<usize, KaroubiError> {
        let mut total = 0;
        for x in &self.objects {
            for y in &self.objects {
                total += hom_space(cat, x, y)?.len();
            }
        }
        Ok(total)
    }
}

/// Splits by the generalized eigenvalues of `t`, returning `(λ, r_λ(t))` pairs.
pub fn eigen_split(
    cat: &RigidCategory,
    t: &MorphismMatrix,
    eigenvalues: &[i64],
    multiplicity: Option<usize>,
) -> Result<Vec<(i64, MorphismMatrix)>, KaroubiError> {
    let e = match multiplicity {
        Some(e) => e,
        None => t.end_dim(cat)?,
    };
    let polys: Vec<Poly> = eigenvalues
        .iter()
        .map(|&l| Poly::linear(int(l)).pow(e as u32))
        .collect();
    let product = polys.iter().fold(Poly::one(), |acc, p| acc.mul(p));
    let residual = t.eval_poly(cat, &product)?;
    if !residual.is_zero() {
        return Err(KaroubiError::Residual(residual.nonzero_terms()));
    }
    let rs = crt_polys(&polys)?;
    let mut out = Vec::with_capacity(rs.len());
    for ((&l, r), p) in eigenvalues.iter().zip(&rs).zip(&polys) {
        let idem = t.eval_poly(cat, r)?;
        let check = t.eval_poly(cat, &p.mul(r))?;
        if !check.is_zero() {
            return Err(KaroubiError::Residual(check.nonzero_terms()));
        }
        out.push((l, idem));
    }
    Ok(out)
}
