use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::object::{hom_space, FormalObject};
use super::KaroubiError;
use crate::diagram_cat::{Morphism, RigidCategory, Word};
use crate::exact_linalg::{kernel_basis, EchelonBasis, RationalMatrix, Scalar};
use crate::exterior_model::Realization;

/// Above this many diagrams in `Hom(Q, P)`, radical membership is decided in
/// the standard realization instead of by pairing against every diagram.
pub const RADICAL_GRAM_LIMIT: usize = 720;

/// Largest realized dimension attempted by the realization fallback.
const REALIZATION_LIMIT: usize = 1 << 12;

/// Which quotient of a hom space to form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientSpec {
    None,
    Radical,
    /// Two-sided ideal of `k[𝔖_r]` generated by the listed permutation combinations.
    Ideal(Vec<Morphism>),
}

/// `Hom(X, Y)` together with a subspace to factor out.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ambient: Vec<Morphism>,
    sub: EchelonBasis<Vec<usize>>,
}

impl QuotientSpace {
    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient.len() - self.sub.len()
    }

    pub fn subspace(&self) -> Vec<BTreeMap<Vec<usize>, Scalar>> {
        self.sub.rows().cloned().collect()
    }

    /// Whether `f` vanishes in the quotient.
    pub fn contains(&self, f: &Morphism) -> bool {
        self.sub.contains(f.raw_terms())
    }

    /// Canonical representative of the class of `f`.
    pub fn project(&self, f: &Morphism) -> Morphism {
        Morphism::from_raw_terms(f.src().clone(), f.dst().clone(), self.sub.reduce(f.raw_terms()))
    }
}

/// Gram matrix `G[i][j] = tr(h_j ∘ f_i)` for bases `f` of `Hom(X,Y)` and `h` of `Hom(Y,X)`.
pub fn gram_matrix(
    cat: &RigidCategory,
    x: &FormalObject,
    y: &FormalObject,
) -> Result<(Vec<Morphism>, Vec<Morphism>, RationalMatrix), KaroubiError> {
    let fs = hom_space(cat, x, y)?;
    let hs = hom_space(cat, y, x)?;
    let rows: Vec<Vec<Scalar>> = fs
        .par_iter()
        .map(|f| hs.iter().map(|h| cat.trace_pair(h, f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let g = RationalMatrix::from_rows_with_cols(rows, hs.len());
    Ok((fs, hs, g))
}

/// Basis of the radical `{f : tr(h ∘ f) = 0 for all h}` inside `Hom(X, Y)`.
pub fn radical_subspace(
    cat: &RigidCategory,
    x: &FormalObject,
    y: &FormalObject,
) -> Result<Vec<Morphism>, KaroubiError> {
    let (fs, _, g) = gram_matrix(cat, x, y)?;
    let (src, dst) = (x.word.clone(), y.word.clone());
    Ok(kernel_basis(&g.transpose())
        .into_iter()
        .map(|v| {
            let terms = fs.iter().zip(&v).filter(|(_, c)| !c.is_zero());
            let mut out = Morphism::zero(src.clone(), dst.clone());
            for (f, c) in terms {
                out = out.add(&f.scale(c)).expect("same shape");
            }
            out
        })
        .collect())
}

/// Number of basis diagrams `src → dst`.
fn diagram_count(cat: &RigidCategory, src: &Word, dst: &Word) -> usize {
    let n = cat.table.len();
    if src.charge(n) != dst.charge(n) {
        return 0;
    }
    let mut count = vec![0usize; n];
    for l in &src.0 {
        if !l.dual {
            count[l.gen] += 1;
        }
    }
    for l in &dst.0 {
        if l.dual {
            count[l.gen] += 1;
        }
    }
    count
        .iter()
        .fold(1usize, |acc, &k| (1..=k).fold(acc, |a, i| a.saturating_mul(i)))
}

/// Whether the standard realization (dimension `|rank|`, odd for negative rank)
/// sends `f` to zero. On the semisimple quotient this functor is faithful.
pub fn standard_realization_kills(cat: &RigidCategory, f: &Morphism) -> Result<bool, KaroubiError> {
    let real = Realization::standard(&cat.table);
    let size = real.word_dim(f.src())?.max(real.word_dim(f.dst())?);
    if size > REALIZATION_LIMIT {
        return Err(KaroubiError::Unsupported(format!(
            "radical test needs a realization of dimension {size}, above {REALIZATION_LIMIT}"
        )));
    }
    Ok(real.realize_diagram(f)?.matrix.is_zero())
}

/// Whether `f ∈ Hom(X, Y)` lies in the radical.
pub fn in_radical(cat: &RigidCategory, x: &FormalObject, y: &FormalObject, f: &Morphism) -> Result<bool, KaroubiError> {
    let f = FormalObject::restrict(cat, x, y, f)?;
    if f.is_zero() {
        return Ok(true);
    }
    if diagram_count(cat, &y.word, &x.word) <= RADICAL_GRAM_LIMIT {
        for d in cat.hom_basis(&y.word, &x.word) {
            if !cat.trace_pair(&Morphism::from_diagram(d), &f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        standard_realization_kills(cat, &f)
    }
}

fn permutation_only(f: &Morphism) -> bool {
    f.src() == f.dst()
        && f.terms().all(|(d, _)| {
            d.edges()
                .iter()
                .all(|&(a, b)| (a < f.src().len()) != (b < f.src().len()))
        })
}

/// `Hom(X, Y)` modulo the radical or a symmetric-group ideal.
pub fn quotient_hom(
    cat: &RigidCategory,
    x: &FormalObject,
    y: &FormalObject,
    spec: &QuotientSpec,
) -> Result<QuotientSpace, KaroubiError> {
    let ambient = hom_space(cat, x, y)?;
    let mut sub = EchelonBasis::new();
    match spec {
        QuotientSpec::None => {}
        QuotientSpec::Radical => {
            for f in radical_subspace(cat, x, y)? {
                sub.insert(f.raw_terms());
            }
        }
        QuotientSpec::Ideal(gens) => {
            let w = &x.word;
            let single = w.0.first().map(|l| l.gen);
            let plain_power = w.0.iter().all(|l| !l.dual && Some(l.gen) == single);
            if x != y || x.idempotent != Morphism::identity(w) || !plain_power {
                return Err(KaroubiError::Unsupported(
                    "ideal quotients are only available in End(N^{⊗r}) for one plain generator".into(),
                ));
            }
            let r = w.len();
            for gen in gens {
                let gw = gen.src();
                if !permutation_only(gen) || gw.0.iter().any(|l| l.dual || Some(l.gen) != single) {
                    return Err(KaroubiError::Unsupported(
                        "ideal generators must be symmetric-group algebra elements on the same generator".into(),
                    ));
                }
                if gw.len() > r {
                    continue;
                }
                let rest = Word(w.0[gw.len()..].to_vec());
                let seed = gen.tensor(&Morphism::identity(&rest));
                close_two_sided(cat, w, seed, &mut sub)?;
            }
        }
    }
    Ok(QuotientSpace { ambient, sub })
}

/// Adds the two-sided `k[𝔖_r]`-ideal generated by `seed` to `sub`.
fn close_two_sided(
    cat: &RigidCategory,
    w: &Word,
    seed: Morphism,
    sub: &mut EchelonBasis<Vec<usize>>,
) -> Result<(), KaroubiError> {
    let r = w.len();
    let transpositions: Vec<Morphism> = (0..r.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<usize> = (0..r).collect();
            p.swap(i, i + 1);
            Morphism::symmetry(&p, w)
        })
        .collect();
    let mut queue = Vec::new();
    if sub.insert(seed.raw_terms()) {
        queue.push(seed);
    }
    while let Some(v) = queue.pop() {
        for t in &transpositions {
            for u in [cat.compose(t, &v)?, cat.compose(&v, t)?] {
                if sub.insert(u.raw_terms()) {
                    queue.push(u);
                }
            }
        }
    }
    Ok(())
}
