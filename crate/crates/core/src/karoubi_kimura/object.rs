use num_traits::One;

use super::KaroubiError;
use crate::diagram_cat::{Morphism, RigidCategory, Word};
use crate::exact_linalg::{factorial, permutation_parity, permutations, EchelonBasis, Scalar};

/// Object `(word, idempotent)(twist)` of the Karoubi envelope with Tate twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalObject {
    pub word: Word,
    pub idempotent: Morphism,
    pub twist: i64,
}

impl FormalObject {
    pub fn new(cat: &RigidCategory, word: Word, idempotent: Morphism, twist: i64) -> Result<Self, KaroubiError> {
        if idempotent.src() != &word || idempotent.dst() != &word {
            return Err(KaroubiError::Shape(format!(
                "idempotent is not an endomorphism of {word}"
            )));
        }
        if cat.compose(&idempotent, &idempotent)? != idempotent {
            return Err(KaroubiError::NotIdempotent);
        }
        Ok(FormalObject {
            word,
            idempotent,
            twist,
        })
    }

    /// `(P, 1_P)`.
    pub fn whole(word: Word) -> Self {
        let idempotent = Morphism::identity(&word);
        FormalObject {
            word,
            idempotent,
            twist: 0,
        }
    }

    pub fn unit() -> Self {
        Self::whole(Word::unit())
    }

    pub fn tensor(&self, o: &Self) -> Self {
        FormalObject {
            word: self.word.concat(&o.word),
            idempotent: self.idempotent.tensor(&o.idempotent),
            twist: self.twist + o.twist,
        }
    }

    pub fn twisted(&self, k: i64) -> Self {
        FormalObject {
            twist: self.twist + k,
            ..self.clone()
        }
    }

    /// `n`-fold tensor power.
    pub fn power(&self, n: usize) -> Self {
        (0..n).fold(Self::unit(), |acc, _| acc.tensor(self))
    }

    /// Restricts `f: P → Q` to `e_Y ∘ f ∘ e_X`.
    pub fn restrict(cat: &RigidCategory, x: &Self, y: &Self, f: &Morphism) -> Result<Morphism, KaroubiError> {
        Ok(cat.compose(&y.idempotent, &cat.compose(f, &x.idempotent)?)?)
    }
}

/// Symmetry of `block^{⊗n}` moving block `i` to block `perm[i]`.
pub fn block_symmetry(perm: &[usize], block: &Word) -> Morphism {
    let k = block.len();
    let mut full = Vec::with_capacity(perm.len() * k);
    for &t in perm {
        for j in 0..k {
            full.push(t * k + j);
        }
    }
    let mut w = Word::unit();
    for _ in 0..perm.len() {
        w = w.concat(block);
    }
    Morphism::symmetry(&full, &w)
}

fn averaged(n: usize, block: &Word, signed: bool) -> Morphism {
    let mut w = Word::unit();
    for _ in 0..n {
        w = w.concat(block);
    }
    let c = Scalar::new(One::one(), factorial(n as u32));
    let mut out = Morphism::zero(w.clone(), w);
    for p in permutations(n) {
        let s = if signed && permutation_parity(&p) == 1 {
            -c.clone()
        } else {
            c.clone()
        };
        out = out.add(&block_symmetry(&p, block).scale(&s)).expect("same shape");
    }
    out
}

/// `s_n = (1/n!) Σ_σ σ` on `M^{⊗n}`, permuting copies of `M`.
pub fn symmetrizer(n: usize, m: &Word) -> Morphism {
    averaged(n, m, false)
}

/// `a_n = (1/n!) Σ_σ sgn(σ) σ` on `M^{⊗n}`.
pub fn antisymmetrizer(n: usize, m: &Word) -> Morphism {
    averaged(n, m, true)
}

/// `S^n X = (P^{⊗n}, s_n ∘ e^{⊗n})`.
pub fn sym_power(cat: &RigidCategory, x: &FormalObject, n: usize) -> Result<FormalObject, KaroubiError> {
    let p = x.power(n);
    let idempotent = cat.compose(&symmetrizer(n, &x.word), &p.idempotent)?;
    Ok(FormalObject { idempotent, ..p })
}

/// `Λ^n X = (P^{⊗n}, a_n ∘ e^{⊗n})`.
pub fn ext_power(cat: &RigidCategory, x: &FormalObject, n: usize) -> Result<FormalObject, KaroubiError> {
    let p = x.power(n);
    let idempotent = cat.compose(&antisymmetrizer(n, &x.word), &p.idempotent)?;
    Ok(FormalObject { idempotent, ..p })
}

/// `rank X = tr(e)`.
pub fn rank(cat: &RigidCategory, x: &FormalObject) -> Result<Scalar, KaroubiError> {
    Ok(cat.trace(&x.idempotent)?)
}

/// Basis of `Hom(X, Y) = e_Y ∘ Hom(P, Q) ∘ e_X`, echelonized over diagrams.
pub fn hom_space(cat: &RigidCategory, x: &FormalObject, y: &FormalObject) -> Result<Vec<Morphism>, KaroubiError> {
    let mut basis = EchelonBasis::new();
    for d in cat.hom_basis(&x.word, &y.word) {
        let img = FormalObject::restrict(cat, x, y, &Morphism::from_diagram(d))?;
        basis.insert(img.raw_terms());
    }
    Ok(basis
        .rows()
        .map(|r| Morphism::from_raw_terms(x.word.clone(), y.word.clone(), r.clone()))
        .collect())
}
