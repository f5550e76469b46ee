use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::diagram::{glue, Diagram};
use super::word::{GeneratorTable, Letter, Word};
use super::DiagramError;
use crate::exact_linalg::{int, Scalar};

/// ℚ-linear combination of diagrams with common source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    src: Word,
    dst: Word,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Morphism {
    pub fn zero(src: Word, dst: Word) -> Self {
        Morphism {
            src,
            dst,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::from_diagram_coeff(d, Scalar::one())
    }

    pub fn from_diagram_coeff(d: Diagram, c: Scalar) -> Self {
        let mut m = Self::zero(d.src, d.dst);
        m.add_term(d.partner, c);
        m
    }

    pub fn identity(w: &Word) -> Self {
        Self::from_diagram(Diagram::identity(w))
    }

    pub fn symmetry(perm: &[usize], w: &Word) -> Self {
        Self::from_diagram(Diagram::symmetry(perm, w))
    }

    pub fn src(&self) -> &Word {
        &self.src
    }

    pub fn dst(&self) -> &Word {
        &self.dst
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Diagram, &Scalar)> {
        self.terms.iter().map(|(p, c)| {
            (
                Diagram {
                    src: self.src.clone(),
                    dst: self.dst.clone(),
                    partner: p.clone(),
                },
                c,
            )
        })
    }

    /// Coefficients keyed by partner arrays.
    pub fn raw_terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    /// Builds a morphism from coefficients keyed by partner arrays (not validated).
    pub fn from_raw_terms(src: Word, dst: Word, terms: BTreeMap<Vec<usize>, Scalar>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Morphism { src, dst, terms }
    }

    pub fn coeff(&self, d: &Diagram) -> Scalar {
        self.terms.get(&d.partner).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, partner: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(partner) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_shape(&self, o: &Self) -> Result<(), DiagramError> {
        if self.src != o.src || self.dst != o.dst {
            return Err(DiagramError::Mismatch(format!(
                "cannot add {}→{} and {}→{}",
                self.src, self.dst, o.src, o.dst
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, DiagramError> {
        self.check_same_shape(o)?;
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, DiagramError> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.src.clone(), self.dst.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect();
        }
        out
    }

    /// Linear combination `Σ c_i m_i` of morphisms of one shape.
    pub fn combination<'a>(
        src: &Word,
        dst: &Word,
        parts: impl IntoIterator<Item = (Scalar, &'a Morphism)>,
    ) -> Result<Self, DiagramError> {
        let mut out = Self::zero(src.clone(), dst.clone());
        for (c, m) in parts {
            out.check_same_shape(m)?;
            for (p, v) in &m.terms {
                out.add_term(p.clone(), &c * v);
            }
        }
        Ok(out)
    }

    /// Juxtaposition `self ⊗ o`.
    pub fn tensor(&self, o: &Self) -> Self {
        let (p1, q1) = (self.src.len(), self.dst.len());
        let (p2, q2) = (o.src.len(), o.dst.len());
        let map1 = |x: usize| if x < p1 { x } else { p1 + p2 + (x - p1) };
        let map2 = |x: usize| if x < p2 { p1 + x } else { p1 + p2 + q1 + (x - p2) };
        let n = p1 + p2 + q1 + q2;
        let mut out = Self::zero(self.src.concat(&o.src), self.dst.concat(&o.dst));
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut partner = vec![0; n];
                for (x, &y) in a.iter().enumerate() {
                    partner[map1(x)] = map1(y);
                }
                for (x, &y) in b.iter().enumerate() {
                    partner[map2(x)] = map2(y);
                }
                out.add_term(partner, ca * cb);
            }
        }
        out
    }

    /// Transpose `N^∨ → M^∨` of `self: M → N`, the 180° rotation of each diagram.
    pub fn transpose(&self) -> Self {
        let (m, n) = (self.src.len(), self.dst.len());
        let map = |x: usize| if x < m { n + (m - 1 - x) } else { n - 1 - (x - m) };
        let mut out = Self::zero(self.dst.dual(), self.src.dual());
        for (p, c) in &self.terms {
            let mut partner = vec![0; m + n];
            for (x, &y) in p.iter().enumerate() {
                partner[map(x)] = map(y);
            }
            out.add_term(partner, c.clone());
        }
        out
    }

    /// Unit `η: 1 → N^∨ ⊗ N`.
    pub fn eta(gen: usize) -> Self {
        Self::from_diagram(Diagram {
            src: Word::unit(),
            dst: Word(vec![Letter::dual(gen), Letter::plain(gen)]),
            partner: vec![1, 0],
        })
    }

    /// Counit `ε: N ⊗ N^∨ → 1`.
    pub fn eps(gen: usize) -> Self {
        Self::from_diagram(Diagram {
            src: Word(vec![Letter::plain(gen), Letter::dual(gen)]),
            dst: Word::unit(),
            partner: vec![1, 0],
        })
    }

    /// `η̃: 1 → N ⊗ N^∨`.
    pub fn eta_tilde(gen: usize) -> Self {
        Self::from_diagram(Diagram {
            src: Word::unit(),
            dst: Word(vec![Letter::plain(gen), Letter::dual(gen)]),
            partner: vec![1, 0],
        })
    }

    /// `ε̃: N^∨ ⊗ N → 1`.
    pub fn eps_tilde(gen: usize) -> Self {
        Self::from_diagram(Diagram {
            src: Word(vec![Letter::dual(gen), Letter::plain(gen)]),
            dst: Word::unit(),
            partner: vec![1, 0],
        })
    }

    /// Nested cups `1 → M^∨ ⊗ M`.
    pub fn eta_word(m: &Word) -> Self {
        let k = m.len();
        let mut partner = vec![0; 2 * k];
        for i in 0..k {
            partner[k - 1 - i] = k + i;
            partner[k + i] = k - 1 - i;
        }
        Self::from_diagram(Diagram {
            src: Word::unit(),
            dst: m.dual().concat(m),
            partner,
        })
    }

    /// Nested caps `M ⊗ M^∨ → 1`.
    pub fn eps_word(m: &Word) -> Self {
        let k = m.len();
        let mut partner = vec![0; 2 * k];
        for i in 0..k {
            partner[i] = 2 * k - 1 - i;
            partner[2 * k - 1 - i] = i;
        }
        Self::from_diagram(Diagram {
            src: m.concat(&m.dual()),
            dst: Word::unit(),
            partner,
        })
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::from_diagram_coeff(Diagram::identity(&Word::unit()), c)
    }

    /// Coefficient of the empty diagram for a morphism `1 → 1`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if !self.src.is_empty() || !self.dst.is_empty() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero))
    }
}

/// The free rigid symmetric ℚ-tensor category on a generator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidCategory {
    pub table: GeneratorTable,
}

impl RigidCategory {
    pub fn new(table: GeneratorTable) -> Self {
        RigidCategory { table }
    }

    pub fn single(rank: i64) -> Self {
        Self::new(GeneratorTable::single(rank))
    }

    fn loop_factor(&self, loops: &[usize]) -> Scalar {
        loops
            .iter()
            .fold(Scalar::one(), |acc, &g| acc * int(self.table.rank(g)))
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, DiagramError> {
        if f.dst != g.src {
            return Err(DiagramError::Mismatch(format!(
                "cannot compose: target {} differs from source {}",
                f.dst, g.src
            )));
        }
        let (p, q, r) = (f.src.len(), f.dst.len(), g.dst.len());
        let n = p + 2 * q + r;
        let off = p + q;
        let mut close = vec![None; n];
        let mut relabel = vec![None; n];
        for j in 0..q {
            close[p + j] = Some(off + j);
            close[off + j] = Some(p + j);
        }
        for i in 0..p {
            relabel[i] = Some(i);
        }
        for k in 0..r {
            relabel[off + q + k] = Some(p + k);
        }
        let gen_of = |x: usize| f.dst.0[x - p].gen;
        let mut out = Morphism::zero(f.src.clone(), g.dst.clone());
        let mut edge = vec![0; n];
        for (a, ca) in &f.terms {
            edge[..off].copy_from_slice(a);
            for (b, cb) in &g.terms {
                for (x, &y) in b.iter().enumerate() {
                    edge[off + x] = off + y;
                }
                let glued = glue(&edge, &close, &relabel, p + r, gen_of);
                let c = ca * cb * self.loop_factor(&glued.loops);
                out.add_term(glued.partner, c);
            }
        }
        Ok(out)
    }

    /// Composite of a chain given in application order: `fs[last] ∘ … ∘ fs[0]`.
    pub fn compose_chain(&self, fs: &[&Morphism]) -> Result<Morphism, DiagramError> {
        let (first, rest) = fs.split_first().expect("empty composition chain");
        rest.iter().try_fold((*first).clone(), |acc, g| self.compose(g, &acc))
    }

    /// Categorical trace: close every strand.
    pub fn trace(&self, f: &Morphism) -> Result<Scalar, DiagramError> {
        if f.src != f.dst {
            return Err(DiagramError::Mismatch(format!(
                "trace of non-endomorphism {}→{}",
                f.src, f.dst
            )));
        }
        Ok(self.contract_last(f, f.src.len())?.as_scalar().expect("closed diagram"))
    }

    /// Contraction over the trailing `k` letters shared by source and target.
    pub fn contract_last(&self, f: &Morphism, k: usize) -> Result<Morphism, DiagramError> {
        let (p, q) = (f.src.len(), f.dst.len());
        if k > p || k > q || f.src.0[p - k..] != f.dst.0[q - k..] {
            return Err(DiagramError::Mismatch(format!(
                "cannot contract {}→{} over its last {k} letters",
                f.src, f.dst
            )));
        }
        let (a, b) = (p - k, q - k);
        let n = p + q;
        let mut close = vec![None; n];
        let mut relabel = vec![None; n];
        for i in 0..k {
            close[a + i] = Some(p + b + i);
            close[p + b + i] = Some(a + i);
        }
        for i in 0..a {
            relabel[i] = Some(i);
        }
        for j in 0..b {
            relabel[p + j] = Some(a + j);
        }
        let gen_of = |x: usize| if x < p { f.src.0[x].gen } else { f.dst.0[x - p].gen };
        let (src, _) = f.src.split_at(a);
        let (dst, _) = f.dst.split_at(b);
        let mut out = Morphism::zero(src, dst);
        for (e, c) in &f.terms {
            let glued = glue(e, &close, &relabel, a + b, gen_of);
            out.add_term(glued.partner, c * self.loop_factor(&glued.loops));
        }
        Ok(out)
    }

    /// `tr(g ∘ f)` for `f: P → Q`, `g: Q → P`, gluing both junctions at once.
    pub fn trace_pair(&self, g: &Morphism, f: &Morphism) -> Result<Scalar, DiagramError> {
        if f.dst != g.src || f.src != g.dst {
            return Err(DiagramError::Mismatch(format!(
                "trace pairing needs opposite shapes, got {}→{} and {}→{}",
                f.src, f.dst, g.src, g.dst
            )));
        }
        let (p, q) = (f.src.len(), f.dst.len());
        let n = 2 * (p + q);
        let off = p + q;
        let mut close = vec![None; n];
        for j in 0..q {
            close[p + j] = Some(off + j);
            close[off + j] = Some(p + j);
        }
        for i in 0..p {
            close[i] = Some(off + q + i);
            close[off + q + i] = Some(i);
        }
        let relabel = vec![None; n];
        let gen_of = |x: usize| if x < p { f.src.0[x].gen } else { f.dst.0[x - p].gen };
        let mut total = Scalar::zero();
        let mut edge = vec![0; n];
        for (a, ca) in &f.terms {
            edge[..off].copy_from_slice(a);
            for (b, cb) in &g.terms {
                for (x, &y) in b.iter().enumerate() {
                    edge[off + x] = off + y;
                }
                let glued = glue(&edge, &close, &relabel, 0, gen_of);
                total += ca * cb * self.loop_factor(&glued.loops);
            }
        }
        Ok(total)
    }

    pub fn hom_basis(&self, src: &Word, dst: &Word) -> Vec<Diagram> {
        super::diagram::hom_basis(src, dst)
    }

    /// `f^n` for an endomorphism.
    pub fn power(&self, f: &Morphism, n: u32) -> Result<Morphism, DiagramError> {
        if f.src != f.dst {
            return Err(DiagramError::Mismatch("power of non-endomorphism".into()));
        }
        let mut acc = Morphism::identity(&f.src);
        for _ in 0..n {
            acc = self.compose(f, &acc)?;
        }
        Ok(acc)
    }
}
