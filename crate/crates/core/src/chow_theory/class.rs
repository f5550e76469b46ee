use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use super::hom::HomMatrix;
use super::instance::ChowInstance;
use super::ChowError;
use crate::exact_linalg::{int, Scalar};
use crate::exterior_model::{poincare_pair, symplectic_class, ExteriorVector};

/// Homogeneous class in `C^p(A^m)`: a numerical part of exterior degree `2p`
/// and, in deformed instances, one vector of degree `2p - s` per basis vector of `W`.
#[derive(Clone, Debug)]
pub struct CycleClass {
    pub inst: Arc<ChowInstance>,
    pub m: usize,
    pub p: i64,
    pub numeric: ExteriorVector,
    pub deform: Vec<ExteriorVector>,
}

/// Zero classes are equal whatever their nominal codimension.
impl PartialEq for CycleClass {
    fn eq(&self, o: &Self) -> bool {
        self.inst == o.inst
            && self.m == o.m
            && (self.p == o.p || (self.is_zero() && o.is_zero()))
            && self.numeric == o.numeric
            && self.deform == o.deform
    }
}

impl Eq for CycleClass {}

fn in_range(g: usize, m: usize, d: i64) -> bool {
    d >= 0 && d as usize <= 2 * g * m
}

impl CycleClass {
    pub fn zero(inst: &Arc<ChowInstance>, m: usize, p: i64) -> Self {
        let g = inst.g;
        CycleClass {
            inst: inst.clone(),
            m,
            p,
            numeric: ExteriorVector::zero(g, m),
            deform: vec![ExteriorVector::zero(g, m); inst.deform_dim()],
        }
    }

    /// Builds a class, checking degrees and invariance.
    pub fn new(
        inst: &Arc<ChowInstance>,
        m: usize,
        p: i64,
        numeric: ExteriorVector,
        deform: Vec<ExteriorVector>,
    ) -> Result<Self, ChowError> {
        inst.check_power(m)?;
        let g = inst.g;
        if deform.len() != inst.deform_dim() {
            return Err(ChowError::Mismatch(format!(
                "expected {} deformation components, got {}",
                inst.deform_dim(),
                deform.len()
            )));
        }
        let check = |v: &ExteriorVector, d: i64, what: &str| -> Result<(), ChowError> {
            if v.g() != g || v.m() != m {
                return Err(ChowError::Mismatch(format!(
                    "{what} component lives on the wrong power"
                )));
            }
            if v.is_zero() {
                return Ok(());
            }
            if !in_range(g, m, d) || v.degree() != Some(d as usize) {
                return Err(ChowError::Mismatch(format!("{what} component must have degree {d}")));
            }
            if !crate::exterior_model::is_invariant(v) {
                return Err(ChowError::Mismatch(format!("{what} component is not sp-invariant")));
            }
            Ok(())
        };
        check(&numeric, 2 * p, "numerical")?;
        let s = inst.weight().unwrap_or(0) as i64;
        for v in &deform {
            check(v, 2 * p - s, "deformation")?;
        }
        Ok(CycleClass {
            inst: inst.clone(),
            m,
            p,
            numeric,
            deform,
        })
    }

    pub fn g(&self) -> usize {
        self.inst.g
    }

    pub fn one(inst: &Arc<ChowInstance>, m: usize) -> Self {
        let mut c = Self::zero(inst, m, 0);
        c.numeric = ExteriorVector::one(inst.g, m);
        c
    }

    /// `h = Σ e_i ∧ f_i` on `A`.
    pub fn h(inst: &Arc<ChowInstance>) -> Self {
        let mut c = Self::zero(inst, 1, 1);
        c.numeric = symplectic_class(inst.g, 1, 0);
        c
    }

    /// `ε_i`: the `i`-th deformation generator, of degree zero, on `A^m`.
    pub fn eps(inst: &Arc<ChowInstance>, m: usize, i: usize) -> Result<Self, ChowError> {
        let s = inst
            .weight()
            .ok_or_else(|| ChowError::Mismatch("ε exists only in deformed instances".into()))?;
        if s % 2 == 1 {
            return Err(ChowError::Mismatch(format!(
                "ε has half-integral codimension for s = {s}"
            )));
        }
        if i >= inst.deform_dim() {
            return Err(ChowError::Mismatch(format!("W has no basis vector {i}")));
        }
        let mut c = Self::zero(inst, m, (s / 2) as i64);
        c.deform[i] = ExteriorVector::one(inst.g, m);
        Ok(c)
    }

    /// `ι_*(1)` on `A^m` for the zero section `ι: S → A^m`.
    pub fn iota(inst: &Arc<ChowInstance>, m: usize) -> Result<Self, ChowError> {
        Self::one(inst, 0).pushforward(&HomMatrix::zero(m, 0))
    }

    /// `Δ_*(1)` on `A^{2m}`.
    pub fn diagonal(inst: &Arc<ChowInstance>, m: usize) -> Result<Self, ChowError> {
        Self::one(inst, m).pushforward(&HomMatrix::diagonal(m, 2))
    }

    /// `(p, 1)_*(1)` on `A^{a+b}` for `p: A^b → A^a`.
    pub fn graph(inst: &Arc<ChowInstance>, p: &HomMatrix) -> Result<Self, ChowError> {
        let b = p.cols();
        Self::one(inst, b).pushforward(&p.pair(&HomMatrix::identity(b)))
    }

    /// Random class in `C^p(A^m)` with small integer coordinates on the invariant bases.
    pub fn random<R: Rng>(inst: &Arc<ChowInstance>, m: usize, p: i64, rng: &mut R) -> Self {
        let mut c = Self::zero(inst, m, p);
        c.numeric = random_invariant(inst, m, 2 * p, rng);
        let s = inst.weight().unwrap_or(0) as i64;
        for v in c.deform.iter_mut() {
            *v = random_invariant(inst, m, 2 * p - s, rng);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.numeric.is_zero() && self.deform.iter().all(ExteriorVector::is_zero)
    }

    pub fn is_numeric(&self) -> bool {
        self.deform.iter().all(ExteriorVector::is_zero)
    }

    fn same_space(&self, o: &Self) -> Result<(), ChowError> {
        if self.inst != o.inst || self.m != o.m {
            return Err(ChowError::Mismatch(format!(
                "classes on A^{} and A^{} of different instances or powers",
                self.m, o.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ChowError> {
        self.same_space(o)?;
        if self.p != o.p {
            // a zero summand carries no codimension
            if o.is_zero() {
                return Ok(self.clone());
            }
            if self.is_zero() {
                return Ok(o.clone());
            }
            return Err(ChowError::Mismatch(format!(
                "cannot add codimensions {} and {}",
                self.p, o.p
            )));
        }
        let mut out = self.clone();
        out.numeric = out.numeric.add(&o.numeric)?;
        for (a, b) in out.deform.iter_mut().zip(&o.deform) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.numeric = out.numeric.scale(c);
        out.deform = out.deform.iter().map(|v| v.scale(c)).collect();
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ChowError> {
        self.add(&o.scale(&-Scalar::one()))
    }

    /// `(a + εb)(c + εd) = ac + ε(ad + bc)`.
    pub fn product(&self, o: &Self) -> Result<Self, ChowError> {
        self.same_space(o)?;
        let mut out = Self::zero(&self.inst, self.m, self.p + o.p);
        out.numeric = self.numeric.wedge(&o.numeric)?;
        for (k, v) in out.deform.iter_mut().enumerate() {
            *v = self
                .numeric
                .wedge(&o.deform[k])?
                .add(&self.deform[k].wedge(&o.numeric)?)?;
        }
        Ok(out)
    }

    pub fn power(&self, r: u32) -> Result<Self, ChowError> {
        (0..r).try_fold(Self::one(&self.inst, self.m), |acc, _| acc.product(self))
    }

    /// Pullback along `f: A^n → A^m`.
    pub fn pullback(&self, f: &HomMatrix) -> Result<Self, ChowError> {
        if f.rows() != self.m {
            return Err(ChowError::Mismatch(format!(
                "pullback along {f} of a class on A^{}",
                self.m
            )));
        }
        self.inst.check_power(f.cols())?;
        let mut out = Self::zero(&self.inst, f.cols(), self.p);
        out.numeric = self.numeric.pullback(f)?;
        for (a, b) in out.deform.iter_mut().zip(&self.deform) {
            *a = b.pullback(f)?;
        }
        Ok(out)
    }

    /// Pushforward along `f: A^n → A^m`, raising codimension by `g(m - n)`.
    pub fn pushforward(&self, f: &HomMatrix) -> Result<Self, ChowError> {
        if f.cols() != self.m {
            return Err(ChowError::Mismatch(format!(
                "pushforward along {f} of a class on A^{}",
                self.m
            )));
        }
        self.inst.check_power(f.rows())?;
        let shift = self.g() as i64 * (f.rows() as i64 - f.cols() as i64);
        let mut out = Self::zero(&self.inst, f.rows(), self.p + shift);
        out.numeric = self.numeric.pushforward(f)?;
        for (a, b) in out.deform.iter_mut().zip(&self.deform) {
            *a = b.pushforward(f)?;
        }
        Ok(out)
    }

    /// `pr_1^*(x) · pr_2^*(y)` on `A^{a+b}`.
    pub fn external_tensor(&self, o: &Self) -> Result<Self, ChowError> {
        if self.inst != o.inst {
            return Err(ChowError::Mismatch("external tensor across instances".into()));
        }
        let (a, b) = (self.m, o.m);
        let pr1 = HomMatrix::projection(a + b, &(0..a).collect::<Vec<_>>());
        let pr2 = HomMatrix::projection(a + b, &(a..a + b).collect::<Vec<_>>());
        self.pullback(&pr1)?.product(&o.pullback(&pr2)?)
    }

    /// Drops the deformation part, landing in the numerical instance.
    pub fn numerical_projection(&self) -> Self {
        let inst = self.inst.numerical_quotient();
        CycleClass {
            inst,
            m: self.m,
            p: self.p,
            numeric: self.numeric.clone(),
            deform: Vec::new(),
        }
    }

    /// Whether every complementary class pairs to zero with this one.
    pub fn is_numerically_trivial(&self) -> bool {
        let g = self.g();
        let top = 2 * g * self.m;
        let d = 2 * self.p;
        if self.numeric.is_zero() || !in_range(g, self.m, d) {
            return true;
        }
        self.inst
            .invariants(self.m, top - d as usize)
            .iter()
            .all(|z| poincare_pair(&self.numeric, z).map(|v| v.is_zero()).unwrap_or(true))
    }

    /// `deg(x)`: pushforward to a point, read as a number.
    pub fn degree(&self) -> Scalar {
        if self.p != (self.g() * self.m) as i64 {
            return Scalar::zero();
        }
        self.numeric.top()
    }

    /// `m=1 p=1 num=(0,1):1/1 eps:0|0`, fields separated by whitespace.
    pub fn to_text(&self) -> String {
        let mut s = format!("m={} p={} num={}", self.m, self.p, self.numeric.to_text());
        if !self.deform.is_empty() {
            let parts: Vec<String> = self.deform.iter().map(ExteriorVector::to_text).collect();
            s.push_str(&format!(" eps:{}", parts.join("|")));
        }
        s
    }

    pub fn from_text(inst: &Arc<ChowInstance>, text: &str) -> Result<Self, ChowError> {
        let bad = |msg: &str| ChowError::Parse(format!("{msg} in \"{text}\""));
        let mut m = None;
        let mut p = None;
        let mut num = None;
        let mut eps = None;
        for field in text.split_whitespace() {
            if let Some(v) = field.strip_prefix("m=") {
                m = Some(v.trim().parse::<usize>().map_err(|_| bad("bad power"))?);
            } else if let Some(v) = field.strip_prefix("p=") {
                p = Some(v.trim().parse::<i64>().map_err(|_| bad("bad codimension"))?);
            } else if let Some(v) = field.strip_prefix("num=") {
                num = Some(v.trim().to_string());
            } else if let Some(v) = field.strip_prefix("eps:") {
                eps = Some(v.trim().to_string());
            } else {
                return Err(bad("unknown field"));
            }
        }
        let (m, p) = (m.ok_or_else(|| bad("missing m"))?, p.ok_or_else(|| bad("missing p"))?);
        inst.check_power(m)?;
        let g = inst.g;
        let parse = |t: &str| ExteriorVector::from_text(g, m, t).map_err(|e| ChowError::Parse(e.to_string()));
        let numeric = match num {
            Some(t) => parse(&t)?,
            None => ExteriorVector::zero(g, m),
        };
        let deform = match eps {
            Some(t) => t.split('|').map(|x| parse(x.trim())).collect::<Result<Vec<_>, _>>()?,
            None => vec![ExteriorVector::zero(g, m); inst.deform_dim()],
        };
        Self::new(inst, m, p, numeric, deform)
    }
}

fn random_invariant<R: Rng>(inst: &ChowInstance, m: usize, d: i64, rng: &mut R) -> ExteriorVector {
    let mut v = ExteriorVector::zero(inst.g, m);
    if !in_range(inst.g, m, d) {
        return v;
    }
    for b in inst.invariants(m, d as usize).iter() {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            v = v.add(&b.scale(&int(c))).expect("same algebra");
        }
    }
    v
}
