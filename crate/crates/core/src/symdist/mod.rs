//! Symmetrically distinguished classes and their canonical lifts.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::chow_theory::{random_hom, ChowError, ChowInstance, CycleClass, HomMatrix, Report};
use crate::exact_linalg::{crt_polys, int, kernel_basis, set_partitions, EchelonBasis, Poly, RationalMatrix, Scalar};
use crate::exterior_model::Mask;

#[derive(Debug, thiserror::Error)]
pub enum SymdistError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("model consistency failure: {0}")]
    Consistency(String),
}

type Coords = BTreeMap<(usize, Mask), Scalar>;

/// Coordinates of a class: component 0 is numerical, `k + 1` the `k`-th deformation part.
fn coords(x: &CycleClass) -> Coords {
    let mut out = Coords::new();
    for (mask, c) in x.numeric.terms() {
        out.insert((0, *mask), c.clone());
    }
    for (k, v) in x.deform.iter().enumerate() {
        for (mask, c) in v.terms() {
            out.insert((k + 1, *mask), c.clone());
        }
    }
    out
}

fn numeric_coords(x: &CycleClass) -> Coords {
    x.numeric.terms().iter().map(|(m, c)| ((0, *m), c.clone())).collect()
}

/// A spanning class with its provenance `p_*(β_1 ⊗ ⋯ ⊗ β_n)`.
#[derive(Clone, Debug)]
pub struct Generator {
    pub map: HomMatrix,
    /// Exponent of `α` per source factor; `None` marks `ι_*(1)`.
    pub factors: Vec<Option<u32>>,
    pub class: CycleClass,
}

impl Generator {
    pub fn describe(&self) -> String {
        let f: Vec<String> = self
            .factors
            .iter()
            .map(|e| match e {
                Some(r) => format!("a^{r}"),
                None => "iota1".into(),
            })
            .collect();
        format!("p={} ({})", self.map, f.join(" # "))
    }
}

/// Span of a family of classes on `A^m` and its numerical image.
#[derive(Clone, Debug)]
pub struct SpanReport {
    pub m: usize,
    /// Linearly independent generators spanning the space.
    pub generators: Vec<Generator>,
    pub candidates: usize,
    pub span_dim: usize,
    pub image_dim: usize,
    pub injective: bool,
    /// A nonzero element of the span with trivial numerical image.
    pub witness: Option<CycleClass>,
}

fn span_report(m: usize, candidates: Vec<Generator>) -> SpanReport {
    let total = candidates.len();
    let mut span = EchelonBasis::new();
    let mut kept = Vec::new();
    for g in candidates {
        if span.insert(&coords(&g.class)) {
            kept.push(g);
        }
    }
    let mut image = EchelonBasis::new();
    for g in &kept {
        image.insert(&numeric_coords(&g.class));
    }
    let (span_dim, image_dim) = (kept.len(), image.len());
    let witness = (span_dim > image_dim).then(|| {
        let keys: Vec<(usize, Mask)> = {
            let mut ks: Vec<_> = kept.iter().flat_map(|g| numeric_coords(&g.class).into_keys()).collect();
            ks.sort_unstable();
            ks.dedup();
            ks
        };
        let cols: Vec<Coords> = kept.iter().map(|g| numeric_coords(&g.class)).collect();
        let rows: Vec<Vec<Scalar>> = keys
            .iter()
            .map(|k| {
                cols.iter()
                    .map(|c| c.get(k).cloned().unwrap_or_else(Scalar::zero))
                    .collect()
            })
            .collect();
        let mat = RationalMatrix::from_rows_with_cols(rows, kept.len());
        let v = kernel_basis(&mat)
            .into_iter()
            .next()
            .expect("image is smaller than span");
        let mut w = CycleClass::zero(&kept[0].class.inst, m, kept[0].class.p);
        for (g, c) in kept.iter().zip(&v) {
            if !c.is_zero() {
                w = w.add(&g.class.scale(c)).expect("same space");
            }
        }
        w
    });
    SpanReport {
        m,
        generators: kept,
        candidates: total,
        span_dim,
        image_dim,
        injective: span_dim == image_dim,
        witness,
    }
}

fn is_symmetric(x: &CycleClass) -> Result<bool, ChowError> {
    Ok(x.pullback(&HomMatrix::multiple(x.m, -1))? == *x)
}

/// `α^0, α^1, …` up to the first power already in the span of the earlier ones.
fn powers(alpha: &CycleClass) -> Result<Vec<CycleClass>, ChowError> {
    let mut out = vec![CycleClass::one(&alpha.inst, alpha.m)];
    let mut span = EchelonBasis::new();
    span.insert(&coords(&out[0]));
    loop {
        let next = out.last().expect("nonempty").product(alpha)?;
        if !span.insert(&coords(&next)) {
            return Ok(out);
        }
        out.push(next);
    }
}

/// Closed immersions `A^n → A^m` in `E_A`: surjective sign-coordinate assignments,
/// taken up to reordering of source factors and, when `symmetric`, with a fixed
/// sign on the first coordinate hitting each factor.
fn closed_immersions(m: usize, symmetric: bool) -> Vec<HomMatrix> {
    let mut out = Vec::new();
    if m == 0 {
        out.push(HomMatrix::identity(0));
        return out;
    }
    for blocks in set_partitions(m) {
        let n = blocks.iter().max().map_or(0, |b| b + 1);
        let free: Vec<usize> = if symmetric {
            (0..m).filter(|&j| blocks[..j].contains(&blocks[j])).collect()
        } else {
            (0..m).collect()
        };
        for signs in 0u64..(1 << free.len()) {
            let mut rows = vec![vec![0i64; n]; m];
            for (j, row) in rows.iter_mut().enumerate() {
                row[blocks[j]] = 1;
            }
            for (bit, &j) in free.iter().enumerate() {
                if signs >> bit & 1 == 1 {
                    rows[j][blocks[j]] = -1;
                }
            }
            out.push(HomMatrix::from_rows(n, &rows));
        }
    }
    out
}

fn tensor_all(inst: &Arc<ChowInstance>, factors: &[CycleClass]) -> Result<CycleClass, ChowError> {
    factors
        .iter()
        .try_fold(CycleClass::one(inst, 0), |acc, x| acc.external_tensor(x))
}

fn enumerate_span(
    alpha: &CycleClass,
    m: usize,
    pieces: &[(Option<u32>, CycleClass)],
    symmetric: bool,
) -> Result<SpanReport, ChowError> {
    let inst = &alpha.inst;
    let mut candidates = Vec::new();
    for p in closed_immersions(m, symmetric) {
        let n = p.cols();
        let mut choice = vec![0usize; n];
        loop {
            let classes: Vec<CycleClass> = choice.iter().map(|&c| pieces[c].1.clone()).collect();
            let class = tensor_all(inst, &classes)?.pushforward(&p)?;
            let factors = choice.iter().map(|&c| pieces[c].0).collect();
            candidates.push(Generator {
                map: p.clone(),
                factors,
                class,
            });
            let mut k = 0;
            while k < n {
                choice[k] += 1;
                if choice[k] < pieces.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(span_report(m, candidates))
}

fn check_on_a(alpha: &CycleClass) -> Result<(), SymdistError> {
    if alpha.m != 1 {
        return Err(SymdistError::Precondition(format!(
            "α must be a class on A, not A^{}",
            alpha.m
        )));
    }
    Ok(())
}

/// `V_m(α)`: span of `p_*(α^{r_1} ⊗ ⋯ ⊗ α^{r_n})` over closed immersions `p` in `E_A`.
pub fn vm_span(alpha: &CycleClass, m: usize) -> Result<SpanReport, SymdistError> {
    check_on_a(alpha)?;
    let pieces: Vec<(Option<u32>, CycleClass)> = powers(alpha)?
        .into_iter()
        .enumerate()
        .map(|(r, c)| (Some(r as u32), c))
        .collect();
    Ok(enumerate_span(alpha, m, &pieces, is_symmetric(alpha)?)?)
}

/// `(2·2^{2g-1} + 1)·m₀` with `m₀ = 1`.
pub fn theoretical_bound(g: usize) -> usize {
    2 * (1usize << (2 * g - 1)) + 1
}

pub fn default_m_max(g: usize) -> usize {
    theoretical_bound(g).min(6)
}

#[derive(Clone, Debug)]
pub struct Distinction {
    pub passes: bool,
    pub fail_at: Option<usize>,
    pub m_max: usize,
    pub theoretical_bound: usize,
    pub reports: Vec<SpanReport>,
}

/// Injectivity of `V_m(α) → C̄(A^m)` for `m ≤ m_max`, stopping at the first failure.
pub fn is_symmetrically_distinguished(alpha: &CycleClass, m_max: usize) -> Result<Distinction, SymdistError> {
    let mut reports = Vec::new();
    for m in 0..=m_max {
        let rep = vm_span(alpha, m)?;
        let ok = rep.injective;
        reports.push(rep);
        if !ok {
            return Ok(Distinction {
                passes: false,
                fail_at: Some(m),
                m_max,
                theoretical_bound: theoretical_bound(alpha.g()),
                reports,
            });
        }
    }
    Ok(Distinction {
        passes: true,
        fail_at: None,
        m_max,
        theoretical_bound: theoretical_bound(alpha.g()),
        reports,
    })
}

fn is_scalar(x: &CycleClass) -> bool {
    x.is_zero() || (x.p == 0 && x.is_numeric())
}

/// `C_α(A^m)`: span of `p_*(β_1 ⊗ ⋯ ⊗ β_n)` with each `β_i` either `ι_*(1)` or a power of `α`.
pub fn c_alpha_span(alpha: &CycleClass, m: usize) -> Result<SpanReport, SymdistError> {
    check_on_a(alpha)?;
    if !is_symmetric(alpha)? {
        return Err(SymdistError::Precondition("α is not symmetric".into()));
    }
    let inst = &alpha.inst;
    let pw = powers(alpha)?;
    if !is_scalar(&alpha.pullback(&HomMatrix::zero(1, 0))?) {
        return Err(SymdistError::Precondition("ι^*(α) is not a scalar".into()));
    }
    for (r, x) in pw.iter().enumerate() {
        if !is_scalar(&x.pushforward(&HomMatrix::zero(0, 1))?) {
            return Err(SymdistError::Precondition(format!(
                "the pushforward of α^{r} to S is not a scalar"
            )));
        }
    }
    let mut pieces: Vec<(Option<u32>, CycleClass)> =
        pw.into_iter().enumerate().map(|(r, c)| (Some(r as u32), c)).collect();
    pieces.push((None, CycleClass::iota(inst, 1)?));
    Ok(enumerate_span(alpha, m, &pieces, true)?)
}

/// The lift `(ᾱ, 0)` of a numerical class into a deformed instance, verified up to `m_max`.
pub fn canonical_lift(
    alphabar: &CycleClass,
    target: &Arc<ChowInstance>,
    m_max: usize,
) -> Result<CycleClass, SymdistError> {
    if alphabar.g() != target.g {
        return Err(SymdistError::Precondition("instances have different g".into()));
    }
    if !alphabar.is_numeric() {
        return Err(SymdistError::Precondition("ᾱ must be a numerical class".into()));
    }
    let lift = CycleClass::new(
        target,
        alphabar.m,
        alphabar.p,
        alphabar.numeric.clone(),
        vec![crate::exterior_model::ExteriorVector::zero(target.g, alphabar.m); target.deform_dim()],
    )?;
    if alphabar.m == 1 && m_max > 0 {
        let d = is_symmetrically_distinguished(&lift, m_max)?;
        if !d.passes {
            return Err(SymdistError::Consistency(format!(
                "lift of {} fails at m = {:?}",
                alphabar.to_text(),
                d.fail_at
            )));
        }
    }
    Ok(lift)
}

#[derive(Clone, Debug)]
pub struct ProbeResult {
    pub perturbation: CycleClass,
    pub fail_at: Option<usize>,
    pub witness: Option<CycleClass>,
}

/// For each perturbation `w`, the least `m ≤ m_max` at which `ᾱ + w` fails.
pub fn uniqueness_probe(
    alphabar: &CycleClass,
    target: &Arc<ChowInstance>,
    perturbations: &[CycleClass],
    m_max: usize,
) -> Result<Vec<ProbeResult>, SymdistError> {
    let lift = canonical_lift(alphabar, target, 0)?;
    let mut out = Vec::new();
    for w in perturbations {
        let d = is_symmetrically_distinguished(&lift.add(w)?, m_max)?;
        let witness = d.reports.last().and_then(|r| r.witness.clone());
        out.push(ProbeResult {
            perturbation: w.clone(),
            fail_at: d.fail_at,
            witness,
        });
    }
    Ok(out)
}

/// `c·ε` for `c ∈ {±1, ±2, ±1/2}`, in the codimension of `ᾱ`.
pub fn perturbation_grid(target: &Arc<ChowInstance>, p: i64) -> Result<Vec<CycleClass>, SymdistError> {
    let mut out = Vec::new();
    let s = target
        .weight()
        .ok_or_else(|| SymdistError::Precondition("numerical instance".into()))? as i64;
    for k in 0..target.deform_dim() {
        let mut base = CycleClass::zero(target, 1, p);
        let d = 2 * p - s;
        if d < 0 || d as usize > 2 * target.g {
            continue;
        }
        for inv in target.invariants(1, d as usize).iter() {
            base.deform[k] = inv.clone();
            for c in [
                int(1),
                int(-1),
                int(2),
                int(-2),
                Scalar::new(1.into(), 2.into()),
                Scalar::new((-1).into(), 2.into()),
            ] {
                out.push(base.scale(&c));
            }
        }
    }
    Ok(out)
}

/// Decomposition `x = Σ_i x_i` with `(2_A)^* x_i = 2^{2p-i} x_i`, `i ∈ {0, s}`.
pub fn beauville_split(x: &CycleClass) -> Result<Vec<(usize, CycleClass)>, SymdistError> {
    if x.is_zero() {
        return Ok(Vec::new());
    }
    let two = HomMatrix::multiple(x.m, 2);
    let mut weights = vec![0usize];
    if let Some(s) = x.inst.weight() {
        if 2 * x.p >= s as i64 {
            weights.push(s);
        }
    }
    let lambdas: Vec<Scalar> = weights
        .iter()
        .map(|&i| int(2).pow((2 * x.p - i as i64) as i32))
        .collect();
    let polys: Vec<Poly> = lambdas.iter().map(|l| Poly::linear(l.clone())).collect();
    let apply = |p: &Poly| -> Result<CycleClass, ChowError> {
        let mut acc = CycleClass::zero(&x.inst, x.m, x.p);
        for c in p.coeffs().iter().rev() {
            acc = acc.pullback(&two)?.add(&x.scale(c))?;
        }
        Ok(acc)
    };
    let product = polys.iter().fold(Poly::one(), |acc, p| acc.mul(p));
    if !apply(&product)?.is_zero() {
        return Err(SymdistError::Consistency(
            "2_A does not act with the expected weights".into(),
        ));
    }
    let rs = crt_polys(&polys).map_err(|e| SymdistError::Consistency(e.to_string()))?;
    let mut out = Vec::new();
    for (&i, r) in weights.iter().zip(&rs) {
        let part = apply(r)?;
        if !part.is_zero() {
            out.push((i, part));
        }
    }
    Ok(out)
}

/// Closure and bijectivity properties of the canonical lifts.
pub fn stability_suite<R: Rng>(target: &Arc<ChowInstance>, m_max: usize, rng: &mut R) -> Result<Report, SymdistError> {
    let num = target.numerical_quotient();
    let lift = |x: &CycleClass| canonical_lift(x, target, 0);
    let mut rep = Report::default();
    for m in 0..=m_max {
        for p in 0..=(target.g * m) as i64 {
            let x = CycleClass::random(&num, m, p, rng);
            let y = CycleClass::random(&num, m, p, rng);
            let c = int(rng.gen_range(-3..=3));
            rep.record(
                "linear combinations",
                lift(&x)?.add(&lift(&y)?.scale(&c))? == lift(&x.add(&y.scale(&c))?)?,
                || x.to_text(),
            );
            let z = CycleClass::random(&num, m, rng.gen_range(0..=(target.g * m) as i64), rng);
            rep.record(
                "products",
                lift(&x)?.product(&lift(&z)?)? == lift(&x.product(&z)?)?,
                || x.to_text(),
            );
            let k = rng.gen_range(0..=m_max);
            let f = random_hom(rng, m, k);
            rep.record("pullback", lift(&x)?.pullback(&f)? == lift(&x.pullback(&f)?)?, || {
                format!("f={f}")
            });
            let f = random_hom(rng, k, m);
            rep.record(
                "pushforward",
                lift(&x)?.pushforward(&f)? == lift(&x.pushforward(&f)?)?,
                || format!("f={f}"),
            );
            rep.record("symmetric", is_symmetric(&lift(&x)?)?, || x.to_text());
            // projection restricted to lifts is a bijection onto C̄^p(A^m)
            let basis = target.invariants(m, 2 * p as usize);
            let mut lifted = EchelonBasis::new();
            let mut projected = EchelonBasis::new();
            for b in basis.iter() {
                let bar = CycleClass::new(&num, m, p, b.clone(), vec![])?;
                let l = lift(&bar)?;
                lifted.insert(&coords(&l));
                projected.insert(&numeric_coords(&l.numerical_projection()));
                if l.numerical_projection() != bar {
                    rep.record("bijective projection", false, || bar.to_text());
                }
            }
            rep.record(
                "bijective projection",
                lifted.len() == basis.len() && projected.len() == basis.len(),
                || format!("m={m} p={p}"),
            );
        }
    }
    rep.record(
        "lift(0) = 0",
        lift(&CycleClass::zero(&num, 1, 1))?.is_zero(),
        String::new,
    );
    Ok(rep)
}

/// JSON form of a span report.
#[derive(Clone, Debug, Serialize)]
pub struct SpanSummary {
    pub m: usize,
    pub span_dim: usize,
    pub image_dim: usize,
    pub injective: bool,
    pub witness: Option<String>,
}

impl From<&SpanReport> for SpanSummary {
    fn from(r: &SpanReport) -> Self {
        SpanSummary {
            m: r.m,
            span_dim: r.span_dim,
            image_dim: r.image_dim,
            injective: r.injective,
            witness: r.witness.as_ref().map(CycleClass::to_text),
        }
    }
}
