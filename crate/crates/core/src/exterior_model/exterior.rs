use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExteriorError;
use crate::chow_theory::HomMatrix;
use crate::exact_linalg::{format_scalar, parse_scalar, RationalMatrix, Scalar};

/// Monomial in `Λ(V^{⊕m})` as a bitmask over global indices `factor·2g + local`,
/// with local order `e_1..e_g, f_1..f_g`.
pub type Mask = u128;

/// Sign of `e_a ∧ e_b` relative to the sorted monomial `e_{a∪b}`; `None` on overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        bits &= bits - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// Sign of `vol = ∧_factors (e_1∧f_1∧⋯∧e_g∧f_g)` relative to the sorted top monomial.
pub fn volume_sign(g: usize, m: usize) -> bool {
    (g * (g.saturating_sub(1)) / 2 * m) % 2 == 1
}

pub fn full_mask(g: usize, m: usize) -> Mask {
    let bits = 2 * g * m;
    if bits == 128 {
        Mask::MAX
    } else {
        (1u128 << bits) - 1
    }
}

/// Element of `Λ(V^{⊕m})`, `dim V = 2g`, with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorVector {
    g: usize,
    m: usize,
    terms: BTreeMap<Mask, Scalar>,
}

impl ExteriorVector {
    pub fn zero(g: usize, m: usize) -> Self {
        assert!(2 * g * m <= 128, "exterior algebra limited to 128 generators");
        ExteriorVector {
            g,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(g: usize, m: usize) -> Self {
        Self::monomial(g, m, 0, Scalar::one())
    }

    pub fn monomial(g: usize, m: usize, mask: Mask, c: Scalar) -> Self {
        let mut v = Self::zero(g, m);
        assert!(mask & !full_mask(g, m) == 0, "monomial outside the algebra");
        v.add_term(mask, c);
        v
    }

    /// Basis vector `x_{factor, local}` as a degree-one element.
    pub fn generator(g: usize, m: usize, factor: usize, local: usize) -> Self {
        Self::monomial(g, m, 1u128 << (factor * 2 * g + local), Scalar::one())
    }

    /// `e_i` (0-based `i < g`) in the given factor.
    pub fn e(g: usize, m: usize, factor: usize, i: usize) -> Self {
        Self::generator(g, m, factor, i)
    }

    /// `f_i` (0-based `i < g`) in the given factor.
    pub fn f(g: usize, m: usize, factor: usize, i: usize) -> Self {
        Self::generator(g, m, factor, g + i)
    }

    /// `vol = ∧_factors (e_1∧f_1∧⋯∧e_g∧f_g)`.
    pub fn volume(g: usize, m: usize) -> Self {
        let c = if volume_sign(g, m) {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        Self::monomial(g, m, full_mask(g, m), c)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Mask, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mask: Mask) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, mask: Mask, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// Common degree of all terms, `None` for zero or inhomogeneous vectors.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|k| k.count_ones() as usize);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Homogeneous piece of degree `d`.
    pub fn part(&self, d: usize) -> Self {
        let mut out = Self::zero(self.g, self.m);
        for (k, c) in &self.terms {
            if k.count_ones() as usize == d {
                out.terms.insert(*k, c.clone());
            }
        }
        out
    }

    fn check(&self, o: &Self) -> Result<(), ExteriorError> {
        if self.g != o.g || self.m != o.m {
            return Err(ExteriorError::Mismatch(format!(
                "vectors live on A^{} (g={}) and A^{} (g={})",
                self.m, self.g, o.m, o.g
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.check(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.g, self.m);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self, ExteriorError> {
        self.check(o)?;
        let mut out = Self::zero(self.g, self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some(neg) = wedge_sign(*a, *b) {
                    let c = ca * cb;
                    out.add_term(a | b, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, r: u32) -> Self {
        let mut acc = Self::one(self.g, self.m);
        for _ in 0..r {
            acc = acc.wedge(self).expect("same algebra");
        }
        acc
    }

    /// Coefficient of `vol` in the top-degree part.
    pub fn top(&self) -> Scalar {
        let c = self.coeff(full_mask(self.g, self.m));
        if volume_sign(self.g, self.m) {
            -c
        } else {
            c
        }
    }

    /// Pullback along `f: A^n → A^m` (self on `A^m`): `x_{j,a} ↦ Σ_i f[j][i] x_{i,a}`.
    pub fn pullback(&self, f: &HomMatrix) -> Result<Self, ExteriorError> {
        if f.rows() != self.m {
            return Err(ExteriorError::Mismatch(format!(
                "pullback along {f} of a class on A^{}",
                self.m
            )));
        }
        let mut out = Self::zero(self.g, f.cols());
        for (mask, c) in &self.terms {
            for (k, v) in pullback_monomial(self.g, f, *mask).terms {
                out.add_term(k, v * c);
            }
        }
        Ok(out)
    }

    /// Pushforward along `f: A^n → A^m` (self on `A^n`), the adjoint of pullback
    /// under the Poincaré pairing: `⟨f_*x, y⟩ = ⟨x, f^*y⟩`.
    pub fn pushforward(&self, f: &HomMatrix) -> Result<Self, ExteriorError> {
        if f.cols() != self.m {
            return Err(ExteriorError::Mismatch(format!(
                "pushforward along {f} of a class on A^{}",
                self.m
            )));
        }
        let (g, n, m) = (self.g, f.cols(), f.rows());
        let mut out = Self::zero(g, m);
        let mut degrees: Vec<usize> = self.terms.keys().map(|k| k.count_ones() as usize).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let full_n = full_mask(g, n);
        let full_m = full_mask(g, m);
        let sign_n = volume_sign(g, n);
        let sign_m = volume_sign(g, m);
        for d in degrees {
            let target_deg = d as i64 + 2 * g as i64 * (m as i64 - n as i64);
            if target_deg < 0 || target_deg > (2 * g * m) as i64 {
                continue;
            }
            let comp_deg = 2 * g * n - d;
            for k in masks_of_degree(2 * g * m, comp_deg) {
                let pulled = pullback_monomial(g, f, k);
                let mut acc = Scalar::zero();
                for (t, ct) in &pulled.terms {
                    let s = full_n & !t;
                    if let Some(cx) = self.terms.get(&s) {
                        let neg = wedge_sign(s, *t).expect("complementary masks");
                        let v = cx * ct;
                        acc += if neg { -v } else { v };
                    }
                }
                if acc.is_zero() {
                    continue;
                }
                let j = full_m & !k;
                let neg = wedge_sign(j, k).expect("complementary masks") ^ sign_n ^ sign_m;
                out.add_term(j, if neg { -acc } else { acc });
            }
        }
        Ok(out)
    }

    /// `(i1,i2,...):p/q;...` with sorted global indices; `0` for the zero vector.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let idx: Vec<String> = mask_indices(*k).iter().map(usize::to_string).collect();
                format!("({}):{}", idx.join(","), format_scalar(c))
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(g: usize, m: usize, s: &str) -> Result<Self, ExteriorError> {
        let s = s.trim();
        let mut out = Self::zero(g, m);
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        let bad = |msg: &str| ExteriorError::Parse(format!("{msg} in `{s}`"));
        for term in s.split(';') {
            let (idx, c) = term.trim().split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let inner = idx
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| bad("expected parenthesised indices"))?;
            let mut mask: Mask = 0;
            let mut last = None;
            for i in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let i: usize = i.parse().map_err(|_| bad("bad index"))?;
                if i >= 2 * g * m || last.is_some_and(|l| l >= i) {
                    return Err(bad("indices must be sorted and in range"));
                }
                last = Some(i);
                mask |= 1u128 << i;
            }
            let c = parse_scalar(c).ok_or_else(|| bad("bad coefficient"))?;
            out.add_term(mask, c);
        }
        Ok(out)
    }
}

impl fmt::Display for ExteriorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub fn mask_indices(mask: Mask) -> Vec<usize> {
    let mut out = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

/// All masks with `k` bits set among the low `bits` positions, in increasing order.
pub fn masks_of_degree(bits: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    fn rec(start: usize, bits: usize, k: usize, cur: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..bits {
            if bits - i < k {
                break;
            }
            rec(i + 1, bits, k - 1, cur | (1u128 << i), out);
        }
    }
    if k <= bits {
        rec(0, bits, k, 0, &mut out);
    }
    out.sort_unstable();
    out
}

/// Determinant of a small integer matrix by cofactor expansion.
fn small_det(m: &[Vec<i64>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => BigInt::from(m[0][0]),
        _ => {
            let mut acc = BigInt::zero();
            for (c, &v) in m[0].iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect())
                    .collect();
                let t = small_det(&minor) * v;
                if c % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc
        }
    }
}

/// Pullback of a single monomial on `A^{f.rows()}`.
///
/// Grouping the monomial by local index `a`, each group `∧_{j∈J} x_{j,a}`
/// pulls back to `Σ_I det f[J,I] ∧_{i∈I} x_{i,a}`.
pub fn pullback_monomial(g: usize, f: &HomMatrix, mask: Mask) -> ExteriorVector {
    let n = f.cols();
    let w = 2 * g;
    let mut groups = vec![Vec::new(); w];
    for idx in mask_indices(mask) {
        groups[idx % w].push(idx / w);
    }
    let order: Vec<usize> = (0..w).flat_map(|a| groups[a].iter().map(move |&j| j * w + a)).collect();
    let mut inversions = 0usize;
    for (x, a) in order.iter().enumerate() {
        inversions += order[x + 1..].iter().filter(|b| *b < a).count();
    }
    let mut acc: BTreeMap<Mask, BigInt> = BTreeMap::new();
    acc.insert(
        0,
        if inversions % 2 == 1 {
            -BigInt::one()
        } else {
            BigInt::one()
        },
    );
    for (a, rows) in groups.iter().enumerate() {
        if rows.is_empty() {
            continue;
        }
        let mut next: BTreeMap<Mask, BigInt> = BTreeMap::new();
        for cols in masks_of_degree(n, rows.len()) {
            let cols = mask_indices(cols);
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .map(|&j| cols.iter().map(|&i| f.get(j, i)).collect())
                .collect();
            let det = small_det(&minor);
            if det.is_zero() {
                continue;
            }
            let piece: Mask = cols.iter().fold(0, |acc, &i| acc | 1u128 << (i * w + a));
            for (mk, c) in &acc {
                if let Some(neg) = wedge_sign(*mk, piece) {
                    let v = c * &det;
                    let e = next.entry(mk | piece).or_insert_with(BigInt::zero);
                    if neg {
                        *e -= v;
                    } else {
                        *e += v;
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    let mut out = ExteriorVector::zero(g, n);
    for (k, c) in acc {
        out.add_term(k, Scalar::from_integer(c));
    }
    out
}

/// Matrix of the Poincaré pairing `Λ^d × Λ^{2gm−d} → ℚ` on monomial bases.
pub fn pairing_matrix(g: usize, m: usize, d: usize) -> RationalMatrix {
    let top = 2 * g * m;
    let left = masks_of_degree(top, d);
    let right = masks_of_degree(top, top - d);
    let mut out = RationalMatrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            if let Some(neg) = wedge_sign(*a, *b) {
                let neg = neg ^ volume_sign(g, m);
                out.set(i, j, if neg { -Scalar::one() } else { Scalar::one() });
            }
        }
    }
    out
}

/// `⟨x, y⟩ = coefficient of vol in x ∧ y`.
pub fn poincare_pair(x: &ExteriorVector, y: &ExteriorVector) -> Result<Scalar, ExteriorError> {
    if let (Some(a), Some(b)) = (x.degree(), y.degree()) {
        if a + b != 2 * x.g * x.m {
            return Err(ExteriorError::Mismatch(format!(
                "degrees {a} and {b} are not complementary in A^{}",
                x.m
            )));
        }
    }
    Ok(x.wedge(y)?.top())
}
