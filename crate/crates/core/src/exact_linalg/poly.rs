use std::fmt;

use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::scalar::{int, Scalar};
use super::LinalgError;

/// Dense univariate polynomial over ℚ, coefficients from degree 0 upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `T - c`
    pub fn linear(c: Scalar) -> Self {
        Self::new(vec![-c, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Scalar::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = Scalar::one() / d.lead();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lead_inv;
            for (i, x) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * x;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Scalar::one() / self.lead()))
    }

    /// `(g, u, v)` with `g = u·self + v·o` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::new(vec![]));
        let (mut t0, mut t1) = (Self::new(vec![]), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Scalar::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        self.ext_gcd(o).0
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, t: &RationalMatrix) -> RationalMatrix {
        let n = t.rows();
        let mut acc = RationalMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add(&RationalMatrix::identity(n).scale(c));
        }
        acc
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})T"),
                _ => format!("({c})T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomials `r_i` with `r_i ≡ 1 mod p_i` and `r_i ≡ 0 mod p_j` for `j ≠ i`.
pub fn crt_polys(polys: &[Poly]) -> Result<Vec<Poly>, LinalgError> {
    for (i, p) in polys.iter().enumerate() {
        if p.degree().is_none() {
            return Err(LinalgError::Precondition("zero polynomial in CRT family".into()));
        }
        for q in &polys[i + 1..] {
            if p.gcd(q).degree() != Some(0) {
                return Err(LinalgError::Precondition(format!(
                    "polynomials {p} and {q} are not coprime"
                )));
            }
        }
    }
    let product = polys.iter().fold(Poly::one(), |acc, p| acc.mul(p));
    Ok(polys
        .iter()
        .map(|p| {
            let cofactor = product.divrem(p).0;
            let (_, u, _) = cofactor.ext_gcd(p);
            u.mul(&cofactor).divrem(&product).1
        })
        .collect())
}

/// CRT idempotents `r_i(t)` for a family of coprime polynomials jointly annihilating `t`.
pub fn crt_idempotents(t: &RationalMatrix, polys: &[Poly]) -> Result<Vec<RationalMatrix>, LinalgError> {
    if !t.is_square() {
        return Err(LinalgError::Shape("CRT idempotents need a square matrix".into()));
    }
    let rs = crt_polys(polys)?;
    let product = polys.iter().fold(Poly::one(), |acc, p| acc.mul(p));
    let residual = product.eval_matrix(t);
    if !residual.is_zero() {
        return Err(LinalgError::Residual(residual));
    }
    Ok(rs.iter().map(|r| r.eval_matrix(t)).collect())
}

/// Characteristic polynomial `det(T·1 - t)` by Faddeev–LeVerrier.
pub fn char_poly(t: &RationalMatrix) -> Result<Poly, LinalgError> {
    if !t.is_square() {
        return Err(LinalgError::Shape(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let n = t.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        m = t.mul(&m).add(&RationalMatrix::identity(n).scale(&coeffs[n + 1 - k]));
        coeffs[n - k] = -t.mul(&m).trace() / int(k as i64);
    }
    Ok(Poly::new(coeffs))
}

/// `χ_t(t)`, which vanishes by Cayley–Hamilton.
pub fn cayley_hamilton_residual(t: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
    Ok(char_poly(t)?.eval_matrix(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_and_gcd() {
        let a = Poly::from_i64(&[-1, 0, 1]);
        let b = Poly::from_i64(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, Poly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_i64(&[-4, 1]);
        let (g, u, v) = a.ext_gcd(&c);
        assert_eq!(g, Poly::one());
        assert_eq!(u.mul(&a).add(&v.mul(&c)), Poly::one());
    }

    #[test]
    fn characteristic_polynomial() {
        let t = RationalMatrix::from_i64(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(char_poly(&t).unwrap(), Poly::from_i64(&[-2, -5, 1]));
        assert!(cayley_hamilton_residual(&t).unwrap().is_zero());
        let u = RationalMatrix::from_i64(&[vec![2, 0, 1], vec![1, -1, 3], vec![0, 5, 7]]);
        assert_eq!(char_poly(&u).unwrap().coeffs()[0], -u.det());
        assert!(cayley_hamilton_residual(&u).unwrap().is_zero());
    }

    #[test]
    fn crt_examples() {
        let t = RationalMatrix::diagonal(&[int(1), int(4)]);
        let es = crt_idempotents(&t, &[Poly::linear(int(1)), Poly::linear(int(4))]).unwrap();
        assert_eq!(es[0], RationalMatrix::diagonal(&[int(1), int(0)]));
        assert_eq!(es[1], RationalMatrix::diagonal(&[int(0), int(1)]));

        let id = RationalMatrix::identity(3);
        let es = crt_idempotents(&id, &[Poly::linear(int(1))]).unwrap();
        assert_eq!(es, vec![id]);
    }

    #[test]
    fn crt_jordan_block() {
        let t = RationalMatrix::from_i64(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let polys = [Poly::linear(int(2)).pow(2), Poly::linear(int(3))];
        let es = crt_idempotents(&t, &polys).unwrap();
        assert_eq!(es[0], RationalMatrix::diagonal(&[int(1), int(1), int(0)]));
        assert_eq!(es[1], RationalMatrix::diagonal(&[int(0), int(0), int(1)]));
        for (e, p) in es.iter().zip(&polys) {
            assert_eq!(e.mul(e), *e);
            assert_eq!(e.mul(&t), t.mul(e));
            assert!(p.eval_matrix(&t).mul(e).is_zero());
        }
    }

    #[test]
    fn crt_rejects_non_annihilating() {
        let t = RationalMatrix::from_i64(&[vec![2, 1], vec![0, 2]]);
        match crt_idempotents(&t, &[Poly::linear(int(2))]) {
            Err(LinalgError::Residual(r)) => assert_eq!(r, RationalMatrix::from_i64(&[vec![0, 1], vec![0, 0]])),
            other => panic!("unexpected {other:?}"),
        }
        assert!(crt_idempotents(&t, &[Poly::linear(int(2)), Poly::linear(int(2))]).is_err());
    }
}
