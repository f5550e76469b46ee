use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Canonical `p/q` text form (denominator always written).
pub fn format_scalar(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => Some(Scalar::from_integer(s.parse().ok()?)),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a(a-1)...(a-r+1)/r!`
pub fn generalized_binomial(a: i64, r: u32) -> Scalar {
    let mut num = BigInt::one();
    for i in 0..r as i64 {
        num *= BigInt::from(a - i);
    }
    Scalar::new(num, factorial(r))
}

/// `(-1)^k` as a scalar.
pub fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn to_i64(x: &Scalar) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    let n = x.to_integer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    n.try_into().ok()
}
