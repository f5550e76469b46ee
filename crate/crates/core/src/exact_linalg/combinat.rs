use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::scalar::{factorial, Scalar};
use super::LinalgError;

/// Pfaffian by first-row expansion, memoized on the set of remaining indices.
pub fn pfaffian(m: &RationalMatrix) -> Result<Scalar, LinalgError> {
    let n = m.rows();
    if !m.is_square() || n % 2 == 1 {
        return Err(LinalgError::Shape(format!(
            "Pfaffian needs even square size, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    if n > 64 {
        return Err(LinalgError::Shape("Pfaffian limited to size 64".into()));
    }
    if m.transpose() != m.scale(&-Scalar::one()) {
        return Err(LinalgError::Precondition("matrix is not skew-symmetric".into()));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(pf_rec(m, full, &mut memo))
}

fn pf_rec(m: &RationalMatrix, mask: u64, memo: &mut HashMap<u64, Scalar>) -> Scalar {
    if mask == 0 {
        return Scalar::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = Scalar::zero();
    let mut bits = rest;
    let mut k = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j);
        if !a.is_zero() {
            let sub = pf_rec(m, rest & !(1u64 << j), memo);
            let term = a * sub;
            if k.is_multiple_of(2) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        k += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Partitions of `r` in lexicographically decreasing order.
pub fn partitions(r: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), &mut out);
    out
}

/// Number of standard Young tableaux of shape `lambda` (hook-length formula).
pub fn hook_length_dim(lambda: &[usize]) -> BigInt {
    let r: usize = lambda.iter().sum();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&l| l > j).count();
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(r as u32) / hooks
}

/// `Σ_{λ ⊢ r, ℓ(λ) ≤ n} (f^λ)²`, the dimension of the image of `k[S_r]` in `End(V^{⊗r})`, `dim V = n`.
pub fn schur_weyl_dim(n: usize, r: usize) -> BigInt {
    partitions(r)
        .iter()
        .filter(|l| l.len() <= n)
        .map(|l| {
            let f = hook_length_dim(l);
            &f * &f
        })
        .sum()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Parity of a permutation (number of inversions mod 2).
pub fn permutation_parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

/// Set partitions of `0..m` as block-index vectors in restricted-growth form.
pub fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, m: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == m {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(i + 1, m, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, 0, &mut Vec::new(), &mut out);
    out
}

/// All subsets of `0..n` as bitmasks.
pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::scalar::int;

    #[test]
    fn pfaffian_examples() {
        let j = RationalMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(pfaffian(&j).unwrap(), int(1));
        assert_eq!(pfaffian(&RationalMatrix::zeros(4, 4)).unwrap(), int(0));
        assert_eq!(pfaffian(&j.block_diag(&j)).unwrap(), int(1));
        assert!(pfaffian(&RationalMatrix::identity(2)).is_err());
        assert!(pfaffian(&RationalMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn schur_weyl_examples() {
        assert_eq!(schur_weyl_dim(2, 3), BigInt::from(5));
        for r in 0..=6 {
            assert_eq!(schur_weyl_dim(1, r), BigInt::one());
            for n in r..=r + 2 {
                assert_eq!(schur_weyl_dim(n, r), factorial(r as u32));
            }
            for n in 0..r {
                assert!(schur_weyl_dim(n, r) <= schur_weyl_dim(n + 1, r));
            }
        }
    }

    #[test]
    fn enumerations() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(permutation_parity(&[1, 0, 2]), 1);
        assert_eq!(hook_length_dim(&[2, 1]), BigInt::from(2));
        let total: BigInt = partitions(5).iter().map(|l| hook_length_dim(l).pow(2)).sum();
        assert_eq!(total, factorial(5));
    }
}
