use std::fmt;

use crate::exact_linalg::{int, to_i64, RationalMatrix};

/// Integer matrix of a homomorphism `A^n → A^m` (`m` rows, `n` columns).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomMatrix {
    m: usize,
    n: usize,
    entries: Vec<i64>,
}

impl HomMatrix {
    pub fn new(m: usize, n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), m * n, "entry count must be m·n");
        HomMatrix { m, n, entries }
    }

    /// From rows; `n` is needed when there are no rows.
    pub fn from_rows(n: usize, rows: &[Vec<i64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * n);
        for r in rows {
            assert_eq!(r.len(), n, "ragged matrix");
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), n, entries)
    }

    pub fn zero(m: usize, n: usize) -> Self {
        Self::new(m, n, vec![0; m * n])
    }

    pub fn identity(n: usize) -> Self {
        Self::multiple(n, 1)
    }

    /// `k_{A^n}`.
    pub fn multiple(n: usize, k: i64) -> Self {
        let mut h = Self::zero(n, n);
        for i in 0..n {
            h.entries[i * n + i] = k;
        }
        h
    }

    /// `A^m → A^{len}` picking the given coordinates.
    pub fn projection(m: usize, coords: &[usize]) -> Self {
        let mut h = Self::zero(coords.len(), m);
        for (j, &c) in coords.iter().enumerate() {
            h.entries[j * m + c] = 1;
        }
        h
    }

    /// Diagonal `A^n → A^{kn}`.
    pub fn diagonal(n: usize, k: usize) -> Self {
        let coords: Vec<usize> = (0..k).flat_map(|_| 0..n).collect();
        Self::projection(n, &coords)
    }

    /// Swap `A^{a+b} → A^{b+a}` of the two blocks.
    pub fn block_swap(a: usize, b: usize) -> Self {
        let coords: Vec<usize> = (a..a + b).chain(0..a).collect();
        Self::projection(a + b, &coords)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, i: usize) -> i64 {
        self.entries[j * self.n + i]
    }

    pub fn row(&self, j: usize) -> &[i64] {
        &self.entries[j * self.n..(j + 1) * self.n]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HomMatrix) -> HomMatrix {
        assert_eq!(self.n, other.m, "composition shape mismatch");
        let mut out = Self::zero(self.m, other.n);
        for j in 0..self.m {
            for k in 0..self.n {
                let a = self.get(j, k);
                if a == 0 {
                    continue;
                }
                for i in 0..other.n {
                    out.entries[j * other.n + i] += a * other.get(k, i);
                }
            }
        }
        out
    }

    /// `(self, other): X → Y × Z`, stacking rows.
    pub fn pair(&self, other: &HomMatrix) -> HomMatrix {
        assert_eq!(self.n, other.n, "pairing needs a common source");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.m + other.m, self.n, entries)
    }

    /// `self × other` (block diagonal).
    pub fn product(&self, other: &HomMatrix) -> HomMatrix {
        let (m, n) = (self.m + other.m, self.n + other.n);
        let mut out = Self::zero(m, n);
        for j in 0..self.m {
            for i in 0..self.n {
                out.entries[j * n + i] = self.get(j, i);
            }
        }
        for j in 0..other.m {
            for i in 0..other.n {
                out.entries[(self.m + j) * n + self.n + i] = other.get(j, i);
            }
        }
        out
    }

    /// Each row has exactly one nonzero entry, equal to ±1.
    pub fn is_ea(&self) -> bool {
        (0..self.m).all(|j| {
            let r = self.row(j);
            r.iter().filter(|&&x| x != 0).count() == 1 && r.iter().all(|&x| x.abs() <= 1)
        })
    }

    /// E_A map whose rows hit every source coordinate (an injective homomorphism).
    pub fn is_closed_immersion(&self) -> bool {
        self.is_ea() && (0..self.n).all(|i| (0..self.m).any(|j| self.get(j, i) != 0))
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let mut r = RationalMatrix::zeros(self.m, self.n);
        for j in 0..self.m {
            for i in 0..self.n {
                if self.get(j, i) != 0 {
                    r.set(j, i, int(self.get(j, i)));
                }
            }
        }
        r
    }

    /// Inverse when the matrix is unimodular.
    pub fn inverse(&self) -> Option<HomMatrix> {
        if self.m != self.n {
            return None;
        }
        let inv = self.to_rational().inverse()?;
        let mut out = Self::zero(self.n, self.n);
        for j in 0..self.n {
            for i in 0..self.n {
                out.entries[j * self.n + i] = to_i64(&inv.get(j, i))?;
            }
        }
        Some(out)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_some()
    }
}

impl fmt::Display for HomMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.m)
            .map(|j| {
                format!(
                    "[{}]",
                    self.row(j).iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "{}x{}[{}]", self.m, self.n, rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let d = HomMatrix::diagonal(1, 2);
        assert_eq!(d, HomMatrix::from_rows(1, &[vec![1], vec![1]]));
        assert!(d.is_closed_immersion());
        let delta = HomMatrix::from_rows(2, &[vec![1, -1]]);
        assert!(!delta.is_ea());
        let swap = HomMatrix::block_swap(1, 2);
        assert_eq!(swap.compose(&HomMatrix::block_swap(2, 1)), HomMatrix::identity(3));
        let g = HomMatrix::from_rows(2, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(g.compose(&g.inverse().unwrap()), HomMatrix::identity(2));
        assert!(HomMatrix::multiple(2, 2).inverse().is_none());
        assert_eq!(HomMatrix::identity(1).product(&HomMatrix::multiple(1, 3)).get(1, 1), 3);
        let iota = HomMatrix::zero(1, 0);
        assert_eq!(iota.rows(), 1);
        assert!(!iota.is_ea());
    }
}
