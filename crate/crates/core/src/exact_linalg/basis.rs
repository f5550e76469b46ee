use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::scalar::Scalar;

/// Sparse vector keyed by an ordered basis label.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub fn sparse_axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let e = v.entry(k.clone()).or_insert_with(Scalar::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Incrementally built span kept in reduced echelon form: every stored row has a
/// distinct pivot (its least key, normalized to 1) absent from all other rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for (k, c) in v {
            if let Some(row) = self.rows.get(k) {
                sparse_axpy(&mut out, &-c.clone(), row);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Scalar::one() / lead;
        for x in r.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                sparse_axpy(row, &-c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::scalar::int;

    fn vec_of(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn span_growth() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&vec_of(&[(0, 1), (1, 2)])));
        assert!(b.insert(&vec_of(&[(1, 1), (2, 1)])));
        assert!(!b.insert(&vec_of(&[(0, 1), (1, 3), (2, 1)])));
        assert!(b.insert(&vec_of(&[(2, 5)])));
        assert_eq!(b.len(), 3);
        assert!(b.contains(&vec_of(&[(1, 7)])));
        assert!(!b.insert(&SparseVec::new()));
    }
}
