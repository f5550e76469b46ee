use num_traits::{One, Zero};

use super::basis::{EchelonBasis, SparseVec};
use super::matrix::RationalMatrix;
use super::scalar::{int, Scalar};
use super::LinalgError;

/// Finite-dimensional associative unital ℚ-algebra given by structure constants:
/// `b_i · b_j = Σ_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl FiniteDimAlgebra {
    pub fn new(table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self, LinalgError> {
        let dim = unit.len();
        let shape_ok = table.len() == dim && table.iter().all(|r| r.len() == dim && r.iter().all(|c| c.len() == dim));
        if !shape_ok {
            return Err(LinalgError::Shape(
                "structure constants do not match unit length".into(),
            ));
        }
        let alg = FiniteDimAlgebra { dim, table, unit };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// Full matrix algebra `M_n(ℚ)` on the elementary matrices `E_ij` (index `i·n + j`).
    pub fn matrix_algebra(n: usize) -> Self {
        let dim = n * n;
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[i * n + j][j * n + l][i * n + l] = Scalar::one();
                }
            }
        }
        let mut unit = vec![Scalar::zero(); dim];
        for i in 0..n {
            unit[i * n + i] = Scalar::one();
        }
        FiniteDimAlgebra { dim, table, unit }
    }

    /// Upper-triangular 2×2 matrices on `E11, E12, E22`.
    pub fn upper_triangular_2() -> Self {
        let mut table = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        table[0][0][0] = Scalar::one();
        table[0][1][1] = Scalar::one();
        table[1][2][1] = Scalar::one();
        table[2][2][2] = Scalar::one();
        FiniteDimAlgebra {
            dim: 3,
            table,
            unit: vec![int(1), int(0), int(1)],
        }
    }

    /// `ℚ[x]/(x^k)` on the monomials `1, x, …, x^{k-1}`.
    pub fn truncated_polynomial(k: usize) -> Self {
        let mut table = vec![vec![vec![Scalar::zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    table[i][j][i + j] = Scalar::one();
                }
            }
        }
        let mut unit = vec![Scalar::zero(); k];
        if k > 0 {
            unit[0] = Scalar::one();
        }
        FiniteDimAlgebra { dim: k, table, unit }
    }

    /// Product algebra `ℚ^k` with orthogonal idempotent basis.
    pub fn diagonal(k: usize) -> Self {
        let mut table = vec![vec![vec![Scalar::zero(); k]; k]; k];
        for i in 0..k {
            table[i][i][i] = Scalar::one();
        }
        FiniteDimAlgebra {
            dim: k,
            table,
            unit: vec![Scalar::one(); k],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn check_axioms(&self) -> Result<(), LinalgError> {
        for i in 0..self.dim {
            let bi = self.basis_vector(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(LinalgError::Precondition(format!(
                    "unit law fails on basis element {i}"
                )));
            }
            for j in 0..self.dim {
                let bij = self.mul(&bi, &self.basis_vector(j));
                for k in 0..self.dim {
                    let bk = self.basis_vector(k);
                    if self.mul(&bij, &bk) != self.mul(&bi, &self.mul(&self.basis_vector(j), &bk)) {
                        return Err(LinalgError::Precondition(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Linear map between algebras, `matrix` of shape target × source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: RationalMatrix,
}

impl AlgebraMap {
    pub fn identity(dim: usize) -> Self {
        AlgebraMap {
            matrix: RationalMatrix::identity(dim),
        }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }
}

fn to_sparse(v: &[Scalar]) -> SparseVec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn from_sparse(v: &SparseVec<usize>, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Nilpotency index of the kernel of `q`, if the kernel is nilpotent.
pub fn kernel_nilpotency(q: &AlgebraMap, source: &FiniteDimAlgebra) -> Option<usize> {
    let kernel = q.matrix.kernel_basis();
    let mut power: Vec<Vec<Scalar>> = kernel.clone();
    for k in 1..=source.dim() + 1 {
        if power.is_empty() {
            return Some(k);
        }
        let mut next = EchelonBasis::new();
        for x in &power {
            for y in &kernel {
                next.insert(&to_sparse(&source.mul(x, y)));
            }
        }
        power = next.rows().map(|r| from_sparse(r, source.dim())).collect();
    }
    None
}

/// Lifts an idempotent along a surjection with nilpotent kernel by iterating `e ← 3e² − 2e³`.
pub fn lift_idempotent(
    ebar: &[Scalar],
    q: &AlgebraMap,
    source: &FiniteDimAlgebra,
    target: &FiniteDimAlgebra,
) -> Result<Vec<Scalar>, LinalgError> {
    if q.matrix.rows() != target.dim() || q.matrix.cols() != source.dim() {
        return Err(LinalgError::Shape("algebra map does not match the algebras".into()));
    }
    if target.mul(ebar, ebar) != ebar {
        return Err(LinalgError::Precondition("element to lift is not idempotent".into()));
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let bi = source.basis_vector(i);
            let bj = source.basis_vector(j);
            if q.apply(&source.mul(&bi, &bj)) != target.mul(&q.apply(&bi), &q.apply(&bj)) {
                return Err(LinalgError::Precondition("map is not multiplicative".into()));
            }
        }
    }
    let start = q
        .matrix
        .solve(ebar)
        .ok_or_else(|| LinalgError::Precondition("element has no preimage".into()))?;
    lift_idempotent_from(start, q, source)
}

/// Runs the lifting iteration from a chosen preimage `start`.
pub fn lift_idempotent_from(
    start: Vec<Scalar>,
    q: &AlgebraMap,
    source: &FiniteDimAlgebra,
) -> Result<Vec<Scalar>, LinalgError> {
    let mut e = start;
    let nil = kernel_nilpotency(q, source).ok_or(LinalgError::NotNilpotent)?;
    let three = int(3);
    let two = int(2);
    let bound = usize::BITS as usize - nil.leading_zeros() as usize + 2;
    for _ in 0..=bound {
        let e2 = source.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = source.mul(&e2, &e);
        e = e2.iter().zip(&e3).map(|(a, b)| &three * a - &two * b).collect();
    }
    Err(LinalgError::NotNilpotent)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_lift() {
        let a = FiniteDimAlgebra::matrix_algebra(2);
        let e = vec![int(1), int(0), int(0), int(0)];
        let lifted = lift_idempotent(&e, &AlgebraMap::identity(4), &a, &a).unwrap();
        assert_eq!(lifted, e);
    }

    #[test]
    fn upper_triangular_to_diagonal() {
        let src = FiniteDimAlgebra::upper_triangular_2();
        let tgt = FiniteDimAlgebra::diagonal(2);
        let q = AlgebraMap {
            matrix: RationalMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, 1]]),
        };
        let e = lift_idempotent(&[int(1), int(0)], &q, &src, &tgt).unwrap();
        assert_eq!(src.mul(&e, &e), e);
        assert_eq!(q.apply(&e), vec![int(1), int(0)]);
        assert_eq!(e[0], int(1));
        assert_eq!(e[2], int(0));
    }

    #[test]
    fn truncated_polynomial_lift() {
        let src = FiniteDimAlgebra::truncated_polynomial(4);
        let tgt = FiniteDimAlgebra::truncated_polynomial(1);
        let q = AlgebraMap {
            matrix: RationalMatrix::from_i64(&[vec![1, 0, 0, 0]]),
        };
        let e = lift_idempotent(&[int(1)], &q, &src, &tgt).unwrap();
        assert_eq!(e, vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(kernel_nilpotency(&q, &src), Some(4));
        let from_shifted = lift_idempotent_from(vec![int(1), int(1), int(-2), int(5)], &q, &src).unwrap();
        assert_eq!(from_shifted, e);
    }

    #[test]
    fn upper_triangular_from_off_diagonal_start() {
        let src = FiniteDimAlgebra::upper_triangular_2();
        let q = AlgebraMap {
            matrix: RationalMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, 1]]),
        };
        let e = lift_idempotent_from(vec![int(1), int(3), int(0)], &q, &src).unwrap();
        assert_eq!(src.mul(&e, &e), e);
        assert_eq!(e, vec![int(1), int(3), int(0)]);
    }

    #[test]
    fn non_nilpotent_kernel_rejected() {
        let src = FiniteDimAlgebra::diagonal(2);
        let tgt = FiniteDimAlgebra::diagonal(1);
        let q = AlgebraMap {
            matrix: RationalMatrix::from_i64(&[vec![1, 0]]),
        };
        assert!(matches!(
            lift_idempotent(&[int(1)], &q, &src, &tgt),
            Err(LinalgError::NotNilpotent)
        ));
    }

    #[test]
    fn structure_constants_validated() {
        let mut bad = FiniteDimAlgebra::truncated_polynomial(2);
        bad.unit = vec![int(0), int(1)];
        assert!(FiniteDimAlgebra::new(bad.table.clone(), bad.unit.clone()).is_err());
        let good = FiniteDimAlgebra::matrix_algebra(2);
        assert!(FiniteDimAlgebra::new(good.table.clone(), good.unit.clone()).is_ok());
    }
}
