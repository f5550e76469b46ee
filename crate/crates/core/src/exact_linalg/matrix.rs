use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{int, Scalar};

/// Matrices with both dimensions below this are stored densely.
pub const DENSE_LIMIT: usize = 64;

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<Scalar>),
    Sparse(Vec<SparseRow>),
}

/// Exact rational matrix, dense or sparse depending on its shape.
#[derive(Clone, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

fn dense_shape(rows: usize, cols: usize) -> bool {
    rows < DENSE_LIMIT && cols < DENSE_LIMIT
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let storage = if dense_shape(rows, cols) {
            Storage::Dense(vec![Scalar::zero(); rows * cols])
        } else {
            Storage::Sparse(vec![SparseRow::new(); rows])
        };
        RationalMatrix { rows, cols, storage }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, c)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row {
                assert!(j < cols, "column index out of range");
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols + j].clone(),
            Storage::Sparse(s) => s[i].get(&j).cloned().unwrap_or_else(Scalar::zero),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols);
        match &mut self.storage {
            Storage::Dense(d) => d[i * self.cols + j] = v,
            Storage::Sparse(s) => {
                if v.is_zero() {
                    s[i].remove(&j);
                } else {
                    s[i].insert(j, v);
                }
            }
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row(&self, i: usize) -> SparseRow {
        match &self.storage {
            Storage::Dense(d) => d[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
            Storage::Sparse(s) => s[i].clone(),
        }
    }

    pub fn to_sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn nnz(&self) -> usize {
        (0..self.rows).map(|i| self.row(i).len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Dense(d) => d.iter().all(Zero::is_zero),
            Storage::Sparse(s) => s.iter().all(BTreeMap::is_empty),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                t.set(j, i, v);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let rhs = other.to_sparse_rows();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = SparseRow::new();
            for (k, a) in self.row(i) {
                for (j, b) in &rhs[k] {
                    let e = acc.entry(*j).or_insert_with(Scalar::zero);
                    *e += &a * b;
                }
            }
            for (j, v) in acc {
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(Scalar::zero(), |acc, (j, a)| acc + a * &v[*j]))
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let a = self.row(i);
            let b = other.row(i);
            let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            let z = Scalar::zero();
            for j in keys {
                let v = f(a.get(&j).unwrap_or(&z), b.get(&j).unwrap_or(&z));
                if !v.is_zero() {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                out.set(i, j, v * c);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(Scalar::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Direct sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for (j, v) in self.row(i) {
                out.set(i, j, v);
            }
        }
        for i in 0..other.rows {
            for (j, v) in other.row(i) {
                out.set(self.rows + i, self.cols + j, v);
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        let b = other.to_sparse_rows();
        for i in 0..self.rows {
            for (j, a) in self.row(i) {
                for (k, row) in b.iter().enumerate() {
                    for (l, v) in row {
                        out.set(i * other.rows + k, j * other.cols + l, &a * v);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.to_sparse_rows(), self.cols);
        let mut full = rows;
        full.resize(self.rows, SparseRow::new());
        (Self::from_sparse_rows(self.cols, full), pivots)
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.to_sparse_rows(), self.cols).1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_basis(self)
    }

    /// Some solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut rows = self.to_sparse_rows();
        for (row, v) in rows.iter_mut().zip(b) {
            if !v.is_zero() {
                row.insert(self.cols, v.clone());
            }
        }
        let (red, pivots) = rref_rows(rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in red.iter().zip(&pivots) {
            if let Some(v) = row.get(&self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut rows = self.to_sparse_rows();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| rows[r].contains_key(&col)) else {
                return Scalar::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot_row = rows[col].clone();
            let pv = pivot_row[&col].clone();
            det *= &pv;
            for r in col + 1..n {
                if let Some(c) = rows[r].get(&col).cloned() {
                    axpy(&mut rows[r], &(-(c / &pv)), &pivot_row);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut rows = self.to_sparse_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(n + i, Scalar::one());
        }
        let (red, pivots) = rref_rows(rows, 2 * n);
        if pivots.iter().filter(|&&p| p < n).count() < n {
            return None;
        }
        let inv: Vec<SparseRow> = red
            .into_iter()
            .take(n)
            .map(|r| {
                r.into_iter()
                    .filter(|(j, _)| *j >= n)
                    .map(|(j, v)| (j - n, v))
                    .collect()
            })
            .collect();
        Some(Self::from_sparse_rows(n, inv))
    }
}

impl PartialEq for RationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && (0..self.rows).all(|i| self.row(i) == other.row(i))
    }
}

impl Eq for RationalMatrix {}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `row += c · other`, dropping cancelled entries.
pub fn axpy(row: &mut SparseRow, c: &Scalar, other: &SparseRow) {
    if c.is_zero() {
        return;
    }
    for (j, v) in other {
        let e = row.entry(*j).or_insert_with(Scalar::zero);
        *e += c * v;
        if e.is_zero() {
            row.remove(j);
        }
    }
}

/// Gauss-Jordan elimination on sparse rows. Returns the nonzero reduced rows
/// (one per pivot, in pivot order) and the pivot columns.
pub fn rref_rows(mut rows: Vec<SparseRow>, cols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    rows.retain(|r| !r.is_empty());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let best = (rank..rows.len())
            .filter(|&r| rows[r].contains_key(&col))
            .min_by_key(|&r| rows[r].len());
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let inv = Scalar::one() / &rows[rank][&col];
        for v in rows[rank].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            if let Some(c) = row.get(&col).cloned() {
                axpy(row, &-c, &pivot_row);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Basis of the null space `{v : m·v = 0}`.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Scalar>> {
    let (red, pivots) = rref_rows(m.to_sparse_rows(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); m.cols()];
            v[f] = Scalar::one();
            for (row, &p) in red.iter().zip(&pivots) {
                if let Some(c) = row.get(&f) {
                    v[p] = -c.clone();
                }
            }
            v
        })
        .collect()
}
