use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use super::{check_len, format_scalar, Scalar, Vector};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
///
/// The derived ordering (shape first, then entries) is what canonical
/// subspaces and group elements are sorted by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            check_len(&r, cols)?;
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Like [`Matrix::from_rows`] but infers the column count; an empty
    /// row list gives a `0 × 0` matrix.
    pub fn try_from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, rows)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| super::vector(r)).collect();
        Matrix::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        self.rows().map(<[Scalar]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        self.rows().map(|r| super::dot(r, v)).collect()
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector-matrix dimension mismatch");
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let rows = self.rows().map(|r| other.vec_mul(r)).collect();
        Matrix::from_rows(other.cols, rows)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Columns `start..end` of every row.
    pub fn column_block(&self, start: usize, end: usize) -> Matrix {
        Matrix::from_fn(self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diagonal(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => Scalar::zero(),
            }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Zero rows are dropped, so the result has exactly `rank` rows.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vector> = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            if !inv.is_one() {
                for x in rows[r].iter_mut().skip(c) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        let m = Matrix::from_rows(self.cols, rows).expect("rref preserves shape");
        (m, pivots)
    }

    /// The unique reduced row echelon form, with zero rows removed.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one basis vector per row.
    ///
    /// The basis is the standard one read off the RREF (one vector per free
    /// column), so it is canonical for the row space of `self`.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            out.push(v);
        }
        Matrix::from_rows(self.cols, out).expect("nullspace shape")
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref_with_pivots();
        if pivots.len() < n || pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        Some(r.column_block(n, 2 * n))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det *= &pivot;
            let pivot_row = rows[c].clone();
            for row in rows.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pivot;
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    /// Solves `self · x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()));
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let cells: Vec<String> = r.iter().map(format_scalar).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn rref_identity_is_identity() {
        let id = Matrix::identity(4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_drops_dependent_rows() {
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), Matrix::from_i64(&[&[1, 2]]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = Matrix::from_i64(&[&[1, 2, 3]]);
        let n = m.nullspace();
        assert_eq!(n.nrows(), 2);
        for r in n.rows() {
            assert!(m.mul_vec(r).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), int(0));
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[int(2), int(0)]), Some(vec![int(1), int(1)]));
        let s = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[int(1), int(3)]), None);
        assert_eq!(s.solve(&[int(1), int(2)]), Some(vec![int(1), int(0)]));
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec((-4i64..=4, 1i64..=3), rows * cols).prop_map(move |v| {
            let data = v.into_iter().map(|(p, q)| frac(p, q)).collect::<Vec<_>>();
            Matrix::from_fn(rows, cols, |i, j| data[i * cols + j].clone())
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix(5, 5)) {
            let r = m.rref();
            prop_assert_eq!(r.rref(), r);
        }

        #[test]
        fn rref_is_row_order_independent(m in small_matrix(4, 5)) {
            let mut rows = m.to_rows();
            rows.reverse();
            let flipped = Matrix::from_rows(5, rows).unwrap();
            prop_assert_eq!(m.rref(), flipped.rref());
        }

        #[test]
        fn rank_nullity(m in small_matrix(3, 6)) {
            prop_assert_eq!(m.rank() + m.nullspace().nrows(), 6);
        }
    }
}
