use num_traits::Zero;

use super::{check_len, Matrix, Scalar, Vector};
use crate::error::{Error, Result};

/// A subspace of `Q^n`, stored as the reduced row echelon form of a basis.
///
/// Because the RREF of a row space is unique, two `Subspace`s are equal as
/// sets exactly when they compare equal, and they can be used directly as
/// hash or map keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace {
            ambient_dim: m.ncols(),
            basis,
            pivots,
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        Ok(Self::row_space(&Matrix::from_rows(ambient_dim, vectors.to_vec())?))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self::row_space(&Matrix::zeros(0, ambient_dim))
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::row_space(&Matrix::identity(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    /// The canonical (RREF) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the remainder is zero iff
    /// `v` lies in the subspace.
    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.rows().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        check_len(v, self.ambient_dim)?;
        Ok(super::is_zero_vector(&self.reduce(v)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vector>> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other
            .basis
            .rows()
            .all(|r| super::is_zero_vector(&self.reduce(r))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `{x : b · x = 0 for every b}` with respect to the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient_dim);
        }
        Subspace::row_space(&self.basis.nullspace())
    }

    /// Image under the linear map `v ↦ m · v`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.ncols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.ncols(),
            });
        }
        let rows = self.basis.rows().map(|r| m.mul_vec(r)).collect();
        Ok(Subspace::row_space(&Matrix::from_rows(m.nrows(), rows)?))
    }

    /// Adds one vector to the span.
    pub fn with_vector(&self, v: &[Scalar]) -> Result<Subspace> {
        check_len(v, self.ambient_dim)?;
        let extra = Matrix::from_rows(self.ambient_dim, vec![v.to_vec()])?;
        Ok(Subspace::row_space(&self.basis.vstack(&extra)))
    }

    /// Embeds `Q^n` into `Q^total` at coordinate offset `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Subspace {
        let rows = self
            .basis
            .rows()
            .map(|r| {
                let mut v = vec![Scalar::zero(); total];
                v[offset..offset + r.len()].clone_from_slice(r);
                v
            })
            .collect();
        Subspace::row_space(&Matrix::from_rows(total, rows).expect("embedding shape"))
    }

    /// Extends the canonical basis of `self` by standard unit vectors to a
    /// basis of the whole space; returns only the added vectors.
    pub fn complement_by_units(&self) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim)
            .filter(|&i| !is_pivot[i])
            .map(|i| super::unit_vector(self.ambient_dim, i))
            .collect()
    }
}
