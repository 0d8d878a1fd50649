use std::sync::Arc;

use num_traits::Zero;

use super::{check_len, int, Matrix, Scalar, Subspace, Vector};
use crate::error::{Error, Result};

/// Nondegenerate symmetric bilinear form `⟨·|·⟩` on `Q^n`, given by its Gram
/// matrix. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilinearForm {
    gram: Arc<Matrix>,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::MalformedMatrix("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::FormNotSymmetric);
        }
        if gram.determinant().is_zero() {
            return Err(Error::FormDegenerate);
        }
        Ok(BilinearForm { gram: Arc::new(gram) })
    }

    /// `diag(1^p, (-1)^q)`, the form used by `gl(p|q)`.
    pub fn signature(p: usize, q: usize) -> Self {
        let entries: Vec<Scalar> = (0..p).map(|_| int(1)).chain((0..q).map(|_| int(-1))).collect();
        BilinearForm::new(Matrix::diagonal(&entries)).expect("signature form is nondegenerate")
    }

    /// The hyperbolic plane `[[0, 1], [1, 0]]`.
    pub fn hyperbolic_plane() -> Self {
        BilinearForm::new(Matrix::from_i64(&[&[0, 1], &[1, 0]])).expect("hyperbolic plane")
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// `⟨u|v⟩`.
    pub fn pair(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        assert_eq!(u.len(), self.dim(), "vector length does not match form");
        super::dot(&self.gram.vec_mul(u), v)
    }

    pub fn norm(&self, v: &[Scalar]) -> Scalar {
        self.pair(v, v)
    }

    pub fn is_isotropic_vector(&self, v: &[Scalar]) -> bool {
        self.norm(v).is_zero()
    }

    /// Gram matrix of the restriction to the span of the rows of `basis`.
    pub fn restricted_gram(&self, basis: &Matrix) -> Matrix {
        let gb = &*self.gram * &basis.transpose();
        basis * &gb
    }

    /// Orthogonal direct sum on `Q^n ⊕ Q^m`.
    pub fn direct_sum(&self, other: &BilinearForm) -> BilinearForm {
        BilinearForm {
            gram: Arc::new(self.gram.block_diagonal(&other.gram)),
        }
    }

    fn check_subspace(&self, u: &Subspace) -> Result<()> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `U^⊥ = {v : ⟨v|u⟩ = 0 for all u ∈ U}`.
    pub fn orth_complement(&self, u: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        if u.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        Ok(Subspace::row_space(&(u.basis() * &self.gram)).annihilator())
    }

    /// Whether `⟨·|·⟩` vanishes identically on `U`.
    pub fn is_isotropic_subspace(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        Ok(self.restricted_gram(u.basis()).is_zero())
    }

    /// `U ⊇ U^⊥`.
    pub fn is_coisotropic(&self, u: &Subspace) -> Result<bool> {
        u.contains(&self.orth_complement(u)?)
    }

    /// Whether the restriction of the form to `U` is nondegenerate.
    pub fn is_nondegenerate_on(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        Ok(!self.restricted_gram(u.basis()).determinant().is_zero())
    }

    /// Quotient `V0 / V0^⊥` of a coisotropic subspace.
    pub fn quotient(&self, v0: &Subspace) -> Result<QuotientSpace> {
        QuotientSpace::new(self, v0)
    }
}

/// The quotient `V0 / V1` of a coisotropic `V0` by `V1 = V0^⊥`, with fixed
/// coordinates and the induced nondegenerate form.
///
/// Coordinates: walking the canonical basis of `V0` in order, a basis vector
/// becomes a representative whenever it is independent of `V1` and the
/// representatives chosen so far. `projection` sends `v ∈ V0` to its
/// coordinates with respect to these representatives, and `section` maps
/// coordinates back to the representative combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    ambient: Subspace,
    kernel: Subspace,
    projection: Matrix,
    section: Matrix,
    form: BilinearForm,
}

impl QuotientSpace {
    pub fn new(form: &BilinearForm, v0: &Subspace) -> Result<Self> {
        let v1 = form.orth_complement(v0)?;
        if !v0.contains(&v1)? {
            return Err(Error::NotCoisotropic);
        }
        let n = form.dim();
        let mut span = v1.clone();
        let mut reps: Vec<Vector> = Vec::new();
        for r in v0.basis().rows() {
            if !span.contains_vector(r)? {
                span = span.with_vector(r)?;
                reps.push(r.to_vec());
            }
        }
        let m = reps.len();
        let mut full_basis = reps.clone();
        full_basis.extend(v1.basis_vectors());
        let partial = Subspace::span(n, &full_basis)?;
        full_basis.extend(partial.complement_by_units());
        let b = Matrix::from_rows(n, full_basis)?;
        let b_inv = b
            .inverse()
            .ok_or_else(|| Error::Inconsistent("quotient basis is not invertible".into()))?;
        // v = c · B  ⇒  c^T = (B^{-1})^T v, and the first m coordinates are the quotient ones.
        let projection = b_inv.transpose().rows().take(m).map(<[Scalar]>::to_vec).collect();
        let projection = Matrix::from_rows(n, projection)?;
        let reps_matrix = Matrix::from_rows(n, reps)?;
        let section = reps_matrix.transpose();
        let form = BilinearForm::new(form.restricted_gram(&reps_matrix))?;
        Ok(QuotientSpace {
            ambient: v0.clone(),
            kernel: v1,
            projection,
            section,
            form,
        })
    }

    /// `V0`.
    pub fn ambient(&self) -> &Subspace {
        &self.ambient
    }

    /// `V1 = V0^⊥`.
    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    /// `dim V0 − dim V1`.
    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// `dim(V0/V1) × n` matrix; only meaningful on vectors of `V0`.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `n × dim(V0/V1)` matrix whose columns are the chosen representatives.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    /// The induced form on `V0/V1`.
    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// Coordinates of the class of `v`. Errors if `v ∉ V0`.
    pub fn project(&self, v: &[Scalar]) -> Result<Vector> {
        check_len(v, self.ambient.ambient_dim())?;
        if !self.ambient.contains_vector(v)? {
            return Err(Error::Inconsistent("vector outside V0 projected to V0/V1".into()));
        }
        Ok(self.projection.mul_vec(v))
    }

    /// The representative of a class given by its coordinates.
    pub fn lift(&self, u: &[Scalar]) -> Result<Vector> {
        check_len(u, self.dim())?;
        Ok(self.section.mul_vec(u))
    }

    /// Image of a subspace of `V0` in the quotient coordinates.
    pub fn project_subspace(&self, u: &Subspace) -> Result<Subspace> {
        if !self.ambient.contains(u)? {
            return Err(Error::Inconsistent("subspace outside V0 projected to V0/V1".into()));
        }
        u.image(&self.projection)
    }
}
