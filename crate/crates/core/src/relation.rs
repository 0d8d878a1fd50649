//! Linear relations `L ⊆ V × V` and linear Lagrangian relations.
//!
//! A pair `(x, y) ∈ V × V` is stored as the concatenated vector of length
//! `2n`. The form on `V × V` is `B((v, w), (v', w')) = ⟨v|v'⟩ − ⟨w|w'⟩`, so
//! a relation is isotropic exactly when `⟨x|x⟩ = ⟨y|y⟩` for all its pairs.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{check_len, BilinearForm, Matrix, QuotientSpace, Scalar, Subspace, Vector};

/// `B((v, w), (v', w')) = ⟨v|v'⟩ − ⟨w|w'⟩`.
pub fn relation_b(form: &BilinearForm, first: (&[Scalar], &[Scalar]), second: (&[Scalar], &[Scalar])) -> Result<Scalar> {
    let n = form.dim();
    for v in [first.0, first.1, second.0, second.1] {
        check_len(v, n)?;
    }
    Ok(form.pair(first.0, second.0) - form.pair(first.1, second.1))
}

fn concat(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut v = x.to_vec();
    v.extend_from_slice(y);
    v
}

/// A linear relation on `V`: a subspace of `V ⊕ V` together with the form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearRelation {
    form: BilinearForm,
    space: Subspace,
    isotropic: bool,
}

impl LinearRelation {
    pub fn new(form: BilinearForm, space: Subspace) -> Result<Self> {
        let n = form.dim();
        if space.ambient_dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: space.ambient_dim(),
            });
        }
        let x = space.basis().column_block(0, n);
        let y = space.basis().column_block(n, 2 * n);
        let isotropic = form.restricted_gram(&x) == form.restricted_gram(&y);
        Ok(LinearRelation { form, space, isotropic })
    }

    /// Span of the given pairs `(x, y)`.
    pub fn from_pairs(form: BilinearForm, pairs: &[(Vector, Vector)]) -> Result<Self> {
        let n = form.dim();
        let rows = pairs
            .iter()
            .map(|(x, y)| {
                check_len(x, n)?;
                check_len(y, n)?;
                Ok(concat(x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        let space = Subspace::row_space(&Matrix::from_rows(2 * n, rows)?);
        LinearRelation::new(form, space)
    }

    /// The diagonal `Δ_V = {(v, v)}`.
    pub fn diagonal(form: &BilinearForm) -> Self {
        Isometry::identity(form).graph()
    }

    /// `E_{V0} = {(v, v + w) : v ∈ V0, w ∈ V0^⊥}` for coisotropic `V0`.
    pub fn idempotent_for(form: &BilinearForm, v0: &Subspace) -> Result<Self> {
        let v1 = form.orth_complement(v0)?;
        if !v0.contains(&v1)? {
            return Err(Error::NotCoisotropic);
        }
        let n = form.dim();
        let zero = crate::linalg::zero_vector(n);
        let mut pairs: Vec<(Vector, Vector)> = v0.basis().rows().map(|r| (r.to_vec(), r.to_vec())).collect();
        pairs.extend(v1.basis().rows().map(|r| (zero.clone(), r.to_vec())));
        LinearRelation::from_pairs(form.clone(), &pairs)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// The subspace of `V ⊕ V`.
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// `n = dim V`.
    pub fn n(&self) -> usize {
        self.form.dim()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropic
    }

    pub fn is_lagrangian(&self) -> bool {
        self.isotropic && self.dim() == self.n()
    }

    pub(crate) fn require_lagrangian(&self) -> Result<()> {
        if self.is_lagrangian() {
            Ok(())
        } else if !self.isotropic {
            Err(Error::NotLagrangian("relation is not isotropic".into()))
        } else {
            Err(Error::NotLagrangian(format!("dimension {} differs from dim V = {}", self.dim(), self.n())))
        }
    }

    fn block(&self, second: bool) -> Matrix {
        let n = self.n();
        if second {
            self.space.basis().column_block(n, 2 * n)
        } else {
            self.space.basis().column_block(0, n)
        }
    }

    /// `p1(L)`.
    pub fn p1(&self) -> Subspace {
        Subspace::row_space(&self.block(false))
    }

    /// `p2(L)`.
    pub fn p2(&self) -> Subspace {
        Subspace::row_space(&self.block(true))
    }

    /// `K1 = Ker(p1|_L) = L ∩ (0 × V)`, as a subspace of `V ⊕ V`.
    pub fn kernel_p1(&self) -> Subspace {
        let n = self.n();
        let slot = Subspace::full(n).embed(n, 2 * n);
        self.space.intersect(&slot).expect("same ambient")
    }

    /// `K2 = Ker(p2|_L) = L ∩ (V × 0)`, as a subspace of `V ⊕ V`.
    pub fn kernel_p2(&self) -> Subspace {
        let n = self.n();
        let slot = Subspace::full(n).embed(0, 2 * n);
        self.space.intersect(&slot).expect("same ambient")
    }

    /// `p2(K1) = {y : (0, y) ∈ L}`.
    pub fn kernel_p1_image(&self) -> Subspace {
        let n = self.n();
        Subspace::row_space(&self.kernel_p1().basis().column_block(n, 2 * n))
    }

    /// `p1(K2) = {x : (x, 0) ∈ L}`.
    pub fn kernel_p2_image(&self) -> Subspace {
        Subspace::row_space(&self.kernel_p2().basis().column_block(0, self.n()))
    }

    pub fn contains_pair(&self, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
        check_len(x, self.n())?;
        check_len(y, self.n())?;
        self.space.contains_vector(&concat(x, y))
    }

    /// `L ⊆ other`.
    pub fn is_contained_in(&self, other: &LinearRelation) -> Result<bool> {
        other.space.contains(&self.space)
    }

    /// `L^{-1} = {(y, x) : (x, y) ∈ L}`.
    pub fn inverse(&self) -> LinearRelation {
        let swapped = self.block(true).hstack(&self.block(false));
        LinearRelation {
            form: self.form.clone(),
            space: Subspace::row_space(&swapped),
            isotropic: self.isotropic,
        }
    }

    /// `self ∘ first = {(x, z) : ∃y, (x, y) ∈ first, (y, z) ∈ self}`.
    ///
    /// Computed as the image of the fiber product `first ×_V self` in `V × V`.
    pub fn compose(&self, first: &LinearRelation) -> Result<LinearRelation> {
        if self.form != first.form {
            return Err(Error::FormMismatch);
        }
        let n = self.n();
        let (x, y) = (first.block(false), first.block(true));
        let (y2, z) = (self.block(false), self.block(true));
        let k = first.dim();
        // (a, b) with a·Y = b·Y'  ⇔  (a, −b) in the left kernel of [Y; Y'];
        // the kernel vector c = (a, −b) contributes (a·X, b·Z).
        let stacked = y.vstack(&y2);
        let kernel = stacked.transpose().nullspace();
        let rows = kernel
            .rows()
            .map(|c| {
                let left = x.vec_mul(&c[..k]);
                let right = z.vec_mul(&c[k..]);
                concat(&left, &crate::linalg::neg_vector(&right))
            })
            .collect();
        let space = Subspace::row_space(&Matrix::from_rows(2 * n, rows)?);
        LinearRelation::new(self.form.clone(), space)
    }

    /// Atypicality `dim K1 = dim K2`. Errors if `L` is not Lagrangian.
    pub fn atypicality(&self) -> Result<usize> {
        self.require_lagrangian()?;
        let k1 = self.dim() - self.p1().dim();
        let k2 = self.dim() - self.p2().dim();
        if k1 != k2 {
            return Err(Error::Inconsistent(format!("dim K1 = {k1} but dim K2 = {k2}")));
        }
        Ok(k1)
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.compose(self)? == *self)
    }

    /// For an idempotent Lagrangian `E` with `p1(E) = p2(E)`, returns
    /// `V0 = p1(E)`; such an `E` is always `E_{V0}`, which is checked.
    ///
    /// Idempotents with different projections exist (`ℓ × ℓ′` for two
    /// isotropic lines of the hyperbolic plane) and are rejected.
    pub fn classify_idempotent(&self) -> Result<Subspace> {
        self.require_lagrangian()?;
        if !self.is_idempotent()? {
            return Err(Error::NotIdempotent);
        }
        let v0 = self.p1();
        if self.p2() != v0 {
            return Err(Error::IdempotentNotDiagonal);
        }
        let e = LinearRelation::idempotent_for(&self.form, &v0)?;
        if e != *self {
            return Err(Error::Inconsistent("idempotent with p1 = p2 differs from E_{p1(E)}".into()));
        }
        Ok(v0)
    }

    /// `span{x − y : (x, y) ∈ L}`.
    pub fn support(&self) -> Subspace {
        let diff = self.block(false).sub(&self.block(true));
        Subspace::row_space(&diff)
    }

    /// If this is the graph of an isometry, that isometry.
    pub fn as_isometry(&self) -> Option<Isometry> {
        if !self.is_lagrangian() || !self.p1().is_full() {
            return None;
        }
        // RREF of a graph is [I | g^T].
        let g = self.block(true).transpose();
        Isometry::new(self.form.clone(), g).ok()
    }

    /// `V0 = p1(L)`, `V0' = p2(L)` and the induced isometry between the
    /// quotients `V0/V0^⊥ → V0'/V0'^⊥`.
    pub fn canonical_data(&self) -> Result<CanonicalData> {
        self.require_lagrangian()?;
        let source = self.p1();
        let target = self.p2();
        let qs = self.form.quotient(&source)?;
        let qt = self.form.quotient(&target)?;
        let n = self.n();
        let x = self.block(false);
        let y = self.block(true);
        let m = qs.dim();
        let mut cols = Vec::with_capacity(m);
        for j in 0..m {
            let rep = qs.section().column(j);
            // find c with c·X = rep; then (rep, c·Y) ∈ L
            let c = x
                .transpose()
                .solve(&rep)
                .ok_or_else(|| Error::Inconsistent("representative outside p1(L)".into()))?;
            let image = y.vec_mul(&c);
            cols.push(qt.project(&image)?);
        }
        let alpha = Matrix::from_fn(qt.dim(), m, |i, j| cols[j][i].clone());
        debug_assert_eq!(x.ncols(), n);
        let data = CanonicalData { source, target, alpha };
        data.check_isometry(&qs, &qt)?;
        Ok(data)
    }
}

/// The complete invariant of a Lagrangian relation: its two projections and
/// the isometry it induces between the corresponding quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalData {
    pub source: Subspace,
    pub target: Subspace,
    /// Matrix of `V0/V1 → V0'/V1'` in the quotient coordinates of
    /// [`QuotientSpace`].
    pub alpha: Matrix,
}

impl CanonicalData {
    fn check_isometry(&self, qs: &QuotientSpace, qt: &QuotientSpace) -> Result<()> {
        let lhs = &(&self.alpha.transpose() * qt.form().gram()) * &self.alpha;
        if &lhs != qs.form().gram() {
            return Err(Error::Inconsistent("induced map is not an isometry".into()));
        }
        Ok(())
    }

    /// Rebuilds `L = {(v, v') : v ∈ V0, v' ∈ V0', [v'] = α[v]}`.
    pub fn reconstruct(&self, form: &BilinearForm) -> Result<LinearRelation> {
        let qs = form.quotient(&self.source)?;
        let qt = form.quotient(&self.target)?;
        if self.alpha.nrows() != qt.dim() || self.alpha.ncols() != qs.dim() {
            return Err(Error::DimensionMismatch {
                expected: qs.dim(),
                found: self.alpha.ncols(),
            });
        }
        self.check_isometry(&qs, &qt)?;
        let n = form.dim();
        let zero = crate::linalg::zero_vector(n);
        let mut pairs = Vec::new();
        for j in 0..qs.dim() {
            let rep = qs.section().column(j);
            let image = qt.lift(&self.alpha.column(j))?;
            pairs.push((rep, image));
        }
        pairs.extend(qs.kernel().basis().rows().map(|r| (r.to_vec(), zero.clone())));
        pairs.extend(qt.kernel().basis().rows().map(|r| (zero.clone(), r.to_vec())));
        LinearRelation::from_pairs(form.clone(), &pairs)
    }
}

/// An isometry `g` of `(V, ⟨·|·⟩)`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    matrix: Matrix,
    form: BilinearForm,
}

impl Isometry {
    /// Checks `gᵀ·G·g = G` exactly.
    pub fn new(form: BilinearForm, matrix: Matrix) -> Result<Self> {
        let n = form.dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.nrows(),
            });
        }
        let lhs = &(&matrix.transpose() * form.gram()) * &matrix;
        if &lhs != form.gram() {
            return Err(Error::NotIsometry);
        }
        Ok(Isometry { matrix, form })
    }

    pub fn identity(form: &BilinearForm) -> Self {
        Isometry {
            matrix: Matrix::identity(form.dim()),
            form: form.clone(),
        }
    }

    /// Reflection `v ↦ v − 2⟨v|a⟩/⟨a|a⟩ · a` in an anisotropic vector.
    pub fn reflection(form: &BilinearForm, a: &[Scalar]) -> Result<Self> {
        check_len(a, form.dim())?;
        let norm = form.norm(a);
        if norm.is_zero() {
            return Err(Error::NotIsometry);
        }
        let ga = form.gram().mul_vec(a);
        let c = crate::linalg::int(2) / norm;
        let n = form.dim();
        let m = Matrix::from_fn(n, n, |i, j| {
            let id = if i == j { crate::linalg::one() } else { Scalar::zero() };
            id - &c * &a[i] * &ga[j]
        });
        Ok(Isometry { matrix: m, form: form.clone() })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    pub fn apply_subspace(&self, u: &Subspace) -> Subspace {
        u.image(&self.matrix).expect("isometry and subspace share the ambient space")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: &self.matrix * &other.matrix,
            form: self.form.clone(),
        }
    }

    /// `g^{-1} = G^{-1} gᵀ G`.
    pub fn inverse(&self) -> Isometry {
        let g_inv = self.form.gram().inverse().expect("form is nondegenerate");
        let m = &(&g_inv * &self.matrix.transpose()) * self.form.gram();
        Isometry { matrix: m, form: self.form.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.form.dim())
    }

    /// `Γ_g = {(v, g v)}`.
    pub fn graph(&self) -> LinearRelation {
        let n = self.form.dim();
        let rows = Matrix::identity(n).hstack(&self.matrix.transpose());
        LinearRelation {
            form: self.form.clone(),
            space: Subspace::row_space(&rows),
            isotropic: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, vector};

    fn gl(p: usize, q: usize) -> BilinearForm {
        BilinearForm::signature(p, q)
    }

    #[test]
    fn b_form_values() {
        let f = gl(2, 0);
        let e1 = vector(&[1, 0]);
        let z = vector(&[0, 0]);
        assert_eq!(relation_b(&f, (&e1, &z), (&e1, &z)).unwrap(), int(1));
        assert_eq!(relation_b(&f, (&e1, &e1), (&e1, &e1)).unwrap(), int(0));
        let x = vector(&[2, 3]);
        let y = vector(&[1, -1]);
        assert_eq!(relation_b(&f, (&x, &y), (&x, &y)).unwrap(), f.norm(&x) - f.norm(&y));
        assert!(relation_b(&f, (&vector(&[1]), &z), (&e1, &z)).is_err());
    }

    #[test]
    fn diagonal_and_graphs() {
        let f = gl(2, 1);
        let d = LinearRelation::diagonal(&f);
        assert!(d.is_lagrangian());
        assert_eq!(d.atypicality().unwrap(), 0);
        assert_eq!(d.inverse(), d);
        let s = Isometry::reflection(&f, &vector(&[1, -1, 0])).unwrap();
        let g = s.graph();
        assert!(g.is_lagrangian());
        assert_eq!(g.inverse(), s.inverse().graph());
        assert_eq!(g.compose(&s.inverse().graph()).unwrap(), d);
    }

    #[test]
    fn graph_of_non_isometry_is_not_isotropic() {
        let f = gl(2, 0);
        let scale = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(Isometry::new(f.clone(), scale.clone()), Err(Error::NotIsometry));
        let rows = Matrix::identity(2).hstack(&scale.transpose());
        let l = LinearRelation::new(f, Subspace::row_space(&rows)).unwrap();
        assert!(!l.is_isotropic());
        assert!(matches!(l.atypicality(), Err(Error::NotLagrangian(_))));
    }

    #[test]
    fn idempotent_of_whole_space_is_diagonal() {
        let f = gl(2, 1);
        let e = LinearRelation::idempotent_for(&f, &Subspace::full(3)).unwrap();
        assert_eq!(e, LinearRelation::diagonal(&f));
    }

    #[test]
    fn gl11_idempotent() {
        let f = gl(1, 1);
        let alpha = vector(&[1, -1]);
        let line = Subspace::span(2, &[alpha.clone()]).unwrap();
        let e = LinearRelation::idempotent_for(&f, &line).unwrap();
        assert!(e.is_lagrangian());
        assert_eq!(e.atypicality().unwrap(), 1);
        assert_eq!(e.compose(&e).unwrap(), e);
        assert_eq!(e.inverse(), e);
        // the class of 0 is the line through α
        assert!(e.contains_pair(&vector(&[0, 0]), &vector(&[3, -3])).unwrap());
        assert!(!e.contains_pair(&vector(&[0, 0]), &vector(&[1, 0])).unwrap());
        assert_eq!(e.classify_idempotent().unwrap(), line);
        let cd = e.canonical_data().unwrap();
        assert_eq!(cd.alpha.nrows(), 0);
    }

    #[test]
    fn idempotent_rejects_non_coisotropic() {
        let f = gl(2, 0);
        let u = Subspace::span(2, &[vector(&[1, 0])]).unwrap();
        assert_eq!(LinearRelation::idempotent_for(&f, &u), Err(Error::NotCoisotropic));
    }

    #[test]
    fn idempotent_atypicality_is_codimension() {
        let f = gl(2, 2);
        let s = Subspace::span(4, &[vector(&[1, 0, 1, 0]), vector(&[0, 1, 0, 1])]).unwrap();
        assert!(f.is_isotropic_subspace(&s).unwrap());
        let v0 = f.orth_complement(&s).unwrap();
        let e = LinearRelation::idempotent_for(&f, &v0).unwrap();
        assert_eq!(e.atypicality().unwrap(), v0.codim());
        assert_eq!(e.p1(), v0);
        assert_eq!(e.p2(), v0);
        let cd = e.canonical_data().unwrap();
        assert_eq!(cd.alpha, Matrix::identity(0));
    }

    #[test]
    fn classify_rejects_non_idempotent() {
        let f = gl(2, 0);
        let s = Isometry::reflection(&f, &vector(&[1, 0])).unwrap();
        assert_eq!(s.graph().classify_idempotent(), Err(Error::NotIdempotent));
        assert_eq!(LinearRelation::diagonal(&f).classify_idempotent().unwrap(), Subspace::full(2));
    }

    #[test]
    fn product_of_two_isotropic_lines_is_an_unclassified_idempotent() {
        let f = BilinearForm::hyperbolic_plane();
        let l = LinearRelation::from_pairs(
            f.clone(),
            &[(vector(&[1, 0]), vector(&[0, 0])), (vector(&[0, 0]), vector(&[0, 1]))],
        )
        .unwrap();
        assert!(l.is_lagrangian());
        assert!(l.is_idempotent().unwrap());
        assert_ne!(l, LinearRelation::idempotent_for(&f, &l.p1()).unwrap());
        assert_eq!(l.classify_idempotent(), Err(Error::IdempotentNotDiagonal));
    }

    #[test]
    fn canonical_data_of_graph_is_the_matrix() {
        let f = gl(2, 1);
        let s = Isometry::reflection(&f, &vector(&[1, -1, 0])).unwrap();
        let cd = s.graph().canonical_data().unwrap();
        assert!(cd.source.is_full() && cd.target.is_full());
        assert_eq!(&cd.alpha, s.matrix());
        assert_eq!(cd.reconstruct(&f).unwrap(), s.graph());
    }

    #[test]
    fn compose_rejects_form_mismatch() {
        let a = LinearRelation::diagonal(&gl(2, 0));
        let b = LinearRelation::diagonal(&gl(1, 1));
        assert_eq!(a.compose(&b), Err(Error::FormMismatch));
    }

    #[test]
    fn composition_order() {
        // (Γ_a ∘ Γ_b) = Γ_{a b}
        let f = gl(3, 0);
        let a = Isometry::reflection(&f, &vector(&[1, -1, 0])).unwrap();
        let b = Isometry::reflection(&f, &vector(&[0, 1, -1])).unwrap();
        assert_eq!(a.graph().compose(&b.graph()).unwrap(), a.compose(&b).graph());
        assert_ne!(a.compose(&b), b.compose(&a));
    }

    #[test]
    fn weyl_translate_identities() {
        let f = gl(2, 1);
        let alpha = vector(&[1, 0, -1]);
        let v0 = f.orth_complement(&Subspace::span(3, &[alpha]).unwrap()).unwrap();
        let e = LinearRelation::idempotent_for(&f, &v0).unwrap();
        let s = Isometry::reflection(&f, &vector(&[1, -1, 0])).unwrap();
        let l = s.graph().compose(&e).unwrap();
        assert_eq!(l.p1(), e.p1());
        assert_eq!(l.p2(), s.apply_subspace(&e.p2()));
        let conj = s.graph().compose(&e).unwrap().compose(&s.inverse().graph()).unwrap();
        let moved = LinearRelation::idempotent_for(&f, &s.apply_subspace(&v0)).unwrap();
        assert_eq!(conj, moved);
    }
}
