//! Graded invariant polynomials of Lagrangian equivalence relations and of
//! their Weyl groups.
//!
//! Every component is a linear subspace, so the invariant ring is graded and
//! is computed one homogeneous degree at a time. For a component with basis
//! rows `(X_k, Y_k)` the condition is `f(tX) = f(tY)` as a polynomial identity
//! in the parameters `t`. Both sides are homogeneous of degree `d`, and a
//! homogeneous form of degree `d` vanishes identically exactly when it
//! vanishes at the lattice points `{a ∈ N^k : |a| = d}` (these are unisolvent
//! for degree-`d` forms), so each component contributes one exact linear
//! constraint per lattice point.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::IsometryGroup;
use crate::linalg::{int, Matrix, Scalar, Subspace, Vector};
use crate::monoid::{LagrangianEquivalenceRelation, OneRegularity};
use crate::poly::{monomial_values, monomials, Exponent, Polynomial};

/// A pair of `k × n` matrices whose rows `(X_i, Y_i)` span a linear relation.
#[derive(Clone, Debug)]
struct Constraint {
    x: Matrix,
    y: Matrix,
}

fn relation_constraints(r: &LagrangianEquivalenceRelation) -> Vec<Constraint> {
    let n = r.n();
    let mut out = Vec::new();
    for c in r.components() {
        let inv = c.inverse();
        // the inverse imposes the same condition
        if inv.space() < c.space() && r.contains_component(&inv) {
            continue;
        }
        let b = c.space().basis();
        let x = b.column_block(0, n);
        let y = b.column_block(n, 2 * n);
        if x != y {
            out.push(Constraint { x, y });
        }
    }
    out
}

fn group_constraints(w: &IsometryGroup) -> Vec<Constraint> {
    let n = w.form().dim();
    w.elements()
        .iter()
        .filter(|s| !s.is_identity())
        .map(|s| Constraint {
            x: Matrix::identity(n),
            y: s.matrix().transpose(),
        })
        .collect()
}

fn lattice_points(k: usize, d: u32) -> Vec<Vector> {
    monomials(k, d)
        .into_iter()
        .map(|e| e.into_iter().map(|a| int(a as i64)).collect())
        .collect()
}

/// Coefficient rows (over `monomials(n, d)`) of a basis of the degree-`d`
/// forms satisfying every constraint, in reduced row echelon form.
fn solve_degree(n: usize, d: u32, constraints: &[Constraint]) -> Matrix {
    let monos = monomials(n, d);
    let mut basis = Matrix::identity(monos.len());
    for c in constraints {
        if basis.nrows() == 0 {
            break;
        }
        let points = lattice_points(c.x.nrows(), d);
        let rows: Vec<Vector> = points
            .iter()
            .map(|t| {
                let vx = monomial_values(&monos, &c.x.vec_mul(t));
                let vy = monomial_values(&monos, &c.y.vec_mul(t));
                let diff: Vector = vx.into_iter().zip(vy).map(|(a, b)| a - b).collect();
                basis.mul_vec(&diff)
            })
            .collect();
        let system = Matrix::from_rows(basis.nrows(), rows).expect("constraint shape");
        let kernel = system.nullspace();
        basis = &kernel * &basis;
    }
    basis.rref()
}

fn to_polynomials(n: usize, d: u32, coeffs: &Matrix) -> Vec<Polynomial> {
    let monos = monomials(n, d);
    coeffs
        .rows()
        .map(|r| Polynomial::from_coefficients(n, &monos, r))
        .collect()
}

/// Basis of the homogeneous degree-`d` invariants of `R`.
pub fn invariant_space(r: &LagrangianEquivalenceRelation, d: u32) -> Vec<Polynomial> {
    let n = r.n();
    to_polynomials(n, d, &solve_degree(n, d, &relation_constraints(r)))
}

/// Basis of the homogeneous degree-`d` invariants of a finite isometry group.
pub fn weyl_invariant_space(w: &IsometryGroup, d: u32) -> Vec<Polynomial> {
    let n = w.form().dim();
    to_polynomials(n, d, &solve_degree(n, d, &group_constraints(w)))
}

/// The same space as [`weyl_invariant_space`], computed instead as the span
/// of the group averages of all degree-`d` monomials.
pub fn reynolds_invariant_space(w: &IsometryGroup, d: u32) -> Result<Vec<Polynomial>> {
    let n = w.form().dim();
    let monos = monomials(n, d);
    let order = Scalar::from_integer(w.order().into());
    let mut rows = Vec::with_capacity(monos.len());
    for e in &monos {
        let m = Polynomial::monomial(e.clone(), Scalar::one());
        let mut avg = Polynomial::zero(n);
        for s in w.elements() {
            avg = avg.add(&m.compose_linear(s.matrix())?);
        }
        rows.push(avg.scale(&(Scalar::one() / &order)).coefficients_on(&monos)?);
    }
    let span = Matrix::from_rows(monos.len(), rows)?.rref();
    Ok(to_polynomials(n, d, &span))
}

/// Coefficient matrix of a homogeneous family over `monomials(n, d)`.
fn coefficient_matrix(family: &[Polynomial], n: usize, d: u32) -> Result<Matrix> {
    let monos = monomials(n, d);
    let rows = family
        .iter()
        .map(|f| f.coefficients_on(&monos))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(monos.len(), rows)
}

/// Whether two homogeneous families of degree `d` span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial], n: usize, d: u32) -> Result<bool> {
    Ok(coefficient_matrix(a, n, d)?.rref() == coefficient_matrix(b, n, d)?.rref())
}

/// Whether the span of `inner` is contained in the span of `outer`.
pub fn span_contains(outer: &[Polynomial], inner: &[Polynomial], n: usize, d: u32) -> Result<bool> {
    let o = Subspace::row_space(&coefficient_matrix(outer, n, d)?);
    let i = Subspace::row_space(&coefficient_matrix(inner, n, d)?);
    o.contains(&i)
}

fn homogeneous_parts(f: &Polynomial) -> Vec<(u32, Polynomial)> {
    let mut degs: BTreeSet<u32> = BTreeSet::new();
    for e in f.terms().keys() {
        degs.insert(e.iter().sum());
    }
    degs.into_iter()
        .map(|d| {
            let terms = f
                .terms()
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()));
            (d, Polynomial::from_terms(f.num_vars(), terms).expect("same arity"))
        })
        .collect()
}

fn satisfies(f: &Polynomial, constraints: &[Constraint]) -> Result<bool> {
    for (d, part) in homogeneous_parts(f) {
        for c in constraints {
            for t in lattice_points(c.x.nrows(), d) {
                if part.eval(&c.x.vec_mul(&t))? != part.eval(&c.y.vec_mul(&t))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `f(x) = f(y)` for every `(x, y) ∈ R`.
pub fn is_invariant(r: &LagrangianEquivalenceRelation, f: &Polynomial) -> Result<bool> {
    if f.num_vars() != r.n() {
        return Err(Error::DimensionMismatch {
            expected: r.n(),
            found: f.num_vars(),
        });
    }
    satisfies(f, &relation_constraints(r))
}

/// Whether `f ∘ s = f` for every `s ∈ W`.
pub fn is_weyl_invariant(w: &IsometryGroup, f: &Polynomial) -> Result<bool> {
    if f.num_vars() != w.form().dim() {
        return Err(Error::DimensionMismatch {
            expected: w.form().dim(),
            found: f.num_vars(),
        });
    }
    satisfies(f, &group_constraints(w))
}

/// Per-degree invariant bases, computed on demand and cached.
#[derive(Clone, Debug)]
pub struct GradedInvariantBasis {
    num_vars: usize,
    constraints: Vec<Constraint>,
    degrees: Vec<Vec<Polynomial>>,
}

impl GradedInvariantBasis {
    pub fn for_relation(r: &LagrangianEquivalenceRelation) -> Self {
        GradedInvariantBasis {
            num_vars: r.n(),
            constraints: relation_constraints(r),
            degrees: Vec::new(),
        }
    }

    pub fn for_weyl_group(w: &IsometryGroup) -> Self {
        GradedInvariantBasis {
            num_vars: w.form().dim(),
            constraints: group_constraints(w),
            degrees: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Makes sure degrees `0..=d` are available.
    pub fn extend_to(&mut self, d: u32) {
        while self.degrees.len() <= d as usize {
            let k = self.degrees.len() as u32;
            let coeffs = solve_degree(self.num_vars, k, &self.constraints);
            self.degrees.push(to_polynomials(self.num_vars, k, &coeffs));
        }
    }

    pub fn basis(&mut self, d: u32) -> &[Polynomial] {
        self.extend_to(d);
        &self.degrees[d as usize]
    }

    pub fn dim(&mut self, d: u32) -> usize {
        self.basis(d).len()
    }

    /// `dim` of every degree `0..=d`.
    pub fn dims(&mut self, d: u32) -> Vec<usize> {
        self.extend_to(d);
        self.degrees[..=d as usize].iter().map(Vec::len).collect()
    }
}

/// The product `T` of linear forms cutting out the Weyl orbit of the
/// discriminant hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantPolynomial {
    pub polynomial: Polynomial,
    pub degree: u32,
    pub hyperplanes: Vec<Subspace>,
}

/// Computes `T` for a 1-regular relation with nonempty discriminant and
/// checks that it is both Weyl- and `R`-invariant.
pub fn discriminant_polynomial(r: &LagrangianEquivalenceRelation) -> Result<DiscriminantPolynomial> {
    let OneRegularity::Regular { witness } = r.one_regularity() else {
        return Err(Error::NotOneRegular);
    };
    let w = r.weyl_group();
    let hyperplanes = w.orbit(&witness);
    let n = r.n();
    let mut t = Polynomial::one(n);
    for h in &hyperplanes {
        let normal = h.annihilator();
        t = t.mul(&Polynomial::linear(normal.basis().row(0)));
    }
    let t = t.monic();
    if !is_weyl_invariant(&w, &t)? {
        return Err(Error::Inconsistent("discriminant polynomial is not Weyl invariant".into()));
    }
    if !is_invariant(r, &t)? {
        return Err(Error::Inconsistent("discriminant polynomial is not an invariant of R".into()));
    }
    Ok(DiscriminantPolynomial {
        degree: hyperplanes.len() as u32,
        polynomial: t,
        hyperplanes,
    })
}

/// The matrix of `f ↦ f|_{V0}` descended to `V0/V1`, from degree-`d`
/// invariants of `R` to those of the reduced relation, in the canonical bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMap {
    pub degree: u32,
    /// `target_dim × source_dim`; column `j` holds the image of source basis vector `j`.
    pub matrix: Matrix,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl RestrictionMap {
    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank
    }
}

/// Coordinates of `g` in an RREF polynomial basis.
fn rref_coordinates(basis: &[Polynomial], g: &Polynomial, n: usize, d: u32) -> Result<Vector> {
    let monos = monomials(n, d);
    let target = g.coefficients_on(&monos)?;
    let mut coords = Vec::with_capacity(basis.len());
    let mut rebuilt = Polynomial::zero(n);
    for b in basis {
        let (lead, _) = b.leading_term().expect("basis polynomials are nonzero");
        let pos = monos.iter().position(|m| m == lead).expect("leading monomial");
        coords.push(target[pos].clone());
        rebuilt = rebuilt.add(&b.scale(&target[pos]));
    }
    if rebuilt != *g {
        return Err(Error::Inconsistent("polynomial is not in the span of the basis".into()));
    }
    Ok(coords)
}

pub fn restriction_map(r: &LagrangianEquivalenceRelation, v0: &Subspace, d: u32) -> Result<RestrictionMap> {
    let reduction = r.reduce(v0)?;
    let source = invariant_space(r, d);
    let target = invariant_space(&reduction.relation, d);
    let m = reduction.quotient.dim();
    let mut columns = Vec::with_capacity(source.len());
    for f in &source {
        let g = f.compose_linear(reduction.quotient.section())?;
        columns.push(rref_coordinates(&target, &g, m, d)?);
    }
    let matrix = Matrix::from_rows(target.len(), columns)?.transpose();
    let rank = matrix.rank();
    Ok(RestrictionMap {
        degree: d,
        source_dim: source.len(),
        target_dim: target.len(),
        rank,
        matrix,
    })
}

/// One degree of the sequence `0 → C[V]^W → C[V]^R → C[V′]^{R′} → 0`, where
/// the first map is multiplication by `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCheck {
    pub degree: u32,
    pub dim_relation: usize,
    /// `dim` of Weyl invariants in degree `degree − deg T` (0 if negative).
    pub dim_weyl_shifted: usize,
    pub dim_reduced: usize,
    pub restriction_surjective: bool,
    /// `T · C[V]^W_{d − deg T}` lies in the kernel of the restriction.
    pub image_of_t_in_kernel: bool,
    pub holds: bool,
}

/// Checks graded exactness in degrees `0..=dmax` using the witness
/// hyperplane of a 1-regular relation.
pub fn graded_exactness(r: &LagrangianEquivalenceRelation, dmax: u32) -> Result<Vec<ExactnessCheck>> {
    let t = discriminant_polynomial(r)?;
    let OneRegularity::Regular { witness } = r.one_regularity() else {
        return Err(Error::NotOneRegular);
    };
    let n = r.n();
    let w = r.weyl_group();
    let reduction = r.reduce(&witness)?;
    let mut inv_w = GradedInvariantBasis::for_weyl_group(&w);
    let mut out = Vec::new();
    for d in 0..=dmax {
        let map = restriction_map(r, &witness, d)?;
        let (dim_weyl_shifted, image_of_t_in_kernel) = if d >= t.degree {
            let shifted = inv_w.basis(d - t.degree).to_vec();
            let mut ok = true;
            let source = invariant_space(r, d);
            for g in &shifted {
                let tg = t.polynomial.mul(g);
                let in_r = span_contains(&source, std::slice::from_ref(&tg), n, d)?;
                let restricted = tg.compose_linear(reduction.quotient.section())?;
                ok &= in_r && restricted.is_zero();
            }
            (shifted.len(), ok)
        } else {
            (0, true)
        };
        let holds = map.source_dim == dim_weyl_shifted + map.target_dim
            && map.is_surjective()
            && map.kernel_dim() == dim_weyl_shifted
            && image_of_t_in_kernel;
        out.push(ExactnessCheck {
            degree: d,
            dim_relation: map.source_dim,
            dim_weyl_shifted,
            dim_reduced: map.target_dim,
            restriction_surjective: map.is_surjective(),
            image_of_t_in_kernel,
            holds,
        });
    }
    Ok(out)
}

/// Outcome of a search for an invariant separating two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    /// `(x, y) ∈ R`; every invariant up to `checked_degree` agrees on them.
    Equivalent { checked_degree: u32 },
    Separated {
        polynomial: Polynomial,
        degree: u32,
        value_x: Scalar,
        value_y: Scalar,
    },
    /// `(x, y) ∉ R` but no invariant of degree `≤ dmax` tells them apart.
    Exhausted { dmax: u32 },
}

pub fn separate(r: &LagrangianEquivalenceRelation, x: &[Scalar], y: &[Scalar], dmax: u32) -> Result<Separation> {
    separate_with(r, &mut GradedInvariantBasis::for_relation(r), x, y, dmax)
}

/// [`separate`] with a caller-owned basis cache.
pub fn separate_with(
    r: &LagrangianEquivalenceRelation,
    cache: &mut GradedInvariantBasis,
    x: &[Scalar],
    y: &[Scalar],
    dmax: u32,
) -> Result<Separation> {
    let equivalent = r.membership(x, y)?;
    for d in 1..=dmax {
        for f in cache.basis(d) {
            let (fx, fy) = (f.eval(x)?, f.eval(y)?);
            if fx != fy {
                if equivalent {
                    return Err(Error::Inconsistent(format!(
                        "invariant {f} separates equivalent points"
                    )));
                }
                return Ok(Separation::Separated {
                    polynomial: f.clone(),
                    degree: d,
                    value_x: fx,
                    value_y: fy,
                });
            }
        }
    }
    Ok(if equivalent {
        Separation::Equivalent { checked_degree: dmax }
    } else {
        Separation::Exhausted { dmax }
    })
}

/// For linearly independent polynomials `f_1, …, f_k`, finds points
/// `x_1, …, x_k` with `(f_i(x_j))` invertible. Points are small integer
/// vectors drawn from a seeded generator and kept when they raise the rank.
pub fn independent_evaluation_points(family: &[Polynomial], seed: u64) -> Result<Vec<Vector>> {
    let Some(first) = family.first() else {
        return Ok(Vec::new());
    };
    let n = first.num_vars();
    if family.iter().any(|f| f.num_vars() != n) {
        return Err(Error::Inconsistent("family mixes numbers of variables".into()));
    }
    let mut monos: BTreeSet<Exponent> = BTreeSet::new();
    for f in family {
        monos.extend(f.terms().keys().cloned());
    }
    let monos: Vec<Exponent> = monos.into_iter().collect();
    let coeffs = family
        .iter()
        .map(|f| f.coefficients_on(&monos))
        .collect::<Result<Vec<_>>>()?;
    if Matrix::from_rows(monos.len(), coeffs)?.rank() < family.len() {
        return Err(Error::Inconsistent("family is linearly dependent".into()));
    }
    let k = family.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vector> = Vec::with_capacity(k);
    let mut columns: Vec<Vector> = Vec::with_capacity(k);
    let mut radius = 2i64;
    let mut attempts = 0usize;
    while points.len() < k {
        attempts += 1;
        if attempts % 200 == 0 {
            radius *= 2;
        }
        if attempts > 20_000 {
            return Err(Error::NoWitness("no invertible evaluation matrix found".into()));
        }
        let p: Vector = (0..n).map(|_| int(rng.gen_range(-radius..=radius))).collect();
        let column = family.iter().map(|f| f.eval(&p)).collect::<Result<Vector>>()?;
        let mut trial = columns.clone();
        trial.push(column.clone());
        if Matrix::from_rows(k, trial)?.rank() == columns.len() + 1 {
            columns.push(column);
            points.push(p);
        }
    }
    Ok(points)
}

/// The value matrix `(f_i(x_j))`.
pub fn evaluation_matrix(family: &[Polynomial], points: &[Vector]) -> Result<Matrix> {
    let rows = family
        .iter()
        .map(|f| points.iter().map(|p| f.eval(p)).collect::<Result<Vector>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(points.len(), rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductInvariantCheck {
    pub degree: u32,
    pub product_dim: usize,
    /// `Σ_{a+b=d} dim Inv_a(R) · dim Inv_b(R′)`.
    pub tensor_dim: usize,
    /// All `f ⊗ g` are invariants of `R × R′`.
    pub tensors_invariant: bool,
    /// The `f ⊗ g` are linearly independent, certified by an invertible evaluation matrix.
    pub tensors_independent: bool,
    pub holds: bool,
}

/// Checks that `f ⊗ g ↦ f(x) g(x′)` is a bijection onto the degree-`d`
/// invariants of `R × R′`.
pub fn product_invariant_check(
    r: &LagrangianEquivalenceRelation,
    r2: &LagrangianEquivalenceRelation,
    d: u32,
) -> Result<ProductInvariantCheck> {
    let product = r.product(r2);
    let target = invariant_space(&product, d);
    let mut left = GradedInvariantBasis::for_relation(r);
    let mut right = GradedInvariantBasis::for_relation(r2);
    let mut tensors = Vec::new();
    let mut tensor_dim = 0;
    for a in 0..=d {
        let fs = left.basis(a).to_vec();
        let gs = right.basis(d - a).to_vec();
        tensor_dim += fs.len() * gs.len();
        for f in &fs {
            for g in &gs {
                tensors.push(f.tensor(g));
            }
        }
    }
    let n = product.n();
    let tensors_invariant = span_contains(&target, &tensors, n, d)?;
    let tensors_independent = if tensors.is_empty() {
        true
    } else {
        match independent_evaluation_points(&tensors, u64::from(d)) {
            Ok(points) => !evaluation_matrix(&tensors, &points)?.determinant().is_zero(),
            Err(Error::Inconsistent(_)) | Err(Error::NoWitness(_)) => false,
            Err(e) => return Err(e),
        }
    };
    Ok(ProductInvariantCheck {
        degree: d,
        product_dim: target.len(),
        tensor_dim,
        tensors_invariant,
        tensors_independent,
        holds: target.len() == tensor_dim && tensors_invariant && tensors_independent,
    })
}
