//! Lagrangian equivalence relations: finite, closed sets of lagrangian
//! components containing the diagonal.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::IsometryGroup;
use crate::linalg::{BilinearForm, Matrix, QuotientSpace, Scalar, Subspace, Vector};
use crate::relation::{Isometry, LinearRelation};

/// Bounds on the closure search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    pub max_components: usize,
    pub max_rounds: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_components: 100_000,
            max_rounds: 10_000,
        }
    }
}

impl ClosureConfig {
    pub fn with_max_components(max_components: usize) -> Self {
        ClosureConfig {
            max_components,
            ..Self::default()
        }
    }
}

/// A finite union `R = ∪ L^α` of lagrangian relations on `V` that contains
/// the diagonal and is closed under composition and inversion.
///
/// Components are kept sorted by their canonical subspace, so two relations
/// with the same component set compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianEquivalenceRelation {
    form: BilinearForm,
    components: Vec<LinearRelation>,
}

/// Outcome of the 1-regularity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneRegularity {
    /// No proper special coisotropic subspaces.
    EmptyDiscriminant,
    /// All maximal discriminant subspaces are hyperplanes forming the orbit `W·witness`.
    Regular { witness: Subspace },
    NotRegular { reason: String },
}

impl OneRegularity {
    pub fn holds(&self) -> bool {
        !matches!(self, OneRegularity::NotRegular { .. })
    }
}

/// The result of reducing `R` to `V0/V1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub quotient: QuotientSpace,
    pub relation: LagrangianEquivalenceRelation,
}

/// An orthogonal decomposition `V = V^1 ⊕ … ⊕ V^k` under which `R` splits as a
/// product of 1-regular factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Subspace>,
    /// The factor relations, each in the coordinates of the canonical basis of its subspace.
    pub relations: Vec<LagrangianEquivalenceRelation>,
}

/// Semiregularity diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularityReport {
    pub semiregular: bool,
    pub checked: usize,
    /// The first special coisotropic subspace whose reduction is not 1-semiregular.
    pub failed_at: Option<Subspace>,
}

fn insert_component(map: &mut BTreeMap<Subspace, LinearRelation>, l: LinearRelation) -> bool {
    match map.entry(l.space().clone()) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(l);
            true
        }
        std::collections::btree_map::Entry::Occupied(_) => false,
    }
}

impl LagrangianEquivalenceRelation {
    /// `{Δ_V}`.
    pub fn trivial(form: &BilinearForm) -> Self {
        LagrangianEquivalenceRelation {
            form: form.clone(),
            components: vec![LinearRelation::diagonal(form)],
        }
    }

    /// The smallest closed set containing `generators`, their inverses and
    /// the diagonal.
    pub fn closure(form: &BilinearForm, generators: &[LinearRelation], cfg: ClosureConfig) -> Result<Self> {
        let mut gens: BTreeMap<Subspace, LinearRelation> = BTreeMap::new();
        for g in generators {
            if g.form() != form {
                return Err(Error::FormMismatch);
            }
            g.require_lagrangian()?;
            insert_component(&mut gens, g.clone());
            insert_component(&mut gens, g.inverse());
        }
        let gens: Vec<LinearRelation> = gens.into_values().collect();
        let diagonal = LinearRelation::diagonal(form);
        let mut seen = BTreeMap::new();
        insert_component(&mut seen, diagonal.clone());
        let mut frontier = vec![diagonal];
        let mut rounds = 0;
        while !frontier.is_empty() {
            rounds += 1;
            if rounds > cfg.max_rounds {
                return Err(Error::ClosureRoundsExceeded(cfg.max_rounds));
            }
            let mut next = Vec::new();
            for x in &frontier {
                for g in &gens {
                    let y = g.compose(x)?;
                    if insert_component(&mut seen, y.clone()) {
                        if seen.len() > cfg.max_components {
                            return Err(Error::ClosureBoundExceeded {
                                limit: cfg.max_components,
                                rounds,
                            });
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(LagrangianEquivalenceRelation {
            form: form.clone(),
            components: seen.into_values().collect(),
        })
    }

    /// Wraps an explicit component list, checking every axiom.
    pub fn from_components(form: &BilinearForm, components: Vec<LinearRelation>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for c in components {
            if c.form() != form {
                return Err(Error::FormMismatch);
            }
            c.require_lagrangian()?;
            insert_component(&mut map, c);
        }
        let r = LagrangianEquivalenceRelation {
            form: form.clone(),
            components: map.into_values().collect(),
        };
        if !r.contains_component(&LinearRelation::diagonal(form)) {
            return Err(Error::Inconsistent("component set does not contain the diagonal".into()));
        }
        if !r.is_closed()? {
            return Err(Error::Inconsistent(
                "component set is not closed under composition and inverse".into(),
            ));
        }
        Ok(r)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// `dim V`.
    pub fn n(&self) -> usize {
        self.form.dim()
    }

    pub fn components(&self) -> &[LinearRelation] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains_component(&self, l: &LinearRelation) -> bool {
        self.components
            .binary_search_by(|c| c.space().cmp(l.space()))
            .is_ok()
    }

    pub fn is_closed(&self) -> Result<bool> {
        for a in &self.components {
            if !self.contains_component(&a.inverse()) {
                return Ok(false);
            }
            for b in &self.components {
                if !self.contains_component(&a.compose(b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Number of components of each atypicality, indexed by atypicality.
    pub fn atypicality_histogram(&self) -> Result<Vec<usize>> {
        let mut hist = Vec::new();
        for c in &self.components {
            let a = c.atypicality()?;
            if hist.len() <= a {
                hist.resize(a + 1, 0);
            }
            hist[a] += 1;
        }
        Ok(hist)
    }

    /// Components of atypicality 0, as isometries.
    pub fn weyl_group(&self) -> IsometryGroup {
        let elements = self.components.iter().filter_map(LinearRelation::as_isometry);
        let group = IsometryGroup::from_elements(&self.form, elements);
        debug_assert!(group.satisfies_group_axioms());
        group
    }

    /// Distinct `p1(L^α)`, sorted.
    pub fn special_coisotropics(&self) -> Vec<Subspace> {
        let set: BTreeSet<Subspace> = self.components.iter().map(LinearRelation::p1).collect();
        set.into_iter().collect()
    }

    /// The proper special coisotropic subspaces; `Δ_R` is their union.
    pub fn discriminant(&self) -> Vec<Subspace> {
        self.special_coisotropics()
            .into_iter()
            .filter(|s| !s.is_full())
            .collect()
    }

    /// Discriminant subspaces not strictly contained in another one.
    pub fn maximal_discriminant(&self) -> Vec<Subspace> {
        let all = self.discriminant();
        all.iter()
            .filter(|s| {
                !all.iter()
                    .any(|t| t != *s && t.contains(s).expect("same ambient"))
            })
            .cloned()
            .collect()
    }

    pub fn is_special_coisotropic(&self, v0: &Subspace) -> bool {
        self.components.iter().any(|c| c.p1() == *v0)
    }

    /// Whether `(x, y)` lies in some component.
    pub fn membership(&self, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
        for c in &self.components {
            if c.contains_pair(x, y)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The relation induced on `V0/V1` by the components inside `V0 × V0`.
    pub fn reduce(&self, v0: &Subspace) -> Result<Reduction> {
        if v0.ambient_dim() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v0.ambient_dim(),
            });
        }
        if !self.is_special_coisotropic(v0) {
            return Err(Error::NotSpecialCoisotropic);
        }
        let quotient = self.form.quotient(v0)?;
        if v0.is_full() {
            // E_V is the diagonal, both filters accept everything and the
            // quotient coordinates are the identity
            return Ok(Reduction {
                quotient,
                relation: self.clone(),
            });
        }
        let e = LinearRelation::idempotent_for(&self.form, v0)?;
        let n = self.n();
        let mut reduced = Vec::new();
        for c in &self.components {
            let inside = v0.contains(&c.p1())? && v0.contains(&c.p2())?;
            let fixed = e.compose(&c.compose(&e)?)? == *c;
            if inside != fixed {
                return Err(Error::Inconsistent(
                    "the two component filters of the reduction disagree".into(),
                ));
            }
            if !inside {
                continue;
            }
            let pairs: Vec<(Vector, Vector)> = c
                .space()
                .basis()
                .rows()
                .map(|row| {
                    Ok((quotient.project(&row[..n])?, quotient.project(&row[n..])?))
                })
                .collect::<Result<_>>()?;
            reduced.push(LinearRelation::from_pairs(quotient.form().clone(), &pairs)?);
        }
        let relation = Self::from_components(quotient.form(), reduced)?;
        Ok(Reduction { quotient, relation })
    }

    /// 1-regularity with a witness hyperplane when it holds.
    pub fn one_regularity(&self) -> OneRegularity {
        let maximal = self.maximal_discriminant();
        let Some(first) = maximal.first() else {
            return OneRegularity::EmptyDiscriminant;
        };
        if let Some(bad) = maximal.iter().find(|s| s.codim() != 1) {
            return OneRegularity::NotRegular {
                reason: format!("maximal discriminant subspace of codimension {}", bad.codim()),
            };
        }
        let orbit = self.weyl_group().orbit(first);
        if orbit != maximal {
            return OneRegularity::NotRegular {
                reason: format!(
                    "{} maximal discriminant hyperplanes but the Weyl orbit has {}",
                    maximal.len(),
                    orbit.len()
                ),
            };
        }
        OneRegularity::Regular { witness: first.clone() }
    }

    pub fn is_one_regular(&self) -> bool {
        self.one_regularity().holds()
    }

    /// Weyl group of the reduction to a discriminant hyperplane `V0`,
    /// computed directly and as the stabilizer of `V0` acting on `V0/V1`.
    /// The two must agree.
    pub fn reduced_weyl_group(&self, v0: &Subspace) -> Result<IsometryGroup> {
        let OneRegularity::Regular { witness } = self.one_regularity() else {
            return Err(Error::NotOneRegular);
        };
        let w = self.weyl_group();
        if !w.orbit(&witness).contains(v0) {
            return Err(Error::NotOneRegular);
        }
        let reduction = self.reduce(v0)?;
        let direct = reduction.relation.weyl_group();
        let q = &reduction.quotient;
        let induced = w
            .stabilizer(v0)
            .into_iter()
            .map(|s| {
                let m = &(q.projection() * s.matrix()) * q.section();
                Isometry::new(q.form().clone(), m)
            })
            .collect::<Result<Vec<_>>>()?;
        let via_stabilizer = IsometryGroup::from_elements(q.form(), induced);
        if via_stabilizer != direct {
            return Err(Error::Inconsistent(format!(
                "reduced Weyl group has order {} directly but {} via the stabilizer",
                direct.order(),
                via_stabilizer.order()
            )));
        }
        Ok(direct)
    }

    /// `R × R′` on `V ⊕ V′` with the orthogonal sum form.
    pub fn product(&self, other: &Self) -> Self {
        let form = self.form.direct_sum(&other.form);
        let mut components = Vec::with_capacity(self.len() * other.len());
        for a in &self.components {
            for b in &other.components {
                components.push(direct_sum_relation(&form, a, b));
            }
        }
        let mut map = BTreeMap::new();
        for c in components {
            insert_component(&mut map, c);
        }
        LagrangianEquivalenceRelation {
            form,
            components: map.into_values().collect(),
        }
    }

    /// Checks that `R` splits as a product of 1-regular relations along the
    /// given mutually orthogonal nondegenerate subspaces spanning `V`.
    pub fn verify_factorization(&self, factors: &[Subspace]) -> Result<Option<Factorization>> {
        let n = self.n();
        let mut total = 0;
        for (i, f) in factors.iter().enumerate() {
            if f.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.ambient_dim(),
                });
            }
            if f.is_zero() || !self.form.is_nondegenerate_on(f)? {
                return Ok(None);
            }
            for g in &factors[i + 1..] {
                let cross = &(f.basis() * self.form.gram()) * &g.basis().transpose();
                if !cross.is_zero() {
                    return Ok(None);
                }
            }
            total += f.dim();
        }
        if total != n {
            return Ok(None);
        }
        // new coordinates c with v = c·B, B the stacked factor bases
        let rows: Vec<Vector> = factors.iter().flat_map(Subspace::basis_vectors).collect();
        let b = Matrix::from_rows(n, rows)?;
        let b_inv = b
            .inverse()
            .ok_or_else(|| Error::Inconsistent("factor bases are dependent".into()))?;
        let mut offsets = Vec::with_capacity(factors.len());
        let mut o = 0;
        for f in factors {
            offsets.push((o, f.dim()));
            o += f.dim();
        }
        let mut pieces: Vec<BTreeMap<Subspace, LinearRelation>> = vec![BTreeMap::new(); factors.len()];
        let factor_forms: Vec<BilinearForm> = factors
            .iter()
            .map(|f| BilinearForm::new(self.form.restricted_gram(f.basis())))
            .collect::<Result<_>>()?;
        for c in &self.components {
            let transformed: Vec<Vector> = c
                .space()
                .basis()
                .rows()
                .map(|row| {
                    let mut v = b_inv.vec_mul(&row[..n]);
                    v.extend(b_inv.vec_mul(&row[n..]));
                    v
                })
                .collect();
            let space = Subspace::span(2 * n, &transformed)?;
            let mut dims = 0;
            for (k, &(off, d)) in offsets.iter().enumerate() {
                let block = block_subspace(n, off, d);
                let part = space.intersect(&block)?;
                dims += part.dim();
                let pairs: Vec<(Vector, Vector)> = part
                    .basis()
                    .rows()
                    .map(|r| (r[off..off + d].to_vec(), r[n + off..n + off + d].to_vec()))
                    .collect();
                let rel = LinearRelation::from_pairs(factor_forms[k].clone(), &pairs)?;
                insert_component(&mut pieces[k], rel);
            }
            if dims != n {
                return Ok(None);
            }
        }
        let count: usize = pieces.iter().map(BTreeMap::len).product();
        if count != self.len() {
            return Ok(None);
        }
        // Every component is the sum of its pieces and the counts match, so
        // components correspond to tuples of pieces. Compositions and
        // inverses act piecewise, hence each factor set is itself closed
        // and contains its diagonal.
        let mut relations = Vec::with_capacity(factors.len());
        for (k, p) in pieces.into_iter().enumerate() {
            let components: Vec<LinearRelation> = p.into_values().collect();
            if components.iter().any(|c| !c.is_lagrangian()) {
                return Ok(None);
            }
            let r = LagrangianEquivalenceRelation {
                form: factor_forms[k].clone(),
                components,
            };
            if !r.is_one_regular() {
                return Ok(None);
            }
            relations.push(r);
        }
        Ok(Some(Factorization {
            factors: factors.to_vec(),
            relations,
        }))
    }

    /// Looks for a decomposition into 1-regular factors.
    ///
    /// A supplied decomposition is verified first. Otherwise candidate
    /// factors are grown from the minimal supports of the components: two
    /// supports are linked when they are non-orthogonal or exchanged by the
    /// Weyl group, each linked class is extended to a nondegenerate subspace
    /// by adjoining hyperbolic partners for its radical, and whatever is left
    /// over forms a final factor. If that candidate fails, the trivial
    /// decomposition `{V}` is tried.
    pub fn one_semiregular_decomposition(&self, supplied: Option<&[Subspace]>) -> Result<Option<Factorization>> {
        if let Some(factors) = supplied {
            if let Some(f) = self.verify_factorization(factors)? {
                return Ok(Some(f));
            }
        }
        if self.n() == 0 {
            return Ok(Some(Factorization {
                factors: Vec::new(),
                relations: Vec::new(),
            }));
        }
        if let Some(candidate) = self.candidate_factors()? {
            if let Some(f) = self.verify_factorization(&candidate)? {
                return Ok(Some(f));
            }
        }
        self.verify_factorization(&[Subspace::full(self.n())])
    }

    pub fn is_one_semiregular(&self, supplied: Option<&[Subspace]>) -> Result<bool> {
        Ok(self.one_semiregular_decomposition(supplied)?.is_some())
    }

    /// Reduces to every special coisotropic subspace and tests each
    /// reduction for 1-semiregularity.
    pub fn semiregularity(&self) -> Result<SemiregularityReport> {
        let specials = self.special_coisotropics();
        for (i, v0) in specials.iter().enumerate() {
            let reduced = self.reduce(v0)?.relation;
            if !reduced.is_one_semiregular(None)? {
                return Ok(SemiregularityReport {
                    semiregular: false,
                    checked: i + 1,
                    failed_at: Some(v0.clone()),
                });
            }
        }
        Ok(SemiregularityReport {
            semiregular: true,
            checked: specials.len(),
            failed_at: None,
        })
    }

    pub fn is_semiregular(&self) -> Result<bool> {
        Ok(self.semiregularity()?.semiregular)
    }

    fn candidate_factors(&self) -> Result<Option<Vec<Subspace>>> {
        let n = self.n();
        let supports: BTreeSet<Subspace> = self
            .components
            .iter()
            .map(LinearRelation::support)
            .filter(|s| !s.is_zero())
            .collect();
        let atoms: Vec<Subspace> = supports
            .iter()
            .filter(|s| {
                !supports
                    .iter()
                    .any(|t| t != *s && s.contains(t).expect("same ambient"))
            })
            .cloned()
            .collect();
        if atoms.is_empty() {
            return Ok(None);
        }
        let w = self.weyl_group();
        let mut parent: Vec<usize> = (0..atoms.len()).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for i in 0..atoms.len() {
            let orbit = w.orbit(&atoms[i]);
            for j in i + 1..atoms.len() {
                let cross = &(atoms[i].basis() * self.form.gram()) * &atoms[j].basis().transpose();
                if !cross.is_zero() || orbit.contains(&atoms[j]) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut classes: BTreeMap<usize, Subspace> = BTreeMap::new();
        for (i, atom) in atoms.iter().enumerate() {
            let r = find(&mut parent, i);
            let entry = classes.entry(r).or_insert_with(|| Subspace::zero(n));
            *entry = entry.sum(atom)?;
        }
        let mut spans: Vec<Subspace> = classes.into_values().collect();
        spans.sort();
        let mut available = Subspace::full(n);
        let mut factors = Vec::new();
        for (k, u) in spans.iter().enumerate() {
            let mut room = available.clone();
            for later in &spans[k + 1..] {
                room = room.intersect(&self.form.orth_complement(later)?)?;
            }
            let Some(f) = self.nondegenerate_extension(u, &room)? else {
                return Ok(None);
            };
            available = available.intersect(&self.form.orth_complement(&f)?)?;
            factors.push(f);
        }
        if !available.is_zero() {
            factors.push(available);
        }
        Ok(Some(factors))
    }

    /// A nondegenerate subspace containing `u`, built by adding to `u`
    /// vectors of `room` dual to the radical of `u`.
    fn nondegenerate_extension(&self, u: &Subspace, room: &Subspace) -> Result<Option<Subspace>> {
        let n = self.n();
        let radical = u.intersect(&self.form.orth_complement(u)?)?;
        if radical.is_zero() {
            return Ok(Some(u.clone()));
        }
        let mut span = radical.clone();
        let mut complement = Vec::new();
        for r in u.basis().rows() {
            if !span.contains_vector(r)? {
                span = span.with_vector(r)?;
                complement.push(r.to_vec());
            }
        }
        let c = Subspace::span(n, &complement)?;
        let candidates = room.intersect(&self.form.orth_complement(&c)?)?;
        if candidates.is_zero() {
            return Ok(None);
        }
        // coefficient rows a_j with (a_j M) G r_i = δ_ij
        let m = candidates.basis();
        let pairing = &(m * self.form.gram()) * &radical.basis().transpose();
        let pt = pairing.transpose();
        let mut extended = u.clone();
        for j in 0..radical.dim() {
            let target = crate::linalg::unit_vector(radical.dim(), j);
            let Some(a) = pt.solve(&target) else {
                return Ok(None);
            };
            extended = extended.with_vector(&m.vec_mul(&a))?;
        }
        if !self.form.is_nondegenerate_on(&extended)? {
            return Ok(None);
        }
        Ok(Some(extended))
    }
}

fn block_subspace(n: usize, off: usize, d: usize) -> Subspace {
    let rows: Vec<Vector> = (0..d)
        .flat_map(|i| {
            [
                crate::linalg::unit_vector(2 * n, off + i),
                crate::linalg::unit_vector(2 * n, n + off + i),
            ]
        })
        .collect();
    Subspace::span(2 * n, &rows).expect("block shape")
}

/// `L ⊕ L′ ⊆ (V ⊕ V′) × (V ⊕ V′)`.
pub fn direct_sum_relation(form: &BilinearForm, a: &LinearRelation, b: &LinearRelation) -> LinearRelation {
    let (n1, n2) = (a.n(), b.n());
    let z = |k: usize| vec![Scalar::zero(); k];
    let mut rows = Vec::with_capacity(a.dim() + b.dim());
    for r in a.space().basis().rows() {
        let mut v = r[..n1].to_vec();
        v.extend(z(n2));
        v.extend_from_slice(&r[n1..]);
        v.extend(z(n2));
        rows.push(v);
    }
    for r in b.space().basis().rows() {
        let mut v = z(n1);
        v.extend_from_slice(&r[..n2]);
        v.extend(z(n1));
        v.extend_from_slice(&r[n2..]);
        rows.push(v);
    }
    let space = Subspace::span(2 * (n1 + n2), &rows).expect("direct sum shape");
    LinearRelation::new(form.clone(), space).expect("direct sum of relations")
}
