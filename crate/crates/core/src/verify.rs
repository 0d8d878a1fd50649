//! Seeded property suites, shared by the `verify` command and the test
//! targets.
//!
//! Each suite counts checks per property and keeps the first few failure
//! messages. Errors raised while checking a property count as failures of
//! that property rather than aborting the suite.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    evaluation_matrix, graded_exactness, independent_evaluation_points, invariant_space, product_invariant_check,
    reynolds_invariant_space, same_span, separate_with, span_contains, weyl_invariant_space, GradedInvariantBasis,
    Separation,
};
use crate::linalg::{format_vector, frac, vector, BilinearForm, Scalar, Subspace, Vector};
use crate::monoid::{direct_sum_relation, ClosureConfig, LagrangianEquivalenceRelation, OneRegularity};
use crate::poly::{monomials, Polynomial};
use crate::random::{random_form, random_isometry, random_lagrangian, random_pair_in, random_rational_vector};
use crate::relation::LinearRelation;
use crate::wgrs::{catalog, CatalogEntry, IsoSet, RootSystem};

pub const SUITES: [&str; 5] = ["monoid", "wgrs", "invariants", "reduction", "product"];

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Number of random composition pairs in the monoid suite.
pub const MONOID_PAIRS: usize = 1000;

/// Random pairs per catalog entry compared by the two membership tests.
pub const MEMBERSHIP_SAMPLES: usize = 500;

/// Seeded random pairs in the detectability sample.
pub const DETECTABILITY_SAMPLES: usize = 200;

/// Degree bound for separation and invariant agreement.
pub const SEPARATION_DMAX: u32 = 6;

const MAX_DETAILS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCount {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// Reported properties are informational; their failures do not fail
    /// the suite.
    pub gated: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyCount>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| !p.gated || p.failed == 0)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyCount> {
        self.properties.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for p in &self.properties {
            let status = match (p.failed, p.gated) {
                (0, _) => "ok",
                (_, true) => "FAIL",
                (_, false) => "reported",
            };
            writeln!(f, "  {status:8} {}: {} checked, {} failed", p.name, p.checked, p.failed)?;
            for d in &p.details {
                writeln!(f, "           {d}")?;
            }
        }
        write!(f, "{}", if self.passed() { "passed" } else { "FAILED" })
    }
}

struct Tally {
    properties: Vec<PropertyCount>,
}

impl Tally {
    fn new() -> Self {
        Tally { properties: Vec::new() }
    }

    fn entry(&mut self, name: &str, gated: bool) -> &mut PropertyCount {
        let idx = match self.properties.iter().position(|p| p.name == name) {
            Some(i) => i,
            None => {
                self.properties.push(PropertyCount {
                    name: name.to_string(),
                    checked: 0,
                    failed: 0,
                    gated,
                    details: Vec::new(),
                });
                self.properties.len() - 1
            }
        };
        &mut self.properties[idx]
    }

    fn record(&mut self, name: &str, gated: bool, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let p = self.entry(name, gated);
        p.checked += 1;
        let detail = match outcome {
            Ok(true) => return,
            Ok(false) => context(),
            Err(e) => format!("{}: {e}", context()),
        };
        p.failed += 1;
        if p.details.len() < MAX_DETAILS {
            p.details.push(detail);
        }
    }

    fn check(&mut self, name: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        self.record(name, true, outcome, context)
    }

    fn finish(self, suite: &str, seed: u64) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            properties: self.properties,
        }
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let tally = match name {
        "monoid" => monoid_suite(seed),
        "wgrs" => wgrs_suite(seed),
        "invariants" => invariants_suite(seed),
        "reduction" => reduction_suite(),
        "product" => product_suite(seed),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(tally.finish(name, seed))
}

/// `gl(m|n)` with `m, n ≥ 1` and `m + n ≤ max_rank`.
pub fn gl_entries(max_rank: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for total in 2..=max_rank {
        for m in 1..total {
            out.push(CatalogEntry {
                name: "gl",
                params: vec![m, total - m],
            });
        }
    }
    out
}

/// Orthosymplectic entries of rank at most `max_rank`.
pub fn osp_entries(max_rank: usize) -> Vec<CatalogEntry> {
    [(1, 2), (2, 2), (3, 2), (1, 4), (4, 2), (5, 2), (3, 4)]
        .into_iter()
        .filter(|&(a, b)| a / 2 + b / 2 <= max_rank)
        .map(|(a, b)| CatalogEntry {
            name: "osp",
            params: vec![a, b],
        })
        .collect()
}

/// The entries the suites run on: `gl(m|n)` and `osp` up to the given rank.
pub fn catalog_entries(max_rank: usize) -> Vec<CatalogEntry> {
    let mut out = gl_entries(max_rank);
    out.extend(osp_entries(max_rank));
    out
}

fn load(entry: &CatalogEntry) -> Result<RootSystem> {
    catalog(entry.name, &entry.params)
}

fn ok_all(it: impl IntoIterator<Item = Result<bool>>) -> Result<bool> {
    for r in it {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_point_pair(rng: &mut ChaCha8Rng, r: &LagrangianEquivalenceRelation) -> (Vector, Vector) {
    if rng.gen_bool(0.5) && !r.is_empty() {
        let l = &r.components()[rng.gen_range(0..r.len())];
        random_pair_in(rng, l, 4)
    } else {
        let n = r.n();
        (random_rational_vector(rng, n, 4), random_rational_vector(rng, n, 4))
    }
}

// ---------------------------------------------------------------- monoid

fn monoid_suite(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..MONOID_PAIRS {
        let n = 2 + i % 5;
        let form = random_form(&mut rng, n);
        let l = random_lagrangian(&mut rng, &form);
        let l2 = random_lagrangian(&mut rng, &form);
        let ctx = || format!("pair {i} in dimension {n}");
        let c = match l2.compose(&l) {
            Ok(c) => c,
            Err(e) => {
                t.check("composition is Lagrangian of dimension n", Err(e), ctx);
                continue;
            }
        };
        t.check("composition is Lagrangian of dimension n", Ok(c.is_lagrangian() && c.dim() == n), ctx);
        t.check(
            "kernel dimensions agree",
            Ok([&l, &l2, &c].iter().all(|x| x.kernel_p1().dim() == x.kernel_p2().dim())),
            ctx,
        );
        t.check("atypicality bounds under composition", atypicality_bounds(&l, &l2, &c), ctx);
        t.check("projections are complements of kernel images", projection_duality(&l), ctx);
        t.check("inverse preserves isotropy and atypicality", inverse_properties(&l), ctx);
        t.check("inverse composed with L is E of its image", inverse_composition(&l), ctx);
        t.check("L⁻¹ ∘ L is idempotent and classified", inverse_idempotent(&l), ctx);
        for x in [&l, &l2, &c] {
            if let Ok(true) = x.is_idempotent() {
                let literal = LinearRelation::idempotent_for(x.form(), &x.p1()).map(|e| e == *x);
                t.record("idempotents are E of their image (literal, reported)", false, literal, ctx);
                if x.p1() == x.p2() {
                    t.check("idempotents with p1 = p2 are E of their image", literal_eq(x), ctx);
                }
            }
        }
        t.check(
            "canonical data round trip",
            l.canonical_data().and_then(|d| Ok(d.reconstruct(&form)? == l)),
            ctx,
        );
        t.check("diagonal is a two-sided unit", unit_law(&l), ctx);
        t.check(
            "inverse reverses composition",
            (|| Ok(c.inverse() == l.inverse().compose(&l2.inverse())?))(),
            ctx,
        );
        let s = random_isometry(&mut rng, &form);
        t.check("isometry translates act as expected", translate_identities(&l, &s), ctx);
        if i % 4 == 0 {
            let l3 = random_lagrangian(&mut rng, &form);
            t.check(
                "composition is associative",
                (|| Ok(l3.compose(&c)? == l3.compose(&l2)?.compose(&l)?))(),
                ctx,
            );
        }
    }
    for entry in [("gl", [1, 1]), ("gl", [2, 1]), ("gl", [2, 2]), ("osp", [3, 2]), ("gl", [3, 1])] {
        let label = format!("{}({}|{})", entry.0, entry.1[0], entry.1[1]);
        let r = match catalog(entry.0, &entry.1).and_then(|rs| rs.build_relation(ClosureConfig::default())) {
            Ok(r) => r,
            Err(e) => {
                t.check("catalog relation builds", Err(e), || label.clone());
                continue;
            }
        };
        t.check("catalog relation builds", Ok(true), || label.clone());
        relation_properties(&mut t, &r, &label);
    }
    t
}

fn atypicality_bounds(l: &LinearRelation, l2: &LinearRelation, c: &LinearRelation) -> Result<bool> {
    let (a, a2, ac) = (l.atypicality()?, l2.atypicality()?, c.atypicality()?);
    Ok(a.max(a2) <= ac && ac <= a + a2)
}

fn projection_duality(l: &LinearRelation) -> Result<bool> {
    let form = l.form();
    let p1 = l.p1();
    let p2 = l.p2();
    Ok(p1 == form.orth_complement(&l.kernel_p2_image())?
        && p2 == form.orth_complement(&l.kernel_p1_image())?
        && form.is_coisotropic(&p1)?
        && form.is_coisotropic(&p2)?)
}

fn inverse_properties(l: &LinearRelation) -> Result<bool> {
    let inv = l.inverse();
    Ok(inv.is_lagrangian() && inv.atypicality()? == l.atypicality()? && inv.inverse() == *l)
}

fn inverse_composition(l: &LinearRelation) -> Result<bool> {
    Ok(l.inverse().compose(l)? == LinearRelation::idempotent_for(l.form(), &l.p1())?)
}

fn inverse_idempotent(l: &LinearRelation) -> Result<bool> {
    let e = l.inverse().compose(l)?;
    Ok(e.is_idempotent()? && e.classify_idempotent()? == l.p1())
}

fn literal_eq(x: &LinearRelation) -> Result<bool> {
    Ok(LinearRelation::idempotent_for(x.form(), &x.p1())? == *x)
}

fn unit_law(l: &LinearRelation) -> Result<bool> {
    let d = LinearRelation::diagonal(l.form());
    Ok(d.compose(l)? == *l && l.compose(&d)? == *l)
}

fn translate_identities(l: &LinearRelation, s: &crate::relation::Isometry) -> Result<bool> {
    let gs = s.graph();
    let moved = gs.compose(l)?;
    let v0 = l.p1();
    let e = LinearRelation::idempotent_for(l.form(), &v0)?;
    let conj = gs.compose(&e)?.compose(&s.inverse().graph())?;
    Ok(moved.p1() == l.p1()
        && moved.p2() == s.apply_subspace(&l.p2())
        && LinearRelation::idempotent_for(l.form(), &s.apply_subspace(&v0))? == conj)
}

/// Structural properties of a closed relation.
fn relation_properties(t: &mut Tally, r: &LagrangianEquivalenceRelation, label: &str) {
    let ctx = || label.to_string();
    let gens: Vec<LinearRelation> = r.components().to_vec();
    t.check(
        "closure is idempotent",
        LagrangianEquivalenceRelation::closure(r.form(), &gens, ClosureConfig::default()).map(|c| c == *r),
        ctx,
    );
    for c in r.components() {
        if let Ok(true) = c.is_idempotent() {
            t.record("idempotent components are E of their image (literal, reported)", false, literal_eq(c), ctx);
            if c.p1() == c.p2() {
                t.check("idempotent components with p1 = p2 are E of their image", literal_eq(c), ctx);
            }
        }
    }
    t.check(
        "special coisotropics carry idempotent components",
        ok_all(
            r.special_coisotropics()
                .iter()
                .map(|v0| Ok(r.contains_component(&LinearRelation::idempotent_for(r.form(), v0)?))),
        ),
        ctx,
    );
    t.check(
        "reduction to V is the identity",
        r.reduce(&Subspace::full(r.n())).map(|red| red.relation == *r),
        ctx,
    );
    t.check(
        "reductions to special coisotropics succeed",
        ok_all(r.special_coisotropics().iter().map(|v0| r.reduce(v0).map(|_| true))),
        ctx,
    );
    let w = r.weyl_group();
    t.check(
        "Weyl translates stay in the relation",
        ok_all(w.elements().iter().flat_map(|s| {
            let g = s.graph();
            r.components().iter().map(move |c| {
                Ok(r.contains_component(&g.compose(c)?) && r.contains_component(&c.compose(&g)?))
            })
        })),
        ctx,
    );
}

// ---------------------------------------------------------------- wgrs

fn wgrs_suite(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for entry in catalog_entries(5) {
        let label = entry.to_string();
        let ctx = || label.clone();
        let rs = match load(&entry) {
            Ok(rs) => rs,
            Err(e) => {
                t.check("catalog entry validates", Err(e), ctx);
                continue;
            }
        };
        t.check("catalog entry validates", Ok(rs.validate().is_valid()), ctx);
        for (k, mutated) in mutations(&rs).into_iter().enumerate() {
            t.check(
                "mutated entries fail validation",
                mutated.map(|m| !m.validate().is_valid()),
                || format!("{label} mutation {k}"),
            );
        }
        let rank = rs.dim();
        let maximal = rs.maximal_isosets(None);
        t.check(
            "maximal iso-sets have equal size",
            maximal.as_ref().map_err(Clone::clone).map(|sets| {
                let expected = if entry.name == "gl" {
                    entry.params[0].min(entry.params[1])
                } else {
                    rs.defect()
                };
                sets.iter().all(|s| s.len() == expected)
            }),
            ctx,
        );
        if entry.name == "gl" {
            let (m, n) = (entry.params[0], entry.params[1]);
            let fact = |k: usize| (1..=k).product::<usize>();
            t.check(
                "Weyl group of gl(m|n) has order m!n!",
                rs.weyl_group().map(|w| w.order() == fact(m) * fact(n)),
                ctx,
            );
        }
        if rank <= 4 {
            transport_checks(&mut t, &rs, &mut rng, &label);
        }
        two_step_checks(&mut t, &rs, &label);
        let r = match rs.build_relation(ClosureConfig::default()) {
            Ok(r) => r,
            Err(e) => {
                t.check("relation components are the Γ_w ∘ E_(S^⊥)", Err(e), ctx);
                continue;
            }
        };
        t.check("relation components are the Γ_w ∘ E_(S^⊥)", Ok(true), ctx);
        t.check("catalog relation is semiregular", r.is_semiregular(), ctx);
        let samples = if rank <= 3 { MEMBERSHIP_SAMPLES } else { MEMBERSHIP_SAMPLES / 5 };
        for k in 0..samples {
            let (x, y) = random_point_pair(&mut rng, &r);
            let ctx = || format!("{label} sample {k}: {} ~ {}", format_vector(&x), format_vector(&y));
            t.check("class membership agrees with relation membership", class_agrees(&rs, &r, &x, &y), ctx);
        }
    }
    t
}

/// Root sets that violate an axiom: each root dropped on its own (breaks
/// symmetry), `±3α` added for an anisotropic `α` (breaks integrality) and
/// `±α` replaced by `±2α` for an isotropic `α` pairing nontrivially with
/// another isotropic root (breaks the shift axiom).
fn mutations(rs: &RootSystem) -> Vec<Result<RootSystem>> {
    let roots = rs.roots();
    let scale = |v: &[Scalar], c: i64| v.iter().map(|x| x * Scalar::from(num_bigint::BigInt::from(c))).collect::<Vector>();
    let mut out = Vec::new();
    for i in 0..roots.len() {
        let mut dropped = roots.to_vec();
        dropped.remove(i);
        out.push(RootSystem::new(rs.form().clone(), dropped));
    }
    if let Some(a) = rs.anisotropic_roots().first() {
        let mut more = roots.to_vec();
        more.push(scale(a, 3));
        more.push(scale(a, -3));
        out.push(RootSystem::new(rs.form().clone(), more));
    }
    let iso = rs.isotropic_roots();
    if let Some(a) = iso.iter().find(|a| iso.iter().any(|b| !rs.form().pair(a, b).is_zero())) {
        let neg = scale(a, -1);
        let mut replaced: Vec<Vector> = roots.iter().filter(|r| **r != *a && **r != neg).cloned().collect();
        replaced.push(scale(a, 2));
        replaced.push(scale(a, -2));
        out.push(RootSystem::new(rs.form().clone(), replaced));
    }
    out
}

fn transport_checks(t: &mut Tally, rs: &RootSystem, rng: &mut ChaCha8Rng, label: &str) {
    let n = rs.dim();
    let mut points: Vec<Vector> = vec![vec![Scalar::zero(); n]];
    if let Ok(sets) = rs.maximal_isosets(None) {
        for s in sets.iter().filter(|s| !s.is_empty()) {
            // a generic point of span(S) is orthogonal to S
            let mut v = vec![Scalar::zero(); n];
            for p in s.pairs() {
                let c = frac(rng.gen_range(1..=5), rng.gen_range(1..=3));
                for (vi, pi) in v.iter_mut().zip(p) {
                    *vi += &c * pi;
                }
            }
            points.push(v);
        }
    }
    for v in &points {
        let sets = match rs.maximal_isosets(Some(v)) {
            Ok(s) => s,
            Err(e) => {
                t.check("iso-set transport witnesses verify", Err(e), || label.to_string());
                continue;
            }
        };
        for s in &sets {
            for s2 in &sets {
                t.check(
                    "iso-set transport witnesses verify",
                    transport_ok(rs, v, s, s2),
                    || format!("{label} at v = {}", format_vector(v)),
                );
            }
        }
    }
}

fn transport_ok(rs: &RootSystem, v: &[Scalar], s: &IsoSet, s2: &IsoSet) -> Result<bool> {
    let wit = rs.transport_isoset(v, s, s2)?;
    Ok(wit.isometry.apply(v) == v && s.image(&wit.isometry) == *s2)
}

fn two_step_checks(t: &mut Tally, rs: &RootSystem, label: &str) {
    let iso = rs.isotropic_roots();
    for b in &iso {
        for b2 in &iso {
            t.check(
                "two-step witnesses verify",
                two_step_ok(rs, b, b2),
                || format!("{label}: {} → {}", format_vector(b), format_vector(b2)),
            );
        }
    }
}

fn two_step_ok(rs: &RootSystem, b: &[Scalar], b2: &[Scalar]) -> Result<bool> {
    let wit = rs.two_step_witness(b, b2)?;
    let w = &wit.isometry;
    let target: Vector = if wit.sign == 1 {
        b2.to_vec()
    } else {
        b2.iter().map(|x| -x).collect()
    };
    let mut ok = w.apply(b) == target;
    if rs.form().pair(b, b2) == Scalar::zero() && b != b2 && target != b {
        ok &= w.compose(w).is_identity();
        let v1 = Subspace::span(rs.dim(), &[b.to_vec(), b2.to_vec()])?;
        let v0 = rs.form().orth_complement(&v1)?;
        for v in v0.basis().rows() {
            let moved: Vector = w.apply(v).iter().zip(v).map(|(a, c)| a - c).collect();
            ok &= v1.contains_vector(&moved)?;
        }
    }
    Ok(ok)
}

fn class_agrees(rs: &RootSystem, r: &LagrangianEquivalenceRelation, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
    let expected = r.membership(x, y)?;
    let mut ok = rs.class_membership(x, y)?.is_some() == expected;
    // any choice of maximal iso-set gives the same answer
    for s in rs.maximal_isosets(Some(x))? {
        ok &= rs.class_membership_with(x, y, &s)?.is_some() == expected;
    }
    Ok(ok)
}

// ---------------------------------------------------------------- invariants

/// `E_{Cv}` for an isotropic `v` of the hyperbolic plane: invariants are the
/// polynomials constant along one line through the origin.
pub fn baby_relation() -> Result<LagrangianEquivalenceRelation> {
    let form = BilinearForm::hyperbolic_plane();
    let line = Subspace::span(2, &[vector(&[1, 0])])?;
    let e = LinearRelation::idempotent_for(&form, &line)?;
    LagrangianEquivalenceRelation::closure(&form, &[e], ClosureConfig::default())
}

/// Twenty pairs of points of `gl(2|1)` (coordinates `ε1, ε2, δ`) in
/// different equivalence classes.
pub fn curated_gl21_pairs() -> Vec<(Vector, Vector)> {
    let q = |a: &[(i64, i64)]| a.iter().map(|&(p, d)| frac(p, d)).collect::<Vector>();
    let z = |a: &[i64]| vector(a);
    vec![
        (z(&[0, 0, 0]), z(&[1, 0, 0])),
        (z(&[1, 0, 0]), z(&[0, 0, 1])),
        (z(&[1, 0, 0]), z(&[2, 0, -1])),
        (z(&[1, 1, 0]), z(&[2, 1, -1])),
        (z(&[1, 2, 3]), z(&[2, 1, 4])),
        (z(&[1, -1, 0]), z(&[-1, 1, 1])),
        (z(&[0, 0, 0]), z(&[1, 1, -2])),
        (z(&[1, 0, -1]), z(&[2, 0, -1])),
        (z(&[1, 2, 0]), z(&[1, 2, 1])),
        (z(&[3, 0, 0]), z(&[0, 0, 3])),
        (q(&[(1, 2), (0, 1), (0, 1)]), q(&[(0, 1), (1, 2), (1, 2)])),
        (z(&[1, 1, 1]), z(&[1, 1, -1])),
        (z(&[2, -1, 0]), z(&[-1, 2, 1])),
        (z(&[1, 0, 1]), z(&[1, 1, 0])),
        (z(&[0, 1, -1]), z(&[1, 1, -1])),
        (q(&[(1, 3), (2, 3), (0, 1)]), q(&[(2, 3), (1, 3), (1, 1)])),
        (z(&[5, -3, 2]), z(&[-3, 5, -2])),
        (z(&[0, 0, 1]), z(&[0, 0, -1])),
        (z(&[2, 2, -2]), z(&[2, 2, 2])),
        (z(&[1, -1, 1]), z(&[-1, 1, -1])),
    ]
}

fn invariants_suite(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    match baby_relation() {
        Ok(r) => {
            let dims = GradedInvariantBasis::for_relation(&r).dims(6);
            t.check("baby example dimensions are 1, 1, 2, …, 6", Ok(dims == [1, 1, 2, 3, 4, 5, 6]), || {
                format!("{dims:?}")
            });
        }
        Err(e) => t.check("baby example dimensions are 1, 1, 2, …, 6", Err(e), String::new),
    }

    let mut relations = Vec::new();
    for (name, params) in [("gl", [1, 1]), ("gl", [2, 1]), ("gl", [2, 2]), ("osp", [3, 2])] {
        let label = format!("{name}({}|{})", params[0], params[1]);
        match catalog(name, &params).and_then(|rs| rs.build_relation(ClosureConfig::default())) {
            Ok(r) => relations.push((label, r)),
            Err(e) => t.check("catalog relation builds", Err(e), || label.clone()),
        }
    }

    for (label, r) in &relations {
        let ctx = || label.clone();
        if label == "gl(1|1)" {
            let dims = GradedInvariantBasis::for_relation(r).dims(6);
            t.check("gl(1|1) has the baby example profile", Ok(dims == [1, 1, 2, 3, 4, 5, 6]), || {
                format!("{dims:?}")
            });
        }
        let n = r.n();
        let w = r.weyl_group();
        let mut basis = GradedInvariantBasis::for_relation(r);
        for d in 0..=4u32 {
            let inv = basis.basis(d).to_vec();
            let ctx_d = || format!("{label} degree {d}");
            let wi = weyl_invariant_space(&w, d);
            t.check("relation invariants are Weyl invariants", span_contains(&wi, &inv, n, d), ctx_d);
            t.check(
                "Weyl invariants match the Reynolds operator",
                reynolds_invariant_space(&w, d).and_then(|ri| same_span(&wi, &ri, n, d)),
                ctx_d,
            );
            let samples = if n <= 3 { 100 } else { 20 };
            for c in r.components() {
                for _ in 0..samples {
                    let (x, y) = random_pair_in(&mut rng, c, 4);
                    t.check(
                        "invariants are constant on components",
                        ok_all(inv.iter().map(|f| Ok(f.eval(&x)? == f.eval(&y)?))),
                        ctx_d,
                    );
                }
            }
        }
        if label.starts_with("gl(2|") {
            match graded_exactness(r, SEPARATION_DMAX) {
                Ok(checks) => {
                    for c in checks {
                        t.check("graded sequence is exact", Ok(c.holds), || format!("{label} degree {}: {c:?}", c.degree));
                    }
                }
                Err(e) => t.check("graded sequence is exact", Err(e), ctx),
            }
        }
        if label == "gl(2|1)" {
            detectability(&mut t, r, &mut rng);
        }
    }

    for k in 0..20 {
        let family = random_independent_family(&mut rng, 2 + k % 2, 1 + (k as u32) % 4);
        t.check(
            "evaluation points certify independence",
            independent_evaluation_points(&family, seed + k as u64)
                .and_then(|pts| Ok(!evaluation_matrix(&family, &pts)?.determinant().is_zero())),
            || format!("family {k}"),
        );
    }
    t
}

/// Polynomials with distinct grlex-leading monomials, hence independent.
fn random_independent_family(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Vec<Polynomial> {
    let monos = monomials(n, d);
    let k = rng.gen_range(1..=monos.len());
    (0..k)
        .map(|i| {
            let mut f = Polynomial::monomial(monos[i].clone(), frac(1, 1));
            for m in &monos[i + 1..] {
                if rng.gen_bool(0.5) {
                    f = f.add(&Polynomial::monomial(m.clone(), frac(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
                }
            }
            f
        })
        .collect()
}

fn detectability(t: &mut Tally, r: &LagrangianEquivalenceRelation, rng: &mut ChaCha8Rng) {
    let mut cache = GradedInvariantBasis::for_relation(r);
    for k in 0..DETECTABILITY_SAMPLES {
        let (x, y) = random_point_pair(rng, r);
        let ctx = || format!("sample {k}: {} ~ {}", format_vector(&x), format_vector(&y));
        match separate_with(r, &mut cache, &x, &y, SEPARATION_DMAX) {
            Ok(Separation::Equivalent { .. }) => t.check("equivalent pairs are never separated", Ok(true), ctx),
            Ok(Separation::Separated { .. }) => t.record("random inequivalent pairs separated", false, Ok(true), ctx),
            Ok(Separation::Exhausted { .. }) => t.record("random inequivalent pairs separated", false, Ok(false), ctx),
            Err(e) => t.check("equivalent pairs are never separated", Err(e), ctx),
        }
    }
    for (k, (x, y)) in curated_gl21_pairs().into_iter().enumerate() {
        let ctx = || format!("curated pair {k}: {} ~ {}", format_vector(&x), format_vector(&y));
        let outcome = r.membership(&x, &y).and_then(|eq| {
            Ok(!eq && matches!(separate_with(r, &mut cache, &x, &y, SEPARATION_DMAX)?, Separation::Separated { .. }))
        });
        t.check("curated inequivalent pairs are separated", outcome, ctx);
    }
}

// ---------------------------------------------------------------- reduction

fn reduction_suite() -> Tally {
    let mut t = Tally::new();
    for entry in catalog_entries(4) {
        let label = entry.to_string();
        let ctx = || label.clone();
        let built = load(&entry).and_then(|rs| {
            let r = rs.build_relation(ClosureConfig::default())?;
            Ok((rs, r))
        });
        let (rs, r) = match built {
            Ok(x) => x,
            Err(e) => {
                t.check("catalog relation builds", Err(e), ctx);
                continue;
            }
        };
        t.check(
            "reduction to V is the identity",
            r.reduce(&Subspace::full(r.n())).map(|red| red.relation == r),
            ctx,
        );
        let regular = matches!(r.one_regularity(), OneRegularity::Regular { .. });
        for alpha in rs.isotropic_roots() {
            let ctx = || format!("{label}, α = {}", format_vector(&alpha));
            let outcome = (|| {
                let reduced = rs.reduce_by_root(&alpha)?;
                let valid = reduced.root_system.validate().is_valid();
                let via_roots = reduced.root_system.build_relation(ClosureConfig::default())?;
                let line = Subspace::span(rs.dim(), &[alpha.clone()])?;
                let v0 = rs.form().orth_complement(&line)?;
                let via_relation = r.reduce(&v0)?;
                Ok((valid, via_roots == via_relation.relation && reduced.quotient == via_relation.quotient, v0))
            })();
            match outcome {
                Ok((valid, commutes, v0)) => {
                    t.check("reduced root system is valid", Ok(valid), ctx);
                    // the square is claimed for every WGRS, but the proof's
                    // two-step witness only matches α up to sign; osp
                    // entries are reported rather than gated
                    let gated = entry.name == "gl";
                    let name = if gated {
                        "reduction square commutes"
                    } else {
                        "reduction square commutes (osp, reported)"
                    };
                    t.record(name, gated, Ok(commutes), ctx);
                    if regular {
                        match r.reduced_weyl_group(&v0) {
                            Err(Error::NotOneRegular) => {}
                            other => t.check("reduced Weyl group is the induced stabilizer", other.map(|_| true), ctx),
                        }
                    }
                }
                Err(e) => t.check("reduction square commutes", Err(e), ctx),
            }
        }
    }
    t
}

// ---------------------------------------------------------------- product

fn product_suite(seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let build = |name: &str, params: [usize; 2]| catalog(name, &params)?.build_relation(ClosureConfig::default());
    let gl11 = build("gl", [1, 1]);
    let gl21 = build("gl", [2, 1]);
    let (gl11, gl21) = match (gl11, gl21) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            t.check("catalog relation builds", Err(e), String::new);
            return t;
        }
    };
    let trivial2 = LagrangianEquivalenceRelation::trivial(&BilinearForm::signature(1, 1));
    let trivial1 = LagrangianEquivalenceRelation::trivial(&BilinearForm::signature(1, 0));
    let cases: Vec<(&str, &LagrangianEquivalenceRelation, &LagrangianEquivalenceRelation, u32)> = vec![
        ("gl(1|1) × gl(1|1)", &gl11, &gl11, 4),
        ("gl(1|1) × gl(2|1)", &gl11, &gl21, 3),
        ("Δ × Δ", &trivial2, &trivial1, 4),
        ("gl(2|1) × Δ", &gl21, &trivial1, 3),
    ];
    for (label, a, b, dmax) in cases {
        let p = a.product(b);
        t.check("product has |R|·|R′| components", Ok(p.len() == a.len() * b.len()), || label.to_string());
        t.check(
            "product equals the closure of the factor generators",
            product_closure(a, b).map(|c| c == p),
            || label.to_string(),
        );
        for d in 0..=dmax {
            t.check(
                "tensor products biject onto product invariants",
                product_invariant_check(a, b, d).map(|c| c.holds),
                || format!("{label} degree {d}"),
            );
            if label == "Δ × Δ" {
                let n = p.n();
                t.check(
                    "trivial product has every monomial",
                    Ok(invariant_space(&p, d).len() == monomials(n, d).len()),
                    || format!("degree {d}"),
                );
            }
        }
        for k in 0..100 {
            let (x, y) = random_point_pair(&mut rng, a);
            let (x2, y2) = random_point_pair(&mut rng, b);
            let joined = |u: &Vector, v: &Vector| u.iter().chain(v).cloned().collect::<Vector>();
            let outcome = (|| {
                Ok(p.membership(&joined(&x, &x2), &joined(&y, &y2))?
                    == (a.membership(&x, &y)? && b.membership(&x2, &y2)?))
            })();
            t.check("product membership is coordinatewise", outcome, || format!("{label} sample {k}"));
        }
    }
    t
}

fn product_closure(
    a: &LagrangianEquivalenceRelation,
    b: &LagrangianEquivalenceRelation,
) -> Result<LagrangianEquivalenceRelation> {
    let form = a.form().direct_sum(b.form());
    let da = LinearRelation::diagonal(a.form());
    let db = LinearRelation::diagonal(b.form());
    let mut gens = Vec::new();
    for c in a.components() {
        gens.push(direct_sum_relation(&form, c, &db));
    }
    for c in b.components() {
        gens.push(direct_sum_relation(&form, &da, c));
    }
    LagrangianEquivalenceRelation::closure(&form, &gens, ClosureConfig::default())
}
