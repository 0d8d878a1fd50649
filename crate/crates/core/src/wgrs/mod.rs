//! Weak generalized root systems.
//!
//! A finite symmetric set `Δ ⊂ V∖{0}` where every anisotropic root `α` has
//! integral Cartan numbers `k_{α,β} = 2⟨α|β⟩/⟨α|α⟩` with `s_α(β) ∈ Δ`, and
//! every isotropic root `α` non-orthogonal to `β` has `β+α ∈ Δ` or `β−α ∈ Δ`.

mod catalog;
mod lemmas;
mod relation;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::group::IsometryGroup;
use crate::linalg::{add_vectors, neg_vector, scale_vector, sub_vectors, BilinearForm, Scalar, Subspace, Vector};
use crate::relation::Isometry;

pub use catalog::{catalog, catalog_names, CatalogEntry};
pub use lemmas::{TransportWitness, TwoStepWitness};
pub use relation::{ClassWitness, RootReduction};

/// Bound used when generating Weyl groups of root systems.
pub const WEYL_GROUP_LIMIT: usize = 100_000;

/// `v` or `−v`, whichever has a positive first nonzero coordinate.
pub fn orient(v: &[Scalar]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg_vector(v),
        _ => v.to_vec(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    form: BilinearForm,
    roots: Vec<Vector>,
}

/// A failed axiom, naming the offending roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `−α ∉ Δ`.
    NotSymmetric { alpha: Vector },
    /// `2⟨α|β⟩/⟨α|α⟩ ∉ Z` for anisotropic `α`.
    NonIntegralCartan { alpha: Vector, beta: Vector, k: Scalar },
    /// `s_α(β) ∉ Δ` for anisotropic `α`.
    ReflectionNotRoot { alpha: Vector, beta: Vector },
    /// Isotropic `α` with `⟨α|β⟩ ≠ 0` but neither `β+α` nor `β−α` a root.
    IsotropicShift { alpha: Vector, beta: Vector },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::linalg::format_vector as fv;
        match self {
            Violation::NotSymmetric { alpha } => write!(f, "axiom 1: -({}) is not a root", fv(alpha)),
            Violation::NonIntegralCartan { alpha, beta, k } => write!(
                f,
                "axiom 2: k({}, {}) = {} is not an integer",
                fv(alpha),
                fv(beta),
                crate::linalg::format_scalar(k)
            ),
            Violation::ReflectionNotRoot { alpha, beta } => {
                write!(f, "axiom 2: s_({})({}) is not a root", fv(alpha), fv(beta))
            }
            Violation::IsotropicShift { alpha, beta } => write!(
                f,
                "axiom 3: neither ({}) + ({}) nor ({}) - ({}) is a root",
                fv(beta),
                fv(alpha),
                fv(beta),
                fv(alpha)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A symmetric set of mutually orthogonal isotropic roots, stored as one
/// oriented representative per `±` pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoSet {
    pairs: Vec<Vector>,
}

impl IsoSet {
    pub fn empty() -> Self {
        IsoSet { pairs: Vec::new() }
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Vector>) -> Self {
        let set: BTreeSet<Vector> = roots.into_iter().map(|r| orient(r)).collect();
        IsoSet {
            pairs: set.into_iter().collect(),
        }
    }

    /// One oriented root per `±` pair.
    pub fn pairs(&self) -> &[Vector] {
        &self.pairs
    }

    /// Number of `±` pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// All roots, both signs.
    pub fn roots(&self) -> Vec<Vector> {
        self.pairs
            .iter()
            .flat_map(|p| [p.clone(), neg_vector(p)])
            .collect()
    }

    pub fn contains(&self, root: &[Scalar]) -> bool {
        self.pairs.binary_search(&orient(root)).is_ok()
    }

    pub fn span(&self, n: usize) -> Subspace {
        Subspace::span(n, &self.pairs).expect("iso-set vectors have the ambient length")
    }

    pub fn image(&self, w: &Isometry) -> IsoSet {
        let images: Vec<Vector> = self.pairs.iter().map(|p| w.apply(p)).collect();
        IsoSet::from_roots(&images)
    }
}

impl RootSystem {
    /// Sorts and deduplicates `roots`; axioms are checked by [`RootSystem::validate`].
    pub fn new(form: BilinearForm, roots: Vec<Vector>) -> Result<Self> {
        let n = form.dim();
        let mut set = BTreeSet::new();
        for r in roots {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            if crate::linalg::is_zero_vector(&r) {
                return Err(Error::InvalidRootSystem("zero vector is not a root".into()));
            }
            set.insert(r);
        }
        Ok(RootSystem {
            form,
            roots: set.into_iter().collect(),
        })
    }

    /// [`RootSystem::new`] followed by validation.
    pub fn new_validated(form: BilinearForm, roots: Vec<Vector>) -> Result<Self> {
        let rs = Self::new(form, roots)?;
        rs.require_valid()?;
        Ok(rs)
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn is_root(&self, v: &[Scalar]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    pub fn is_isotropic(&self, v: &[Scalar]) -> bool {
        self.form.is_isotropic_vector(v)
    }

    pub fn isotropic_roots(&self) -> Vec<Vector> {
        self.roots.iter().filter(|r| self.is_isotropic(r)).cloned().collect()
    }

    pub fn anisotropic_roots(&self) -> Vec<Vector> {
        self.roots.iter().filter(|r| !self.is_isotropic(r)).cloned().collect()
    }

    /// Oriented representatives of the isotropic `±` pairs.
    pub fn isotropic_pairs(&self) -> Vec<Vector> {
        let set: BTreeSet<Vector> = self.isotropic_roots().iter().map(|r| orient(r)).collect();
        set.into_iter().collect()
    }

    pub fn anisotropic_pairs(&self) -> Vec<Vector> {
        let set: BTreeSet<Vector> = self.anisotropic_roots().iter().map(|r| orient(r)).collect();
        set.into_iter().collect()
    }

    /// `2⟨α|β⟩/⟨α|α⟩`; `α` must be anisotropic.
    pub fn cartan(&self, alpha: &[Scalar], beta: &[Scalar]) -> Scalar {
        let two = Scalar::from_integer(2.into());
        two * self.form.pair(alpha, beta) / self.form.norm(alpha)
    }

    pub fn reflection(&self, alpha: &[Scalar]) -> Result<Isometry> {
        Isometry::reflection(&self.form, alpha)
    }

    /// Checks all three axioms on every pair of roots.
    pub fn validate(&self) -> Validation {
        let mut violations = Vec::new();
        for a in &self.roots {
            if !self.is_root(&neg_vector(a)) {
                violations.push(Violation::NotSymmetric { alpha: a.clone() });
            }
        }
        for a in &self.roots {
            let norm = self.form.norm(a);
            for b in &self.roots {
                if !norm.is_zero() {
                    let k = self.cartan(a, b);
                    if !k.is_integer() {
                        violations.push(Violation::NonIntegralCartan {
                            alpha: a.clone(),
                            beta: b.clone(),
                            k,
                        });
                    } else if !self.is_root(&sub_vectors(b, &scale_vector(&k, a))) {
                        violations.push(Violation::ReflectionNotRoot {
                            alpha: a.clone(),
                            beta: b.clone(),
                        });
                    }
                } else if !self.form.pair(a, b).is_zero()
                    && !self.is_root(&add_vectors(b, a))
                    && !self.is_root(&sub_vectors(b, a))
                {
                    violations.push(Violation::IsotropicShift {
                        alpha: a.clone(),
                        beta: b.clone(),
                    });
                }
            }
        }
        Validation { violations }
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        match v.violations.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidRootSystem(format!(
                "{} axiom violation(s); first: {first}",
                v.violations.len()
            ))),
        }
    }

    /// The group generated by the reflections in anisotropic roots.
    pub fn weyl_group(&self) -> Result<IsometryGroup> {
        let gens = self
            .anisotropic_pairs()
            .iter()
            .map(|a| self.reflection(a))
            .collect::<Result<Vec<_>>>()?;
        IsometryGroup::generate(&self.form, &gens, WEYL_GROUP_LIMIT)
    }

    /// Connected components of the non-orthogonality graph, each closed
    /// under negation, sorted.
    pub fn indecomposable_components(&self) -> Vec<Vec<Vector>> {
        let k = self.roots.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        let index: BTreeMap<&Vector, usize> = self.roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        for i in 0..k {
            if let Some(&j) = index.get(&neg_vector(&self.roots[i])) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
            for j in i + 1..k {
                if !self.form.pair(&self.roots[i], &self.roots[j]).is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.roots[i].clone());
        }
        let mut out: Vec<Vec<Vector>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_indecomposable(&self) -> bool {
        self.indecomposable_components().len() <= 1
    }

    /// Every iso-set (including the empty one), sorted.
    pub fn isosets(&self) -> Vec<IsoSet> {
        let pairs = self.isotropic_pairs();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_isosets(&pairs, 0, &mut current, &mut out);
        out.sort();
        out
    }

    fn extend_isosets(&self, pairs: &[Vector], start: usize, current: &mut Vec<Vector>, out: &mut Vec<IsoSet>) {
        out.push(IsoSet::from_roots(current.iter()));
        for i in start..pairs.len() {
            if current.iter().all(|c| self.form.pair(c, &pairs[i]).is_zero()) {
                current.push(pairs[i].clone());
                self.extend_isosets(pairs, i + 1, current, out);
                current.pop();
            }
        }
    }

    /// Inclusion-maximal iso-sets, restricted to roots orthogonal to `v`
    /// when given. Bron–Kerbosch on the orthogonality graph of isotropic pairs.
    pub fn maximal_isosets(&self, v: Option<&[Scalar]>) -> Result<Vec<IsoSet>> {
        if let Some(v) = v {
            crate::linalg::check_len(v, self.dim())?;
        }
        let pairs: Vec<Vector> = self
            .isotropic_pairs()
            .into_iter()
            .filter(|p| v.is_none_or(|v| self.form.pair(p, v).is_zero()))
            .collect();
        let k = pairs.len();
        let adj: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i != j && self.form.pair(&pairs[i], &pairs[j]).is_zero()).collect())
            .collect();
        let mut out = Vec::new();
        bron_kerbosch(&adj, Vec::new(), (0..k).collect(), Vec::new(), &mut |clique| {
            out.push(IsoSet::from_roots(clique.iter().map(|&i| &pairs[i])));
        });
        out.sort();
        Ok(out)
    }

    /// Cardinality, in `±` pairs, of a maximal iso-set.
    pub fn defect(&self) -> usize {
        self.maximal_isosets(None)
            .expect("no vector given")
            .iter()
            .map(IsoSet::len)
            .max()
            .unwrap_or(0)
    }

    fn require_isotropic_root(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        if !self.is_root(v) || !self.is_isotropic(v) {
            return Err(Error::NotIsotropicRoot);
        }
        Ok(())
    }
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, p: Vec<usize>, x: Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if p.is_empty() && x.is_empty() {
        emit(&r);
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&w| adj[u][w]).count());
    let mut p = p;
    let mut x = x;
    let candidates: Vec<usize> = p
        .iter()
        .copied()
        .filter(|&w| pivot.is_none_or(|u| !adj[u][w]))
        .collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, emit);
        p.retain(|&w| w != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn a1_is_valid() {
        let rs = RootSystem::new(BilinearForm::signature(1, 0), vec![vector(&[1]), vector(&[-1])]).unwrap();
        assert!(rs.validate().is_valid());
        assert_eq!(rs.weyl_group().unwrap().order(), 2);
        assert_eq!(rs.defect(), 0);
        assert_eq!(rs.maximal_isosets(None).unwrap(), vec![IsoSet::empty()]);
    }

    #[test]
    fn asymmetric_set_fails_axiom_one() {
        let rs = RootSystem::new(BilinearForm::signature(1, 0), vec![vector(&[1])]).unwrap();
        let v = rs.validate();
        assert!(v.violations.contains(&Violation::NotSymmetric { alpha: vector(&[1]) }));
        assert!(rs.require_valid().is_err());
    }

    #[test]
    fn flipped_gl11_form_is_a1() {
        let roots = vec![vector(&[1, -1]), vector(&[-1, 1])];
        let ok = RootSystem::new(BilinearForm::signature(1, 1), roots.clone()).unwrap();
        assert!(ok.validate().is_valid());
        // under diag(1, 1) the same two vectors form a valid A1: the root
        // becomes anisotropic and the defect drops to zero
        let bad = RootSystem::new(BilinearForm::signature(2, 0), roots).unwrap();
        assert!(bad.validate().is_valid());
        assert_eq!(bad.defect(), 0);
        assert_eq!(ok.defect(), 1);
        assert!(bad.isotropic_roots().is_empty());
    }

    #[test]
    fn orthogonal_sum_has_two_components() {
        let f = BilinearForm::signature(2, 2);
        // gl(1|1) ⊥ gl(1|1) on coordinates (ε1, ε2, δ1, δ2)
        let roots = vec![
            vector(&[1, 0, -1, 0]),
            vector(&[-1, 0, 1, 0]),
            vector(&[0, 1, 0, -1]),
            vector(&[0, -1, 0, 1]),
        ];
        let rs = RootSystem::new(f, roots).unwrap();
        assert!(rs.validate().is_valid());
        assert_eq!(rs.indecomposable_components().len(), 2);
        assert_eq!(rs.defect(), 2);
    }

    #[test]
    fn orient_picks_positive_leading_entry() {
        assert_eq!(orient(&vector(&[0, -1, 2])), vector(&[0, 1, -2]));
        assert_eq!(orient(&vector(&[3, -1])), vector(&[3, -1]));
    }
}
