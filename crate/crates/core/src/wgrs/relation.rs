//! The Lagrangian equivalence relation of a root system, and reduction by
//! an isotropic root.

use std::collections::BTreeSet;

use super::{IsoSet, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::{sub_vectors, QuotientSpace, Scalar, Subspace, Vector};
use crate::monoid::{ClosureConfig, LagrangianEquivalenceRelation};
use crate::relation::{Isometry, LinearRelation};

/// Witness for `v′ ∈ w(v + span S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassWitness {
    pub w: Isometry,
    pub isoset: IsoSet,
    /// `w⁻¹ v′ − v = Σ coefficients[i] · isoset.pairs()[i]`.
    pub coefficients: Vector,
}

/// `Δ′`, the image of `Δ ∩ α^⊥` in `α^⊥ / Cα`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReduction {
    pub quotient: QuotientSpace,
    pub root_system: RootSystem,
}

impl RootSystem {
    /// Generators of the relation: graphs of the reflections in anisotropic roots
    /// and the idempotents `E_{α^⊥}` of the isotropic roots.
    pub fn relation_generators(&self) -> Result<Vec<LinearRelation>> {
        let mut gens = Vec::new();
        for a in self.anisotropic_pairs() {
            gens.push(self.reflection(&a)?.graph());
        }
        for a in self.isotropic_pairs() {
            let line = Subspace::span(self.dim(), &[a])?;
            gens.push(LinearRelation::idempotent_for(self.form(), &self.form().orth_complement(&line)?)?);
        }
        Ok(gens)
    }

    /// The closure of the generators, checked against `{Γ_w ∘ E_{S^⊥}}` by
    /// double inclusion.
    pub fn build_relation(&self, cfg: ClosureConfig) -> Result<LagrangianEquivalenceRelation> {
        self.require_valid()?;
        let r = LagrangianEquivalenceRelation::closure(self.form(), &self.relation_generators()?, cfg)?;
        let described = self.described_components()?;
        let actual: BTreeSet<Subspace> = r.components().iter().map(|c| c.space().clone()).collect();
        if described != actual {
            return Err(Error::Inconsistent(format!(
                "closure has {} components but {} of the form Γ_w ∘ E_(S^⊥)",
                actual.len(),
                described.len()
            )));
        }
        Ok(r)
    }

    /// All distinct `Γ_w ∘ E_{S^⊥}` for `w ∈ W` and iso-sets `S`.
    pub fn described_components(&self) -> Result<BTreeSet<Subspace>> {
        let w = self.weyl_group()?;
        let mut out = BTreeSet::new();
        for s in self.isosets() {
            let coiso = self.form().orth_complement(&s.span(self.dim()))?;
            let e = LinearRelation::idempotent_for(self.form(), &coiso)?;
            for g in w.elements() {
                out.insert(g.graph().compose(&e)?.space().clone());
            }
        }
        Ok(out)
    }

    /// Decides `v′ ∈ W(v + span S)` for one `S ∈ A_v^mx`.
    pub fn class_membership(&self, v: &[Scalar], v2: &[Scalar]) -> Result<Option<ClassWitness>> {
        crate::linalg::check_len(v2, self.dim())?;
        let isosets = self.maximal_isosets(Some(v))?;
        let s = isosets.into_iter().next().expect("at least the empty iso-set");
        self.class_membership_with(v, v2, &s)
    }

    /// [`RootSystem::class_membership`] with a chosen `S ∈ A_v^mx`.
    pub fn class_membership_with(&self, v: &[Scalar], v2: &[Scalar], s: &IsoSet) -> Result<Option<ClassWitness>> {
        if !self.is_maximal_isoset(v, s)? {
            return Err(Error::NotMaximalIsoSet);
        }
        let n = self.dim();
        let span = s.span(n);
        let basis = crate::linalg::Matrix::from_rows(n, s.pairs().to_vec())?.transpose();
        for w in self.weyl_group()?.elements() {
            let diff = sub_vectors(&w.inverse().apply(v2), v);
            if span.contains_vector(&diff)? {
                let coefficients = if s.is_empty() {
                    Vec::new()
                } else {
                    basis
                        .solve(&diff)
                        .ok_or_else(|| Error::Inconsistent("iso-set span coordinates".into()))?
                };
                return Ok(Some(ClassWitness {
                    w: w.clone(),
                    isoset: s.clone(),
                    coefficients,
                }));
            }
        }
        Ok(None)
    }

    /// The root system induced on `α^⊥ / Cα`, in the coordinates of
    /// [`QuotientSpace`].
    pub fn reduce_by_root(&self, alpha: &[Scalar]) -> Result<RootReduction> {
        self.require_isotropic_root(alpha)?;
        let n = self.dim();
        let line = Subspace::span(n, &[alpha.to_vec()])?;
        let v0 = self.form().orth_complement(&line)?;
        let quotient = self.form().quotient(&v0)?;
        let mut images = BTreeSet::new();
        for r in self.roots() {
            if v0.contains_vector(r)? {
                let p = quotient.project(r)?;
                if !crate::linalg::is_zero_vector(&p) {
                    images.insert(p);
                }
            }
        }
        let root_system = RootSystem::new(quotient.form().clone(), images.into_iter().collect())?;
        Ok(RootReduction { quotient, root_system })
    }
}
