//! Finite groups of isometries, stored as sorted element lists.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{BilinearForm, Subspace};
use crate::relation::Isometry;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryGroup {
    form: BilinearForm,
    elements: Vec<Isometry>,
}

impl IsometryGroup {
    pub fn trivial(form: &BilinearForm) -> Self {
        IsometryGroup {
            form: form.clone(),
            elements: vec![Isometry::identity(form)],
        }
    }

    /// Generates the group from `generators`; fails once more than `limit`
    /// elements have been produced.
    pub fn generate(form: &BilinearForm, generators: &[Isometry], limit: usize) -> Result<Self> {
        let mut seen: BTreeSet<Isometry> = BTreeSet::new();
        let id = Isometry::identity(form);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let mut rounds = 0;
        while let Some(x) = queue.pop_front() {
            rounds += 1;
            for g in generators {
                if g.form() != form {
                    return Err(Error::FormMismatch);
                }
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > limit {
                        return Err(Error::ClosureBoundExceeded { limit, rounds });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(IsometryGroup {
            form: form.clone(),
            elements: seen.into_iter().collect(),
        })
    }

    /// Wraps an element list without checking the group axioms; see
    /// [`IsometryGroup::satisfies_group_axioms`].
    pub fn from_elements(form: &BilinearForm, elements: impl IntoIterator<Item = Isometry>) -> Self {
        let set: BTreeSet<Isometry> = elements.into_iter().collect();
        IsometryGroup {
            form: form.clone(),
            elements: set.into_iter().collect(),
        }
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Identity present, closed under products and inverses.
    pub fn satisfies_group_axioms(&self) -> bool {
        if !self.contains(&Isometry::identity(&self.form)) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b)))
        })
    }

    /// Distinct images `g(U)`, sorted.
    pub fn orbit(&self, u: &Subspace) -> Vec<Subspace> {
        let set: BTreeSet<Subspace> = self.elements.iter().map(|g| g.apply_subspace(u)).collect();
        set.into_iter().collect()
    }

    /// `{g : g(U) = U}`.
    pub fn stabilizer(&self, u: &Subspace) -> Vec<Isometry> {
        self.elements
            .iter()
            .filter(|g| g.apply_subspace(u) == *u)
            .cloned()
            .collect()
    }

    /// `{g : g(v) = v}`.
    pub fn vector_stabilizer(&self, v: &[crate::linalg::Scalar]) -> Vec<Isometry> {
        self.elements.iter().filter(|g| g.apply(v) == v).cloned().collect()
    }
}
