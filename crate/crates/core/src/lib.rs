//! Exact computations with linear Lagrangian relations on a quadratic space
//! and the Lagrangian equivalence relations they generate.
//!
//! * [`linalg`]: rationals, matrices, RREF-canonical subspaces, bilinear forms
//!   and quotients `V0/V0^⊥`.
//! * [`relation`]: linear relations in `V ⊕ V`, composition, atypicality,
//!   idempotents `E_{V0}` and canonical data.
//! * [`monoid`]: finite unions of Lagrangian relations closed under
//!   composition and inversion, with reductions and regularity tests.
//! * [`invariants`]: graded invariant polynomials, separation, the exact
//!   sequence attached to a 1-regular relation and the product formula.
//! * [`wgrs`]: generalised root systems (`gl(m|n)`, `osp(M|N)`), their
//!   iso-sets, Weyl groups and the relations they define.
//! * [`io`] and [`verify`]: JSON formats and the seeded property suites used
//!   by the command-line tool.
//!
//! ```
//! use lagrel::monoid::ClosureConfig;
//! use lagrel::invariants::GradedInvariantBasis;
//! use lagrel::wgrs::catalog;
//!
//! let r = catalog("gl", &[1, 1])?.build_relation(ClosureConfig::default())?;
//! assert_eq!(r.len(), 2);
//! assert_eq!(GradedInvariantBasis::for_relation(&r).dims(4), vec![1, 1, 2, 3, 4]);
//! # Ok::<(), lagrel::Error>(())
//! ```

pub mod error;
pub mod group;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod monoid;
pub mod poly;
pub mod random;
pub mod relation;
pub mod verify;
pub mod wgrs;

pub use error::{Error, Result};
pub use linalg::{BilinearForm, Matrix, Scalar, Subspace, Vector};
pub use monoid::{ClosureConfig, LagrangianEquivalenceRelation};
pub use poly::Polynomial;
pub use relation::{Isometry, LinearRelation};
pub use wgrs::RootSystem;

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The form on `V ⊕ V` that makes a relation isotropic, embedded in reports.
pub const B_FORM_CONVENTION: &str = "B((v,w),(v',w')) = <v|v'> - <w|w'>";

/// The book's code listings, compiled as doctests.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(linalg, "linalg.md");
    chapter!(relations, "relations.md");
    chapter!(equivalence, "equivalence.md");
    chapter!(invariants, "invariants.md");
    chapter!(root_systems, "root-systems.md");
    chapter!(cli, "cli.md");
    chapter!(verification, "verification.md");

    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
