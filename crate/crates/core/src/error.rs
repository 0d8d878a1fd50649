use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),

    #[error("bilinear form is not symmetric")]
    FormNotSymmetric,

    #[error("bilinear form is degenerate")]
    FormDegenerate,

    #[error("relations are defined over different bilinear forms")]
    FormMismatch,

    #[error("subspace is not coisotropic")]
    NotCoisotropic,

    #[error("matrix is not an isometry of the form")]
    NotIsometry,

    #[error("relation is not Lagrangian: {0}")]
    NotLagrangian(String),

    #[error("relation is not idempotent")]
    NotIdempotent,

    #[error("idempotent has different projections, so it is not of the form E_V0")]
    IdempotentNotDiagonal,

    #[error("closure exceeded the bound of {limit} components after {rounds} rounds")]
    ClosureBoundExceeded { limit: usize, rounds: usize },

    #[error("closure did not stabilise within {0} rounds")]
    ClosureRoundsExceeded(usize),

    #[error("subspace is not a special coisotropic subspace of the relation")]
    NotSpecialCoisotropic,

    #[error("relation is not 1-regular")]
    NotOneRegular,

    #[error("root system is invalid: {0}")]
    InvalidRootSystem(String),

    #[error("vector is not an isotropic root")]
    NotIsotropicRoot,

    #[error("iso-set is not a maximal iso-set orthogonal to the given vector")]
    NotMaximalIsoSet,

    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("unknown catalog entry {0}")]
    UnknownCatalogEntry(String),

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
