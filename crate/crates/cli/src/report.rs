//! Serializable report types. Field order is fixed and maps are sorted, so
//! identical inputs give byte-identical output.

use lagrel::invariants::Separation;
use lagrel::io::{polynomial_to_json, vector_to_json, MatrixJson, PolynomialJson, VectorJson};
use lagrel::linalg::{format_scalar, Scalar};
use serde::Serialize;

#[derive(Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub library_version: &'static str,
    /// Form on `V ⊕ V` for which relations are isotropic.
    pub convention: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "lagrel",
            version: env!("CARGO_PKG_VERSION"),
            library_version: lagrel::VERSION,
            convention: lagrel::B_FORM_CONVENTION,
        }
    }
}

#[derive(Serialize)]
pub struct InputInfo {
    /// Hex SHA-256 of the input file's bytes.
    pub sha256: String,
    /// `"relations"` or `"root system"`.
    pub kind: &'static str,
    pub generators: usize,
}

#[derive(Serialize)]
pub struct RelationStats {
    pub dimension: usize,
    pub components: usize,
    pub weyl_order: usize,
    /// Entry `a` counts the components of atypicality `a`.
    pub atypicality_histogram: Vec<usize>,
    pub special_coisotropics: usize,
    pub maximal_discriminant: usize,
}

#[derive(Serialize)]
pub struct Regularity {
    /// `"empty discriminant"`, `"regular"` or `"not regular: …"`.
    pub one_regularity: String,
    pub one_regular: bool,
    pub semiregular: bool,
}

#[derive(Serialize)]
pub struct InvariantDims {
    pub degree: u32,
    /// Entry `d` is the dimension of the degree-`d` invariants.
    pub dims: Vec<usize>,
}

#[derive(Serialize)]
pub struct RootSystemStats {
    pub roots: usize,
    pub isotropic_pairs: usize,
    pub anisotropic_pairs: usize,
    pub defect: usize,
    pub valid: bool,
}

#[derive(Serialize)]
pub struct SeparationReport {
    pub x: VectorJson,
    pub y: VectorJson,
    pub equivalent: bool,
    /// `"equivalent"`, `"separated"` or `"exhausted"`.
    pub outcome: &'static str,
    /// Highest degree searched.
    pub dmax: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_y: Option<String>,
}

impl SeparationReport {
    pub fn new(x: &[Scalar], y: &[Scalar], dmax: u32, s: &Separation) -> Self {
        let mut r = SeparationReport {
            x: vector_to_json(x),
            y: vector_to_json(y),
            equivalent: false,
            outcome: "exhausted",
            dmax,
            degree: None,
            polynomial: None,
            value_x: None,
            value_y: None,
        };
        match s {
            Separation::Equivalent { .. } => {
                r.equivalent = true;
                r.outcome = "equivalent";
            }
            Separation::Separated {
                polynomial,
                degree,
                value_x,
                value_y,
            } => {
                r.outcome = "separated";
                r.degree = Some(*degree);
                r.polynomial = Some(polynomial_to_json(polynomial));
                r.value_x = Some(format_scalar(value_x));
                r.value_y = Some(format_scalar(value_y));
            }
            Separation::Exhausted { .. } => {}
        }
        r
    }
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub relation: RelationStats,
    pub regularity: Regularity,
    pub invariants: InvariantDims,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_system: Option<RootSystemStats>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub separations: Vec<SeparationReport>,
    /// Canonical bases of the components, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<MatrixJson>>,
}

#[derive(Serialize)]
pub struct InvariantsReport {
    pub tool: ToolInfo,
    pub input: InputInfo,
    /// Entry `d` is an RREF basis of the degree-`d` invariants.
    pub degrees: Vec<Vec<PolynomialJson>>,
}

#[derive(Serialize)]
pub struct SeparateReport {
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub separation: SeparationReport,
}

#[derive(Serialize)]
pub struct DiscriminantReport {
    pub tool: ToolInfo,
    pub input: InputInfo,
    pub one_regularity: String,
    /// Proper special coisotropic subspaces, as RREF bases.
    pub discriminant: Vec<MatrixJson>,
    pub maximal_discriminant: Vec<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
}

#[derive(Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Serialize)]
pub struct ReduceReport {
    pub root: VectorJson,
    /// Vectors of `α^⊥` whose classes form the basis of `α^⊥/Cα` used for
    /// the reduced roots.
    pub representatives: Vec<VectorJson>,
    pub root_system: lagrel::io::RootSystemJson,
}

#[derive(Serialize)]
pub struct ClassReport {
    pub x: VectorJson,
    pub y: VectorJson,
    pub equivalent: bool,
    /// Matrix of `w` with `w⁻¹ y − x ∈ span S`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<MatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isoset: Option<Vec<VectorJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<VectorJson>,
}
