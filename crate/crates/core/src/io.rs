//! JSON formats.
//!
//! Rationals are `"p/q"` strings with `q > 0` in lowest terms (integers too:
//! `"3/1"`); matrices are row-major arrays of rows; subspaces are their RREF
//! basis rows. Input accepts plain integers `"3"` as well.
//!
//! * relation: `{ "form": [[..]], "space": [[..]] }`, `space` inside `V ⊕ V`
//! * relation file: `{ "form": [[..]], "generators": [{ "space": [[..]] }, ..] }`
//! * root system: `{ "gram": [[..]], "roots": [[..], ..] }`
//! * polynomial: `{ "num_vars": k, "terms": { "2,0,1": "p/q", .. } }`

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, parse_scalar, BilinearForm, Matrix, Scalar, Subspace, Vector};
use crate::poly::{Exponent, Polynomial};
use crate::relation::LinearRelation;
use crate::wgrs::RootSystem;

pub type MatrixJson = Vec<Vec<String>>;
pub type VectorJson = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub form: MatrixJson,
    pub space: MatrixJson,
}

/// A generator inside a relation file; its form defaults to the file's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<MatrixJson>,
    pub space: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFileJson {
    pub form: MatrixJson,
    #[serde(default)]
    pub generators: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSystemJson {
    pub gram: MatrixJson,
    pub roots: Vec<VectorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub num_vars: usize,
    pub terms: BTreeMap<String, String>,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub enum Input {
    /// A form and Lagrangian generators (a single relation becomes one generator).
    Relations { form: BilinearForm, generators: Vec<LinearRelation> },
    RootSystem(RootSystem),
}

pub fn vector_to_json(v: &[Scalar]) -> VectorJson {
    v.iter().map(format_scalar).collect()
}

pub fn vector_from_json(v: &[String]) -> Result<Vector> {
    v.iter().map(|s| parse_scalar(s)).collect()
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.rows().map(vector_to_json).collect()
}

/// Rows must all have `cols` entries; `cols` is needed for empty matrices.
pub fn matrix_from_json(rows: &[Vec<String>], cols: usize) -> Result<Matrix> {
    let rows = rows.iter().map(|r| vector_from_json(r)).collect::<Result<Vec<_>>>()?;
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::MalformedMatrix(format!(
            "row of length {} in a matrix with {cols} columns",
            r.len()
        )));
    }
    Matrix::from_rows(cols, rows)
}

pub fn subspace_to_json(u: &Subspace) -> MatrixJson {
    matrix_to_json(u.basis())
}

pub fn subspace_from_json(rows: &[Vec<String>], ambient_dim: usize) -> Result<Subspace> {
    Ok(Subspace::row_space(&matrix_from_json(rows, ambient_dim)?))
}

pub fn form_from_json(rows: &[Vec<String>]) -> Result<BilinearForm> {
    BilinearForm::new(matrix_from_json(rows, rows.len())?)
}

pub fn relation_to_json(l: &LinearRelation) -> RelationJson {
    RelationJson {
        form: matrix_to_json(l.form().gram()),
        space: subspace_to_json(l.space()),
    }
}

/// Parses a relation and insists that it is Lagrangian.
pub fn relation_from_json(j: &RelationJson) -> Result<LinearRelation> {
    let form = form_from_json(&j.form)?;
    lagrangian(form, &j.space)
}

fn lagrangian(form: BilinearForm, space: &[Vec<String>]) -> Result<LinearRelation> {
    let n = form.dim();
    let l = LinearRelation::new(form, subspace_from_json(space, 2 * n)?)?;
    if !l.is_isotropic() {
        return Err(Error::NotLagrangian("generator is not isotropic".into()));
    }
    if l.dim() != n {
        return Err(Error::NotLagrangian(format!("generator has dimension {} instead of {n}", l.dim())));
    }
    Ok(l)
}

pub fn relation_file_to_json(form: &BilinearForm, generators: &[LinearRelation]) -> RelationFileJson {
    RelationFileJson {
        form: matrix_to_json(form.gram()),
        generators: generators
            .iter()
            .map(|g| GeneratorJson {
                form: None,
                space: subspace_to_json(g.space()),
            })
            .collect(),
    }
}

pub fn relation_file_from_json(j: &RelationFileJson) -> Result<(BilinearForm, Vec<LinearRelation>)> {
    let form = form_from_json(&j.form)?;
    let mut generators = Vec::with_capacity(j.generators.len());
    for g in &j.generators {
        if let Some(f) = &g.form {
            if form_from_json(f)? != form {
                return Err(Error::FormMismatch);
            }
        }
        generators.push(lagrangian(form.clone(), &g.space)?);
    }
    Ok((form, generators))
}

pub fn root_system_to_json(rs: &RootSystem) -> RootSystemJson {
    RootSystemJson {
        gram: matrix_to_json(rs.form().gram()),
        roots: rs.roots().iter().map(|r| vector_to_json(r)).collect(),
    }
}

pub fn root_system_from_json(j: &RootSystemJson) -> Result<RootSystem> {
    let form = form_from_json(&j.gram)?;
    let roots = j.roots.iter().map(|r| vector_from_json(r)).collect::<Result<Vec<_>>>()?;
    RootSystem::new(form, roots)
}

fn exponent_key(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_exponent(key: &str, num_vars: usize) -> Result<Exponent> {
    let bad = || Error::Json(format!("bad exponent key {key:?}"));
    let e: Exponent = if key.trim().is_empty() {
        Vec::new()
    } else {
        key.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if e.len() != num_vars {
        return Err(bad());
    }
    Ok(e)
}

pub fn polynomial_to_json(f: &Polynomial) -> PolynomialJson {
    PolynomialJson {
        num_vars: f.num_vars(),
        terms: f.terms().iter().map(|(e, c)| (exponent_key(e), format_scalar(c))).collect(),
    }
}

pub fn polynomial_from_json(j: &PolynomialJson) -> Result<Polynomial> {
    let terms = j
        .terms
        .iter()
        .map(|(k, c)| Ok((parse_exponent(k, j.num_vars)?, parse_scalar(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(j.num_vars, terms)
}

/// Parses any supported input, telling the formats apart by their keys.
pub fn parse_input(text: &str) -> Result<Input> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Json("top level must be an object".into()))?;
    if obj.contains_key("gram") {
        let j: RootSystemJson = serde_json::from_value(value)?;
        return Ok(Input::RootSystem(root_system_from_json(&j)?));
    }
    if obj.contains_key("generators") {
        let j: RelationFileJson = serde_json::from_value(value)?;
        let (form, generators) = relation_file_from_json(&j)?;
        return Ok(Input::Relations { form, generators });
    }
    if obj.contains_key("space") {
        let j: RelationJson = serde_json::from_value(value)?;
        let l = relation_from_json(&j)?;
        return Ok(Input::Relations {
            form: l.form().clone(),
            generators: vec![l],
        });
    }
    if obj.contains_key("form") {
        let j: RelationFileJson = serde_json::from_value(value)?;
        let (form, generators) = relation_file_from_json(&j)?;
        return Ok(Input::Relations { form, generators });
    }
    Err(Error::Json(
        "expected a root system (gram, roots), relation (form, space) or relation file (form, generators)".into(),
    ))
}

/// Pretty JSON with a trailing newline; map keys come out sorted.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
