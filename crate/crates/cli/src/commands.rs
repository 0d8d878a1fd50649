//! Command implementations and the error → exit code mapping.

use std::fmt;
use std::path::{Path, PathBuf};

use lagrel::invariants::{discriminant_polynomial, separate, GradedInvariantBasis};
use lagrel::io::{
    matrix_to_json, parse_input, polynomial_to_json, relation_file_to_json, root_system_to_json, subspace_to_json,
    to_json_string, vector_to_json, Input,
};
use lagrel::linalg::{parse_vector, Vector};
use lagrel::monoid::{ClosureConfig, LagrangianEquivalenceRelation, OneRegularity};
use lagrel::verify::run_suite;
use lagrel::wgrs::{catalog, RootSystem};
use lagrel::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::report::*;
use crate::{ClosureArgs, Cli, Command, PairArgs, WgrsCommand};

pub const EXIT_INVALID_INPUT: u8 = 1;
pub const EXIT_CLOSURE_BOUND: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Library(Error),
    /// A root system failed validation.
    InvalidRootSystem(usize),
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(Error::ClosureBoundExceeded { .. } | Error::ClosureRoundsExceeded(_)) => {
                EXIT_CLOSURE_BOUND
            }
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_INVALID_INPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::InvalidRootSystem(k) => write!(f, "root system violates {k} axiom instance(s)"),
            CliError::VerifyFailed(s) => write!(f, "verification suite {s} failed"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A parsed input file with the relation it defines.
struct Loaded {
    info: InputInfo,
    relation: LagrangianEquivalenceRelation,
    root_system: Option<RootSystem>,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn text(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|_| CliError::Library(Error::Json("input is not UTF-8".into())))
}

fn load(path: &Path, closure: ClosureArgs) -> Result<Loaded> {
    let bytes = read(path)?;
    let cfg = ClosureConfig::with_max_components(closure.max_components);
    let sha256 = digest(&bytes);
    Ok(match parse_input(text(&bytes)?)? {
        Input::Relations { form, generators } => {
            let relation = LagrangianEquivalenceRelation::closure(&form, &generators, cfg)?;
            Loaded {
                info: InputInfo {
                    sha256,
                    kind: "relations",
                    generators: generators.len(),
                },
                relation,
                root_system: None,
            }
        }
        Input::RootSystem(rs) => {
            rs.require_valid()?;
            let generators = rs.relation_generators()?.len();
            let relation = rs.build_relation(cfg)?;
            Loaded {
                info: InputInfo {
                    sha256,
                    kind: "root system",
                    generators,
                },
                relation,
                root_system: Some(rs),
            }
        }
    })
}

fn load_root_system(path: &Path) -> Result<RootSystem> {
    let bytes = read(path)?;
    match parse_input(text(&bytes)?)? {
        Input::RootSystem(rs) => Ok(rs),
        Input::Relations { .. } => Err(Error::Json("expected a root system (gram, roots)".into()).into()),
    }
}

fn point(s: &str, n: usize) -> Result<Vector> {
    let v = parse_vector(s)?;
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        }
        .into());
    }
    Ok(v)
}

fn pair(p: &PairArgs, n: usize) -> Result<(Vector, Vector)> {
    Ok((point(&p.x, n)?, point(&p.y, n)?))
}

fn describe(o: &OneRegularity) -> String {
    match o {
        OneRegularity::EmptyDiscriminant => "empty discriminant".into(),
        OneRegularity::Regular { .. } => "regular".into(),
        OneRegularity::NotRegular { reason } => format!("not regular: {reason}"),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    emit(out, &to_json_string(value)?)
}

pub fn run(cli: &Cli) -> Result<()> {
    let out = &cli.out;
    match &cli.command {
        Command::Analyze {
            file,
            degree,
            dmax,
            pairs,
            components,
            closure,
        } => emit_json(out, &analyze(file, *degree, *dmax, pairs, *components, *closure)?),
        Command::Invariants { file, degree, closure } => {
            let loaded = load(file, *closure)?;
            let mut basis = GradedInvariantBasis::for_relation(&loaded.relation);
            let degrees = (0..=*degree)
                .map(|d| basis.basis(d).iter().map(polynomial_to_json).collect())
                .collect();
            emit_json(
                out,
                &InvariantsReport {
                    tool: ToolInfo::current(),
                    input: loaded.info,
                    degrees,
                },
            )
        }
        Command::Separate {
            file,
            pair: p,
            dmax,
            closure,
        } => {
            let loaded = load(file, *closure)?;
            let (x, y) = pair(p, loaded.relation.n())?;
            let s = separate(&loaded.relation, &x, &y, *dmax)?;
            emit_json(
                out,
                &SeparateReport {
                    tool: ToolInfo::current(),
                    input: loaded.info,
                    separation: SeparationReport::new(&x, &y, *dmax, &s),
                },
            )
        }
        Command::Discriminant { file, closure } => {
            let loaded = load(file, *closure)?;
            let r = &loaded.relation;
            let regularity = r.one_regularity();
            let t = match regularity {
                OneRegularity::Regular { .. } => Some(discriminant_polynomial(r)?),
                _ => None,
            };
            emit_json(
                out,
                &DiscriminantReport {
                    tool: ToolInfo::current(),
                    input: loaded.info,
                    one_regularity: describe(&regularity),
                    discriminant: r.discriminant().iter().map(subspace_to_json).collect(),
                    maximal_discriminant: r.maximal_discriminant().iter().map(subspace_to_json).collect(),
                    degree: t.as_ref().map(|t| t.degree),
                    polynomial: t.as_ref().map(|t| polynomial_to_json(&t.polynomial)),
                },
            )
        }
        Command::Wgrs(cmd) => wgrs(out, cmd),
        Command::Verify { suite, seed, json } => {
            let report = run_suite(suite, *seed)?;
            if *json {
                emit_json(out, &report)?;
            } else {
                emit(out, &format!("{report}\n"))?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed(suite.clone()))
            }
        }
    }
}

fn analyze(
    file: &Path,
    degree: u32,
    dmax: u32,
    pairs: &[String],
    components: bool,
    closure: ClosureArgs,
) -> Result<AnalysisReport> {
    let loaded = load(file, closure)?;
    let r = &loaded.relation;
    let n = r.n();
    let regularity = r.one_regularity();
    let mut basis = GradedInvariantBasis::for_relation(r);
    let mut separations = Vec::with_capacity(pairs.len());
    for p in pairs {
        let (x, y) = p
            .split_once(';')
            .ok_or_else(|| Error::Json(format!("--separate expects \"X;Y\", got {p:?}")))?;
        let (x, y) = (point(x, n)?, point(y, n)?);
        let s = lagrel::invariants::separate_with(r, &mut basis, &x, &y, dmax)?;
        separations.push(SeparationReport::new(&x, &y, dmax, &s));
    }
    let root_system = match &loaded.root_system {
        Some(rs) => Some(RootSystemStats {
            roots: rs.roots().len(),
            isotropic_pairs: rs.isotropic_pairs().len(),
            anisotropic_pairs: rs.anisotropic_pairs().len(),
            defect: rs.defect(),
            valid: rs.validate().is_valid(),
        }),
        None => None,
    };
    Ok(AnalysisReport {
        tool: ToolInfo::current(),
        relation: RelationStats {
            dimension: n,
            components: r.len(),
            weyl_order: r.weyl_group().order(),
            atypicality_histogram: r.atypicality_histogram()?,
            special_coisotropics: r.special_coisotropics().len(),
            maximal_discriminant: r.maximal_discriminant().len(),
        },
        regularity: Regularity {
            one_regular: regularity.holds(),
            one_regularity: describe(&regularity),
            semiregular: r.is_semiregular()?,
        },
        invariants: InvariantDims {
            degree,
            dims: basis.dims(degree),
        },
        root_system,
        separations,
        components: components.then(|| r.components().iter().map(|c| subspace_to_json(c.space())).collect()),
        input: loaded.info,
    })
}

fn wgrs(out: &Option<PathBuf>, cmd: &WgrsCommand) -> Result<()> {
    match cmd {
        WgrsCommand::Build { family, m, n } => emit_json(out, &root_system_to_json(&catalog(family, &[*m, *n])?)),
        WgrsCommand::Validate { file } => {
            let rs = load_root_system(file)?;
            let v = rs.validate();
            let report = ValidationReport {
                valid: v.is_valid(),
                violations: v.violations.iter().map(ToString::to_string).collect(),
            };
            emit_json(out, &report)?;
            if report.valid {
                Ok(())
            } else {
                Err(CliError::InvalidRootSystem(report.violations.len()))
            }
        }
        WgrsCommand::Relation { file, closure } => {
            let rs = load_root_system(file)?;
            rs.require_valid()?;
            let r = rs.build_relation(ClosureConfig::with_max_components(closure.max_components))?;
            emit_json(out, &relation_file_to_json(r.form(), r.components()))
        }
        WgrsCommand::Reduce { file, root } => {
            let rs = load_root_system(file)?;
            rs.require_valid()?;
            let alpha = point(root, rs.dim())?;
            let reduced = rs.reduce_by_root(&alpha)?;
            let section = reduced.quotient.section().transpose();
            emit_json(
                out,
                &ReduceReport {
                    root: vector_to_json(&alpha),
                    representatives: section.rows().map(vector_to_json).collect(),
                    root_system: root_system_to_json(&reduced.root_system),
                },
            )
        }
        WgrsCommand::Classes { file, pair: p } => {
            let rs = load_root_system(file)?;
            rs.require_valid()?;
            let (x, y) = pair(p, rs.dim())?;
            let witness = rs.class_membership(&x, &y)?;
            emit_json(
                out,
                &ClassReport {
                    x: vector_to_json(&x),
                    y: vector_to_json(&y),
                    equivalent: witness.is_some(),
                    w: witness.as_ref().map(|c| matrix_to_json(c.w.matrix())),
                    isoset: witness.as_ref().map(|c| c.isoset.pairs().iter().map(|r| vector_to_json(r)).collect()),
                    coefficients: witness.as_ref().map(|c| vector_to_json(&c.coefficients)),
                },
            )
        }
    }
}
