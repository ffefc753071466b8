//! The `dw` command line front end.
//!
//! Every subcommand prints a single JSON document. Success exits 0; domain
//! failures (bad input, non-manifold complex, broken cocycle, …) print
//! `{"error": {"kind": …, "message": …}}` and exit 1; usage errors exit 2.
//! `--pretty` switches to indented JSON, `--output FILE` redirects success
//! output to a file.
//!
//! Groups are named by spec (`Z6`, `S3`) or loaded from a JSON file via
//! `@path` (`{"order": n?, "table": [[…]], "names": […]?}`). Cocycles are
//! catalog names (`trivial`, `carry:n:p`, `product:Z2`) or `@path` JSON
//! (`{"group": spec?, "modulus": k, "degree": n?, "values": […]}`); the
//! file's `group` must agree with `--group` when both are given, and
//! `--modulus` fixes the coefficient modulus where a catalog name leaves it
//! free.

use crate::cochain::{Cochain, CochainError};
use crate::cyclotomic::{rational_to_string, CyclotomicValue};
use crate::flatness::count_flat;
use crate::group::{FiniteGroup, GroupError};
use crate::pachner::{fuzz_invariance, FuzzError, FuzzOptions, MoveError, MoveKind};
use crate::statesum::{
    partition_function, partition_function_reversed, ComputeOptions, StateSumError,
};
use crate::triangulation::{Triangulation, TriangulationError};
use crate::volume::{facet_volume_alternating_sum, RationalPoint, VolumeError};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "dw",
    version,
    about = "Exact state-sum invariants of closed oriented triangulated 3-manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write successful output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a triangulation and run every structural check.
    Validate {
        /// Triangulation file (plain text or JSON).
        #[arg(long, value_name = "FILE")]
        manifold: PathBuf,
    },
    /// Evaluate the partition function exactly.
    Compute {
        #[arg(long, value_name = "FILE")]
        manifold: PathBuf,
        /// Group spec: Z<n>, S3, or @table.json.
        #[arg(long, default_value = "Z2")]
        group: String,
        /// Cocycle: trivial, carry:n:p, product:Z2, or @values.json.
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        /// Coefficient modulus k (defaults to the catalog entry's natural k).
        #[arg(long)]
        modulus: Option<usize>,
        /// Worker threads (the result is identical for any value).
        #[arg(long, env = "DW_THREADS", default_value_t = 1)]
        threads: usize,
        /// Evaluate with the opposite orientation.
        #[arg(long)]
        reversed: bool,
        /// Renumber vertices by this comma-separated permutation first.
        #[arg(long, value_name = "PERM")]
        relabel: Option<String>,
    },
    /// Count flat colorings exactly.
    CountColorings {
        #[arg(long, value_name = "FILE")]
        manifold: PathBuf,
        #[arg(long, default_value = "Z2")]
        group: String,
    },
    /// Test whether a cochain satisfies the 3-cocycle identity.
    CheckCocycle {
        #[arg(long, default_value = "Z2")]
        group: String,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long)]
        modulus: Option<usize>,
    },
    /// Random bistellar walk that recomputes the invariant after every move.
    Fuzz {
        #[arg(long, value_name = "FILE")]
        manifold: PathBuf,
        #[arg(long, default_value = "Z2")]
        group: String,
        #[arg(long, default_value = "trivial")]
        cocycle: String,
        #[arg(long)]
        modulus: Option<usize>,
        /// Number of random moves to apply.
        #[arg(long, default_value_t = 16)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated move kinds to draw from (default: all four).
        #[arg(long, value_name = "KINDS")]
        kinds: Option<String>,
        #[arg(long, env = "DW_THREADS", default_value_t = 1)]
        threads: usize,
    },
    /// Check the exact facet-volume alternation identity on random points.
    VolumeCheck {
        /// Ambient dimension n (checks n+2 points per sample).
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Number of random point sets to test.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("bad file {path}: {detail}")]
    BadFile { path: String, detail: String },
    #[error("bad argument: {detail}")]
    BadArg { detail: String },
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    StateSum(#[from] StateSumError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Fuzz(#[from] FuzzError),
    #[error(transparent)]
    Volume(#[from] VolumeError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::BadFile { .. } => "BadFile",
            CliError::BadArg { .. } => "BadArg",
            CliError::Triangulation(e) => match e {
                TriangulationError::SyntaxError { .. } => "SyntaxError",
                TriangulationError::RepeatedVertexInTet { .. } => "RepeatedVertexInTet",
                TriangulationError::OutOfRangeVertex { .. } => "OutOfRangeVertex",
                TriangulationError::DuplicateTet { .. } => "DuplicateTet",
                TriangulationError::OpenBoundary { .. } => "OpenBoundary",
                TriangulationError::NonManifoldVertex { .. } => "NonManifoldVertex",
                TriangulationError::Disconnected => "Disconnected",
                TriangulationError::NonOrientable => "NonOrientable",
                TriangulationError::BadRelabel { .. } => "BadRelabel",
            },
            CliError::Group(e) => match e {
                GroupError::BadShape { .. } => "BadShape",
                GroupError::NotLatinSquare { .. } => "NotLatinSquare",
                GroupError::NoIdentity => "NoIdentity",
                GroupError::NotAssociative { .. } => "NotAssociative",
                GroupError::UnknownSpec { .. } => "UnknownGroup",
            },
            CliError::Cochain(e) => match e {
                CochainError::BadLength { .. } => "BadLength",
                CochainError::BadResidue { .. } => "BadResidue",
                CochainError::GroupMismatch => "GroupMismatch",
                CochainError::ModulusMismatch(..) => "ModulusMismatch",
                CochainError::DegreeMismatch { .. } => "DegreeMismatch",
                CochainError::CatalogMismatch { .. } => "CatalogMismatch",
                CochainError::UnknownSpec(_) => "UnknownCocycle",
            },
            CliError::StateSum(e) => match e {
                StateSumError::WrongDegree { .. } => "WrongDegree",
                StateSumError::NotACocycle { .. } => "NotACocycle",
                StateSumError::GaugeCheckFailed { .. } => "GaugeCheckFailed",
            },
            CliError::Move(e) => match e {
                MoveError::NotApplicable { .. } => "NotApplicable",
                MoveError::Rebuild(_) => "Rebuild",
            },
            CliError::Fuzz(e) => match e {
                FuzzError::StateSum(_) => "StateSum",
                FuzzError::Move(_) => "Move",
                FuzzError::InvariantChanged { .. } => "InvariantChanged",
            },
            CliError::Volume(e) => match e {
                VolumeError::DimensionMismatch { .. } => "DimensionMismatch",
            },
        }
    }
}

/// Parses argv, runs the subcommand, prints one JSON document, and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(value) => {
            if let Err(e) = emit(&value, cli.pretty, cli.output.as_deref()) {
                eprintln!("{e}");
                return 1;
            }
            0
        }
        Err(err) => {
            let doc = json!({"error": {"kind": err.kind(), "message": err.to_string()}});
            // Error reports always go to stdout so callers can parse them.
            let _ = emit(&doc, cli.pretty, None);
            1
        }
    }
}

fn emit(value: &Value, pretty: bool, output: Option<&Path>) -> Result<(), CliError> {
    let mut text = if pretty {
        serde_json::to_string_pretty(value).expect("JSON serialization cannot fail")
    } else {
        serde_json::to_string(value).expect("JSON serialization cannot fail")
    };
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            detail: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: &Command) -> Result<Value, CliError> {
    match command {
        Command::Validate { manifold } => {
            let t = load_triangulation(manifold)?;
            let (v, e, f, m) = t.f_vector();
            Ok(json!({
                "valid": true,
                "vertices": v,
                "f_vector": [v, e, f, m],
                "euler_characteristic": t.euler_characteristic(),
                "orientable": true,
            }))
        }
        Command::Compute {
            manifold,
            group,
            cocycle,
            modulus,
            threads,
            reversed,
            relabel,
        } => {
            let mut t = load_triangulation(manifold)?;
            if let Some(perm_text) = relabel {
                let perm = parse_permutation(perm_text)?;
                t = t.relabel(&perm)?;
            }
            let g = resolve_group(group)?;
            let alpha = resolve_cocycle(cocycle, &g, *modulus)?;
            let opts = ComputeOptions {
                threads: (*threads).max(1),
                ..ComputeOptions::default()
            };
            let out = if *reversed {
                partition_function_reversed(&t, &alpha, &opts)?
            } else {
                partition_function(&t, &alpha, &opts)?
            };
            let (re, im) = out.value.to_complex();
            Ok(json!({
                "group": group,
                "group_order": out.group_order,
                "cocycle": cocycle,
                "modulus": alpha.modulus(),
                "vertices": out.vertex_count,
                "reversed": reversed,
                "colorings": out.colorings.to_string(),
                "z_cyclotomic": coeff_strings(&out.value),
                "z_complex_approx": [re, im],
            }))
        }
        Command::CountColorings { manifold, group } => {
            let t = load_triangulation(manifold)?;
            let g = resolve_group(group)?;
            let n = count_flat(&t, &g);
            Ok(json!({
                "group": group,
                "group_order": g.order(),
                "vertices": t.vertex_count(),
                "edges": t.edges().len(),
                "colorings": n.to_string(),
            }))
        }
        Command::CheckCocycle {
            group,
            cocycle,
            modulus,
        } => {
            let g = resolve_group(group)?;
            let alpha = resolve_cocycle(cocycle, &g, *modulus)?;
            let violation = alpha.cocycle_violation();
            Ok(json!({
                "group": group,
                "cocycle": cocycle,
                "modulus": alpha.modulus(),
                "degree": alpha.degree(),
                "is_cocycle": violation.is_none(),
                "first_violation": violation,
            }))
        }
        Command::Fuzz {
            manifold,
            group,
            cocycle,
            modulus,
            moves,
            seed,
            kinds,
            threads,
        } => {
            let t = load_triangulation(manifold)?;
            let g = resolve_group(group)?;
            let alpha = resolve_cocycle(cocycle, &g, *modulus)?;
            let kinds = match kinds {
                None => MoveKind::ALL.to_vec(),
                Some(text) => parse_move_kinds(text)?,
            };
            let opts = FuzzOptions {
                steps: *moves,
                seed: *seed,
                kinds,
                compute: ComputeOptions {
                    threads: (*threads).max(1),
                    ..ComputeOptions::default()
                },
            };
            let report = fuzz_invariance(&t, &alpha, &opts)?;
            Ok(json!({
                "group": group,
                "cocycle": cocycle,
                "modulus": alpha.modulus(),
                "moves_requested": moves,
                "moves_applied": report.trace.len(),
                "stalled": report.stalled,
                "invariant_preserved": true,
                "z_cyclotomic": coeff_strings(&report.value),
                "trace": report.trace,
            }))
        }
        Command::VolumeCheck { dim, samples, seed } => {
            let dim = *dim;
            if dim == 0 || dim > 8 {
                return Err(CliError::BadArg {
                    detail: format!("--dim must be between 1 and 8, got {dim}"),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let coord = |rng: &mut ChaCha8Rng| {
                BigRational::new(
                    BigInt::from(rng.gen_range(-12i64..=12)),
                    BigInt::from(rng.gen_range(1i64..=8)),
                )
            };
            let mut failures = 0usize;
            let mut counterexample = Value::Null;
            for _ in 0..*samples {
                let points: Vec<RationalPoint> = (0..dim + 2)
                    .map(|_| (0..dim).map(|_| coord(&mut rng)).collect())
                    .collect();
                let sum = facet_volume_alternating_sum(&points)?;
                if !sum.is_zero() {
                    failures += 1;
                    if counterexample.is_null() {
                        let pts: Vec<Vec<String>> = points
                            .iter()
                            .map(|p| p.iter().map(rational_to_string).collect())
                            .collect();
                        counterexample = json!({
                            "points": pts,
                            "alternating_sum": rational_to_string(&sum),
                        });
                    }
                }
            }
            Ok(json!({
                "dim": dim,
                "samples": samples,
                "seed": seed,
                "pass": failures == 0,
                "failures": failures,
                "counterexample": counterexample,
            }))
        }
    }
}

fn coeff_strings(value: &CyclotomicValue) -> Vec<String> {
    value.canonical().coeffs().iter().map(rational_to_string).collect()
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

fn load_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    Ok(Triangulation::parse(&read_file(path)?)?)
}

#[derive(Deserialize)]
struct GroupDoc {
    #[serde(default)]
    order: Option<usize>,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

fn group_from_doc(doc: GroupDoc, path: &str) -> Result<FiniteGroup, CliError> {
    if let Some(order) = doc.order {
        if order != doc.table.len() {
            return Err(CliError::BadFile {
                path: path.to_string(),
                detail: format!(
                    "declared order {order} but the table has {} rows",
                    doc.table.len()
                ),
            });
        }
    }
    Ok(FiniteGroup::from_table(doc.table, doc.names)?)
}

fn resolve_group(spec: &str) -> Result<Arc<FiniteGroup>, CliError> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let doc: GroupDoc =
                serde_json::from_str(&read_file(Path::new(path))?).map_err(|e| {
                    CliError::BadFile {
                        path: path.to_string(),
                        detail: e.to_string(),
                    }
                })?;
            Ok(Arc::new(group_from_doc(doc, path)?))
        }
        None => Ok(Arc::new(FiniteGroup::from_spec(spec)?)),
    }
}

fn resolve_cocycle(
    spec: &str,
    group: &Arc<FiniteGroup>,
    modulus_flag: Option<usize>,
) -> Result<Cochain, CliError> {
    match spec.strip_prefix('@') {
        Some(path) => {
            #[derive(Deserialize)]
            struct Doc {
                #[serde(default)]
                group: Option<Value>,
                modulus: usize,
                values: Vec<usize>,
                #[serde(default)]
                degree: Option<usize>,
            }
            let doc: Doc =
                serde_json::from_str(&read_file(Path::new(path))?).map_err(|e| {
                    CliError::BadFile {
                        path: path.to_string(),
                        detail: e.to_string(),
                    }
                })?;
            // the file may pin its own group; it must match --group
            if let Some(gval) = doc.group {
                let declared = match gval {
                    Value::String(s) => FiniteGroup::from_spec(&s)?,
                    obj @ Value::Object(_) => {
                        let gdoc: GroupDoc =
                            serde_json::from_value(obj).map_err(|e| CliError::BadFile {
                                path: path.to_string(),
                                detail: e.to_string(),
                            })?;
                        group_from_doc(gdoc, path)?
                    }
                    other => {
                        return Err(CliError::BadFile {
                            path: path.to_string(),
                            detail: format!("\"group\" must be a spec string or object, got {other}"),
                        })
                    }
                };
                if declared.table() != group.table() {
                    return Err(CochainError::GroupMismatch.into());
                }
            }
            if let Some(m) = modulus_flag {
                if m != doc.modulus {
                    return Err(CochainError::ModulusMismatch(m, doc.modulus).into());
                }
            }
            Ok(Cochain::from_values(
                group.clone(),
                doc.modulus,
                doc.degree.unwrap_or(3),
                doc.values,
            )?)
        }
        None => {
            let k = modulus_flag
                .or_else(|| default_modulus(spec, group))
                .ok_or_else(|| CliError::BadArg {
                    detail: format!("cannot infer a modulus for cocycle {spec:?}"),
                })?;
            Ok(Cochain::from_catalog(spec, group, k)?)
        }
    }
}

/// The natural coefficient modulus of each catalog entry.
fn default_modulus(spec: &str, group: &FiniteGroup) -> Option<usize> {
    if spec == "trivial" {
        Some(group.order())
    } else if spec == "product:Z2" {
        Some(2)
    } else {
        spec.strip_prefix("carry:")?.split(':').next()?.parse().ok()
    }
}

fn parse_permutation(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim().parse::<usize>().map_err(|_| CliError::BadArg {
                detail: format!("--relabel entries must be vertex indices, got {tok:?}"),
            })
        })
        .collect()
}

fn parse_move_kinds(text: &str) -> Result<Vec<MoveKind>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.parse::<MoveKind>()
                .map_err(|detail| CliError::BadArg { detail })
        })
        .collect()
}
