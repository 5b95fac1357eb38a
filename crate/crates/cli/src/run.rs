use std::fmt;
use std::time::Instant;

use latdefect::cayley::{bounded_fi_search, detect_cayley_decomposition, verify_fi_certificate};
use latdefect::defect::{analyze_with, sublattice_interior_points, AnalyzeOptions};
use latdefect::mixedvol::{mixed_volume, mixed_volume_ilp};
use latdefect::oracle::{
    ehrhart_counts, ehrhart_volume, separable_impossibility, witness_search_with, SparseSystem, WitnessOptions,
};
use latdefect::polytope::{convex_hull, Polytope};
use latdefect::{Error, Family, Point, PointConfiguration};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::codec::{
    complex_rows, criterion_name, rule_name, small, verdict_name, AttemptDoc, CertificateDoc, EvidenceDoc,
    MixedVolumeDoc, SearchSpaceDoc, StructureDoc, WidthDoc, WitnessDoc,
};
use crate::input::InputDocument;
use crate::report::{ReportDocument, VERSION};

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Spanning,
    MixedVolume,
    InteriorPoints { lambda: bool },
    Codegree,
    Width,
    CayleySum,
    CayleyDetect { k: usize },
    JoinType,
    FiVerify { certificate: CertificateDoc },
    FiSearch { entry_bound: u32, c_max: usize },
    Defective { lambda: bool, entry_bound: u32, c_max: usize, fi_search: bool },
    OracleEhrhart,
    OracleWitness { samples: usize, seed: u64, free_coefficient: bool },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spanning => "spanning",
            Command::MixedVolume => "mixed-volume",
            Command::InteriorPoints { .. } => "interior-points",
            Command::Codegree => "codegree",
            Command::Width => "width",
            Command::CayleySum => "cayley-sum",
            Command::CayleyDetect { .. } => "cayley-detect",
            Command::JoinType => "join-type",
            Command::FiVerify { .. } => "fi-verify",
            Command::FiSearch { .. } => "fi-search",
            Command::Defective { .. } => "defective",
            Command::OracleEhrhart => "oracle-ehrhart",
            Command::OracleWitness { .. } => "oracle-witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Precondition(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => CliError::Precondition(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values always serialize")
}

fn single(f: &Family, command: &str) -> Result<PointConfiguration, CliError> {
    match f.members() {
        [a] => Ok(a.clone()),
        _ => Err(CliError::Precondition(format!(
            "{command} takes a single configuration, got {}",
            f.len()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeEntry {
    pub configuration: usize,
    pub codegree: u64,
    /// An interior lattice point of `codegree · conv(A)`.
    pub witness: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthEntry {
    pub configuration: usize,
    #[serde(flatten)]
    pub width: WidthDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartEntry {
    pub configuration: usize,
    pub counts: Vec<i64>,
    pub ehrhart_volume: i64,
    pub normalized_volume: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSettings {
    pub samples: usize,
    pub free_coefficient: bool,
    pub tol: f64,
    pub rank_tol: f64,
}

#[derive(Default)]
struct Output {
    values: Value,
    evidence: Value,
    verdict: Option<String>,
    rule: Option<String>,
    criteria: Vec<AttemptDoc>,
    seed: Option<u64>,
}

fn values(v: Value) -> Output {
    Output {
        values: v,
        ..Output::default()
    }
}

/// Runs one command on a parsed document.
pub fn run(command: &Command, input: &InputDocument) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let f = input.family()?;
    let out = dispatch(command, &f)?;
    Ok(ReportDocument {
        command: command.name().to_string(),
        version: VERSION.to_string(),
        input_hash: input.hash(),
        seed: out.seed,
        timing_us: u64::try_from(started.elapsed().as_micros()).unwrap_or(u64::MAX),
        verdict: out.verdict,
        rule: out.rule,
        values: out.values,
        evidence: out.evidence,
        criteria_attempted: out.criteria,
        warnings: input.warnings.clone(),
    })
}

fn dispatch(command: &Command, f: &Family) -> Result<Output, CliError> {
    let n = f.ambient_dim();
    Ok(match command {
        Command::Spanning => {
            let lattice = f.family_lattice()?;
            let basis = lattice
                .basis_vectors()
                .iter()
                .map(|v| v.iter().map(small).collect::<latdefect::Result<Vec<_>>>())
                .collect::<latdefect::Result<Vec<_>>>()?;
            let factors = lattice.invariant_factors().iter().map(small).collect::<latdefect::Result<Vec<_>>>()?;
            values(json!({
                "spanning": f.is_spanning()?,
                "rank": lattice.rank(),
                "lattice_basis": basis,
                "invariant_factors": factors,
            }))
        }
        Command::MixedVolume => {
            let mv = mixed_volume(f)?;
            let mut evidence = json!({ "polarization": MixedVolumeDoc::from_result(&mv)? });
            match mixed_volume_ilp(f) {
                Ok(check) => {
                    if check.value != mv.value {
                        return Err(CliError::Input(format!(
                            "mixed volume formulas disagree: {} vs {}",
                            mv.value, check.value
                        )));
                    }
                    evidence["interior_lattice_points"] = to_value(&MixedVolumeDoc::from_result(&check)?);
                }
                Err(Error::Precondition(reason)) => {
                    evidence["interior_lattice_points_skipped"] = Value::String(reason);
                }
                Err(e) => return Err(e.into()),
            }
            Output {
                values: json!({ "value": small(&mv.value)? }),
                evidence,
                ..Output::default()
            }
        }
        Command::InteriorPoints { lambda: false } => {
            let hull = Polytope::hull_of(n, f.minkowski_sum()?.points())?;
            let points = hull.interior_lattice_points()?;
            values(json!({ "count": points.len(), "points": points }))
        }
        Command::InteriorPoints { lambda: true } => {
            let (lattice, points) = sublattice_interior_points(f, None)?;
            let basis = lattice
                .basis_vectors()
                .iter()
                .map(|v| v.iter().map(small).collect::<latdefect::Result<Vec<_>>>())
                .collect::<latdefect::Result<Vec<_>>>()?;
            values(json!({
                "count": points.len(),
                "points": points,
                "lambda_basis": basis,
                "basepoints": vec![0; f.len()],
            }))
        }
        Command::Codegree => {
            let mut entries = Vec::new();
            for (i, a) in f.members().iter().enumerate() {
                let hull = convex_hull(a)?;
                let c = hull.codegree()?;
                let witness = hull.interior_points_of_dilate(c as i64)?.remove(0);
                entries.push(CodegreeEntry {
                    configuration: i,
                    codegree: c,
                    witness,
                });
            }
            values(json!({ "codegrees": entries }))
        }
        Command::Width => {
            let mut entries = Vec::new();
            for (i, a) in f.members().iter().enumerate() {
                entries.push(WidthEntry {
                    configuration: i,
                    width: WidthDoc::from(&convex_hull(a)?.lattice_width()?),
                });
            }
            values(json!({ "widths": entries }))
        }
        Command::CayleySum => {
            let cs = f.cayley_sum()?;
            values(json!({
                "ambient_dim": cs.config.ambient_dim(),
                "points": cs.config.points(),
                "tags": cs.tags,
            }))
        }
        Command::CayleyDetect { k } => {
            let a = single(f, "cayley-detect")?;
            match detect_cayley_decomposition(&a, *k)? {
                Some(s) => {
                    let summands: Vec<Vec<Point>> =
                        s.recovered_summands()?.iter().map(|b| b.points().to_vec()).collect();
                    values(json!({
                        "found": true,
                        "k": k,
                        "structure": StructureDoc::from_structure(&s)?,
                        "summands": summands,
                    }))
                }
                None => values(json!({ "found": false, "k": k })),
            }
        }
        Command::JoinType => {
            let dims: Vec<isize> = f.members().iter().map(PointConfiguration::dimension).collect();
            values(json!({
                "join_type": f.is_join_type()?,
                "dimensions": dims,
                "sum_dimension": f.minkowski_sum()?.dimension(),
            }))
        }
        Command::FiVerify { certificate } => {
            let a = single(f, "fi-verify")?;
            let d = verify_fi_certificate(&a, &certificate.to_certificate()?)?;
            Output {
                values: json!({
                    "holds": d.holds(),
                    "diagnostics": {
                        "c_less_than_r": d.c_less_than_r,
                        "projection_codimension": d.projection_codimension,
                        "structure_verifies": d.structure_verifies,
                        "parts_non_empty": d.parts_non_empty,
                        "join_type": d.join_type,
                    },
                }),
                evidence: json!({ "certificate": certificate }),
                ..Output::default()
            }
        }
        Command::FiSearch { entry_bound, c_max } => {
            let a = single(f, "fi-search")?;
            let rep = bounded_fi_search(&a, *entry_bound, *c_max)?;
            let space = SearchSpaceDoc {
                entry_bound: rep.entry_bound,
                c_max: rep.c_max,
                projections_tried: rep.projections_tried,
                partitions_tried: rep.partitions_tried,
            };
            let cert = rep.certificate.as_ref().map(CertificateDoc::from_certificate).transpose()?;
            Output {
                values: json!({ "found": cert.is_some() }),
                evidence: json!({ "certificate": cert, "search_space": space }),
                ..Output::default()
            }
        }
        Command::Defective {
            lambda,
            entry_bound,
            c_max,
            fi_search,
        } => {
            let opts = AnalyzeOptions {
                fi_search: *fi_search,
                entry_bound: *entry_bound,
                c_max: *c_max,
                lambda_mode: *lambda,
            };
            let report = analyze_with(f, &opts)?;
            let mv = report
                .evidence
                .mixed_volume
                .as_ref()
                .map(|m| small(&m.value))
                .transpose()?;
            Output {
                values: json!({
                    "verdict": verdict_name(report.verdict),
                    "simplex_family": report.simplex_family,
                    "mixed_volume": mv,
                }),
                evidence: to_value(&EvidenceDoc::from_evidence(&report.evidence)?),
                verdict: Some(verdict_name(report.verdict).to_string()),
                rule: Some(rule_name(report.rule).to_string()),
                criteria: report
                    .criteria_attempted
                    .iter()
                    .map(|a| AttemptDoc {
                        criterion: criterion_name(a.criterion).to_string(),
                        outcome: a.outcome.clone(),
                    })
                    .collect(),
                seed: None,
            }
        }
        Command::OracleEhrhart => {
            let mut entries = Vec::new();
            for (i, a) in f.members().iter().enumerate() {
                let hull = convex_hull(a)?;
                entries.push(EhrhartEntry {
                    configuration: i,
                    counts: ehrhart_counts(&hull, n)?.iter().map(small).collect::<latdefect::Result<_>>()?,
                    ehrhart_volume: small(&ehrhart_volume(hull.v())?)?,
                    normalized_volume: small(&hull.normalized_volume()?)?,
                });
            }
            let agree = entries.iter().all(|e| e.ehrhart_volume == e.normalized_volume);
            values(json!({ "agree": agree, "volumes": entries }))
        }
        Command::OracleWitness {
            samples,
            seed,
            free_coefficient,
        } => {
            let system = SparseSystem::random(f.clone(), *seed);
            let mut opts = WitnessOptions::new(*samples, *seed);
            opts.free_coefficient = *free_coefficient;
            let search = witness_search_with(&system, &opts)?;
            let separable = if f.k() == 0 { None } else { Some(separable_impossibility(f)?) };
            let settings = WitnessSettings {
                samples: *samples,
                free_coefficient: opts.free_coefficient,
                tol: opts.tol,
                rank_tol: opts.rank_tol,
            };
            Output {
                values: json!({
                    "found": search.witness.is_some(),
                    "samples_run": search.samples_run,
                    "degenerate_hits": search.degenerate_hits,
                    "separable": separable,
                    "settings": settings,
                    "coefficients": complex_rows(system.coefficients()),
                    "note": "a missing witness is probabilistic evidence only",
                }),
                evidence: json!({ "witness": search.witness.as_ref().map(WitnessDoc::from) }),
                seed: Some(search.seed),
                ..Output::default()
            }
        }
    })
}
