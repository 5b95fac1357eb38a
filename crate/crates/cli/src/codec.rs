//! JSON shapes for library values, with conversions in both directions.

use latdefect::cayley::{CayleyStructure, FICertificate};
use latdefect::defect::{Attempt, Criterion, DefectReport, Evidence, Rule, SearchSpace, Verdict};
use latdefect::intlat::{IntMatrix, LatticeProjection};
use latdefect::mixedvol::{Method, MixedVolumeResult, Term};
use latdefect::oracle::RootWitness;
use latdefect::polytope::LatticeWidth;
use latdefect::{Error, Point, PointConfiguration, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub(crate) fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

fn small_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(small).collect()
}

fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `x ↦ matrix · (x − basepoint)`; `matrix` is given row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionDoc {
    pub matrix: Vec<Vec<i64>>,
    pub basepoint: Vec<i64>,
}

impl ProjectionDoc {
    pub fn from_projection(p: &LatticeProjection) -> Result<Self> {
        Ok(ProjectionDoc {
            matrix: p.matrix().row_vectors().iter().map(|r| small_vec(r)).collect::<Result<_>>()?,
            basepoint: small_vec(p.basepoint())?,
        })
    }

    pub fn to_projection(&self) -> Result<LatticeProjection> {
        let cols = self.basepoint.len();
        if self.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("projection rows must have one entry per source coordinate"));
        }
        LatticeProjection::new(IntMatrix::from_rows(cols, &self.matrix), big_vec(&self.basepoint))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub parts: Vec<Vec<Point>>,
    pub projection: ProjectionDoc,
}

impl StructureDoc {
    pub fn from_structure(s: &CayleyStructure) -> Result<Self> {
        Ok(StructureDoc {
            parts: s.parts.iter().map(|p| p.points().to_vec()).collect(),
            projection: ProjectionDoc::from_projection(&s.projection)?,
        })
    }

    /// Rebuilds the structure over `parent` as stated, without re-deriving the
    /// projection.
    pub fn to_structure(&self, parent: &PointConfiguration) -> Result<CayleyStructure> {
        let n = parent.ambient_dim();
        Ok(CayleyStructure {
            parent: parent.clone(),
            parts: self
                .parts
                .iter()
                .map(|p| PointConfiguration::new(n, p.clone()))
                .collect::<Result<_>>()?,
            projection: self.projection.to_projection()?,
        })
    }
}

/// A certificate: `projection` maps the configuration onto `image`, which
/// `structure` splits into `r + 1` parts of join type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub c: usize,
    pub r: usize,
    pub projection: ProjectionDoc,
    pub image: Vec<Point>,
    pub structure: StructureDoc,
}

impl CertificateDoc {
    pub fn from_certificate(cert: &FICertificate) -> Result<Self> {
        Ok(CertificateDoc {
            c: cert.c,
            r: cert.r,
            projection: ProjectionDoc::from_projection(&cert.projection)?,
            image: cert.structure.parent.points().to_vec(),
            structure: StructureDoc::from_structure(&cert.structure)?,
        })
    }

    pub fn to_certificate(&self) -> Result<FICertificate> {
        let projection = self.projection.to_projection()?;
        let image = PointConfiguration::new(projection.target_dim(), self.image.clone())?;
        Ok(FICertificate {
            c: self.c,
            r: self.r,
            projection,
            structure: self.structure.to_structure(&image)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub subset: Vec<usize>,
    pub sign: i8,
    pub magnitude: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedVolumeDoc {
    pub value: i64,
    pub method: String,
    pub constant: i64,
    pub divisor: i64,
    pub terms: Vec<TermDoc>,
}

impl MixedVolumeDoc {
    pub fn from_result(mv: &MixedVolumeResult) -> Result<Self> {
        Ok(MixedVolumeDoc {
            value: small(&mv.value)?,
            method: method_name(mv.method).to_string(),
            constant: small(&mv.constant)?,
            divisor: small(&mv.divisor)?,
            terms: mv
                .terms
                .iter()
                .map(|t| {
                    Ok(TermDoc {
                        subset: t.subset.clone(),
                        sign: t.sign,
                        magnitude: small(&t.magnitude)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_result(&self) -> Result<MixedVolumeResult> {
        let method = match self.method.as_str() {
            "polarization" => Method::Polarization,
            "interior_lattice_points" => Method::InteriorLatticePoints,
            other => return Err(Error::invalid(format!("unknown mixed volume method {other:?}"))),
        };
        Ok(MixedVolumeResult {
            value: self.value.into(),
            method,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    subset: t.subset.clone(),
                    sign: t.sign,
                    magnitude: t.magnitude.into(),
                })
                .collect(),
            constant: self.constant.into(),
            divisor: self.divisor.into(),
        })
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Polarization => "polarization",
        Method::InteriorLatticePoints => "interior_lattice_points",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthDoc {
    pub width: u64,
    pub direction: Vec<i64>,
    pub search_bound: u64,
    pub candidates: u64,
}

impl From<&LatticeWidth> for WidthDoc {
    fn from(w: &LatticeWidth) -> Self {
        WidthDoc {
            width: w.width,
            direction: w.direction.clone(),
            search_bound: w.search_bound,
            candidates: w.candidates,
        }
    }
}

impl From<&WidthDoc> for LatticeWidth {
    fn from(w: &WidthDoc) -> Self {
        LatticeWidth {
            width: w.width,
            direction: w.direction.clone(),
            search_bound: w.search_bound,
            candidates: w.candidates,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpaceDoc {
    pub entry_bound: u32,
    pub c_max: usize,
    pub projections_tried: u64,
    pub partitions_tried: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixed_volume: Option<MixedVolumeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mixed_volume_check: Option<MixedVolumeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_point: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_basis: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoints: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_width: Option<WidthDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_space: Option<SearchSpaceDoc>,
}

impl EvidenceDoc {
    pub fn from_evidence(e: &Evidence) -> Result<Self> {
        Ok(EvidenceDoc {
            mixed_volume: e.mixed_volume.as_ref().map(MixedVolumeDoc::from_result).transpose()?,
            mixed_volume_check: e.mixed_volume_check.as_ref().map(MixedVolumeDoc::from_result).transpose()?,
            interior_point: e.interior_point.clone(),
            lambda_basis: e.lambda_basis.clone(),
            basepoints: e.basepoints.clone(),
            lattice_width: e.lattice_width.as_ref().map(WidthDoc::from),
            certificate: e.certificate.as_ref().map(CertificateDoc::from_certificate).transpose()?,
            search_space: e.search_space.as_ref().map(|s| SearchSpaceDoc {
                entry_bound: s.entry_bound,
                c_max: s.c_max,
                projections_tried: s.projections_tried,
                partitions_tried: s.partitions_tried,
            }),
        })
    }

    pub fn to_evidence(&self) -> Result<Evidence> {
        Ok(Evidence {
            mixed_volume: self.mixed_volume.as_ref().map(MixedVolumeDoc::to_result).transpose()?,
            mixed_volume_check: self.mixed_volume_check.as_ref().map(MixedVolumeDoc::to_result).transpose()?,
            interior_point: self.interior_point.clone(),
            lambda_basis: self.lambda_basis.clone(),
            basepoints: self.basepoints.clone(),
            lattice_width: self.lattice_width.as_ref().map(LatticeWidth::from),
            certificate: self.certificate.as_ref().map(CertificateDoc::to_certificate).transpose()?,
            search_space: self.search_space.as_ref().map(|s| SearchSpace {
                entry_bound: s.entry_bound,
                c_max: s.c_max,
                projections_tried: s.projections_tried,
                partitions_tried: s.partitions_tried,
            }),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttemptDoc {
    pub criterion: String,
    pub outcome: String,
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Defective => "Defective",
        Verdict::NotDefective => "NotDefective",
        Verdict::Unknown => "Unknown",
    }
}

pub fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::MixedVolumeOne => "MixedVolumeOne",
        Rule::MixedVolumeGreater => "MixedVolumeGreater",
        Rule::InteriorPointFound => "InteriorPointFound",
        Rule::LatticeWidthRule => "LatticeWidthRule",
        Rule::SublatticeInteriorPoint => "SublatticeInteriorPoint",
        Rule::FICertificate => "FICertificate",
        Rule::InsufficientCriteria => "InsufficientCriteria",
    }
}

const VERDICTS: [Verdict; 3] = [Verdict::Defective, Verdict::NotDefective, Verdict::Unknown];
const RULES: [Rule; 7] = [
    Rule::MixedVolumeOne,
    Rule::MixedVolumeGreater,
    Rule::InteriorPointFound,
    Rule::LatticeWidthRule,
    Rule::SublatticeInteriorPoint,
    Rule::FICertificate,
    Rule::InsufficientCriteria,
];
const CRITERIA: [Criterion; 6] = [
    Criterion::FullDimensionality,
    Criterion::MixedVolume,
    Criterion::InteriorPoint,
    Criterion::SublatticeInteriorPoint,
    Criterion::LatticeWidth,
    Criterion::FICertificateSearch,
];

pub fn criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::FullDimensionality => "FullDimensionality",
        Criterion::MixedVolume => "MixedVolume",
        Criterion::InteriorPoint => "InteriorPoint",
        Criterion::SublatticeInteriorPoint => "SublatticeInteriorPoint",
        Criterion::LatticeWidth => "LatticeWidth",
        Criterion::FICertificateSearch => "FICertificateSearch",
    }
}

fn lookup<T: Copy>(all: &[T], name: &str, to_name: fn(T) -> &'static str, what: &str) -> Result<T> {
    all.iter()
        .copied()
        .find(|&x| to_name(x) == name)
        .ok_or_else(|| Error::invalid(format!("unknown {what} {name:?}")))
}

/// Reassembles a library report from its serialized parts.
pub fn defect_report(
    verdict: &str,
    rule: &str,
    simplex_family: bool,
    evidence: &EvidenceDoc,
    attempts: &[AttemptDoc],
) -> Result<DefectReport> {
    Ok(DefectReport {
        verdict: lookup(&VERDICTS, verdict, verdict_name, "verdict")?,
        rule: lookup(&RULES, rule, rule_name, "rule")?,
        evidence: evidence.to_evidence()?,
        simplex_family,
        criteria_attempted: attempts
            .iter()
            .map(|a| {
                Ok(Attempt {
                    criterion: lookup(&CRITERIA, &a.criterion, criterion_name, "criterion")?,
                    outcome: a.outcome.clone(),
                })
            })
            .collect::<Result<_>>()?,
    })
}

/// A complex number as `[re, im]`.
pub type ComplexDoc = [f64; 2];

fn c_doc(z: &Complex64) -> ComplexDoc {
    [z.re, z.im]
}

fn c_val(z: &ComplexDoc) -> Complex64 {
    Complex64::new(z[0], z[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub u: Vec<ComplexDoc>,
    pub residuals: Vec<f64>,
    pub dependence_certificate: Vec<ComplexDoc>,
    pub dependence_residual: f64,
    pub subrank_checks: Vec<(Vec<usize>, f64)>,
    pub coefficients: Vec<Vec<ComplexDoc>>,
}

impl From<&RootWitness> for WitnessDoc {
    fn from(w: &RootWitness) -> Self {
        WitnessDoc {
            u: w.u.iter().map(c_doc).collect(),
            residuals: w.residuals.clone(),
            dependence_certificate: w.dependence_certificate.iter().map(c_doc).collect(),
            dependence_residual: w.dependence_residual,
            subrank_checks: w.subrank_checks.clone(),
            coefficients: w.coefficients.iter().map(|c| c.iter().map(c_doc).collect()).collect(),
        }
    }
}

impl From<&WitnessDoc> for RootWitness {
    fn from(w: &WitnessDoc) -> Self {
        RootWitness {
            u: w.u.iter().map(c_val).collect(),
            residuals: w.residuals.clone(),
            dependence_certificate: w.dependence_certificate.iter().map(c_val).collect(),
            dependence_residual: w.dependence_residual,
            subrank_checks: w.subrank_checks.clone(),
            coefficients: w.coefficients.iter().map(|c| c.iter().map(c_val).collect()).collect(),
        }
    }
}

pub fn complex_rows(rows: &[Vec<Complex64>]) -> Vec<Vec<ComplexDoc>> {
    rows.iter().map(|r| r.iter().map(c_doc).collect()).collect()
}
