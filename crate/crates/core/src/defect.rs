//! Defectivity analysis of a family `A₀, …, A_k ⊂ ℤⁿ`.
//!
//! [`analyze`] runs a fixed cascade of criteria and stops at the first one
//! that settles the question:
//!
//! 1. Members that are not full-dimensional skip every interior point rule:
//!    the two axis segments of length 2 in ℤ² form a defective family whose
//!    Minkowski sum has the interior point `(1, 1)`.
//! 2. Spanning, full-dimensional, `k = n − 1`: defective iff the mixed volume
//!    is 1. Both mixed volume formulas are computed and must agree.
//! 3. Spanning, full-dimensional, `k ≤ n`: an interior lattice point of
//!    `conv(A₀ + … + A_k)` proves non-defectivity.
//! 4. Not spanning, full-dimensional, `k ≤ n`: the same with `(A₀ − a₀) + … +
//!    (A_k − a_k)` and points of `Λ = Σ ⟨Aᵢ − Aᵢ⟩`.
//! 5. `k = 0`, spanning: a single configuration of lattice width > 1 is not
//!    defective. A defective spanning `A` projects onto a Cayley sum
//!    `B₀ * … * B_r` with `r ≥ 1`, and pulling back the functional that
//!    separates `B₀` from the other summands gives a direction of width 1.
//! 6. A bounded search for a Furukawa–Ito certificate on the Cayley sum. This
//!    transfers to the family only when all members are full-dimensional.
//! 7. Otherwise the verdict is unknown.
//!
//! Interiors are taken in ℝⁿ; a hull that is not full-dimensional has no
//! interior points.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::cayley::{bounded_fi_search, verify_fi_certificate, FICertificate};
use crate::error::{Error, Result};
use crate::intlat::Lattice;
use crate::mixedvol::{mixed_volume, mixed_volume_ilp, MixedVolumeResult};
use crate::pointconfig::{checked_sub, to_i64};
use crate::polytope::{LatticeWidth, Polytope};
use crate::{Family, Point, PointConfiguration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Defective,
    NotDefective,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    MixedVolumeOne,
    MixedVolumeGreater,
    InteriorPointFound,
    LatticeWidthRule,
    SublatticeInteriorPoint,
    FICertificate,
    InsufficientCriteria,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    FullDimensionality,
    MixedVolume,
    InteriorPoint,
    SublatticeInteriorPoint,
    LatticeWidth,
    FICertificateSearch,
}

/// One step of the cascade and what came of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub criterion: Criterion,
    pub outcome: String,
}

/// Size of a bounded certificate search that found nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub entry_bound: u32,
    pub c_max: usize,
    pub projections_tried: u64,
    pub partitions_tried: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evidence {
    pub mixed_volume: Option<MixedVolumeResult>,
    /// The interior lattice point formula, when it applies.
    pub mixed_volume_check: Option<MixedVolumeResult>,
    pub interior_point: Option<Point>,
    /// Basis of `Λ` (as columns) in sublattice mode.
    pub lambda_basis: Option<Vec<Vec<i64>>>,
    /// Basepoint index into each member in sublattice mode.
    pub basepoints: Option<Vec<usize>>,
    pub lattice_width: Option<LatticeWidth>,
    /// A certificate for the Cayley sum of the family.
    pub certificate: Option<FICertificate>,
    pub search_space: Option<SearchSpace>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub verdict: Verdict,
    pub rule: Rule,
    pub evidence: Evidence,
    pub simplex_family: bool,
    pub criteria_attempted: Vec<Attempt>,
}

/// Bounds for the certificate search in step 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub fi_search: bool,
    pub entry_bound: u32,
    pub c_max: usize,
    /// Use `Λ`-mode interior test even for spanning families.
    pub lambda_mode: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            fi_search: true,
            entry_bound: 1,
            c_max: 1,
            lambda_mode: false,
        }
    }
}

pub fn analyze(f: &Family) -> Result<DefectReport> {
    analyze_with(f, &AnalyzeOptions::default())
}

struct Cascade {
    attempts: Vec<Attempt>,
    evidence: Evidence,
}

impl Cascade {
    fn note(&mut self, criterion: Criterion, outcome: impl Into<String>) {
        self.attempts.push(Attempt {
            criterion,
            outcome: outcome.into(),
        });
    }

    fn finish(self, verdict: Verdict, rule: Rule, simplex_family: bool) -> DefectReport {
        DefectReport {
            verdict,
            rule,
            evidence: self.evidence,
            simplex_family,
            criteria_attempted: self.attempts,
        }
    }
}

pub fn analyze_with(f: &Family, opts: &AnalyzeOptions) -> Result<DefectReport> {
    if let Some(i) = f.members().iter().position(PointConfiguration::is_empty) {
        return Err(Error::invalid(format!("configuration A_{i} is empty")));
    }
    let n = f.ambient_dim();
    let k = f.k();
    let full = f.all_full_dimensional();
    let spanning = f.is_spanning()?;
    let mut run = Cascade {
        attempts: Vec::new(),
        evidence: Evidence::default(),
    };

    if !full {
        run.note(
            Criterion::FullDimensionality,
            "not all members are full-dimensional; interior point and mixed volume rules do not apply",
        );
    } else {
        run.note(Criterion::FullDimensionality, "all members are full-dimensional");

        if spanning && k + 1 == n && !opts.lambda_mode {
            let mv = mixed_volume(f)?;
            let check = mixed_volume_ilp(f)?;
            if mv.value != check.value {
                return Err(Error::InvalidInput(format!(
                    "mixed volume formulas disagree: {} by polarization, {} by interior points",
                    mv.value, check.value
                )));
            }
            let value = mv.value.clone();
            run.evidence.mixed_volume = Some(mv);
            run.evidence.mixed_volume_check = Some(check);
            run.note(Criterion::MixedVolume, format!("mixed volume {value}"));
            return Ok(if value.is_one() {
                let simplex = is_unimodular_simplex_family(f)?;
                run.finish(Verdict::Defective, Rule::MixedVolumeOne, simplex)
            } else {
                run.finish(Verdict::NotDefective, Rule::MixedVolumeGreater, false)
            });
        }

        if k > n {
            run.note(Criterion::InteriorPoint, "skipped: k > n");
        } else if spanning && !opts.lambda_mode {
            match check_interior_condition(f, InteriorMode::Spanning)? {
                Some(p) => {
                    run.note(Criterion::InteriorPoint, "interior lattice point found");
                    run.evidence.interior_point = Some(p);
                    return Ok(run.finish(Verdict::NotDefective, Rule::InteriorPointFound, false));
                }
                None => run.note(Criterion::InteriorPoint, "conv(A₀ + … + A_k) has no interior lattice point"),
            }
        } else {
            let lambda = f.family_lattice()?;
            run.evidence.lambda_basis = Some(lattice_columns(&lambda)?);
            run.evidence.basepoints = Some(alloc::vec![0; f.len()]);
            match check_interior_condition(f, InteriorMode::Sublattice { basepoints: None })? {
                Some(p) => {
                    run.note(Criterion::SublatticeInteriorPoint, "interior point of Λ found");
                    run.evidence.interior_point = Some(p);
                    return Ok(run.finish(Verdict::NotDefective, Rule::SublatticeInteriorPoint, false));
                }
                None => run.note(
                    Criterion::SublatticeInteriorPoint,
                    "no interior point of conv(Σ(Aᵢ − aᵢ)) lies in Λ",
                ),
            }
        }
    }

    if k == 0 && spanning {
        let hull = Polytope::hull_of(n, f.members()[0].points())?;
        if n > 0 && hull.is_full_dimensional() {
            let w = hull.lattice_width()?;
            let width = w.width;
            run.evidence.lattice_width = Some(w);
            if width > 1 {
                run.note(Criterion::LatticeWidth, format!("lattice width {width} > 1"));
                return Ok(run.finish(Verdict::NotDefective, Rule::LatticeWidthRule, false));
            }
            run.note(Criterion::LatticeWidth, format!("lattice width {width}"));
        }
    }

    if !opts.fi_search {
        run.note(Criterion::FICertificateSearch, "disabled");
    } else if !spanning {
        run.note(Criterion::FICertificateSearch, "skipped: the family is not spanning");
    } else if !full && k > 0 {
        run.note(
            Criterion::FICertificateSearch,
            "skipped: the Cayley trick needs full-dimensional members",
        );
    } else {
        let cayley = f.cayley_sum()?.config;
        let rep = bounded_fi_search(&cayley, opts.entry_bound, opts.c_max)?;
        run.evidence.search_space = Some(SearchSpace {
            entry_bound: rep.entry_bound,
            c_max: rep.c_max,
            projections_tried: rep.projections_tried,
            partitions_tried: rep.partitions_tried,
        });
        match rep.certificate {
            Some(cert) => {
                run.note(
                    Criterion::FICertificateSearch,
                    format!("certificate with c = {}, r = {}", cert.c, cert.r),
                );
                run.evidence.certificate = Some(cert);
                return Ok(run.finish(Verdict::Defective, Rule::FICertificate, false));
            }
            None => run.note(
                Criterion::FICertificateSearch,
                format!(
                    "not found within bounds (entries ≤ {}, c ≤ {}; {} projections, {} partitions)",
                    rep.entry_bound, rep.c_max, rep.projections_tried, rep.partitions_tried
                ),
            ),
        }
    }

    Ok(run.finish(Verdict::Unknown, Rule::InsufficientCriteria, false))
}

fn lattice_columns(l: &Lattice) -> Result<Vec<Vec<i64>>> {
    l.basis_vectors().into_iter().map(to_i64).collect()
}

/// True iff all members are translates of one unimodular simplex's vertex set.
pub fn is_unimodular_simplex_family(f: &Family) -> Result<bool> {
    f.require_non_empty_members()?;
    let n = f.ambient_dim();
    let mut shapes = f.members().iter().map(|a| {
        if a.len() != n + 1 {
            return Ok(None);
        }
        let first = a.points()[0].clone();
        let neg: Point = first.iter().map(|x| x.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        a.translate(&neg).map(Some)
    });
    let Some(shape) = shapes.next().transpose()?.flatten() else {
        return Ok(false);
    };
    for other in shapes {
        if other?.as_ref() != Some(&shape) {
            return Ok(false);
        }
    }
    shape.is_isomorphic(&PointConfiguration::standard_simplex(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InteriorMode {
    /// `int(conv(A₀ + … + A_k)) ∩ ℤⁿ`; all members must be full-dimensional.
    Spanning,
    /// `int(conv((A₀ − a₀) + … + (A_k − a_k))) ∩ Λ`, with `aᵢ` the point of
    /// `Aᵢ` at the given index (default: the first point).
    ///
    /// The hull is taken in coordinates of `Λ`, so the interior is relative to
    /// the span of `Λ`; the two agree when `Λ` has full rank.
    Sublattice { basepoints: Option<Vec<usize>> },
}

/// An interior point witnessing that the interior condition fails, if any.
pub fn check_interior_condition(f: &Family, mode: InteriorMode) -> Result<Option<Point>> {
    f.require_non_empty_members()?;
    let n = f.ambient_dim();
    match mode {
        InteriorMode::Spanning => {
            if let Some(i) = f.members().iter().position(|a| !a.is_full_dimensional()) {
                return Err(Error::precondition(format!(
                    "the interior lattice point criterion requires full-dimensional members (A_{i} is not)"
                )));
            }
            let sum = f.minkowski_sum()?;
            let hull = Polytope::hull_of(n, sum.points())?;
            Ok(hull.interior_lattice_points()?.into_iter().next())
        }
        InteriorMode::Sublattice { basepoints } => {
            Ok(sublattice_interior_points(f, basepoints)?.1.into_iter().next())
        }
    }
}

/// `Λ` together with all points of `int(conv(Σ(Aᵢ − aᵢ))) ∩ Λ`, sorted, the
/// interior taken relative to the span of `Λ`.
pub fn sublattice_interior_points(f: &Family, basepoints: Option<Vec<usize>>) -> Result<(Lattice, Vec<Point>)> {
    f.require_non_empty_members()?;
    let base = basepoints.unwrap_or_else(|| alloc::vec![0; f.len()]);
    if base.len() != f.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            found: base.len(),
        });
    }
    let mut shifted = Vec::with_capacity(f.len());
    for (a, &b) in f.members().iter().zip(&base) {
        let Some(p) = a.points().get(b) else {
            return Err(Error::invalid(format!("basepoint index {b} out of range")));
        };
        let neg: Point = p.iter().map(|x| x.checked_neg().ok_or(Error::Overflow)).collect::<Result<_>>()?;
        shifted.push(a.translate(&neg)?);
    }
    let sum = Family::new(shifted)?.minkowski_sum()?;
    let lambda = f.family_lattice()?;
    let coords: Vec<Point> = sum
        .points()
        .iter()
        .map(|p| to_i64(lambda.coordinates(p).expect("differences lie in Λ")))
        .collect::<Result<_>>()?;
    let hull = Polytope::hull_of(lambda.rank(), &coords)?;
    let mut points = hull
        .interior_lattice_points()?
        .into_iter()
        .map(|y| {
            let yb: Vec<BigInt> = y.into_iter().map(BigInt::from).collect();
            to_i64(lambda.basis().mul_vec(&yb))
        })
        .collect::<Result<Vec<Point>>>()?;
    points.sort_unstable();
    Ok((lambda, points))
}

impl DefectReport {
    /// Re-checks the attached evidence without repeating any search.
    pub fn recheck(&self, f: &Family) -> Result<bool> {
        let ev = &self.evidence;
        Ok(match self.rule {
            Rule::MixedVolumeOne | Rule::MixedVolumeGreater => {
                let Some(mv) = &ev.mixed_volume else { return Ok(false) };
                let agree = ev.mixed_volume_check.as_ref().is_none_or(|c| c.resum() == Some(mv.value.clone()));
                let one = mv.value.is_one();
                agree
                    && mv.resum() == Some(mv.value.clone())
                    && one == (self.rule == Rule::MixedVolumeOne)
                    && (self.verdict == Verdict::Defective) == one
            }
            Rule::InteriorPointFound => {
                let Some(p) = &ev.interior_point else { return Ok(false) };
                let hull = Polytope::hull_of(f.ambient_dim(), f.minkowski_sum()?.points())?;
                hull.contains_in_interior(p)
            }
            Rule::SublatticeInteriorPoint => {
                let Some(p) = &ev.interior_point else { return Ok(false) };
                let base = ev.basepoints.clone().unwrap_or_else(|| alloc::vec![0; f.len()]);
                let lambda = f.family_lattice()?;
                let Some(y) = lambda.coordinates(p) else { return Ok(false) };
                let mut shifted = Vec::new();
                for (a, &b) in f.members().iter().zip(&base) {
                    let pts = a
                        .points()
                        .iter()
                        .map(|q| checked_sub(q, &a.points()[b]))
                        .collect::<Result<_>>()?;
                    shifted.push(PointConfiguration::new(f.ambient_dim(), pts)?);
                }
                let sum = Family::new(shifted)?.minkowski_sum()?;
                let coords: Vec<Point> = sum
                    .points()
                    .iter()
                    .map(|q| to_i64(lambda.coordinates(q).unwrap_or_default()))
                    .collect::<Result<_>>()?;
                let hull = Polytope::hull_of(lambda.rank(), &coords)?;
                hull.contains_in_interior(&to_i64(y)?)
            }
            Rule::LatticeWidthRule => {
                let Some(w) = &ev.lattice_width else { return Ok(false) };
                let pts = f.members()[0].points();
                let values: Vec<i128> = pts
                    .iter()
                    .map(|p| p.iter().zip(&w.direction).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum())
                    .collect();
                let spread = values.iter().max().zip(values.iter().min()).map(|(a, b)| a - b);
                f.k() == 0 && spread == Some(i128::from(w.width)) && w.width > 1
            }
            Rule::FICertificate => {
                let Some(cert) = &ev.certificate else { return Ok(false) };
                verify_fi_certificate(&f.cayley_sum()?.config, cert)?.holds()
            }
            Rule::InsufficientCriteria => self.verdict == Verdict::Unknown && !self.criteria_attempted.is_empty(),
        })
    }
}
