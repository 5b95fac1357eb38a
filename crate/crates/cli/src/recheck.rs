//! Replays the evidence in a report against its input, without repeating
//! any search.

use latdefect::cayley::{verify_cayley_partition, verify_fi_certificate};
use latdefect::intlat::Lattice;
use latdefect::mixedvol::Method;
use latdefect::oracle::{verify_witness, RootWitness};
use latdefect::polytope::{convex_hull, project_config, Polytope};
use latdefect::{Family, Point, PointConfiguration};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::codec::{defect_report, CertificateDoc, EvidenceDoc, MixedVolumeDoc, StructureDoc, WitnessDoc};
use crate::input::InputDocument;
use crate::report::{Check, RecheckDocument, ReportDocument, VERSION};
use crate::run::{CliError, CodegreeEntry, EhrhartEntry, WidthEntry, WitnessSettings};

struct Replay {
    checks: Vec<Check>,
    not_replayable: Vec<String>,
}

impl Replay {
    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    fn skip(&mut self, what: impl Into<String>) {
        self.not_replayable.push(what.into());
    }
}

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, CliError> {
    let x = v.get(key).cloned().unwrap_or(Value::Null);
    serde_json::from_value(x).map_err(|e| CliError::Input(format!("report field {key:?}: {e}")))
}

fn spread(points: &[Point], direction: &[i64]) -> Option<i128> {
    let values: Vec<i128> = points
        .iter()
        .map(|p| p.iter().zip(direction).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum())
        .collect();
    Some(values.iter().max()? - values.iter().min()?)
}

fn gcd_is_one(v: &[i64]) -> bool {
    v.iter().fold(0u64, |g, &x| gcd(g, x.unsigned_abs())) == 1
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn unit(k: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; k];
    if i > 0 {
        e[i - 1] = 1;
    }
    e
}

/// Checks every claim of `report` that carries a witness.
pub fn recheck(report: &ReportDocument, input: &InputDocument) -> Result<RecheckDocument, CliError> {
    let f = input.family()?;
    let n = f.ambient_dim();
    let mut r = Replay {
        checks: Vec::new(),
        not_replayable: Vec::new(),
    };
    r.check("input hash matches", report.input_hash == input.hash());
    let v = &report.values;
    let ev = &report.evidence;
    match report.command.as_str() {
        "spanning" => {
            let basis: Vec<Vec<i64>> = field(v, "lattice_basis")?;
            let spanning: bool = field(v, "spanning")?;
            let stated = Lattice::span(n, &basis)?;
            r.check("basis spans the family lattice", stated == f.family_lattice()?);
            r.check("spanning flag matches the basis", spanning == stated.is_whole_space());
        }
        "mixed-volume" => {
            let value: i64 = field(v, "value")?;
            let pol: MixedVolumeDoc = field(ev, "polarization")?;
            replay_mixed_volume(&mut r, &f, &pol, value)?;
            match ev.get("interior_lattice_points") {
                Some(x) if !x.is_null() => {
                    let ilp: MixedVolumeDoc = field(ev, "interior_lattice_points")?;
                    replay_mixed_volume(&mut r, &f, &ilp, value)?;
                }
                _ => r.skip("interior lattice point formula was not applicable"),
            }
        }
        "interior-points" => {
            let points: Vec<Point> = field(v, "points")?;
            let count: usize = field(v, "count")?;
            r.check("count matches the list", count == points.len());
            if v.get("lambda_basis").is_some() {
                let basis: Vec<Vec<i64>> = field(v, "lambda_basis")?;
                let lambda = Lattice::span(n, &basis)?;
                r.check("Λ basis spans the family lattice", lambda == f.family_lattice()?);
                let sum = shifted_sum(&f)?;
                let coords = lattice_coordinates(&lambda, sum.points())?;
                let hull = Polytope::hull_of(lambda.rank(), &coords)?;
                for p in &points {
                    let inside = match lambda.coordinates(p) {
                        Some(y) => to_small(&y).is_some_and(|y| hull.contains_in_interior(&y)),
                        None => false,
                    };
                    r.check(format!("{p:?} is an interior point in Λ"), inside);
                }
            } else {
                let hull = Polytope::hull_of(n, f.minkowski_sum()?.points())?;
                for p in &points {
                    r.check(format!("{p:?} is interior"), hull.contains_in_interior(p));
                }
            }
            r.skip("completeness of the listed points");
        }
        "codegree" => {
            let entries: Vec<CodegreeEntry> = field(v, "codegrees")?;
            r.check("one entry per configuration", entries.len() == f.len());
            for e in &entries {
                let hull = convex_hull(member(&f, e.configuration)?)?;
                let scaled = hull.dilate(i64::try_from(e.codegree).unwrap_or(i64::MAX))?;
                r.check(
                    format!("witness interior to {}·conv(A_{})", e.codegree, e.configuration),
                    scaled.contains_in_interior(&e.witness),
                );
                let smaller_empty = (1..e.codegree)
                    .all(|c| hull.interior_points_of_dilate(c as i64).is_ok_and(|p| p.is_empty()));
                r.check(format!("smaller dilates of conv(A_{}) have no interior point", e.configuration), smaller_empty);
            }
        }
        "width" => {
            let entries: Vec<WidthEntry> = field(v, "widths")?;
            r.check("one entry per configuration", entries.len() == f.len());
            for e in &entries {
                let a = member(&f, e.configuration)?;
                r.check(
                    format!("direction is primitive for A_{}", e.configuration),
                    gcd_is_one(&e.width.direction),
                );
                r.check(
                    format!("direction attains width {} on A_{}", e.width.width, e.configuration),
                    spread(a.points(), &e.width.direction) == Some(i128::from(e.width.width)),
                );
            }
            r.skip("minimality of the width (a search)");
        }
        "cayley-sum" => {
            let cs = f.cayley_sum()?;
            let points: Vec<Point> = field(v, "points")?;
            let tags: Vec<usize> = field(v, "tags")?;
            r.check("points match", points == cs.config.points());
            r.check("tags match", tags == cs.tags);
        }
        "cayley-detect" => {
            let a = single(&f)?;
            if field::<bool>(v, "found")? {
                let k: usize = field(v, "k")?;
                let s: StructureDoc = field(v, "structure")?;
                replay_structure(&mut r, a, &s, k)?;
                let summands: Vec<Vec<Point>> = field(v, "summands")?;
                let rebuilt = s.to_structure(a)?.recovered_summands()?;
                r.check(
                    "summands are recovered from the structure",
                    summands.len() == rebuilt.len() && summands.iter().zip(&rebuilt).all(|(x, y)| x == y.points()),
                );
            } else {
                r.skip("absence of a decomposition (a search)");
            }
        }
        "join-type" => {
            let dims: Vec<isize> = field(v, "dimensions")?;
            let sum_dim: isize = field(v, "sum_dimension")?;
            let join: bool = field(v, "join_type")?;
            let actual: Vec<isize> = f.members().iter().map(PointConfiguration::dimension).collect();
            r.check("dimensions match", dims == actual);
            r.check("sum dimension matches", sum_dim == f.minkowski_sum()?.dimension());
            r.check("join type flag matches", join == (dims.iter().sum::<isize>() == sum_dim));
        }
        "fi-verify" | "fi-search" => {
            let a = single(&f)?;
            let cert: Option<CertificateDoc> = field(ev, "certificate")?;
            match cert {
                Some(c) => {
                    let d = verify_fi_certificate(a, &c.to_certificate()?)?;
                    let claimed = if report.command == "fi-verify" {
                        field::<bool>(v, "holds")?
                    } else {
                        true
                    };
                    r.check("certificate verdict replays", d.holds() == claimed);
                }
                None => r.skip("absence of a certificate within the search bounds"),
            }
        }
        "defective" => {
            let evidence: EvidenceDoc = serde_json::from_value(ev.clone())
                .map_err(|e| CliError::Input(format!("report evidence: {e}")))?;
            let (Some(verdict), Some(rule)) = (&report.verdict, &report.rule) else {
                return Err(CliError::Input("defective report without verdict or rule".into()));
            };
            let simplex: bool = field(v, "simplex_family")?;
            let rebuilt = defect_report(verdict, rule, simplex, &evidence, &report.criteria_attempted)?;
            r.check(format!("{rule} evidence replays"), rebuilt.recheck(&f)?);
            if let Some(mv) = &evidence.mixed_volume {
                replay_mixed_volume(&mut r, &f, mv, mv.value)?;
            }
            if let Some(mv) = &evidence.mixed_volume_check {
                replay_mixed_volume(&mut r, &f, mv, mv.value)?;
            }
            if simplex {
                r.check(
                    "members are translates of one unimodular simplex",
                    latdefect::defect::is_unimodular_simplex_family(&f)?,
                );
            }
            if verdict == "Unknown" {
                r.skip("an Unknown verdict asserts nothing beyond the criteria listed");
            }
        }
        "oracle-ehrhart" => {
            let entries: Vec<EhrhartEntry> = field(v, "volumes")?;
            r.check("one entry per configuration", entries.len() == f.len());
            for e in &entries {
                let hull = convex_hull(member(&f, e.configuration)?)?;
                r.check(
                    format!("normalized volume of A_{}", e.configuration),
                    hull.normalized_volume()? == e.normalized_volume.into(),
                );
                r.check(
                    format!("forward difference of the counts of A_{}", e.configuration),
                    forward_difference(&e.counts) == Some(i128::from(e.ehrhart_volume)),
                );
            }
        }
        "oracle-witness" => {
            let w: Option<WitnessDoc> = field(ev, "witness")?;
            let settings: WitnessSettings = field(v, "settings")?;
            match w {
                Some(w) => {
                    let w = RootWitness::from(&w);
                    r.check("witness re-verifies", verify_witness(&f, &w, settings.tol, settings.rank_tol)?);
                }
                None => r.skip("absence of a witness (probabilistic)"),
            }
        }
        other => return Err(CliError::Input(format!("unknown command {other:?} in report"))),
    }
    Ok(RecheckDocument {
        command: report.command.clone(),
        version: VERSION.to_string(),
        input_hash: input.hash(),
        ok: r.checks.iter().all(|c| c.passed),
        checks: r.checks,
        not_replayable: r.not_replayable,
    })
}

fn member(f: &Family, i: usize) -> Result<&PointConfiguration, CliError> {
    f.members()
        .get(i)
        .ok_or_else(|| CliError::Input(format!("report refers to configuration {i}, which does not exist")))
}

fn single(f: &Family) -> Result<&PointConfiguration, CliError> {
    match f.members() {
        [a] => Ok(a),
        _ => Err(CliError::Input("report expects a single configuration".into())),
    }
}

fn to_small(v: &[num_bigint::BigInt]) -> Option<Point> {
    v.iter().map(|x| crate::codec::small(x).ok()).collect()
}

fn shifted_sum(f: &Family) -> Result<PointConfiguration, CliError> {
    let shifted = f
        .members()
        .iter()
        .map(|a| {
            let neg: Point = a.points()[0].iter().map(|x| -x).collect();
            a.translate(&neg)
        })
        .collect::<latdefect::Result<Vec<_>>>()?;
    Ok(Family::new(shifted)?.minkowski_sum()?)
}

fn lattice_coordinates(lambda: &Lattice, points: &[Point]) -> Result<Vec<Point>, CliError> {
    points
        .iter()
        .map(|p| {
            lambda
                .coordinates(p)
                .and_then(|y| to_small(&y))
                .ok_or_else(|| CliError::Input(format!("{p:?} does not lie in Λ")))
        })
        .collect()
}

/// `Σ (−1)^{n−t} C(n, t) L(t)` over the given counts `L(0), …, L(n)`.
fn forward_difference(counts: &[i64]) -> Option<i128> {
    let n = counts.len().checked_sub(1)?;
    let mut binom: i128 = 1;
    let mut total: i128 = 0;
    for (t, &c) in counts.iter().enumerate() {
        let term = binom * i128::from(c);
        total += if (n - t) % 2 == 0 { term } else { -term };
        binom = binom * (n - t) as i128 / (t + 1) as i128;
    }
    Some(total)
}

fn replay_mixed_volume(r: &mut Replay, f: &Family, doc: &MixedVolumeDoc, value: i64) -> Result<(), CliError> {
    let mv = doc.to_result()?;
    let n = f.ambient_dim();
    r.check(format!("{} terms re-sum to the value", doc.method), mv.resum() == Some(value.into()));
    r.check(format!("{} value matches", doc.method), doc.value == value);
    r.check(format!("{} has one term per subset", doc.method), mv.terms.len() + 1 == 1usize << n);
    let mut measured = true;
    for t in &mv.terms {
        let hull = Polytope::hull_of(n, f.partial_sum(&t.subset)?.points())?;
        let m = match mv.method {
            Method::Polarization => hull.normalized_volume()?,
            Method::InteriorLatticePoints => hull.interior_lattice_points()?.len().into(),
        };
        let sign = if (n - t.subset.len()).is_multiple_of(2) { 1 } else { -1 };
        measured &= m == t.magnitude && t.sign == sign;
    }
    r.check(format!("{} term magnitudes re-measure", doc.method), measured);
    Ok(())
}

fn replay_structure(r: &mut Replay, a: &PointConfiguration, s: &StructureDoc, k: usize) -> Result<(), CliError> {
    let structure = s.to_structure(a)?;
    r.check("structure has k + 1 parts", structure.parts.len() == k + 1);
    r.check("structure is valid", structure.is_valid());
    r.check(
        "projection maps the configuration onto the standard simplex",
        project_config(a, &structure.projection)? == PointConfiguration::standard_simplex(k),
    );
    let parts_ok = structure.parts.iter().enumerate().all(|(i, part)| {
        part.points()
            .iter()
            .all(|p| structure.projection.apply(p).is_ok_and(|img| img == unit(k, i)))
    });
    r.check("each part maps to its vertex", parts_ok);
    r.check(
        "partition passes the lattice test",
        verify_cayley_partition(a, &structure.parts)?.is_some(),
    );
    Ok(())
}
