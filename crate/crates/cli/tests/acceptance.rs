//! Acceptance criteria, one line each. Every tolerance used is pinned here.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use latdefect::cayley::{cayley_decompositions, detect_cayley_decomposition};
use latdefect::defect::{analyze, check_interior_condition, InteriorMode, Verdict};
use latdefect::intlat::{IntMatrix, LatticeProjection};
use latdefect::mixedvol::{mixed_volume, mixed_volume_ilp};
use latdefect::oracle::{ehrhart_volume, separable_impossibility, witness_search_with, SparseSystem, WitnessOptions};
use latdefect::polytope::{convex_hull, project_config};
use latdefect::{Family, Point, PointConfiguration};
use latdefect_cli::{parse_input, run, Command, InputDocument};
use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Witness search: coefficient draws and Newton starts per draw.
const WITNESS_DRAWS: u64 = 100;
const WITNESS_SAMPLES: usize = 1000;
const WITNESS_BUDGET: Duration = Duration::from_secs(60);
/// Residual and rank tolerances of the root search (the library defaults).
const WITNESS_TOL: f64 = 1e-9;
const WITNESS_RANK_TOL: f64 = 1e-6;

const MV_FAMILIES: usize = 200;
const RANDOM_HULLS: usize = 100;
const ROUND_TRIP_FAMILIES: usize = 100;
const PROJECTION_PAIRS: usize = 100;
const LEMMA_INSTANCES: usize = 100;
const SPANNING_FAMILIES: usize = 100;
const BASEPOINT_FAMILIES: usize = 200;

type Outcome = Result<String, String>;

struct Gen(ChaCha8Rng);

impl Gen {
    fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as i64
    }

    fn below(&mut self, n: usize) -> usize {
        (self.0.next_u64() % n as u64) as usize
    }

    fn config(&mut self, n: usize, lo: i64, hi: i64, size: usize) -> PointConfiguration {
        let pts = (0..size).map(|_| (0..n).map(|_| self.range(lo, hi)).collect()).collect();
        PointConfiguration::new(n, pts).unwrap()
    }

    fn full_dim_config(&mut self, n: usize, lo: i64, hi: i64, max: usize) -> PointConfiguration {
        loop {
            let size = n + 1 + self.below(max - n);
            let c = self.config(n, lo, hi, size);
            if c.is_full_dimensional() {
                return c;
            }
        }
    }

    /// Product of random elementary row operations.
    fn unimodular(&mut self, n: usize) -> Vec<Vec<i64>> {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..6 {
            let (i, j, c) = (self.below(n), self.below(n), self.range(-2, 2));
            if i != j {
                for col in 0..n {
                    m[i][col] += c * m[j][col];
                }
            }
        }
        m
    }
}

fn simplex_vertices(n: usize, scale: i64) -> Vec<Point> {
    PointConfiguration::standard_simplex(n).scale(scale).unwrap().points().to_vec()
}

fn input(n: usize, configs: Vec<Vec<Point>>) -> InputDocument {
    InputDocument::from_family(&Family::from_points(n, configs).unwrap())
}

fn defective() -> Command {
    Command::Defective {
        lambda: false,
        entry_bound: 1,
        c_max: 1,
        fi_search: true,
    }
}

fn criterion_1() -> Outcome {
    for n in 2..=4 {
        let report = run(&defective(), &input(n, vec![simplex_vertices(n, 1); n])).map_err(|e| e.to_string())?;
        let ok = report.verdict.as_deref() == Some("Defective")
            && report.rule.as_deref() == Some("MixedVolumeOne")
            && report.values["mixed_volume"] == 1
            && report.values["simplex_family"] == true;
        if !ok {
            return Err(format!("(Δ_{n}, …) gave {:?}/{:?}: {}", report.verdict, report.rule, report.values));
        }
    }
    for n in 2..=3 {
        let mut configs = vec![simplex_vertices(n, 1); n];
        configs[n - 1] = simplex_vertices(n, 2);
        let report = run(&defective(), &input(n, configs)).map_err(|e| e.to_string())?;
        if report.verdict.as_deref() != Some("NotDefective") || report.values["mixed_volume"] != 2 {
            return Err(format!("2Δ_{n} variant gave {:?}: {}", report.verdict, report.values));
        }
    }
    Ok("Δₙ families Defective with MV 1 (n = 2, 3, 4); 2Δₙ variants NotDefective with MV 2 (n = 2, 3)".into())
}

fn criterion_2() -> Outcome {
    let started = Instant::now();
    // The matrices, points as columns: A₀ = [0 1 2; 0 0 0], A₁ = [0 0 0; 0 1 2].
    let a0 = [[0, 1, 2], [0, 0, 0]];
    let a1 = [[0, 0, 0], [0, 1, 2]];
    let as_points = |m: [[i64; 3]; 2]| -> Vec<Vec<i64>> { (0..3).map(|j| vec![m[0][j], m[1][j]]).collect() };
    let text = serde_json::json!({
        "ambient_dim": 2,
        "configurations": [{ "points": as_points(a0) }, { "points": as_points(a1) }],
    })
    .to_string();
    let doc = parse_input(text.as_bytes()).map_err(|e| e.to_string())?;
    let report = run(&Command::InteriorPoints { lambda: false }, &doc).map_err(|e| e.to_string())?;
    if report.values["points"] != serde_json::json!([[1, 1]]) {
        return Err(format!("interior points {}", report.values["points"]));
    }
    let f = doc.family().map_err(|e| e.to_string())?;
    let verdict = analyze(&f).map_err(|e| e.to_string())?;
    if verdict.verdict == Verdict::NotDefective {
        return Err(format!("analyzer emitted NotDefective via {:?}", verdict.rule));
    }
    if !separable_impossibility(&f).map_err(|e| e.to_string())? {
        return Err("separable_impossibility returned false".into());
    }
    let mut degenerate = 0;
    for draw in 0..WITNESS_DRAWS {
        let system = SparseSystem::random(f.clone(), 1000 + draw);
        for free in [false, true] {
            let opts = WitnessOptions {
                free_coefficient: free,
                tol: WITNESS_TOL,
                rank_tol: WITNESS_RANK_TOL,
                ..WitnessOptions::new(WITNESS_SAMPLES, 5000 + draw)
            };
            let search = witness_search_with(&system, &opts).map_err(|e| e.to_string())?;
            if search.witness.is_some() {
                return Err(format!("witness found for draw {draw} (free coefficient: {free})"));
            }
            degenerate += search.degenerate_hits;
        }
    }
    let elapsed = started.elapsed();
    if elapsed > WITNESS_BUDGET {
        return Err(format!("took {elapsed:.1?}, budget {WITNESS_BUDGET:?}"));
    }
    Ok(format!(
        "interior witness (1,1); verdict {:?}; separable; no witness in {WITNESS_DRAWS} draws × {WITNESS_SAMPLES} samples, fixed and free modes ({degenerate} degenerate multiple roots rejected) in {elapsed:.1?}",
        verdict.verdict
    ))
}

fn criterion_3() -> Outcome {
    let a = PointConfiguration::standard_simplex(2).scale(2).unwrap();
    let lattice_points = convex_hull(&a).unwrap().lattice_points().unwrap();
    let doc = input(2, vec![lattice_points.clone()]);
    if lattice_points.len() != 6 {
        return Err(format!("2Δ₂ ∩ ℤ² has {} points", lattice_points.len()));
    }
    let interior = run(&Command::InteriorPoints { lambda: false }, &doc).map_err(|e| e.to_string())?;
    let width = run(&Command::Width, &doc).map_err(|e| e.to_string())?;
    let verdict = run(&defective(), &doc).map_err(|e| e.to_string())?;
    if interior.values["count"] != 0 {
        return Err(format!("interior points {}", interior.values["points"]));
    }
    if width.values["widths"][0]["width"] != 2 {
        return Err(format!("width {}", width.values["widths"][0]["width"]));
    }
    if verdict.verdict.as_deref() != Some("NotDefective") || verdict.rule.as_deref() != Some("LatticeWidthRule") {
        return Err(format!("verdict {:?} via {:?}", verdict.verdict, verdict.rule));
    }
    Ok("2Δ₂: no interior lattice point, width 2, NotDefective via LatticeWidthRule".into())
}

fn criterion_4() -> Outcome {
    let mut g = Gen::new(4);
    let mut disagreements = Vec::new();
    for i in 0..MV_FAMILIES {
        let n = 2 + i % 2;
        let members = (0..n).map(|_| g.full_dim_config(n, 0, 3, n + 3)).collect();
        let f = Family::new(members).unwrap();
        let (a, b) = (mixed_volume(&f).unwrap().value, mixed_volume_ilp(&f).unwrap().value);
        if a != b {
            disagreements.push(format!("{f:?}: {a} vs {b}"));
        }
    }
    if let Some(d) = disagreements.first() {
        return Err(format!("{} disagreements, e.g. {d}", disagreements.len()));
    }
    for n in 1..=4 {
        let f = Family::from_points(n, vec![simplex_vertices(n, 1); n]).unwrap();
        if mixed_volume(&f).unwrap().value != BigInt::from(1) {
            return Err(format!("MV(Δ_{n}, …) ≠ 1"));
        }
    }
    let segments =
        Family::from_points(2, vec![vec![vec![0, 0], vec![1, 0], vec![2, 0]], vec![vec![0, 0], vec![0, 1], vec![0, 2]]])
            .unwrap();
    let value = mixed_volume(&segments).unwrap().value;
    if value != BigInt::from(4) {
        return Err(format!("segment family gave {value}"));
    }
    Ok(format!("{MV_FAMILIES} families agree exactly; MV(Δ, …, Δ) = 1; segment family = 4"))
}

fn volume_corpus() -> Vec<PointConfiguration> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(PointConfiguration::standard_simplex(n));
        out.push(PointConfiguration::standard_simplex(n).scale(2).unwrap());
    }
    out.push(PointConfiguration::standard_simplex(2).scale(3).unwrap());
    let square = |n: usize, s: i64| {
        let pts = (0..1u32 << n)
            .map(|mask| (0..n).map(|i| if mask & (1 << i) != 0 { s } else { 0 }).collect())
            .collect();
        PointConfiguration::new(n, pts).unwrap()
    };
    for n in 1..=3 {
        out.push(square(n, 1));
        out.push(square(n, 2));
    }
    out.push(PointConfiguration::new(2, vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2]]).unwrap());
    out.push(PointConfiguration::new(2, vec![vec![0, 0], vec![1, 0], vec![2, 0]]).unwrap());
    out.push(PointConfiguration::new(2, vec![vec![0, 0], vec![3, 3]]).unwrap());
    out.push(PointConfiguration::new(2, vec![vec![0, 0], vec![2, 1], vec![1, 2]]).unwrap());
    out.push(PointConfiguration::new(3, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 3]]).unwrap());
    out
}

fn criterion_5() -> Outcome {
    let mut g = Gen::new(5);
    let mut configs = volume_corpus();
    let corpus = configs.len();
    for i in 0..RANDOM_HULLS {
        let n = 1 + i % 3;
        let size = 1 + g.below(n + 4);
        configs.push(g.config(n, -2, 2, size));
    }
    for a in &configs {
        let p = convex_hull(a).unwrap();
        let (v, e) = (p.normalized_volume().unwrap(), ehrhart_volume(p.v()).unwrap());
        if v != e {
            return Err(format!("{a:?}: normalized volume {v}, Ehrhart volume {e}"));
        }
    }
    Ok(format!("exact equality on {corpus} corpus polytopes and {RANDOM_HULLS} random hulls"))
}

/// Pairs originals with recovered summands up to isomorphism.
fn matched(originals: &[PointConfiguration], recovered: &[PointConfiguration]) -> bool {
    let mut used = vec![false; recovered.len()];
    originals.iter().all(|a| {
        let hit = (0..recovered.len()).find(|&j| !used[j] && recovered[j].is_isomorphic(a).unwrap());
        hit.map(|j| used[j] = true).is_some()
    })
}

fn criterion_6() -> Outcome {
    let mut g = Gen::new(6);
    let mut other_first = 0;
    for i in 0..ROUND_TRIP_FAMILIES {
        let n = 1 + i % 3;
        let k = 1 + (i / 3) % 2;
        let members: Vec<PointConfiguration> = (0..=k)
            .map(|_| {
                let size = 1 + g.below(4);
                g.config(n, -2, 2, size)
            })
            .collect();
        let f = Family::new(members.clone()).unwrap();
        let cs = f.cayley_sum().unwrap();
        let dim_sum = f.minkowski_sum().unwrap().dimension();
        if cs.config.dimension() != dim_sum + k as isize {
            return Err(format!("{f:?}: dim of Cayley sum {} ≠ {dim_sum} + {k}", cs.config.dimension()));
        }
        let Some(first) = detect_cayley_decomposition(&cs.config, k).unwrap() else {
            return Err(format!("{f:?}: no decomposition found"));
        };
        if !first.is_valid() {
            return Err(format!("{f:?}: detected structure is invalid"));
        }
        // Decompositions need not be unique; the defining one must be among them.
        let mut wanted = cs.parts();
        wanted.sort();
        let (all, _) = cayley_decompositions(&cs.config, k).unwrap();
        let defining = all.iter().find(|s| {
            let mut parts = s.parts.clone();
            parts.sort();
            parts == wanted
        });
        let Some(defining) = defining else {
            return Err(format!("{f:?}: defining partition not detected"));
        };
        if !matched(&members, &defining.recovered_summands().unwrap()) {
            return Err(format!("{f:?}: recovered summands not isomorphic to the originals"));
        }
        if !matched(&members, &first.recovered_summands().unwrap()) {
            other_first += 1;
        }
    }
    Ok(format!(
        "{ROUND_TRIP_FAMILIES} families: detection succeeds, the defining partition is found and recovers the summands up to isomorphism, dimension identity holds ({other_first} sums also admit a different decomposition found first)"
    ))
}

fn criterion_7() -> Outcome {
    for n in 1..=4 {
        let c = convex_hull(&PointConfiguration::standard_simplex(n)).unwrap().codegree().unwrap();
        if c != n as u64 + 1 {
            return Err(format!("codeg(Δ_{n}) = {c}"));
        }
    }
    let mut g = Gen::new(7);
    let mut pairs = 0;
    while pairs < PROJECTION_PAIRS {
        let n = 2 + g.below(2);
        let a = g.full_dim_config(n, 0, 3, n + 4);
        let m = 1 + g.below(n - 1);
        let u = g.unimodular(n);
        let pi = LatticeProjection::linear(IntMatrix::from_rows(n, &u[..m])).unwrap();
        let image = project_config(&a, &pi).unwrap();
        if !image.is_full_dimensional() {
            continue;
        }
        pairs += 1;
        let (p, q) = (convex_hull(&a).unwrap().codegree().unwrap(), convex_hull(&image).unwrap().codegree().unwrap());
        if q > p {
            return Err(format!("{a:?} under {u:?}: codeg {q} > {p}"));
        }
    }
    Ok(format!("codeg(Δₙ) = n + 1 for n ≤ 4; monotone on {PROJECTION_PAIRS} projections"))
}

fn criterion_8() -> Outcome {
    let mut g = Gen::new(8);
    let mut instances = 0;
    let mut constrained = 0;
    while instances < LEMMA_INSTANCES {
        let n = 1 + g.below(3);
        let k = g.below(4 - n);
        let members = (0..=k).map(|_| g.full_dim_config(n, 0, 2, n + 2)).collect();
        let f = Family::new(members).unwrap();
        let c = f.cayley_sum().unwrap().config;
        let (n, k) = (n as isize, k as isize);
        for r in 0..=c.ambient_dim().min(c.len() - 1) {
            for s in cayley_decompositions(&c, r).unwrap().0 {
                instances += 1;
                let dims: Vec<isize> = s.recovered_summands().unwrap().iter().map(|b| b.dimension()).collect();
                if let Some(d) = dims.iter().find(|&&d| d < k.min(n)) {
                    return Err(format!("{f:?}, r = {r}: dim {d} < min(k, n)"));
                }
                if dims.iter().all(|&d| d < n) {
                    constrained += 1;
                    let r = r as isize;
                    if dims.iter().sum::<isize>() < n - r + (r + 1) * k {
                        return Err(format!("{f:?}, r = {r}: Σ dim = {} too small", dims.iter().sum::<isize>()));
                    }
                }
            }
        }
    }
    Ok(format!("(a) on {instances} instances, (b) on the {constrained} where every dim(Bᵢ) < n"))
}

fn criterion_9() -> Outcome {
    let mut g = Gen::new(9);
    let mut spanning = 0;
    for i in 0..SPANNING_FAMILIES {
        let n = 1 + i % 3;
        let k = g.below(3);
        let members = (0..=k).map(|_| { let size = 1 + g.below(4); g.config(n, -2, 2, size) }).collect();
        let f = Family::new(members).unwrap();
        let lifted = Family::new(vec![f.cayley_sum().unwrap().config]).unwrap();
        let (a, b) = (f.is_spanning().unwrap(), lifted.is_spanning().unwrap());
        if a != b {
            return Err(format!("{f:?}: family {a}, Cayley sum {b}"));
        }
        spanning += usize::from(a);
    }
    Ok(format!("equivalence on {SPANNING_FAMILIES} families ({spanning} spanning)"))
}

fn criterion_10() -> Outcome {
    let mut g = Gen::new(10);
    let mut choices = 0;
    let mut with_witness = 0;
    for i in 0..BASEPOINT_FAMILIES {
        let k = i % 2;
        let members: Vec<PointConfiguration> =
            (0..=k).map(|_| { let size = 1 + g.below(4); g.config(2, 0, 3, size) }).collect();
        let f = Family::new(members).unwrap();
        let sizes: Vec<usize> = f.members().iter().map(|a| a.len()).collect();
        let mut outcomes = Vec::new();
        for a in 0..sizes[0] {
            for b in 0..*sizes.get(1).unwrap_or(&1) {
                let base = if k == 0 { vec![a] } else { vec![a, b] };
                let mode = InteriorMode::Sublattice { basepoints: Some(base) };
                outcomes.push(check_interior_condition(&f, mode).unwrap().is_some());
            }
        }
        choices += outcomes.len();
        if outcomes.iter().any(|&o| o != outcomes[0]) {
            return Err(format!("{f:?}: outcomes {outcomes:?}"));
        }
        with_witness += usize::from(outcomes[0]);
    }
    Ok(format!(
        "{BASEPOINT_FAMILIES} families, {choices} basepoint choices, identical outcomes ({with_witness} with a witness)"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("mixed volume one decides simplex families", criterion_1),
        ("segment counterexample end to end", criterion_2),
        ("2Δ₂ via lattice width", criterion_3),
        ("mixed volume cross-validation", criterion_4),
        ("volume oracle equivalence", criterion_5),
        ("Cayley round trip", criterion_6),
        ("codegree", criterion_7),
        ("Cayley isomorphism dimension inequalities", criterion_8),
        ("spanning / Cayley equivalence", criterion_9),
        ("sublattice interior test basepoint independence", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let t = started.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
