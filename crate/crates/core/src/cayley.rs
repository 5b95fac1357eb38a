//! Cayley decompositions, join type and Furukawa–Ito certificates.
//!
//! # Deciding a partition
//!
//! Let `A ⊂ ℤⁿ` be split into parts `P₀, …, P_k` with basepoints `bᵢ ∈ Pᵢ`.
//! A lattice projection `π` with `π(Pᵢ) = {eᵢ}` (and `π(b₀) = 0`) kills every
//! difference inside a part, so its kernel contains `D = Σᵢ ⟨Pᵢ − Pᵢ⟩` and,
//! being saturated, also `L = sat(D)`. Hence `π` factors through the quotient
//! map `q : ℤⁿ → ℤⁿ/L ≅ ℤ^{n−r}` as `π = u ∘ q` with `u` surjective and
//! `u · q(bᵢ − b₀) = eᵢ`. Writing `W` for the matrix with columns
//! `q(bᵢ − b₀)`, this says `u W = I_k`, which has an integral solution iff the
//! columns of `W` form a primitive system. Conversely any left inverse `u` of
//! a primitive `W` can be completed to a unimodular matrix, so `u` is
//! surjective and `u ∘ q` is a witnessing projection. The test is therefore
//! exact: a partition is a Cayley decomposition iff `W` is primitive.
//!
//! # Search
//!
//! [`detect_cayley_decomposition`] enumerates set partitions as restricted
//! growth strings, so parts come out ordered by their smallest point. Two
//! rational rank conditions prune the search: `rank D ≤ n − k`, and the
//! vectors `bᵢ − b₀` must stay independent modulo `D` (a point may not lie
//! in the affine hull of the other parts).

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::intlat::{is_primitive_system, left_inverse, IntMatrix, Lattice, LatticeProjection};
use crate::pointconfig::{checked_sub, to_i64, Face};
use crate::polytope::project_config;
use crate::{Family, Point, PointConfiguration};

/// A Cayley decomposition `parent = F₀ ∪ … ∪ F_k` with a projection sending
/// `Fᵢ` onto `eᵢ` (and `F₀` onto 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyStructure {
    pub parent: PointConfiguration,
    pub parts: Vec<PointConfiguration>,
    pub projection: LatticeProjection,
}

impl CayleyStructure {
    /// Builds the structure for a partition, if it is a Cayley decomposition.
    pub fn from_partition(
        parent: &PointConfiguration,
        parts: Vec<PointConfiguration>,
    ) -> Result<Option<CayleyStructure>> {
        Ok(verify_cayley_partition(parent, &parts)?.map(|projection| CayleyStructure {
            parent: parent.clone(),
            parts,
            projection,
        }))
    }

    /// The trivial decomposition with a single part.
    pub fn improper(parent: &PointConfiguration) -> Result<CayleyStructure> {
        Self::from_partition(parent, vec![parent.clone()])?
            .ok_or_else(|| Error::precondition("improper structure needs a non-empty configuration"))
    }

    pub fn k(&self) -> usize {
        self.parts.len() - 1
    }

    /// True iff the fields satisfy the structure invariants.
    pub fn is_valid(&self) -> bool {
        let n = self.parent.ambient_dim();
        if self.parts.is_empty()
            || check_partition(&self.parent, &self.parts).is_err()
            || self.projection.source_dim() != n
            || self.projection.target_dim() != self.k()
        {
            return false;
        }
        self.parts.iter().enumerate().all(|(i, part)| {
            part.points()
                .iter()
                .all(|p| self.projection.apply(p).is_ok_and(|img| img == unit(self.k(), i)))
        })
    }

    /// The summands `Bᵢ ⊂ ℤ^{n−k}` with `parent ≅ B₀ * … * B_k`.
    ///
    /// `Bᵢ = Q(Fᵢ − b)` where `b` is the projection basepoint and `Q`
    /// completes the projection to a unimodular transformation.
    pub fn recovered_summands(&self) -> Result<Vec<PointConfiguration>> {
        let q = self.projection.complement();
        let base = self.projection.basepoint();
        let m = q.rows();
        self.parts
            .iter()
            .map(|part| {
                let pts = part
                    .points()
                    .iter()
                    .map(|p| {
                        let shifted: Vec<BigInt> =
                            p.iter().zip(base).map(|(&a, b)| BigInt::from(a) - b).collect();
                        to_i64(q.mul_vec(&shifted))
                    })
                    .collect::<Result<_>>()?;
                PointConfiguration::new(m, pts)
            })
            .collect()
    }

    pub fn summand_family(&self) -> Result<Family> {
        Family::new(self.recovered_summands()?)
    }
}

/// `eᵢ ∈ ℤᵏ` for `i ≥ 1`, and 0 for `i = 0`.
fn unit(k: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; k];
    if i > 0 {
        e[i - 1] = 1;
    }
    e
}

fn check_partition(a: &PointConfiguration, parts: &[PointConfiguration]) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::invalid("a partition needs at least one part"));
    }
    let mut total = 0;
    for (i, p) in parts.iter().enumerate() {
        if p.ambient_dim() != a.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: a.ambient_dim(),
                found: p.ambient_dim(),
            });
        }
        if p.is_empty() {
            return Err(Error::invalid(alloc::format!("part {i} is empty")));
        }
        if !p.is_subset_of(a) {
            return Err(Error::invalid(alloc::format!("part {i} is not contained in the configuration")));
        }
        total += p.len();
    }
    let covered: BTreeSet<&Point> = parts.iter().flat_map(|p| p.points()).collect();
    if covered.len() != a.len() || total != a.len() {
        return Err(Error::invalid("parts must be disjoint and cover the configuration"));
    }
    Ok(())
}

/// A projection `π` with `π(partᵢ) = {eᵢ}` if the parts form a Cayley
/// decomposition of `a`, else `None`.
pub fn verify_cayley_partition(
    a: &PointConfiguration,
    parts: &[PointConfiguration],
) -> Result<Option<LatticeProjection>> {
    check_partition(a, parts)?;
    let n = a.ambient_dim();
    let k = parts.len() - 1;
    let bases: Vec<&Point> = parts.iter().map(|p| &p.points()[0]).collect();

    let mut gens = Vec::new();
    for (part, b) in parts.iter().zip(&bases) {
        for p in &part.points()[1..] {
            gens.push(checked_sub(p, b)?);
        }
    }
    let l = Lattice::span(n, &gens)?.saturation();
    if k > n - l.rank() {
        return Ok(None);
    }
    let q = l.quotient_projection()?;
    let cols: Vec<Vec<BigInt>> = bases[1..]
        .iter()
        .map(|b| {
            let d: Vec<BigInt> = checked_sub(b, bases[0])?.into_iter().map(BigInt::from).collect();
            Ok(q.matrix().mul_vec(&d))
        })
        .collect::<Result<_>>()?;
    let w = IntMatrix::from_columns(q.target_dim(), &cols);
    if !is_primitive_system(&w)? {
        return Ok(None);
    }
    let u = left_inverse(&w).expect("primitive systems have integral left inverses");
    let base: Vec<BigInt> = bases[0].iter().map(|&c| BigInt::from(c)).collect();
    let pi = LatticeProjection::new(&u * q.matrix(), base)?;
    debug_assert!(parts.iter().enumerate().all(|(i, part)| part
        .points()
        .iter()
        .all(|p| pi.apply(p).unwrap() == unit(k, i))));
    Ok(Some(pi))
}

/// Echelon basis of a rational span, for incremental rank tracking.
#[derive(Clone, Default)]
struct Span {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Span {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[i64]) {
        let mut v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let (a, b) = (row[*p].clone(), v[*p].clone());
            for (x, r) in v.iter_mut().zip(row) {
                *x = &a * &*x - &b * r;
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            v.iter_mut().for_each(|x| *x /= &g);
            self.rows.push((p, v));
        }
    }
}

/// Counters describing how much of the partition space was visited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial assignments explored.
    pub nodes: u64,
    /// Complete partitions passed to [`verify_cayley_partition`].
    pub partitions_tried: u64,
}

struct Search<'a, F> {
    a: &'a PointConfiguration,
    k: usize,
    stats: SearchStats,
    assign: Vec<usize>,
    first: Vec<usize>,
    visit: F,
}

impl<F: FnMut(CayleyStructure) -> bool> Search<'_, F> {
    /// Returns `true` once the visitor asks to stop.
    fn run(&mut self, j: usize, d: &Span, all: &Span) -> Result<bool> {
        self.stats.nodes += 1;
        let pts = self.a.points();
        let (n, k) = (self.a.ambient_dim(), self.k);
        let used = self.first.len();
        if j == pts.len() {
            if used != k + 1 {
                return Ok(false);
            }
            self.stats.partitions_tried += 1;
            let parts: Vec<PointConfiguration> = (0..=k)
                .map(|b| {
                    let idx: Vec<usize> = (0..pts.len()).filter(|&i| self.assign[i] == b).collect();
                    self.a.subset(&idx)
                })
                .collect();
            return Ok(match CayleyStructure::from_partition(self.a, parts)? {
                Some(s) => (self.visit)(s),
                None => false,
            });
        }
        let remaining = pts.len() - j - 1;
        let top = if used <= k { used } else { k };
        for b in 0..=top {
            let opens = b == used;
            let used_after = used + usize::from(opens);
            if k + 1 - used_after > remaining {
                continue;
            }
            let (mut d2, mut all2) = (d.clone(), all.clone());
            if j > 0 {
                if opens {
                    all2.insert(&checked_sub(&pts[j], &pts[0])?);
                } else {
                    let v = checked_sub(&pts[j], &pts[self.first[b]])?;
                    d2.insert(&v);
                    all2.insert(&v);
                }
            }
            if d2.rank() > n - k.min(n) || all2.rank() != d2.rank() + used_after - 1 {
                continue;
            }
            self.assign.push(b);
            if opens {
                self.first.push(j);
            }
            let stop = self.run(j + 1, &d2, &all2)?;
            self.assign.pop();
            if opens {
                self.first.pop();
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search<F: FnMut(CayleyStructure) -> bool>(a: &PointConfiguration, k: usize, visit: F) -> Result<SearchStats> {
    if a.len() < k + 1 || k > a.ambient_dim() {
        return Ok(SearchStats::default());
    }
    let mut s = Search {
        a,
        k,
        stats: SearchStats::default(),
        assign: Vec::new(),
        first: Vec::new(),
        visit,
    };
    s.run(0, &Span::default(), &Span::default())?;
    Ok(s.stats)
}

fn require_detectable(a: &PointConfiguration, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::precondition("Cayley detection needs k ≥ 1"));
    }
    if a.len() < k + 1 {
        return Err(Error::precondition(alloc::format!(
            "a configuration with {} points has no decomposition into {} parts",
            a.len(),
            k + 1
        )));
    }
    Ok(())
}

/// The first Cayley decomposition of `a` into `k + 1` parts in canonical order.
pub fn detect_cayley_decomposition(a: &PointConfiguration, k: usize) -> Result<Option<CayleyStructure>> {
    require_detectable(a, k)?;
    let mut found = None;
    search(a, k, |s| {
        found = Some(s);
        true
    })?;
    Ok(found)
}

/// Every Cayley decomposition of `a` into `k + 1` parts, with search counters.
pub fn cayley_decompositions(a: &PointConfiguration, k: usize) -> Result<(Vec<CayleyStructure>, SearchStats)> {
    if a.is_empty() {
        return Err(Error::precondition("Cayley decompositions of an empty configuration"));
    }
    if k == 0 {
        return Ok((vec![CayleyStructure::improper(a)?], SearchStats::default()));
    }
    let mut all = Vec::new();
    let stats = search(a, k, |s| {
        all.push(s);
        false
    })?;
    Ok((all, stats))
}

/// True iff `Σ dim(Aᵢ) = dim(Σ Aᵢ)`.
pub fn is_join_type(f: &Family) -> Result<bool> {
    f.is_join_type()
}

/// A Cayley structure restricted to a face; parts may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedStructure {
    pub face: PointConfiguration,
    pub parts: Vec<PointConfiguration>,
    /// Indices `i` with `Fᵢ ∩ F = ∅`.
    pub empty_parts: Vec<usize>,
    pub projection: LatticeProjection,
}

/// `F ≅ (F₀ ∩ F) * … * (F_k ∩ F)`.
pub fn face_restrict(s: &CayleyStructure, face: &Face) -> Result<RestrictedStructure> {
    if !face.is_face_of(&s.parent) {
        return Err(Error::invalid("the given face is not a face of the structure's configuration"));
    }
    let parts: Vec<PointConfiguration> = s.parts.iter().map(|p| p.intersection(&face.points)).collect();
    let empty_parts = (0..parts.len()).filter(|&i| parts[i].is_empty()).collect();
    Ok(RestrictedStructure {
        face: face.points.clone(),
        parts,
        empty_parts,
        projection: s.projection.clone(),
    })
}

/// Witness for defectivity of a spanning configuration: a projection
/// `π : ℤⁿ → ℤ^{n−c}` with `π(A) ≅ B₀ * … * B_r` of join type, `c < r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FICertificate {
    pub c: usize,
    pub r: usize,
    pub projection: LatticeProjection,
    pub structure: CayleyStructure,
}

/// Outcome of each condition checked by [`verify_fi_certificate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FIDiagnostics {
    pub c_less_than_r: bool,
    /// The projection goes ℤⁿ → ℤ^{n−c}.
    pub projection_codimension: bool,
    /// The structure is a valid decomposition of `π(A)` into `r + 1` parts.
    pub structure_verifies: bool,
    pub parts_non_empty: bool,
    pub join_type: bool,
}

impl FIDiagnostics {
    pub fn holds(&self) -> bool {
        self.c_less_than_r
            && self.projection_codimension
            && self.structure_verifies
            && self.parts_non_empty
            && self.join_type
    }
}

fn require_spanning(a: &PointConfiguration) -> Result<()> {
    if a.is_empty() || !a.difference_lattice()?.is_whole_space() {
        return Err(Error::precondition(
            "the Furukawa–Ito criterion requires a spanning configuration",
        ));
    }
    Ok(())
}

pub fn verify_fi_certificate(a: &PointConfiguration, cert: &FICertificate) -> Result<FIDiagnostics> {
    require_spanning(a)?;
    let n = a.ambient_dim();
    let s = &cert.structure;
    let mut diag = FIDiagnostics {
        c_less_than_r: cert.c < cert.r,
        projection_codimension: cert.c <= n
            && cert.projection.source_dim() == n
            && cert.projection.target_dim() == n - cert.c,
        structure_verifies: false,
        parts_non_empty: !s.parts.is_empty() && s.parts.iter().all(|p| !p.is_empty()),
        join_type: false,
    };
    if diag.projection_codimension {
        let image = project_config(a, &cert.projection)?;
        diag.structure_verifies = s.parent == image && s.parts.len() == cert.r + 1 && s.is_valid();
    }
    if diag.structure_verifies && diag.parts_non_empty {
        diag.join_type = s.summand_family()?.is_join_type()?;
    }
    Ok(diag)
}

/// Result of [`bounded_fi_search`] with the size of the space searched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FISearchReport {
    pub certificate: Option<FICertificate>,
    pub entry_bound: u32,
    pub c_max: usize,
    /// Distinct projections (kernels) examined.
    pub projections_tried: u64,
    /// Candidate partitions verified across all projections.
    pub partitions_tried: u64,
}

/// Primitive vectors in `[−b, b]ⁿ` whose first nonzero entry is positive.
fn bounded_directions(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-b; n];
    loop {
        let lead = v.iter().find(|&&x| x != 0);
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        if lead.is_some_and(|&x| x > 0) && g == 1 {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if v[i] < b {
                v[i] += 1;
                break;
            }
            v[i] = -b;
            i += 1;
        }
    }
}

/// Saturated rank-`c` sublattices spanned by `c` bounded directions.
fn bounded_kernels(n: usize, b: i64, c: usize) -> Vec<Lattice> {
    if c == 0 {
        return vec![Lattice::zero(n)];
    }
    let dirs = bounded_directions(n, b);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..c).collect();
    if dirs.len() < c {
        return out;
    }
    loop {
        let gens: Vec<Vec<i64>> = idx.iter().map(|&i| dirs[i].clone()).collect();
        let l = Lattice::span(n, &gens).expect("directions have length n");
        if l.rank() == c {
            let sat = l.saturation();
            if seen.insert(sat.basis().columns()) {
                out.push(sat);
            }
        }
        // Next c-subset in lexicographic order.
        let mut i = c;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < dirs.len() - c + i {
                idx[i] += 1;
                for j in i + 1..c {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Searches for a Furukawa–Ito certificate with `c ≤ c_max`, kernels spanned
/// by `c` integer vectors with entries in `[−entry_bound, entry_bound]`, and
/// every `r` from `min(n − c, |π(A)| − 1)` down to `c + 1`.
///
/// `None` only means nothing was found within these bounds.
pub fn bounded_fi_search(a: &PointConfiguration, entry_bound: u32, c_max: usize) -> Result<FISearchReport> {
    require_spanning(a)?;
    let n = a.ambient_dim();
    let mut report = FISearchReport {
        certificate: None,
        entry_bound,
        c_max,
        projections_tried: 0,
        partitions_tried: 0,
    };
    for c in 0..=c_max.min(n) {
        for kernel in bounded_kernels(n, i64::from(entry_bound), c) {
            report.projections_tried += 1;
            let projection = kernel.quotient_projection()?;
            let image = project_config(a, &projection)?;
            let r_max = (n - c).min(image.len().saturating_sub(1));
            for r in (c + 1..=r_max).rev() {
                let mut hit = None;
                let stats = search(&image, r, |s| {
                    let join = s
                        .summand_family()
                        .and_then(|f| f.is_join_type())
                        .unwrap_or(false);
                    if join {
                        hit = Some(s);
                    }
                    join
                })?;
                report.partitions_tried += stats.partitions_tried;
                if let Some(structure) = hit {
                    report.certificate = Some(FICertificate {
                        c,
                        r,
                        projection,
                        structure,
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
