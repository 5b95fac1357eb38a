//! Exact convex hulls of configurations and the lattice measurements taken on
//! them: lattice points, interior lattice points, normalized volume, codegree
//! and lattice width.

pub(crate) mod hull;
mod width;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

pub use hull::Facet;
pub use width::LatticeWidth;

use crate::error::{Error, Result};
use crate::intlat::{IntMatrix, LatticeProjection};
use crate::pointconfig::{checked_sub, AffineChart, Point, PointConfiguration};

/// Vertex description of a lattice polytope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPolytope {
    pub ambient_dim: usize,
    /// Extreme points, sorted lexicographically.
    pub vertices: Vec<Point>,
}

/// Inequality description: `⟨a, x⟩ ≤ b` for every facet, plus `⟨c, x⟩ = e`
/// for every affine-hull equation. Facets are relative to the affine hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolytope {
    pub facets: Vec<Facet>,
    pub affine_hull: Vec<(Vec<i64>, i64)>,
}

/// `conv(A)` with both descriptions and a lattice chart of its affine hull.
#[derive(Clone, Debug)]
pub struct Polytope {
    v: VPolytope,
    h: HPolytope,
    dim: usize,
    chart: AffineChart,
    /// Vertices and facets expressed in chart coordinates (ℤᵈ).
    chart_vertices: Vec<Point>,
    chart_facets: Vec<Facet>,
}

/// `conv(a)` as a [`Polytope`].
pub fn convex_hull(a: &PointConfiguration) -> Result<Polytope> {
    Polytope::hull_of(a.ambient_dim(), a.points())
}

impl Polytope {
    pub fn hull_of(ambient_dim: usize, points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::precondition("convex hull of an empty configuration"));
        }
        let chart = AffineChart::for_points(ambient_dim, points)?;
        let d = chart.dim();
        let local: Vec<Point> = points
            .iter()
            .map(|p| chart.to_chart(p))
            .collect::<Result<_>>()?;

        let (chart_facets, vertex_idx) = if d == 0 {
            (Vec::new(), vec![0])
        } else {
            let facets = hull::facets_full_dimensional(&local, d)?;
            let idx = (0..local.len())
                .filter(|&i| is_vertex(&facets, &local[i], d))
                .collect();
            (facets, idx)
        };

        let forward = chart.forward();
        let origin: Vec<BigInt> = chart.origin().iter().map(|&c| BigInt::from(c)).collect();
        let facets = chart_facets
            .iter()
            .map(|f| {
                let a: Vec<BigInt> = f.normal.iter().map(|&c| BigInt::from(c)).collect();
                let normal = forward.transpose().mul_vec(&a);
                let shift: BigInt = normal.iter().zip(&origin).map(|(x, y)| x * y).sum();
                let offset = BigInt::from(f.offset) + shift;
                Ok(Facet {
                    normal: crate::pointconfig::to_i64(normal)?,
                    offset: crate::pointconfig::to_i64(vec![offset])?[0],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let eqs = chart.equations();
        let affine_hull = (0..eqs.rows())
            .map(|i| {
                let c = eqs.row(i).to_vec();
                let rhs: BigInt = c.iter().zip(&origin).map(|(x, y)| x * y).sum();
                let mut v = crate::pointconfig::to_i64(c)?;
                let rhs = crate::pointconfig::to_i64(vec![rhs])?[0];
                // normalize sign for a stable representation
                if v.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                    v.iter_mut().for_each(|x| *x = -*x);
                    return Ok((v, -rhs));
                }
                Ok((v, rhs))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut vertices: Vec<Point> = vertex_idx.iter().map(|&i| points[i].clone()).collect();
        vertices.sort_unstable();
        let chart_vertices = vertices
            .iter()
            .map(|p| chart.to_chart(p))
            .collect::<Result<_>>()?;

        Ok(Polytope {
            v: VPolytope {
                ambient_dim,
                vertices,
            },
            h: HPolytope {
                facets,
                affine_hull,
            },
            dim: d,
            chart,
            chart_vertices,
            chart_facets,
        })
    }

    pub fn v(&self) -> &VPolytope {
        &self.v
    }

    pub fn h(&self) -> &HPolytope {
        &self.h
    }

    pub fn vertices(&self) -> &[Point] {
        &self.v.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.h.facets
    }

    pub fn ambient_dim(&self) -> usize {
        self.v.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim()
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    /// Closed membership test.
    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.ambient_dim()
            && self.h.affine_hull.iter().all(|(c, e)| {
                c.iter()
                    .zip(x)
                    .map(|(a, b)| i128::from(*a) * i128::from(*b))
                    .sum::<i128>()
                    == i128::from(*e)
            })
            && self.h.facets.iter().all(|f| f.slack(x) >= 0)
    }

    /// Membership in the topological interior in ℝⁿ (empty unless full-dimensional).
    pub fn contains_in_interior(&self, x: &[i64]) -> bool {
        self.is_full_dimensional()
            && x.len() == self.ambient_dim()
            && self.h.facets.iter().all(|f| f.slack(x) > 0)
    }

    /// Facet inequalities tight at `x`.
    pub fn tight_facets(&self, x: &[i64]) -> Vec<usize> {
        (0..self.h.facets.len())
            .filter(|&i| self.h.facets[i].slack(x) == 0)
            .collect()
    }

    /// `c · P`, computed on vertices.
    pub fn dilate(&self, c: i64) -> Result<Polytope> {
        if c < 1 {
            return Err(Error::precondition("dilation factor must be positive"));
        }
        let scaled: Vec<Point> = self
            .v
            .vertices
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| x.checked_mul(c).ok_or(Error::Overflow))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Polytope::hull_of(self.ambient_dim(), &scaled)
    }

    /// All lattice points of `P` (i.e. of `P ∩ aff(P) ∩ ℤⁿ`), sorted.
    pub fn lattice_points(&self) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        let facets = &self.chart_facets;
        scan_box(&self.chart_vertices, 1, |y| {
            if facets.iter().all(|f| f.slack(y) >= 0) {
                out.push(self.chart.from_chart(y)?);
            }
            Ok(())
        })?;
        out.sort_unstable();
        Ok(out)
    }

    /// `int(P) ∩ ℤⁿ`; empty when `P` is not full-dimensional.
    pub fn interior_lattice_points(&self) -> Result<Vec<Point>> {
        self.interior_points_of_dilate(1)
    }

    /// `int(c · P) ∩ ℤⁿ`, from the facets of `P` scaled by `c`.
    pub fn interior_points_of_dilate(&self, c: i64) -> Result<Vec<Point>> {
        if !self.is_full_dimensional() {
            return Ok(Vec::new());
        }
        let scaled: Vec<Facet> = self
            .h
            .facets
            .iter()
            .map(|f| {
                Ok(Facet {
                    normal: f.normal.clone(),
                    offset: f.offset.checked_mul(c).ok_or(Error::Overflow)?,
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        scan_box(&self.v.vertices, c, |x| {
            if scaled.iter().all(|f| f.slack(x) > 0) {
                out.push(x.to_vec());
            }
            Ok(())
        })?;
        out.sort_unstable();
        Ok(out)
    }

    /// Simplices of a pulling triangulation (full-dimensional polytopes only),
    /// each given by its `n + 1` vertices.
    pub fn triangulation(&self) -> Result<Vec<Vec<Point>>> {
        if !self.is_full_dimensional() {
            return Err(Error::precondition("triangulation needs a full-dimensional polytope"));
        }
        let verts = &self.v.vertices;
        let simplices = pulling_triangulation(self.ambient_dim(), verts)?;
        Ok(simplices
            .into_iter()
            .map(|s| s.into_iter().map(|i| verts[i].clone()).collect())
            .collect())
    }

    /// `n! · vol(P)`; zero for lower-dimensional polytopes.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        let n = self.ambient_dim();
        if !self.is_full_dimensional() {
            return Ok(BigInt::from(0));
        }
        if n == 0 {
            return Ok(BigInt::from(1));
        }
        let mut total = BigInt::from(0);
        for simplex in self.triangulation()? {
            let cols: Vec<Point> = simplex[1..]
                .iter()
                .map(|p| checked_sub(p, &simplex[0]))
                .collect::<Result<_>>()?;
            total += IntMatrix::from_columns(n, &cols).determinant().abs();
        }
        Ok(total)
    }

    /// Smallest `c ≥ 1` such that `c · P` has an interior lattice point.
    pub fn codegree(&self) -> Result<u64> {
        if !self.is_full_dimensional() {
            return Err(Error::precondition("codegree needs a full-dimensional polytope"));
        }
        let n = self.ambient_dim() as i64;
        for c in 1..=n + 1 {
            if !self.interior_points_of_dilate(c)?.is_empty() {
                return Ok(c as u64);
            }
        }
        unreachable!("every full-dimensional lattice polytope has codegree at most n + 1")
    }

    pub fn lattice_width(&self) -> Result<LatticeWidth> {
        width::lattice_width(self)
    }
}

fn is_vertex(facets: &[Facet], y: &[i64], d: usize) -> bool {
    let tight: Vec<Vec<BigInt>> = facets
        .iter()
        .filter(|f| f.slack(y) == 0)
        .map(|f| f.normal.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    tight.len() >= d && crate::intlat::rank_of_rows(tight) == d
}

/// Visits every integer point of `c · bbox(points)`.
fn scan_box(
    points: &[Point],
    c: i64,
    mut visit: impl FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    let Some(first) = points.first() else {
        return Ok(());
    };
    let d = first.len();
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        for i in 0..d {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    for i in 0..d {
        lo[i] = lo[i].checked_mul(c).ok_or(Error::Overflow)?;
        hi[i] = hi[i].checked_mul(c).ok_or(Error::Overflow)?;
    }
    let mut cur = lo.clone();
    loop {
        visit(&cur)?;
        let mut i = 0;
        loop {
            if i == d {
                return Ok(());
            }
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}

/// Pulling triangulation of `conv(vertices)`, whose dimension is the dimension
/// of the vertex set. Returns index lists into `vertices`.
fn pulling_triangulation(ambient_dim: usize, vertices: &[Point]) -> Result<Vec<Vec<usize>>> {
    let poly = Polytope::hull_of(ambient_dim, vertices)?;
    let d = poly.dim();
    if vertices.len() == d + 1 {
        return Ok(vec![(0..vertices.len()).collect()]);
    }
    let apex = &vertices[0];
    let mut out = Vec::new();
    for facet in poly.facets() {
        if facet.slack(apex) == 0 {
            continue;
        }
        let on_facet: Vec<usize> = (0..vertices.len())
            .filter(|&i| facet.slack(&vertices[i]) == 0)
            .collect();
        let sub: Vec<Point> = on_facet.iter().map(|&i| vertices[i].clone()).collect();
        for mut simplex in pulling_triangulation(ambient_dim, &sub)? {
            for idx in simplex.iter_mut() {
                *idx = on_facet[*idx];
            }
            simplex.insert(0, 0);
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Image of a configuration under a lattice projection.
pub fn project_config(a: &PointConfiguration, pi: &LatticeProjection) -> Result<PointConfiguration> {
    if pi.source_dim() != a.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient_dim(),
            found: pi.source_dim(),
        });
    }
    let image = a
        .points()
        .iter()
        .map(|p| pi.apply(p))
        .collect::<Result<Vec<_>>>()?;
    PointConfiguration::new(pi.target_dim(), image)
}

/// Free-function forms mirroring the methods on [`Polytope`].
pub fn lattice_points(p: &Polytope) -> Result<Vec<Point>> {
    p.lattice_points()
}

pub fn interior_lattice_points(p: &Polytope) -> Result<Vec<Point>> {
    p.interior_lattice_points()
}

pub fn normalized_volume(p: &Polytope) -> Result<BigInt> {
    p.normalized_volume()
}

pub fn codegree(p: &Polytope) -> Result<u64> {
    p.codegree()
}

pub fn lattice_width(p: &Polytope) -> Result<LatticeWidth> {
    p.lattice_width()
}

pub(crate) fn require_full_dim(p: &Polytope, what: &str) -> Result<()> {
    if p.is_full_dimensional() {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{what} needs a full-dimensional polytope (dim {} in ℤ^{})",
            p.dim(),
            p.ambient_dim()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hull(n: usize, pts: &[&[i64]]) -> Polytope {
        let c = PointConfiguration::new(n, pts.iter().map(|p| p.to_vec()).collect()).unwrap();
        convex_hull(&c).unwrap()
    }

    fn simplex(n: usize, scale: i64) -> Polytope {
        let c = PointConfiguration::standard_simplex(n).scale(scale).unwrap();
        convex_hull(&c).unwrap()
    }

    fn square(side: i64) -> Polytope {
        hull(2, &[&[0, 0], &[side, 0], &[0, side], &[side, side]])
    }

    #[test]
    fn hull_examples() {
        let seg = hull(1, &[&[0], &[1], &[2]]);
        assert_eq!(seg.vertices(), &[vec![0], vec![2]]);
        assert_eq!(seg.facets().len(), 2);

        let mut grid = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                grid.push(vec![x, y]);
            }
        }
        let g = Polytope::hull_of(2, &grid).unwrap();
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.facets().len(), 4);

        let two_simplex = hull(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 1], &[0, 2]]);
        assert_eq!(two_simplex.vertices(), &[vec![0, 0], vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn lower_dimensional_hull() {
        let p = hull(3, &[&[1, 1, 1], &[2, 2, 1], &[3, 3, 1]]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.vertices(), &[vec![1, 1, 1], vec![3, 3, 1]]);
        assert_eq!(p.h().affine_hull.len(), 2);
        assert_eq!(p.lattice_points().unwrap().len(), 3);
        assert!(p.contains(&[2, 2, 1]));
        assert!(!p.contains(&[2, 2, 2]));
        assert!(p.interior_lattice_points().unwrap().is_empty());
        assert_eq!(p.normalized_volume().unwrap(), BigInt::from(0));
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(square(2).lattice_points().unwrap().len(), 9);
        assert_eq!(simplex(2, 2).lattice_points().unwrap().len(), 6);
        // binomial(3 + 3, 3)
        assert_eq!(simplex(3, 3).lattice_points().unwrap().len(), 20);
    }

    #[test]
    fn interior_points() {
        assert_eq!(square(2).interior_lattice_points().unwrap(), vec![vec![1, 1]]);
        assert!(simplex(2, 2).interior_lattice_points().unwrap().is_empty());
        assert_eq!(simplex(2, 3).interior_lattice_points().unwrap(), vec![vec![1, 1]]);
    }

    #[test]
    fn normalized_volumes() {
        for n in 1..=4 {
            assert_eq!(simplex(n, 1).normalized_volume().unwrap(), BigInt::from(1));
        }
        assert_eq!(square(2).normalized_volume().unwrap(), BigInt::from(8));
        assert_eq!(simplex(2, 2).normalized_volume().unwrap(), BigInt::from(4));
        let oct = hull(
            3,
            &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        );
        // 3! · 4/3
        assert_eq!(oct.normalized_volume().unwrap(), BigInt::from(8));
    }

    #[test]
    fn codegrees() {
        assert_eq!(simplex(2, 1).codegree().unwrap(), 3);
        assert_eq!(square(1).codegree().unwrap(), 2);
        assert_eq!(square(2).codegree().unwrap(), 1);
        assert!(hull(2, &[&[0, 0], &[1, 1]]).codegree().unwrap_err().is_precondition());
    }

    #[test]
    fn projections() {
        let sq = PointConfiguration::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])
            .unwrap();
        let id = LatticeProjection::identity(2);
        assert_eq!(project_config(&sq, &id).unwrap(), sq);
        let y = LatticeProjection::linear(IntMatrix::from_rows(2, &[vec![0i64, 1]])).unwrap();
        assert_eq!(
            project_config(&sq, &y).unwrap(),
            PointConfiguration::standard_simplex(1)
        );
    }
}
