//! Point configurations, families and the constructions built from them.

mod chart;
mod faces;
mod iso;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use chart::AffineChart;
pub(crate) use chart::to_i64;
pub use faces::Face;
pub use iso::AffineLatticeMap;

use crate::error::{Error, Result};
use crate::intlat::Lattice;

/// An integer point.
pub type Point = Vec<i64>;

pub(crate) fn checked_add(a: &[i64], b: &[i64]) -> Result<Point> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

pub(crate) fn checked_sub(a: &[i64], b: &[i64]) -> Result<Point> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y).ok_or(Error::Overflow))
        .collect()
}

/// A finite set of points in ℤⁿ, kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointConfiguration {
    ambient_dim: usize,
    points: Vec<Point>,
}

impl PointConfiguration {
    /// Builds a configuration; duplicate points are merged.
    pub fn new(ambient_dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if let Some(bad) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointConfiguration {
            ambient_dim,
            points,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        PointConfiguration {
            ambient_dim,
            points: Vec::new(),
        }
    }

    /// `{0, e₁, …, e_k} ⊂ ℤᵏ`.
    pub fn standard_simplex(k: usize) -> Self {
        let mut points = vec![vec![0; k]];
        for i in 0..k {
            let mut e = vec![0; k];
            e[i] = 1;
            points.push(e);
        }
        Self::new(k, points).expect("simplex points have length k")
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).ok()
    }

    /// Dimension of the affine hull; `-1` for the empty configuration.
    pub fn dimension(&self) -> isize {
        match self.difference_lattice() {
            Ok(l) => l.rank() as isize,
            Err(_) => -1,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.ambient_dim as isize
    }

    fn require_non_empty(&self, what: &str) -> Result<()> {
        if self.is_empty() {
            Err(Error::precondition(format!("{what} needs a non-empty configuration")))
        } else {
            Ok(())
        }
    }

    /// `⟨A − A⟩`, generated by the differences to the first point.
    pub fn difference_lattice(&self) -> Result<Lattice> {
        self.difference_lattice_from(0)
    }

    /// `⟨A − A⟩`, generated by the differences to the point at `base`.
    pub fn difference_lattice_from(&self, base: usize) -> Result<Lattice> {
        self.require_non_empty("difference lattice")?;
        let p0 = self
            .points
            .get(base)
            .ok_or_else(|| Error::invalid("basepoint index out of range"))?;
        let diffs: Vec<Point> = self
            .points
            .iter()
            .map(|p| checked_sub(p, p0))
            .collect::<Result<_>>()?;
        Lattice::span(self.ambient_dim, &diffs)
    }

    pub fn minkowski_sum(&self, other: &PointConfiguration) -> Result<PointConfiguration> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(checked_add(a, b)?);
            }
        }
        PointConfiguration::new(self.ambient_dim, pts)
    }

    pub fn translate(&self, v: &[i64]) -> Result<PointConfiguration> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let pts = self
            .points
            .iter()
            .map(|p| checked_add(p, v))
            .collect::<Result<_>>()?;
        PointConfiguration::new(self.ambient_dim, pts)
    }

    /// `c · A` (pointwise scaling).
    pub fn scale(&self, c: i64) -> Result<PointConfiguration> {
        let pts = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|x| x.checked_mul(c).ok_or(Error::Overflow))
                    .collect()
            })
            .collect::<Result<_>>()?;
        PointConfiguration::new(self.ambient_dim, pts)
    }

    /// The sub-configuration made of the points at `indices`.
    pub fn subset(&self, indices: &[usize]) -> PointConfiguration {
        PointConfiguration::new(
            self.ambient_dim,
            indices.iter().map(|&i| self.points[i].clone()).collect(),
        )
        .expect("subset of a valid configuration")
    }

    /// `{x ∈ self : x ∉ other}`.
    pub fn difference(&self, other: &PointConfiguration) -> PointConfiguration {
        PointConfiguration {
            ambient_dim: self.ambient_dim,
            points: self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn intersection(&self, other: &PointConfiguration) -> PointConfiguration {
        PointConfiguration {
            ambient_dim: self.ambient_dim,
            points: self
                .points
                .iter()
                .filter(|p| other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &PointConfiguration) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn chart(&self) -> Result<AffineChart> {
        AffineChart::for_points(self.ambient_dim, &self.points)
    }

    /// All non-empty faces, the improper face included.
    pub fn faces(&self) -> Result<Vec<Face>> {
        faces::enumerate(self)
    }

    /// Affine lattice isomorphism `aff(self) ∩ ℤⁿ → aff(other) ∩ ℤᵐ` mapping
    /// `self` onto `other`, if one exists.
    pub fn isomorphism_to(&self, other: &PointConfiguration) -> Result<Option<AffineLatticeMap>> {
        iso::find_isomorphism(self, other)
    }

    pub fn is_isomorphic(&self, other: &PointConfiguration) -> Result<bool> {
        Ok(self.isomorphism_to(other)?.is_some())
    }
}


/// An ordered family `(A₀, …, A_k)` of configurations in a common ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    ambient_dim: usize,
    configs: Vec<PointConfiguration>,
}

impl Family {
    pub fn new(configs: Vec<PointConfiguration>) -> Result<Self> {
        let Some(first) = configs.first() else {
            return Err(Error::invalid("a family needs at least one configuration"));
        };
        let n = first.ambient_dim();
        if let Some(bad) = configs.iter().find(|c| c.ambient_dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.ambient_dim(),
            });
        }
        Ok(Family {
            ambient_dim: n,
            configs,
        })
    }

    /// Convenience constructor from raw point lists.
    pub fn from_points(ambient_dim: usize, configs: Vec<Vec<Point>>) -> Result<Self> {
        let configs = configs
            .into_iter()
            .map(|pts| PointConfiguration::new(ambient_dim, pts))
            .collect::<Result<Vec<_>>>()?;
        if configs.is_empty() {
            return Err(Error::invalid("a family needs at least one configuration"));
        }
        Family::new(configs)
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `k`, one less than the number of members.
    #[inline]
    pub fn k(&self) -> usize {
        self.configs.len() - 1
    }

    #[inline]
    pub fn members(&self) -> &[PointConfiguration] {
        &self.configs
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn require_non_empty_members(&self) -> Result<()> {
        if let Some(i) = self.configs.iter().position(PointConfiguration::is_empty) {
            return Err(Error::invalid(format!("configuration {i} is empty")));
        }
        Ok(())
    }

    pub fn all_full_dimensional(&self) -> bool {
        self.configs.iter().all(PointConfiguration::is_full_dimensional)
    }

    /// `Λ = ⟨A₀ − A₀⟩ + … + ⟨A_k − A_k⟩`.
    pub fn family_lattice(&self) -> Result<Lattice> {
        self.require_non_empty_members()?;
        let mut gens = Vec::new();
        for c in &self.configs {
            gens.extend(c.difference_lattice()?.basis_vectors());
        }
        Lattice::span(self.ambient_dim, &gens)
    }

    pub fn is_spanning(&self) -> Result<bool> {
        Ok(self.family_lattice()?.is_whole_space())
    }

    /// `Σ_{i ∈ indices} A_i`; the empty sum is `{0}`.
    pub fn partial_sum(&self, indices: &[usize]) -> Result<PointConfiguration> {
        let mut acc = PointConfiguration::new(self.ambient_dim, vec![vec![0; self.ambient_dim]])?;
        for &i in indices {
            acc = acc.minkowski_sum(&self.configs[i])?;
        }
        Ok(acc)
    }

    pub fn minkowski_sum(&self) -> Result<PointConfiguration> {
        let all: Vec<usize> = (0..self.configs.len()).collect();
        self.partial_sum(&all)
    }

    /// True iff `Σ dim(A_i) = dim(Σ A_i)`.
    pub fn is_join_type(&self) -> Result<bool> {
        self.require_non_empty_members()?;
        let total: isize = self.configs.iter().map(PointConfiguration::dimension).sum();
        Ok(total == self.minkowski_sum()?.dimension())
    }

    /// The Cayley sum `A₀ * … * A_k ⊂ ℤ^{n+k}`.
    pub fn cayley_sum(&self) -> Result<CayleySumResult> {
        if let Some(i) = self.configs.iter().position(PointConfiguration::is_empty) {
            return Err(Error::precondition(format!(
                "Cayley sum needs non-empty summands (A_{i} is empty)"
            )));
        }
        let (n, k) = (self.ambient_dim, self.k());
        let mut tagged: Vec<(Point, usize)> = Vec::new();
        for (i, c) in self.configs.iter().enumerate() {
            for p in c.points() {
                let mut q = p.clone();
                q.extend((1..=k).map(|j| i64::from(j == i)));
                tagged.push((q, i));
            }
        }
        tagged.sort_unstable();
        let (points, tags): (Vec<Point>, Vec<usize>) = tagged.into_iter().unzip();
        Ok(CayleySumResult {
            config: PointConfiguration {
                ambient_dim: n + k,
                points,
            },
            tags,
        })
    }
}

/// `A₀ * … * A_k` together with the summand index of every point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySumResult {
    pub config: PointConfiguration,
    /// `tags[j]` is the summand containing `config.points()[j]`.
    pub tags: Vec<usize>,
}

impl CayleySumResult {
    /// `Ã_i = A_i × {e_i}` as a sub-configuration of the Cayley sum.
    pub fn part(&self, i: usize) -> PointConfiguration {
        let idx: Vec<usize> = (0..self.tags.len()).filter(|&j| self.tags[j] == i).collect();
        self.config.subset(&idx)
    }

    pub fn parts(&self) -> Vec<PointConfiguration> {
        let k = self.tags.iter().copied().max().unwrap_or(0);
        (0..=k).map(|i| self.part(i)).collect()
    }
}
