use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::{Point, PointConfiguration};
use crate::error::{Error, Result};
use crate::polytope::Polytope;

/// A face of a configuration: the points of `A` maximizing `⟨normal, ·⟩`.
///
/// The improper face `A` itself carries the zero normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub normal: Vec<i64>,
    pub points: PointConfiguration,
    /// `Fᶜ = {x ∈ A : x ∉ F}`.
    pub complement: PointConfiguration,
}

impl Face {
    pub fn improper(parent: &PointConfiguration) -> Face {
        Face {
            normal: vec![0; parent.ambient_dim()],
            points: parent.clone(),
            complement: PointConfiguration::empty(parent.ambient_dim()),
        }
    }

    pub fn is_proper(&self) -> bool {
        !self.complement.is_empty()
    }

    pub fn dimension(&self) -> isize {
        self.points.dimension()
    }

    /// True iff this is a face of `parent` witnessed by its stored normal.
    pub fn is_face_of(&self, parent: &PointConfiguration) -> bool {
        if self.points.is_empty() || self.normal.len() != parent.ambient_dim() {
            return false;
        }
        argmax(parent, &self.normal) == self.points && parent.difference(&self.points) == self.complement
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(x, y)| i128::from(*x) * i128::from(*y)).sum()
}

fn argmax(parent: &PointConfiguration, w: &[i64]) -> PointConfiguration {
    let best = parent.points().iter().map(|p| dot(w, p)).max();
    let pts: Vec<Point> = parent
        .points()
        .iter()
        .filter(|p| Some(dot(w, p)) == best)
        .cloned()
        .collect();
    PointConfiguration::new(parent.ambient_dim(), pts).expect("subset of parent")
}

/// Facets of `conv(A)` intersected with `A`, closed under intersection.
pub(super) fn enumerate(a: &PointConfiguration) -> Result<Vec<Face>> {
    if a.is_empty() {
        return Err(Error::precondition("faces of an empty configuration"));
    }
    let n = a.ambient_dim();
    let hull = Polytope::hull_of(n, a.points())?;
    let facet_sets: Vec<(Vec<usize>, Vec<i64>)> = hull
        .facets()
        .iter()
        .map(|f| {
            let idx = (0..a.len()).filter(|&i| f.slack(&a.points()[i]) == 0).collect();
            (idx, f.normal.clone())
        })
        .collect();

    let mut seen: BTreeMap<Vec<usize>, Vec<i64>> = BTreeMap::new();
    seen.insert((0..a.len()).collect(), vec![0; n]);
    let mut work: Vec<(Vec<usize>, Vec<i64>)> = Vec::new();
    for (idx, normal) in &facet_sets {
        if seen.insert(idx.clone(), normal.clone()).is_none() {
            work.push((idx.clone(), normal.clone()));
        }
    }
    while let Some((idx, normal)) = work.pop() {
        for (fidx, fnormal) in &facet_sets {
            let meet: Vec<usize> = idx.iter().copied().filter(|i| fidx.contains(i)).collect();
            if meet.is_empty() || seen.contains_key(&meet) {
                continue;
            }
            let mut w: Vec<i64> = normal.iter().zip(fnormal).map(|(x, y)| x + y).collect();
            let g = w.iter().fold(0i64, |g, x| g.gcd(x));
            if g > 1 {
                w.iter_mut().for_each(|x| *x /= g);
            }
            seen.insert(meet.clone(), w.clone());
            work.push((meet, w));
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(idx, normal)| {
            let points = a.subset(&idx);
            let complement = a.difference(&points);
            Face {
                normal,
                points,
                complement,
            }
        })
        .collect();
    faces.sort_by(|x, y| y.points.len().cmp(&x.points.len()).then(x.points.cmp(&y.points)));
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, pts: &[&[i64]]) -> PointConfiguration {
        PointConfiguration::new(n, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn segment_faces() {
        let a = cfg(1, &[&[0], &[1], &[2]]);
        let faces = a.faces().unwrap();
        assert_eq!(faces.len(), 3);
        assert_eq!(faces[0].points, a);
        assert!(!faces[0].is_proper());
        assert!(faces.iter().any(|f| f.points == cfg(1, &[&[0]])));
        assert!(faces.iter().any(|f| f.points == cfg(1, &[&[2]])));
        let end = faces.iter().find(|f| f.points == cfg(1, &[&[0]])).unwrap();
        assert_eq!(end.complement, cfg(1, &[&[1], &[2]]));
    }

    #[test]
    fn simplex_and_square_face_counts() {
        let d2 = PointConfiguration::standard_simplex(2);
        let faces = d2.faces().unwrap();
        assert_eq!(faces.len(), 7);
        assert_eq!(faces.iter().filter(|f| f.points.len() == 2).count(), 3);
        let sq = cfg(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let faces = sq.faces().unwrap();
        assert_eq!(faces.len(), 9);
        for f in &faces {
            assert!(f.is_face_of(&sq));
        }
    }

    #[test]
    fn faces_keep_non_vertex_points() {
        let grid: Vec<Point> = (0..3).flat_map(|x| (0..3).map(move |y| vec![x, y])).collect();
        let g = PointConfiguration::new(2, grid).unwrap();
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 9);
        assert!(faces.iter().any(|f| f.points == cfg(2, &[&[0, 0], &[0, 1], &[0, 2]])));
    }

    #[test]
    fn lower_dimensional_faces() {
        let a = cfg(3, &[&[0, 0, 5], &[1, 0, 5], &[0, 1, 5]]);
        let faces = a.faces().unwrap();
        assert_eq!(faces.len(), 7);
        assert!(faces.iter().all(|f| f.is_face_of(&a)));
        assert_eq!(cfg(2, &[&[1, 1]]).faces().unwrap().len(), 1);
    }
}
