#![allow(dead_code)]

use latdefect::{Family, Point, PointConfiguration};
use proptest::prelude::*;

pub fn cfg(n: usize, pts: &[&[i64]]) -> PointConfiguration {
    PointConfiguration::new(n, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
}

/// Between `min` and `max` points of `[lo, hi]ⁿ` (duplicates collapse).
pub fn config(n: usize, lo: i64, hi: i64, min: usize, max: usize) -> impl Strategy<Value = PointConfiguration> {
    prop::collection::vec(prop::collection::vec(lo..=hi, n), min..=max)
        .prop_map(move |pts| PointConfiguration::new(n, pts).unwrap())
}

pub fn full_dim_config(n: usize, lo: i64, hi: i64, max: usize) -> impl Strategy<Value = PointConfiguration> {
    config(n, lo, hi, n + 1, max).prop_filter("full-dimensional", |c| c.is_full_dimensional())
}

pub fn family(n: usize, members: usize, lo: i64, hi: i64, max: usize) -> impl Strategy<Value = Family> {
    prop::collection::vec(config(n, lo, hi, 1, max), members).prop_map(|m| Family::new(m).unwrap())
}

pub fn full_dim_family(n: usize, members: usize, lo: i64, hi: i64, max: usize) -> impl Strategy<Value = Family> {
    prop::collection::vec(full_dim_config(n, lo, hi, max), members).prop_map(|m| Family::new(m).unwrap())
}

/// Random `n × n` unimodular matrix as a product of elementary operations.
pub fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..6).prop_map(move |ops| {
        let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, c, neg) in ops {
            if i != j {
                for col in 0..n {
                    m[i][col] += c * m[j][col];
                }
            } else if neg {
                for col in 0..n {
                    m[i][col] = -m[i][col];
                }
            }
        }
        m
    })
}

pub fn apply(m: &[Vec<i64>], p: &[i64]) -> Point {
    m.iter().map(|row| row.iter().zip(p).map(|(a, b)| a * b).sum()).collect()
}

pub fn transform(m: &[Vec<i64>], a: &PointConfiguration) -> PointConfiguration {
    PointConfiguration::new(a.ambient_dim(), a.points().iter().map(|p| apply(m, p)).collect()).unwrap()
}
