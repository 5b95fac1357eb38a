//! Facet enumeration by the double description method.
//!
//! For points `y₁, …, y_m` affinely spanning ℝᵈ, the valid inequalities
//! `⟨a, y⟩ ≤ b` form the pointed cone `{(a, b) : b − ⟨a, y_i⟩ ≥ 0}` whose extreme
//! rays are exactly the facets. Rays are kept as primitive big-integer vectors
//! and adjacency is decided combinatorially, so the procedure is exact.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::intlat::{rank_of_rows, IntMatrix};
use crate::pointconfig::Point;

/// A facet inequality `⟨normal, x⟩ ≤ offset` with primitive `normal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `offset − ⟨normal, x⟩`: positive inside, zero on the facet.
    pub fn slack(&self, x: &[i64]) -> i128 {
        i128::from(self.offset)
            - self
                .normal
                .iter()
                .zip(x)
                .map(|(&a, &b)| i128::from(a) * i128::from(b))
                .sum::<i128>()
    }
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: Bits,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

fn dot(row: &[BigInt], ray: &[BigInt]) -> BigInt {
    row.iter().zip(ray).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
}

/// Indices of `d + 1` affinely independent points, greedily from the front.
pub(crate) fn affine_basis(points: &[Point], d: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == d + 1 {
            break;
        }
        let diff: Vec<BigInt> = p
            .iter()
            .zip(&points[0])
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect();
        rows.push(diff);
        if rank_of_rows(rows.clone()) == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Facets of `conv(points)`, assuming the points affinely span ℝᵈ (`d ≥ 1`).
pub(crate) fn facets_full_dimensional(points: &[Point], d: usize) -> Result<Vec<Facet>> {
    let m = points.len();
    let constraint = |i: usize| -> Vec<BigInt> {
        let mut row: Vec<BigInt> = points[i].iter().map(|&c| BigInt::from(-c)).collect();
        row.push(BigInt::one());
        row
    };
    let basis = affine_basis(points, d);
    if basis.len() != d + 1 {
        return Err(Error::precondition("points do not span the expected dimension"));
    }

    // Initial cone: the columns of R⁻¹ where R stacks the basis constraints.
    let r_rows: Vec<Vec<BigInt>> = basis.iter().map(|&i| constraint(i)).collect();
    let r = IntMatrix::from_rows(d + 1, &r_rows);
    let inv = r.inverse_rational().expect("affine basis gives an invertible system");
    let mut rays: Vec<Ray> = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let den = (0..=d).fold(BigInt::one(), |l, i| l.lcm(inv[i][j].denom()));
        let coords: Vec<BigInt> = (0..=d)
            .map(|i| (&inv[i][j] * &den).to_integer())
            .collect();
        let mut zeros = Bits::new(m);
        for (t, &i) in basis.iter().enumerate() {
            if t != j {
                zeros.set(i);
            }
        }
        rays.push(Ray {
            coords: primitive(coords),
            zeros,
        });
    }

    let mut in_basis = vec![false; m];
    for &i in &basis {
        in_basis[i] = true;
    }
    for i in (0..m).filter(|&i| !in_basis[i]) {
        let row = constraint(i);
        let values: Vec<BigInt> = rays.iter().map(|r| dot(&row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zeros.set(i);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&t| values[t].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&t| values[t].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if (common.count() as usize) + 1 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|t| t == p || t == q || !common.is_subset_of(&rays[t].zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cq, cp)| &values[p] * cq - &values[q] * cp)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut ray, v) in rays.into_iter().zip(values) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                ray.zeros.set(i);
            }
            kept.push(ray);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let mut facets = rays
        .into_iter()
        .map(|ray| {
            let mut it = ray.coords.into_iter();
            let normal: Vec<i64> = it
                .by_ref()
                .take(d)
                .map(|c| c.to_i64().ok_or(Error::Overflow))
                .collect::<Result<_>>()?;
            let offset = it.next().expect("ray has d+1 coordinates");
            Ok(Facet {
                normal,
                offset: offset.to_i64().ok_or(Error::Overflow)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    facets.sort();
    Ok(facets)
}
