use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{checked_sub, to_i64, AffineChart, Point, PointConfiguration};
use crate::error::{Error, Result};
use crate::intlat::IntMatrix;
use crate::polytope::hull::affine_basis;

/// An affine map `x ↦ linear · x + translation`, restricting to a lattice
/// isomorphism between the affine hulls of two configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLatticeMap {
    pub linear: IntMatrix,
    pub translation: Vec<BigInt>,
}

impl AffineLatticeMap {
    pub fn apply(&self, x: &[i64]) -> Result<Point> {
        if x.len() != self.linear.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.linear.cols(),
                found: x.len(),
            });
        }
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        let img = self.linear.mul_vec(&xb);
        to_i64(img.into_iter().zip(&self.translation).map(|(a, b)| a + b).collect())
    }

    pub fn apply_config(&self, a: &PointConfiguration) -> Result<PointConfiguration> {
        let pts = a.points().iter().map(|p| self.apply(p)).collect::<Result<_>>()?;
        PointConfiguration::new(self.linear.rows(), pts)
    }
}

pub(super) fn find_isomorphism(
    a: &PointConfiguration,
    b: &PointConfiguration,
) -> Result<Option<AffineLatticeMap>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::precondition("isomorphism test needs non-empty configurations"));
    }
    if a.len() != b.len() || a.dimension() != b.dimension() {
        return Ok(None);
    }
    let ca = a.chart()?;
    let cb = b.chart()?;
    let d = ca.dim();
    let la: Vec<Point> = a.points().iter().map(|p| ca.to_chart(p)).collect::<Result<_>>()?;
    let lb: Vec<Point> = b.points().iter().map(|p| cb.to_chart(p)).collect::<Result<_>>()?;
    let lb_config = PointConfiguration::new(d, lb.clone())?;

    let diff_a = PointConfiguration::new(d, la.clone())?.difference_lattice()?;
    if diff_a.invariant_factors() != lb_config.difference_lattice()?.invariant_factors() {
        return Ok(None);
    }

    let basis = affine_basis(&la, d);
    let cols: Vec<Point> = basis[1..]
        .iter()
        .map(|&i| checked_sub(&la[i], &la[basis[0]]))
        .collect::<Result<_>>()?;
    let a_inv = IntMatrix::from_columns(d, &cols)
        .inverse_rational()
        .expect("affine basis is invertible");

    let mut chosen: Vec<usize> = Vec::with_capacity(d + 1);
    let found = search(&la, &lb, &lb_config, &basis, &a_inv, d, &mut chosen)?;
    Ok(found.map(|(u, t)| assemble(&ca, &cb, &u, &t)))
}

type ChartMap = (IntMatrix, Vec<BigInt>);

fn search(
    la: &[Point],
    lb: &[Point],
    target: &PointConfiguration,
    basis: &[usize],
    a_inv: &[Vec<BigRational>],
    d: usize,
    chosen: &mut Vec<usize>,
) -> Result<Option<ChartMap>> {
    if chosen.len() == d + 1 {
        return try_candidate(la, lb, target, basis, a_inv, d, chosen);
    }
    for j in 0..lb.len() {
        if chosen.contains(&j) {
            continue;
        }
        chosen.push(j);
        if let Some(hit) = search(la, lb, target, basis, a_inv, d, chosen)? {
            return Ok(Some(hit));
        }
        chosen.pop();
    }
    Ok(None)
}

fn try_candidate(
    la: &[Point],
    lb: &[Point],
    target: &PointConfiguration,
    basis: &[usize],
    a_inv: &[Vec<BigRational>],
    d: usize,
    chosen: &[usize],
) -> Result<Option<ChartMap>> {
    // U = B_d · A_d⁻¹ with B_d the image differences.
    let b0 = &lb[chosen[0]];
    let bd: Vec<Point> = chosen[1..]
        .iter()
        .map(|&j| checked_sub(&lb[j], b0))
        .collect::<Result<_>>()?;
    let mut u = IntMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let x: BigRational = (0..d)
                .map(|t| BigRational::from_integer(BigInt::from(bd[t][r])) * &a_inv[t][c])
                .fold(BigRational::zero(), |acc, v| acc + v);
            if !x.is_integer() {
                return Ok(None);
            }
            u[(r, c)] = x.to_integer();
        }
    }
    if !u.determinant().abs().is_one() {
        return Ok(None);
    }
    let a0: Vec<BigInt> = la[basis[0]].iter().map(|&c| BigInt::from(c)).collect();
    let ua0 = u.mul_vec(&a0);
    let t: Vec<BigInt> = b0.iter().zip(ua0).map(|(&b, x)| BigInt::from(b) - x).collect();
    let mut image = Vec::with_capacity(la.len());
    for p in la {
        let pb: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
        let img: Vec<BigInt> = u.mul_vec(&pb).into_iter().zip(&t).map(|(x, y)| x + y).collect();
        image.push(to_i64(img)?);
    }
    if PointConfiguration::new(d, image)? == *target {
        Ok(Some((u, t)))
    } else {
        Ok(None)
    }
}

/// Lifts a chart-level map `y ↦ u·y + t` to ambient coordinates.
fn assemble(ca: &AffineChart, cb: &AffineChart, u: &IntMatrix, t: &[BigInt]) -> AffineLatticeMap {
    let linear = &(cb.backward() * u) * ca.forward();
    let oa: Vec<BigInt> = ca.origin().iter().map(|&c| BigInt::from(c)).collect();
    let ob: Vec<BigInt> = cb.origin().iter().map(|&c| BigInt::from(c)).collect();
    let u_fa_oa = u.mul_vec(&ca.forward().mul_vec(&oa));
    let inner: Vec<BigInt> = t.iter().zip(u_fa_oa).map(|(a, b)| a - b).collect();
    let translation = cb
        .backward()
        .mul_vec(&inner)
        .into_iter()
        .zip(ob)
        .map(|(a, b)| a + b)
        .collect();
    AffineLatticeMap {
        linear,
        translation,
    }
}
