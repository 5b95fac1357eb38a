//! Lattice width with a certified direction search.
//!
//! Fix affinely independent vertices `v₀, …, v_n` and let `M` have columns
//! `v_i − v₀`. For an integer direction `w`, `z = Mᵀw` satisfies
//! `|z_i| ≤ width_w(P)`. Starting from the best coordinate direction (width
//! `W₀`), any strictly better direction therefore has `z ∈ [−(W₀−1), W₀−1]ⁿ`,
//! and `w = M⁻ᵀz` must be integral. Enumerating that box is exhaustive.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::hull::affine_basis;
use super::{require_full_dim, Polytope};
use crate::error::{Error, Result};
use crate::intlat::IntMatrix;
use crate::pointconfig::checked_sub;

/// Result of a lattice width computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeWidth {
    pub width: u64,
    /// A primitive direction attaining the width.
    pub direction: Vec<i64>,
    /// Half-side of the box `[−b, b]ⁿ` of image coordinates that was enumerated.
    pub search_bound: u64,
    /// Number of candidate directions examined.
    pub candidates: u64,
}

fn spread(p: &Polytope, w: &[i64]) -> u64 {
    let values = p.vertices().iter().map(|v| {
        v.iter()
            .zip(w)
            .map(|(a, b)| i128::from(*a) * i128::from(*b))
            .sum::<i128>()
    });
    let (lo, hi) = values.fold((i128::MAX, i128::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    (hi - lo) as u64
}

pub(super) fn lattice_width(p: &Polytope) -> Result<LatticeWidth> {
    require_full_dim(p, "lattice width")?;
    let n = p.ambient_dim();
    if n == 0 {
        return Err(Error::precondition("lattice width is undefined in dimension 0"));
    }

    let mut best_dir = vec![0; n];
    best_dir[0] = 1;
    let mut best = spread(p, &best_dir);
    for j in 1..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let s = spread(p, &e);
        if s < best {
            best = s;
            best_dir = e;
        }
    }

    let verts = p.vertices();
    let basis = affine_basis(verts, n);
    let cols = basis[1..]
        .iter()
        .map(|&i| checked_sub(&verts[i], &verts[basis[0]]))
        .collect::<Result<Vec<_>>>()?;
    let inv_t = IntMatrix::from_columns(n, &cols)
        .transpose()
        .inverse_rational()
        .expect("affine basis is invertible");

    let bound = best.saturating_sub(1);
    let b = i64::try_from(bound).map_err(|_| Error::Overflow)?;
    let mut z = vec![-b; n];
    let mut candidates = 0u64;
    'scan: loop {
        if z.iter().any(|&x| x != 0) {
            candidates += 1;
            if let Some(w) = integral_direction(&inv_t, &z) {
                let s = spread(p, &w);
                if s < best {
                    best = s;
                    best_dir = w;
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'scan;
            }
            if z[i] < b {
                z[i] += 1;
                break;
            }
            z[i] = -b;
            i += 1;
        }
    }

    Ok(LatticeWidth {
        width: best,
        direction: best_dir,
        search_bound: bound,
        candidates,
    })
}

/// `M⁻ᵀ z` when it is a primitive integer vector.
fn integral_direction(inv_t: &[Vec<BigRational>], z: &[i64]) -> Option<Vec<i64>> {
    let mut w = Vec::with_capacity(z.len());
    for row in inv_t {
        let x: BigRational = row
            .iter()
            .zip(z)
            .map(|(a, &b)| a * BigRational::from_integer(BigInt::from(b)))
            .fold(BigRational::zero(), |acc, t| acc + t);
        if !x.is_integer() {
            return None;
        }
        w.push(x.to_integer());
    }
    let g = w.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g != BigInt::from(1) {
        return None;
    }
    w.iter().map(ToPrimitive::to_i64).collect()
}
