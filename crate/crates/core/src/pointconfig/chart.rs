use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Point;
use crate::error::{Error, Result};
use crate::intlat::{smith_normal_form, IntMatrix, Lattice};

/// Affine lattice isomorphism between `aff(A) ∩ ℤⁿ` and `ℤᵈ`, `d = dim(A)`.
///
/// `to_chart(x) = forward · (x − origin)` and `from_chart(y) = origin + backward · y`
/// are mutually inverse on `aff(A) ∩ ℤⁿ`. The chart is the identity whenever
/// `A` is full-dimensional.
#[derive(Clone, Debug)]
pub struct AffineChart {
    origin: Point,
    forward: IntMatrix,
    backward: IntMatrix,
    /// Rows `c` with `c · (x − origin) = 0` cutting out the affine hull.
    equations: IntMatrix,
}

impl AffineChart {
    pub fn for_points(ambient_dim: usize, points: &[Point]) -> Result<Self> {
        let Some(origin) = points.first() else {
            return Err(Error::precondition("affine chart of an empty configuration"));
        };
        let diffs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| super::checked_sub(p, origin))
            .collect::<Result<_>>()?;
        let lattice = Lattice::span(ambient_dim, &diffs)?;
        let d = lattice.rank();
        if d == ambient_dim {
            return Ok(AffineChart {
                origin: origin.clone(),
                forward: IntMatrix::identity(d),
                backward: IntMatrix::identity(d),
                equations: IntMatrix::zeros(0, d),
            });
        }
        let sf = smith_normal_form(lattice.basis());
        let u_inv = sf
            .u
            .inverse_unimodular()
            .expect("Smith transform is unimodular");
        let top: Vec<usize> = (0..d).collect();
        let rest: Vec<usize> = (d..ambient_dim).collect();
        Ok(AffineChart {
            origin: origin.clone(),
            forward: sf.u.select_rows(&top),
            backward: u_inv.select_columns(&top),
            equations: sf.u.select_rows(&rest),
        })
    }

    pub fn dim(&self) -> usize {
        self.forward.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn forward(&self) -> &IntMatrix {
        &self.forward
    }

    pub fn backward(&self) -> &IntMatrix {
        &self.backward
    }

    pub fn equations(&self) -> &IntMatrix {
        &self.equations
    }

    pub fn to_chart(&self, x: &[i64]) -> Result<Point> {
        let shifted: Vec<BigInt> = x
            .iter()
            .zip(&self.origin)
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect();
        to_i64(self.forward.mul_vec(&shifted))
    }

    pub fn from_chart(&self, y: &[i64]) -> Result<Point> {
        let yb: Vec<BigInt> = y.iter().map(|&c| BigInt::from(c)).collect();
        let img = self.backward.mul_vec(&yb);
        to_i64(
            img.into_iter()
                .zip(&self.origin)
                .map(|(a, &o)| a + BigInt::from(o))
                .collect(),
        )
    }

    /// True iff `x` lies on the affine hull.
    pub fn on_hull(&self, x: &[i64]) -> bool {
        let shifted: Vec<BigInt> = x
            .iter()
            .zip(&self.origin)
            .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
            .collect();
        self.equations
            .mul_vec(&shifted)
            .iter()
            .all(num_traits::Zero::is_zero)
    }
}

pub(crate) fn to_i64(v: Vec<BigInt>) -> Result<Point> {
    v.iter().map(|c| c.to_i64().ok_or(Error::Overflow)).collect()
}
