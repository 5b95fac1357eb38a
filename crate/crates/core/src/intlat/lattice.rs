use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{hermite_normal_form, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A sublattice of ℤⁿ, stored by its canonical column HNF basis.
///
/// Two `Lattice` values are equal exactly when they describe the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    /// The ℤ-span of `generators`. An empty generator list yields the zero lattice.
    pub fn span<T: Into<BigInt> + Clone>(ambient_dim: usize, generators: &[Vec<T>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        Ok(Self::from_generator_matrix(&IntMatrix::from_columns(ambient_dim, generators)))
    }

    /// The ℤ-span of the columns of `m`.
    pub fn from_generator_matrix(m: &IntMatrix) -> Self {
        let hf = hermite_normal_form(m);
        let cols: Vec<usize> = (0..hf.rank()).collect();
        Lattice {
            ambient_dim: m.rows(),
            basis: hf.h.select_columns(&cols),
        }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as columns, in canonical HNF.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_whole_space(&self) -> bool {
        self.rank() == self.ambient_dim && self.basis == IntMatrix::identity(self.ambient_dim)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let mut gens = self.basis_vectors();
        gens.extend(other.basis_vectors());
        Lattice::span(self.ambient_dim, &gens)
    }

    /// Membership test by forward substitution against the echelon basis.
    pub fn contains<T: Into<BigInt> + Clone>(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The unique `y` with `basis · y = v`, if `v` lies in the lattice.
    pub fn coordinates<T: Into<BigInt> + Clone>(&self, v: &[T]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let mut rest: Vec<BigInt> = v.iter().cloned().map(Into::into).collect();
        let mut coords = Vec::with_capacity(self.rank());
        let mut row = 0;
        for j in 0..self.rank() {
            while self.basis[(row, j)].is_zero() {
                if !rest[row].is_zero() {
                    return None;
                }
                row += 1;
            }
            let (q, r) = rest[row].div_rem(&self.basis[(row, j)]);
            if !r.is_zero() {
                return None;
            }
            for i in row..self.ambient_dim {
                let delta = &q * &self.basis[(i, j)];
                rest[i] -= delta;
            }
            coords.push(q);
            row += 1;
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Smith invariant factors of the basis matrix.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.basis).invariant_factors()
    }

    /// Index of this lattice inside its saturation.
    pub fn saturation_index(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }

    pub fn is_saturated(&self) -> bool {
        self.invariant_factors().iter().all(One::is_one)
    }

    /// `(L ⊗ ℚ) ∩ ℤⁿ`.
    pub fn saturation(&self) -> Lattice {
        let r = self.rank();
        if r == 0 {
            return self.clone();
        }
        let sf = smith_normal_form(&self.basis);
        // basis = u⁻¹ · s · v⁻¹, so the first r columns of u⁻¹ span the same
        // rational subspace and extend to a basis of ℤⁿ.
        let u_inv = sf
            .u
            .inverse_unimodular()
            .expect("Smith transform is unimodular");
        let cols: Vec<usize> = (0..r).collect();
        Lattice::from_generator_matrix(&u_inv.select_columns(&cols))
    }

    /// A lattice projection ℤⁿ → ℤ^{n−rank} whose kernel is exactly this lattice.
    pub fn quotient_projection(&self) -> Result<LatticeProjection> {
        let sf = smith_normal_form(&self.basis);
        if !sf.invariant_factors().iter().all(One::is_one) {
            return Err(Error::precondition(
                "quotient projection needs a saturated lattice (quotient has torsion)",
            ));
        }
        let rows: Vec<usize> = (self.rank()..self.ambient_dim).collect();
        LatticeProjection::linear(sf.u.select_rows(&rows))
    }
}

/// True iff the columns of `m` extend to a basis of ℤⁿ, i.e. all Smith
/// invariant factors equal 1 and `m` has full column rank.
pub fn is_primitive_system(m: &IntMatrix) -> Result<bool> {
    if m.cols() > m.rows() {
        return Err(Error::invalid(format!(
            "primitive system test needs k ≤ n, got k = {} columns in ℤ^{}",
            m.cols(),
            m.rows()
        )));
    }
    let sf = smith_normal_form(m);
    let f = sf.invariant_factors();
    Ok(f.len() == m.cols() && f.iter().all(One::is_one))
}

/// An integer matrix `x` with `x · m = I`, when one exists.
pub fn left_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let k = m.cols();
    if k > m.rows() || !is_primitive_system(m).ok()? {
        return None;
    }
    // u m v = [I; 0]  ⇒  (v [I | 0] u) m = I.
    let sf = smith_normal_form(m);
    let rows: Vec<usize> = (0..k).collect();
    Some(&sf.v * &sf.u.select_rows(&rows))
}

/// An affine lattice projection `x ↦ matrix · (x − basepoint)` with `matrix`
/// surjective onto ℤᵏ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeProjection {
    matrix: IntMatrix,
    basepoint: Vec<BigInt>,
}

impl LatticeProjection {
    pub fn new(matrix: IntMatrix, basepoint: Vec<BigInt>) -> Result<Self> {
        if basepoint.len() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.cols(),
                found: basepoint.len(),
            });
        }
        if matrix.rows() > matrix.cols() || !is_primitive_system(&matrix.transpose())? {
            return Err(Error::precondition("lattice projection must be surjective"));
        }
        Ok(LatticeProjection { matrix, basepoint })
    }

    pub fn linear(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.cols();
        Self::new(matrix, alloc::vec![BigInt::zero(); n])
    }

    pub fn identity(n: usize) -> Self {
        LatticeProjection {
            matrix: IntMatrix::identity(n),
            basepoint: alloc::vec![BigInt::zero(); n],
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn basepoint(&self) -> &[BigInt] {
        &self.basepoint
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Replaces the basepoint, keeping the linear part.
    pub fn with_basepoint(mut self, basepoint: Vec<BigInt>) -> Result<Self> {
        if basepoint.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: basepoint.len(),
            });
        }
        self.basepoint = basepoint;
        Ok(self)
    }

    /// `after ∘ self`, where `after` is a linear surjection on the target.
    pub fn then(&self, after: &IntMatrix) -> Result<Self> {
        if after.cols() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                found: after.cols(),
            });
        }
        LatticeProjection::new(after * &self.matrix, self.basepoint.clone())
    }

    pub fn apply_big(&self, x: &[BigInt]) -> Vec<BigInt> {
        let shifted: Vec<BigInt> = x.iter().zip(&self.basepoint).map(|(a, b)| a - b).collect();
        self.matrix.mul_vec(&shifted)
    }

    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: x.len(),
            });
        }
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        self.apply_big(&xb)
            .iter()
            .map(|c| c.to_i64().ok_or(Error::Overflow))
            .collect()
    }

    /// Kernel of the linear part (a saturated lattice of rank `source − target`).
    pub fn kernel(&self) -> Lattice {
        let n = self.source_dim();
        let hf = hermite_normal_form(&self.matrix);
        let cols: Vec<usize> = (hf.rank()..n).collect();
        Lattice::from_generator_matrix(&hf.u.select_columns(&cols))
    }

    /// Rows completing the linear part to a unimodular `n × n` matrix.
    ///
    /// With `q` the returned `(n−k) × n` matrix, `x ↦ (matrix·x, q·x)` is an
    /// automorphism of ℤⁿ; `q` restricts to an isomorphism `kernel → ℤ^{n−k}`.
    pub fn complement(&self) -> IntMatrix {
        let (k, n) = (self.target_dim(), self.source_dim());
        // matrix · u = [I | 0], so the first k rows of u⁻¹ reproduce matrix.
        let hf = hermite_normal_form(&self.matrix);
        let u_inv = hf.u.inverse_unimodular().expect("HNF transform is unimodular");
        debug_assert_eq!(u_inv.select_rows(&(0..k).collect::<Vec<_>>()), self.matrix);
        u_inv.select_rows(&(k..n).collect::<Vec<_>>())
    }
}
