//! Normalized mixed volume of `n` configurations in ℤⁿ.
//!
//! Two independent formulas are provided. [`mixed_volume`] polarizes the
//! normalized volume,
//!
//! ```text
//! MV(A₀, …, A_{n−1}) = (1/n!) Σ_{∅≠I} (−1)^{n−|I|} Vol_ℤ(conv Σ_{i∈I} A_i),
//! ```
//!
//! where `Vol_ℤ = n!·vol`. The factor `1/n!` makes `MV(Δₙ, …, Δₙ) = 1`.
//! [`mixed_volume_ilp`] counts interior lattice points instead and is only
//! valid when every member is full-dimensional.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Polarization,
    InteriorLatticePoints,
}

/// One summand of the expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    /// Indices of the members summed.
    pub subset: Vec<usize>,
    /// `(−1)^{n−|I|}`.
    pub sign: i8,
    /// Normalized volume or interior lattice point count of `conv Σ_{i∈I} A_i`.
    pub magnitude: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedVolumeResult {
    pub value: BigInt,
    pub method: Method,
    pub terms: Vec<Term>,
    /// Added to the signed sum before dividing (1 for the lattice point formula).
    pub constant: BigInt,
    /// `n!` for polarization, 1 otherwise.
    pub divisor: BigInt,
}

impl MixedVolumeResult {
    /// Recomputes the value from the audit terms; `None` if the signed sum is
    /// not divisible by the divisor.
    pub fn resum(&self) -> Option<BigInt> {
        let sum = self.terms.iter().fold(self.constant.clone(), |acc, t| {
            if t.sign > 0 {
                acc + &t.magnitude
            } else {
                acc - &t.magnitude
            }
        });
        let (q, r) = sum.div_rem(&self.divisor);
        r.is_zero().then_some(q)
    }
}

fn require_square(f: &Family) -> Result<usize> {
    let n = f.ambient_dim();
    if n == 0 || f.len() != n {
        return Err(Error::precondition(alloc::format!(
            "mixed volume needs exactly n = {n} configurations in ℤ^{n} (k = n−1), got {}",
            f.len()
        )));
    }
    f.require_non_empty_members()?;
    Ok(n)
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

fn expand(f: &Family, n: usize, mut measure: impl FnMut(&Polytope) -> Result<BigInt>) -> Result<Vec<Term>> {
    subsets(n)
        .map(|subset| {
            let sum = f.partial_sum(&subset)?;
            let hull = Polytope::hull_of(n, sum.points())?;
            let sign = if (n - subset.len()).is_multiple_of(2) { 1 } else { -1 };
            Ok(Term {
                magnitude: measure(&hull)?,
                subset,
                sign,
            })
        })
        .collect()
}

/// Mixed volume by polarization of the normalized volume. Members may be
/// lower-dimensional.
pub fn mixed_volume(f: &Family) -> Result<MixedVolumeResult> {
    let n = require_square(f)?;
    let terms = expand(f, n, Polytope::normalized_volume)?;
    let divisor: BigInt = (1..=n).map(BigInt::from).product();
    let mut out = MixedVolumeResult {
        value: BigInt::zero(),
        method: Method::Polarization,
        terms,
        constant: BigInt::zero(),
        divisor,
    };
    out.value = out
        .resum()
        .ok_or_else(|| Error::InvalidInput("polarization sum not divisible by n!".to_string()))?;
    debug_assert!(!out.value.is_negative());
    Ok(out)
}

/// Mixed volume as `1 + Σ_{∅≠I} (−1)^{n−|I|} |int(conv Σ_{i∈I} A_i) ∩ ℤⁿ|`.
pub fn mixed_volume_ilp(f: &Family) -> Result<MixedVolumeResult> {
    let n = require_square(f)?;
    if let Some(i) = f.members().iter().position(|a| !a.is_full_dimensional()) {
        return Err(Error::precondition(alloc::format!(
            "the interior lattice point formula needs full-dimensional members (A_{i} is not)"
        )));
    }
    let terms = expand(f, n, |p| Ok(BigInt::from(p.interior_lattice_points()?.len())))?;
    let mut out = MixedVolumeResult {
        value: BigInt::zero(),
        method: Method::InteriorLatticePoints,
        terms,
        constant: BigInt::from(1),
        divisor: BigInt::from(1),
    };
    out.value = out.resum().expect("divisor is 1");
    Ok(out)
}
