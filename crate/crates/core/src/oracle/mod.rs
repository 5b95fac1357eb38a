//! Brute-force validators, independent of the main algorithms.

mod witness;

pub use witness::{
    verify_witness, witness_search, witness_search_with, RootWitness, SparseSystem, WitnessOptions, WitnessSearch,
};

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polytope::{Polytope, VPolytope};
use crate::Family;

/// Normalized volume from lattice point counts.
///
/// `L(t) = |tP ∩ ℤⁿ|` is a polynomial of degree ≤ n whose `tⁿ` coefficient is
/// `vol(P)`. Interpolating through `t = 0, …, n`, that coefficient is the
/// n-th forward difference divided by `n!`, so `n!·vol(P) = Σ (−1)^{n−t} C(n,t) L(t)`.
pub fn ehrhart_volume(p: &VPolytope) -> Result<BigInt> {
    let n = p.ambient_dim;
    if p.vertices.is_empty() {
        return Err(Error::precondition("Ehrhart counts of an empty polytope"));
    }
    let hull = Polytope::hull_of(n, &p.vertices)?;
    let counts = ehrhart_counts(&hull, n)?;
    let mut binom = BigInt::from(1);
    let mut total = BigInt::from(0);
    for (t, count) in counts.iter().enumerate() {
        let term = &binom * count;
        if (n - t).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        binom = binom * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    Ok(total)
}

/// `|tP ∩ ℤⁿ|` for `t = 0, …, max_t`.
pub fn ehrhart_counts(p: &Polytope, max_t: usize) -> Result<Vec<BigInt>> {
    let mut counts = alloc::vec![BigInt::from(1)];
    for t in 1..=max_t {
        let t = i64::try_from(t).map_err(|_| Error::Overflow)?;
        counts.push(BigInt::from(p.dilate(t)?.lattice_points()?.len()));
    }
    Ok(counts)
}

/// True if the supports vary in pairwise disjoint sets of coordinates.
///
/// At a common zero `u`, `∂fᵢ/∂x_j(u) = 0` whenever `Aᵢ` has constant `j`-th
/// exponent, so the gradients live in disjoint coordinate blocks. A linear
/// dependence then forces some gradient to vanish, and no `k` of them can be
/// independent: no coefficient choice has a non-degenerate multiple root.
/// `false` means no conclusion.
pub fn separable_impossibility(f: &Family) -> Result<bool> {
    if f.k() == 0 || f.is_empty() {
        return Err(Error::precondition(
            "the separability argument needs k ≥ 1 (the independence clause is vacuous for k = 0)",
        ));
    }
    f.require_non_empty_members()?;
    let n = f.ambient_dim();
    let blocks: Vec<Vec<bool>> = f
        .members()
        .iter()
        .map(|a| {
            let first = &a.points()[0];
            (0..n).map(|j| a.points().iter().any(|p| p[j] != first[j])).collect()
        })
        .collect();
    Ok((0..n).all(|j| blocks.iter().filter(|b| b[j]).count() <= 1))
}
