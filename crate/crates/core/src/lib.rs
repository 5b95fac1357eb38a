#![no_std]

//! Exact tools for deciding, or bounding, defectivity of families of lattice
//! point configurations.
//!
//! The crate is organised bottom-up:
//!
//! - [`intlat`]: Hermite/Smith normal forms, sublattices, lattice projections.
//! - [`pointconfig`]: configurations, families, Minkowski and Cayley sums, faces,
//!   spanning tests and isomorphism.
//! - [`polytope`]: exact convex hulls, lattice points, normalized volume, codegree
//!   and lattice width.
//! - [`mixedvol`]: normalized mixed volume by two independent formulas.
//! - [`cayley`]: Cayley decompositions, join type and Furukawa–Ito certificates.
//! - [`defect`]: the top-level analyzer producing an evidence-bearing verdict.
//! - [`oracle`]: independent validators (Ehrhart volume, numerical multiple-root
//!   search).
//!
//! All geometry is exact: coordinates are `i64`, linear algebra runs on
//! arbitrary-precision integers and rationals. Only the numerical root search in
//! [`oracle`] uses floating point.

extern crate alloc;

pub mod cayley;
pub mod defect;
mod error;
pub mod intlat;
pub mod mixedvol;
pub mod oracle;
pub mod pointconfig;
pub mod polytope;

pub use error::{Error, Result};

pub use pointconfig::{Family, Point, PointConfiguration};
