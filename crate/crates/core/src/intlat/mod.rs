//! Exact integer linear algebra: normal forms, sublattices and lattice projections.
//!
//! Nothing here uses floating point. Every [`Lattice`] is stored in canonical
//! column Hermite normal form, so lattice equality is structural equality.

mod lattice;
mod matrix;
mod normal_form;

pub use lattice::{is_primitive_system, left_inverse, Lattice, LatticeProjection};
pub use matrix::{rank_of_rows, IntMatrix};
pub use normal_form::{hermite_normal_form, smith_normal_form, HermiteForm, SmithForm};
