//! Verification toolkit for the geometric momentum of a particle confined to
//! a two-dimensional surface.
//!
//! The crate derives the differential geometry of a parametrized surface
//! symbolically, constructs the geometric momentum `p = -i hbar (r^mu d_mu +
//! M n)` and the surface Hamiltonian as differential operators, runs the
//! second-class constraint algorithm on the sphere fixture, and certifies
//! every commutator, Dirac bracket, and eigenfunction claim numerically. A
//! small CLI (`geomom`) drives the suites and emits text or JSON reports.

pub mod expr;
pub mod geometry;
pub mod operators;
pub mod phase;
pub mod claims;
pub mod report;
pub mod spectral;
pub mod suites;

pub use expr::{Domain, Expr, NumericContext};
