//! Numerical kernel for sharp Bohr and Bohr-Rogosinski radii of the harmonic
//! class with coefficient bound `|a_n| + |b_n| <= 2M/(n(n-1))`.
//!
//! The crate evaluates the closed-form majorant series attached to that class,
//! assembles the root-defining functionals (plain and ratio-form), solves them
//! on `(0, 1)` with a certified bracketing solver, and checks sharpness against
//! the extremal map `f_M(z) = z + sum_{n>=2} 2M z^n / (n(n-1))`.
//!
//! Module layout:
//!
//! * [`specfun`] - dilogarithm kernel and its partial-sum oracle
//! * [`series`] - closed forms of every majorant series, with domain newtypes
//! * [`functionals`] - the master functionals, their reduced forms, and the
//!   analytic-class reference equations and constants
//! * [`radius`] - bracketed root solving, uniqueness scans, dispatch
//! * [`extremal`] - coefficient sequences, brute-force functional evaluation,
//!   sharpness certificates, and the disk-area quadrature oracle

pub mod extremal;
pub mod functionals;
pub mod radius;
pub mod series;
pub mod specfun;

mod error;

pub use error::{Error, Result};
pub use extremal::CoefficientSeq;
pub use functionals::{FunctionalId, ParamSet, ReferenceConstants};
pub use radius::RootResult;
pub use series::{ClassParam, FVariant, Radius};
