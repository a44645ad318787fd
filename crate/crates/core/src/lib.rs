//! Exact series solutions for a rigid flat stamp pressed into a rectangular
//! plate under plane strain.
//!
//! The plate occupies `0 <= x <= l`, `0 <= y <= h`. The face `y = 0` is held
//! with `v = 0`, the stamp prescribes `v(x, h) = v_h(x)` on the face `y = h`,
//! both faces are shear free, and the lateral edges carry `v = sigma_y =
//! sigma_x = 0`. Every field is a sine/cosine series in `x`, and each mode is
//! produced three independent ways:
//!
//! * **A** solves the initial-function boundary problem with the operator
//!   table of [`modal_calculus`];
//! * **B** combines the eight harmonic building blocks (the normative path);
//! * **C** evaluates the closed-form modal solution.
//!
//! [`verification`] supplies the finite-difference oracle and the
//! equilibrium/constitutive residual meters that check all of them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli_io;
pub mod error;
pub mod harmonic_rect;
pub mod modal_calculus;
pub mod params;
pub mod quadrature;
pub mod stamp_problem;
pub mod strip_solution;
pub mod verification;

#[cfg(test)]
mod property_tests;

pub use error::{Error, Result};
pub use modal_calculus::{Block, Component, ModalValue, ModeIndex, OperatorId, Parity, RatioKind};
pub use params::{Geometry, Material};
pub use stamp_problem::{BoundaryProfile, FieldSample};
pub use strip_solution::{ModeFieldCoeffs, SeriesField, SolutionPath};
