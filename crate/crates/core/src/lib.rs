//! Meshfree Taylor-series collocation.
//!
//! A function sampled at scattered points is related to its derivatives at
//! a query point through a square Taylor system `F = M D`. Solving that
//! system gives derivative estimates and local interpolants; reading it
//! backwards gives differentiation matrices on arbitrary nodes, which drive
//! the boundary-value and eigenvalue solvers.
//!
//! - [`basis`]: multi-indices, graded ordering, monomial rows
//! - [`stencil`]: assembly and solution of Taylor systems
//! - [`analysis`]: derivative tables, field queries, extrema, mixed constraints
//! - [`bvp`]: differentiation matrices and linear two-point BVPs
//! - [`eigen`]: 1D Schrödinger-type eigenproblems
//! - [`cli`]: file formats and the command-line front end

// `!(a < b)` is used on purpose so that NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod basis;
pub mod bvp;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod stencil;

pub use analysis::{
    estimate_at_samples, evaluate_with_constraints, find_extrema, query_field, relative_error, DerivativeRequest,
    ExtremumKind, ExtremumReport,
};
pub use basis::{basis_row, graded_multi_indices, BasisOrdering, MultiIndex};
pub use bvp::{differentiation_matrix, solve_linear_bvp, DifferentiationMatrix, LinearBvp, NodeSet};
pub use eigen::{
    assemble_hamiltonian, det_residual, solve_spectrum, solve_spectrum_validated, EigenProblem, PoschlTeller, Spectrum,
    TrigPotential,
};
pub use error::{Error, Result};
pub use stencil::{
    assemble, condition_estimate, derivative_entry_cramer, interpolate, solve_derivatives, Constraint,
    DerivativeVector, Point, Sample, TaylorSystem,
};
