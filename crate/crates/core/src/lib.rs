//! Finite-volume solver for the 1D/2D compressible Euler equations with a
//! sixth-order recursive WENO reconstruction and classical fifth-order
//! WENO-JS/Z baselines.
//!
//! * [`weno`]: reconstruction kernels.
//! * [`euler`]: gas model, state transforms, numerical fluxes, exact Riemann solver.
//! * [`solver`]: grids, ghost cells, RHS assembly, TVD RK3 time stepping.
//! * [`problems`]: benchmark initial conditions, reference solutions, error norms.
//! * [`cli`]: configuration parsing, run orchestration, file outputs.

pub mod cli;
pub mod euler;
pub mod problems;
pub mod solver;
pub mod weno;
