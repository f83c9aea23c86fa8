//! Numerical fractional calculus: Riemann-Liouville and Caputo operators,
//! a Grunwald-Letnikov cross-check, and fractional-action variational
//! dynamics with a dissipative Euler-Lagrange term.
//!
//! The crate is organised in four layers:
//!
//! - [`specfun`] — Euler's Gamma and Beta functions (Lanczos approximation,
//!   log-space ratios for overflow-free Γ-quotients).
//! - [`funcspace`] — operand representations: uniform-grid samples
//!   ([`GridFunction`]), an analytic-function registry with exact integer
//!   derivatives ([`AnalyticFunction`]), and validated fractional orders
//!   ([`FractionalOrder`]).
//! - [`fracops`] — the operators themselves: left/right RL fractional
//!   integral `ₐI_x^α`, left/right RL derivative `D_{a+}^α`/`D_{b−}^α`,
//!   left/right Caputo derivative, a Grunwald-Letnikov discretisation, and
//!   executable forms of the operator identities (linearity, semigroup
//!   `I^α I^β = I^{α+β}`, integration by parts, integer-order recovery,
//!   the α→0 limit, and the Caputo↔RL relation).
//! - [`falva`] — the fractional action `(1/Γ(α)) ∫ L (t−τ)^{α−1} dτ`, its
//!   Euler-Lagrange residual with the `(α−1)/(t−τ)` friction-like term,
//!   trajectory simulation, and the Rayleigh-dissipation equivalence.
//!
//! Singular kernels `(x−t)^{α−1}` are never sampled pointwise: every
//! quadrature in the crate integrates the kernel exactly against a
//! piecewise-linear interpolant of the smooth factor (product-trapezoidal
//! rule), which is O(h²) on smooth data and handles the endpoint
//! singularity without special panels.
//!
//! The crate is `no_std` (requires `alloc`); all operations are pure and
//! freely callable from multiple threads.

#![no_std]

extern crate alloc;

pub mod falva;
pub mod fracops;
pub mod funcspace;
mod kernel;
pub mod specfun;

pub use fracops::{OperatorKind, OperatorRequest, Side};
pub use funcspace::{AnalyticFunction, FractionalOrder, GridFunction, GridSpec};
