//! The fractional operators: RL integral (left/right), RL derivative
//! (left/right), Caputo derivative (left/right), a Grunwald-Letnikov
//! discretisation used as an independent cross-check, closed-form power-law
//! results, and executable forms of the operator identities.

mod checks;
mod operators;

pub use checks::{
    caputo_rl_relation_residual, check_integer_recovery, check_integration_by_parts,
    check_linearity, check_semigroup, check_zero_order_limit,
};
pub use operators::{
    caputo_derivative, closed_form_rl_derivative_power, closed_form_rl_integral_power,
    gl_derivative, rl_derivative, rl_integral, ClosedForm,
};

use crate::funcspace::{FractionalOrder, FuncError, GridFunction};
use crate::specfun::SpecFunError;

/// Which operator an [`OperatorRequest`] dispatches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    RlIntegral,
    RlDerivative,
    Caputo,
    GrunwaldLetnikov,
}

/// Memory direction: LEFT integrates from the terminal a up to x,
/// RIGHT from x up to the terminal b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// (−1)^n carried by right-sided derivatives.
    pub(crate) fn derivative_sign(self, n: u32) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => {
                if n.is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }
}

/// Errors from operator evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorError {
    /// Evaluation point violates the side condition (x > a for LEFT,
    /// x < b for RIGHT) or leaves the grid.
    OutOfRange { x: f64 },
    /// No finite-difference stencil of step h fits inside the domain.
    InsufficientClearance { x: f64, span: f64 },
    /// Grunwald-Letnikov needs a grid node.
    OffGrid { x: f64 },
    /// Request terminal does not match the operand grid.
    TerminalMismatch { terminal: f64 },
    /// Request side is not defined for this operator (GL is left-only).
    UnsupportedSide,
    /// Closed-form argument outside m > −1.
    ExponentOutOfRange { m: f64 },
    /// Operand error (sampling, interpolation, grids).
    Func(FuncError),
    /// Gamma/Beta evaluation failed (e.g. absurdly large order).
    Special(SpecFunError),
}

impl From<FuncError> for OperatorError {
    fn from(e: FuncError) -> Self {
        Self::Func(e)
    }
}

impl From<SpecFunError> for OperatorError {
    fn from(e: SpecFunError) -> Self {
        Self::Special(e)
    }
}

impl core::fmt::Display for OperatorError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::OutOfRange { x } => write!(f, "evaluation point {x} outside operator range"),
            Self::InsufficientClearance { x, span } => {
                write!(f, "no stencil of span {span} fits the domain around x = {x}")
            }
            Self::OffGrid { x } => write!(f, "x = {x} is not a grid node"),
            Self::TerminalMismatch { terminal } => {
                write!(f, "request terminal {terminal} does not match the operand grid")
            }
            Self::UnsupportedSide => write!(f, "operator does not support this side"),
            Self::ExponentOutOfRange { m } => write!(f, "power exponent m = {m} must exceed -1"),
            Self::Func(e) => write!(f, "{e}"),
            Self::Special(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OperatorError {}

/// A fully specified operator application: which operator, which side,
/// which order, from which terminal. LEFT requests evaluate at x > terminal,
/// RIGHT requests at x < terminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorRequest {
    pub kind: OperatorKind,
    pub side: Side,
    pub order: FractionalOrder,
    pub terminal: f64,
}

impl OperatorRequest {
    pub fn new(kind: OperatorKind, side: Side, order: FractionalOrder, terminal: f64) -> Self {
        Self { kind, side, order, terminal }
    }

    fn check_terminal(&self, f: &GridFunction) -> Result<(), OperatorError> {
        let expected = match self.side {
            Side::Left => f.a(),
            Side::Right => f.b(),
        };
        let tol = 1e-12 * (f.b() - f.a()).abs().max(1.0);
        if (self.terminal - expected).abs() > tol {
            return Err(OperatorError::TerminalMismatch { terminal: self.terminal });
        }
        Ok(())
    }

    /// Apply the requested operator to grid data.
    ///
    /// For `Caputo` the grid is interpreted as the sampled n-th exact
    /// derivative of the operand (the quadrature stage of the Caputo
    /// operator, which is where its linearity and accuracy live); the
    /// (n−α)-order RL integral and the right-side (−1)^n sign are applied.
    pub fn apply_grid(&self, f: &GridFunction, x: f64) -> Result<f64, OperatorError> {
        self.check_terminal(f)?;
        match self.kind {
            OperatorKind::RlIntegral => rl_integral(f, self.order, self.side, x),
            OperatorKind::RlDerivative => rl_derivative(f, self.order, self.side, x),
            OperatorKind::GrunwaldLetnikov => match self.side {
                Side::Left => gl_derivative(f, self.order, x),
                Side::Right => Err(OperatorError::UnsupportedSide),
            },
            OperatorKind::Caputo => {
                let n = self.order.ceil_order();
                let mu = FractionalOrder::new(n as f64 - self.order.alpha())
                    .map_err(OperatorError::Func)?;
                let sign = self.side.derivative_sign(n);
                Ok(sign * rl_integral(f, mu, self.side, x)?)
            }
        }
    }
}
