//! Executable forms of the operator identities: linearity, the semigroup
//! law I^α I^β = I^{α+β}, integration by parts, integer-order recovery, the
//! α→0 limit, and the Caputo↔RL correction relation. Each returns a
//! measured deviation; the caller owns the tolerance.

use alloc::vec::Vec;
// float math through the trait: the inherent methods live in std, not core
#[allow(unused_imports)] // test builds link std and resolve the inherent methods
use num_traits::Float;

use super::operators::{caputo_derivative, rl_derivative, rl_integral};
use super::{OperatorError, OperatorRequest, Side};
use crate::funcspace::{sample, AnalyticFunction, FractionalOrder, FuncError, GridFunction, GridSpec};
use crate::specfun::gamma;

/// Max deviation of the requested operator from linearity over the points
/// `xs`: `|op(c·f ± g) − (c·op(f) ± op(g))|`, both signs. Discrete
/// operators are linear by construction, so this is rounding-level.
pub fn check_linearity(
    req: &OperatorRequest,
    f: &GridFunction,
    g: &GridFunction,
    c: f64,
    xs: &[f64],
) -> Result<f64, OperatorError> {
    if !f.same_grid(g) {
        return Err(OperatorError::Func(FuncError::GridMismatch));
    }
    let plus = f.linear_combination(c, 1.0, g)?;
    let minus = f.linear_combination(c, -1.0, g)?;
    let mut worst = 0.0f64;
    for &x in xs {
        let of = req.apply_grid(f, x)?;
        let og = req.apply_grid(g, x)?;
        let dev_plus = (req.apply_grid(&plus, x)? - (c * of + og)).abs();
        let dev_minus = (req.apply_grid(&minus, x)? - (c * of - og)).abs();
        worst = worst.max(dev_plus).max(dev_minus);
    }
    Ok(worst)
}

/// Deviation |I^α(I^β f)(x) − I^{α+β} f(x)|: the inner integral is tabulated
/// over the full grid first, then the outer integral applied to it.
pub fn check_semigroup(
    f: &GridFunction,
    alpha: FractionalOrder,
    beta: FractionalOrder,
    x: f64,
) -> Result<f64, OperatorError> {
    let inner_vals: Result<Vec<f64>, OperatorError> =
        (0..f.len()).map(|i| rl_integral(f, beta, Side::Left, f.node(i))).collect();
    let inner = GridFunction::new(f.a(), f.b(), inner_vals?)?;
    let composed = rl_integral(&inner, alpha, Side::Left, x)?;
    let total = FractionalOrder::new(alpha.alpha() + beta.alpha()).map_err(OperatorError::Func)?;
    let direct = rl_integral(f, total, Side::Left, x)?;
    Ok((composed - direct).abs())
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    let sum: f64 = values.iter().sum();
    h * (sum - 0.5 * (values[0] + values[values.len() - 1]))
}

/// Deviation between the two sides of the fractional integration-by-parts
/// identity `∫_a^b (ₐI_x^α f)·g dx = ∫_a^b f·(ₓI_b^α g) dx`, both sides
/// discretised with the composite trapezoid rule over the shared grid.
pub fn check_integration_by_parts(
    f: &GridFunction,
    g: &GridFunction,
    alpha: FractionalOrder,
) -> Result<f64, OperatorError> {
    if !f.same_grid(g) {
        return Err(OperatorError::Func(FuncError::GridMismatch));
    }
    let h = f.spacing();
    let lhs: Result<Vec<f64>, OperatorError> = (0..f.len())
        .map(|i| Ok(rl_integral(f, alpha, Side::Left, f.node(i))? * g.values()[i]))
        .collect();
    let rhs: Result<Vec<f64>, OperatorError> = (0..f.len())
        .map(|i| Ok(f.values()[i] * rl_integral(g, alpha, Side::Right, g.node(i))?))
        .collect();
    Ok((trapezoid(&lhs?, h) - trapezoid(&rhs?, h)).abs())
}

/// Deviation of the RL derivative at integer order n from the classical
/// derivative: max of the LEFT deviation from f⁽ⁿ⁾(x) and the RIGHT
/// deviation from (−1)ⁿ f⁽ⁿ⁾(x).
pub fn check_integer_recovery(
    f: &AnalyticFunction,
    n: u32,
    grid: &GridSpec,
    x: f64,
) -> Result<f64, OperatorError> {
    if n == 0 {
        return Err(OperatorError::Func(FuncError::InvalidOrder(0.0)));
    }
    let g = sample(f, grid)?;
    let order = FractionalOrder::new(n as f64).map_err(OperatorError::Func)?;
    let exact = f.derivative(n, x);
    let dev_left = (rl_derivative(&g, order, Side::Left, x)? - exact).abs();
    let sign = Side::Right.derivative_sign(n);
    let dev_right = (rl_derivative(&g, order, Side::Right, x)? - sign * exact).abs();
    Ok(dev_left.max(dev_right))
}

/// `|D^p f(x) − f(x)|` for each p in the sequence; as p → 0 the fractional
/// derivative approaches the identity operator.
pub fn check_zero_order_limit(
    f: &GridFunction,
    x: f64,
    p_sequence: &[f64],
) -> Result<Vec<f64>, OperatorError> {
    let fx = f.interpolate(x)?;
    p_sequence
        .iter()
        .map(|&p| {
            if !(0.0..1.0).contains(&p) || p == 0.0 {
                return Err(OperatorError::Func(FuncError::InvalidOrder(p)));
            }
            let order = FractionalOrder::new(p).map_err(OperatorError::Func)?;
            Ok((rl_derivative(f, order, Side::Left, x)? - fx).abs())
        })
        .collect()
}

/// Residual of the Caputo↔RL relation with terminal 0:
/// `D^α f(x) − [ᶜD^α f(x) + Σ_{k=0}^{n−1} f⁽ᵏ⁾(0)·x^{k−α}/Γ(k−α+1)]`,
/// which tends to 0 as the grid refines.
pub fn caputo_rl_relation_residual(
    f: &AnalyticFunction,
    order: FractionalOrder,
    grid: &GridSpec,
    x: f64,
) -> Result<f64, OperatorError> {
    if order.is_integer() {
        return Err(OperatorError::Func(FuncError::InvalidOrder(order.alpha())));
    }
    if grid.a != 0.0 {
        return Err(OperatorError::TerminalMismatch { terminal: grid.a });
    }
    if x <= 0.0 {
        return Err(OperatorError::OutOfRange { x });
    }
    let g = sample(f, grid)?;
    let rl = rl_derivative(&g, order, Side::Left, x)?;
    let cap = caputo_derivative(f, order, Side::Left, grid, x)?;
    let alpha = order.alpha();
    let mut correction = 0.0;
    for k in 0..order.ceil_order() {
        let kf = k as f64;
        correction += f.derivative(k, 0.0) * x.powf(kf - alpha) / gamma(kf - alpha + 1.0)?;
    }
    Ok(rl - (cap + correction))
}
