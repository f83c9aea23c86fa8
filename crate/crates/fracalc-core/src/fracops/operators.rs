//! Operator implementations: product-trapezoidal RL integrals, RL
//! derivatives by n-fold differencing of the (n−α) integral, Caputo
//! derivatives from exact integer derivatives, the Grunwald-Letnikov
//! recurrence, and closed-form power-law results.

// float math through the trait: the inherent methods live in std, not core
#[allow(unused_imports)] // test builds link std and resolve the inherent methods
use num_traits::Float;

use super::{OperatorError, Side};
use crate::funcspace::{sample_derivative, AnalyticFunction, FractionalOrder, GridFunction, GridSpec};
use crate::kernel::{panel_left, panel_right};
use crate::specfun::{gamma, gamma_ratio};

/// Relative slack when deciding whether a point sits inside the grid.
const RANGE_TOL: f64 = 1e-9;

fn check_in_domain(f: &GridFunction, x: f64) -> Result<f64, OperatorError> {
    let tol = RANGE_TOL * (f.b() - f.a());
    if !x.is_finite() || x < f.a() - tol || x > f.b() + tol {
        return Err(OperatorError::OutOfRange { x });
    }
    Ok(x.max(f.a()).min(f.b()))
}

/// Riemann-Liouville fractional integral of order α > 0.
///
/// LEFT evaluates `(1/Γ(α)) ∫_a^x (x−t)^{α−1} f(t) dt`, RIGHT the mirror
/// `(1/Γ(α)) ∫_x^b (t−x)^{α−1} f(t) dt`. The weakly singular kernel is
/// integrated exactly against the piecewise-linear interpolant of `f` on
/// each panel (a partial final panel reaches any off-grid x), giving O(h²)
/// error on twice-differentiable data; for α = 1 this is the composite
/// trapezoid rule.
pub fn rl_integral(
    f: &GridFunction,
    order: FractionalOrder,
    side: Side,
    x: f64,
) -> Result<f64, OperatorError> {
    let x = check_in_domain(f, x)?;
    let alpha = order.alpha();
    let scale = gamma(alpha)?;
    let h = f.spacing();
    let vals = f.values();
    let n = vals.len();
    let mut acc = 0.0;
    match side {
        Side::Left => {
            if x <= f.a() {
                return Ok(0.0);
            }
            let k = (((x - f.a()) / h).floor() as usize).min(n - 2);
            for j in 0..k {
                let p = f.node(j);
                let slope = (vals[j + 1] - vals[j]) / h;
                acc += panel_left(alpha, x - p, x - f.node(j + 1), vals[j], slope);
            }
            // partial panel [t_k, x]
            let p = f.node(k);
            if x > p {
                let slope = (vals[k + 1] - vals[k]) / h;
                acc += panel_left(alpha, x - p, 0.0, vals[k], slope);
            }
        }
        Side::Right => {
            if x >= f.b() {
                return Ok(0.0);
            }
            let m = (((x - f.a()) / h).ceil() as usize).min(n - 1);
            // partial panel [x, t_m]
            let q = f.node(m);
            if m >= 1 && q > x {
                let slope = (vals[m] - vals[m - 1]) / h;
                let f_at_x = vals[m - 1] + (x - f.node(m - 1)) * slope;
                acc += panel_right(alpha, q - x, 0.0, f_at_x, slope);
            }
            for j in m..n - 1 {
                let p = f.node(j);
                let slope = (vals[j + 1] - vals[j]) / h;
                acc += panel_right(alpha, f.node(j + 1) - x, p - x, vals[j], slope);
            }
        }
    }
    Ok(acc / scale)
}

/// Binomial-weighted n-th finite difference of `g` with step h, the stencil
/// centred on x and shifted (never extrapolated) to stay inside [a, b].
/// A shifted stencil is first-order accurate at x; the centred one is O(h²).
fn stencil_difference<E>(
    g: impl Fn(f64) -> Result<f64, E>,
    x: f64,
    n: u32,
    h: f64,
    a: f64,
    b: f64,
) -> Result<f64, OperatorError>
where
    OperatorError: From<E>,
{
    let span = n as f64 * h;
    if span > (b - a) * (1.0 + 1e-12) {
        return Err(OperatorError::InsufficientClearance { x, span });
    }
    let mut start = x - 0.5 * span;
    if start < a {
        start = a;
    }
    if start + span > b {
        start = b - span;
    }
    // Δ^n g(start) = Σ_j (−1)^{n−j} C(n,j) g(start + j·h)
    let mut acc = 0.0;
    let mut binom = 1.0f64;
    for j in 0..=n {
        let sign = if (n - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * binom * g(start + j as f64 * h)?;
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    Ok(acc / h.powi(n as i32))
}

/// Riemann-Liouville fractional derivative of order α > 0.
///
/// Realised as (±d/dx)^n of the (n−α)-order RL integral, the classical
/// derivative taken by an n-fold finite difference with step equal to the
/// grid spacing (RIGHT carries the (−1)^n sign). Integer orders delegate to
/// the classical difference of `f` itself rather than evaluating Γ at a
/// pole. Near the domain edges the stencil slides inside the grid, trading
/// the interior O(h²) for O(h) rather than extrapolating.
pub fn rl_derivative(
    f: &GridFunction,
    order: FractionalOrder,
    side: Side,
    x: f64,
) -> Result<f64, OperatorError> {
    let x = check_in_domain(f, x)?;
    let h = f.spacing();
    let (a, b) = (f.a(), f.b());
    if order.is_integer() {
        let ni = order.alpha() as u32;
        let est = stencil_difference(|y| f.interpolate(y), x, ni, h, a, b)?;
        return Ok(side.derivative_sign(ni) * est);
    }
    let n = order.ceil_order();
    let mu = FractionalOrder::new(n as f64 - order.alpha()).map_err(OperatorError::Func)?;
    let est = stencil_difference(|y| rl_integral(f, mu, side, y), x, n, h, a, b)?;
    Ok(side.derivative_sign(n) * est)
}

/// Caputo fractional derivative: the (n−α)-order RL integral of the exact
/// n-th derivative of `f`, sampled on `grid` (RIGHT carries (−1)^n).
/// Integer orders return the exact classical derivative.
pub fn caputo_derivative(
    f: &AnalyticFunction,
    order: FractionalOrder,
    side: Side,
    grid: &GridSpec,
    x: f64,
) -> Result<f64, OperatorError> {
    if order.is_integer() {
        let ni = order.alpha() as u32;
        let d = f.derivative(ni, x);
        if !d.is_finite() {
            return Err(OperatorError::Func(crate::funcspace::FuncError::Undefined { x }));
        }
        return Ok(side.derivative_sign(ni) * d);
    }
    let n = order.ceil_order();
    let g = sample_derivative(f, n, grid)?;
    let mu = FractionalOrder::new(n as f64 - order.alpha()).map_err(OperatorError::Func)?;
    let val = rl_integral(&g, mu, side, x)?;
    Ok(side.derivative_sign(n) * val)
}

/// Grunwald-Letnikov approximation at a grid node x > a:
/// `h^{−α} Σ_{k=0}^{K} (−1)^k C(α,k) f(x−kh)`, K = (x−a)/h, with the
/// generalized binomial built by the recurrence w_0 = 1,
/// w_k = w_{k−1}·(k−1−α)/k. An independent discretisation of the left RL
/// derivative, kept as a cross-validation oracle: it converges O(h) for
/// smooth f with f(a) = 0.
pub fn gl_derivative(
    f: &GridFunction,
    order: FractionalOrder,
    x: f64,
) -> Result<f64, OperatorError> {
    let x = check_in_domain(f, x)?;
    let h = f.spacing();
    let pos = (x - f.a()) / h;
    let nearest = pos.round();
    if (pos - nearest).abs() > 1e-6 {
        return Err(OperatorError::OffGrid { x });
    }
    let steps = nearest as usize;
    if steps == 0 {
        return Err(OperatorError::OutOfRange { x });
    }
    let alpha = order.alpha();
    let vals = f.values();
    let mut weight = 1.0f64;
    let mut acc = vals[steps];
    for k in 1..=steps {
        weight *= (k as f64 - 1.0 - alpha) / k as f64;
        acc += weight * vals[steps - k];
    }
    Ok(acc * h.powf(-alpha))
}

/// A closed-form operator result: zero, or a scaled power law
/// coefficient·x^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// The Γ-ratio coefficient sits on a 1/Γ pole, so the result vanishes
    /// identically.
    Zero,
    PowerLaw { coefficient: f64, exponent: f64 },
}

impl ClosedForm {
    pub fn evaluate(&self, x: f64) -> f64 {
        match *self {
            Self::Zero => 0.0,
            Self::PowerLaw { coefficient, exponent } => coefficient * x.powf(exponent),
        }
    }
}

/// Closed form of the left RL derivative of x^m (terminal 0), m > −1:
/// `Γ(m+1)/Γ(m−α+1) · x^{m−α}`, degenerating to zero when m−α+1 is a
/// non-positive integer.
pub fn closed_form_rl_derivative_power(
    m: f64,
    order: FractionalOrder,
) -> Result<ClosedForm, OperatorError> {
    if !m.is_finite() || m <= -1.0 {
        return Err(OperatorError::ExponentOutOfRange { m });
    }
    let coefficient = gamma_ratio(m + 1.0, m - order.alpha() + 1.0)?;
    if coefficient == 0.0 {
        return Ok(ClosedForm::Zero);
    }
    Ok(ClosedForm::PowerLaw { coefficient, exponent: m - order.alpha() })
}

/// Closed form of the left RL integral of x^m (terminal 0), m > −1:
/// `Γ(m+1)/Γ(m+α+1) · x^{m+α}`.
pub fn closed_form_rl_integral_power(
    m: f64,
    order: FractionalOrder,
) -> Result<ClosedForm, OperatorError> {
    if !m.is_finite() || m <= -1.0 {
        return Err(OperatorError::ExponentOutOfRange { m });
    }
    let coefficient = gamma_ratio(m + 1.0, m + order.alpha() + 1.0)?;
    Ok(ClosedForm::PowerLaw { coefficient, exponent: m + order.alpha() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::sample;
    use alloc::vec;

    fn order(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    fn sampled(f: &AnalyticFunction, a: f64, b: f64, n: usize) -> GridFunction {
        sample(f, &GridSpec::new(a, b, n).unwrap()).unwrap()
    }

    const TWO_OVER_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;
    const POWER1_HALF_AT_ONE: f64 = 0.752_252_778_063_675; // Γ(2)/Γ(2.5)
    const POWER2_HALF_AT_ONE: f64 = 1.504_505_556_127_350_1; // Γ(3)/Γ(2.5)

    #[test]
    fn left_integral_of_constant() {
        let g = sampled(&AnalyticFunction::Constant(1.0), 0.0, 1.0, 33);
        // α = 1: plain ∫_0^1 dt
        let v = rl_integral(&g, order(1.0), Side::Left, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
        // α = 1/2: exact for constants, 2/√π
        let v = rl_integral(&g, order(0.5), Side::Left, 1.0).unwrap();
        assert!((v - TWO_OVER_SQRT_PI).abs() < 1e-12);
    }

    #[test]
    fn left_integral_of_identity_is_exact() {
        // piecewise-linear interpolation reproduces f(t) = t exactly
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, 65);
        let v = rl_integral(&g, order(0.5), Side::Left, 1.0).unwrap();
        assert!((v - POWER1_HALF_AT_ONE).abs() < 1e-13);
    }

    #[test]
    fn left_integral_partial_panel() {
        // off-grid x: ∫ of constant 1 with α=1 must equal x − a exactly
        let g = sampled(&AnalyticFunction::Constant(1.0), 0.0, 1.0, 7);
        let v = rl_integral(&g, order(1.0), Side::Left, 0.404).unwrap();
        assert!((v - 0.404).abs() < 1e-14);
    }

    #[test]
    fn right_integral_mirrors_left() {
        let g = sampled(&AnalyticFunction::Constant(1.0), 0.0, 1.0, 33);
        let v = rl_integral(&g, order(1.0), Side::Right, 0.0).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
        let v = rl_integral(&g, order(0.5), Side::Right, 0.0).unwrap();
        assert!((v - TWO_OVER_SQRT_PI).abs() < 1e-12);

        // right integral of f equals left integral of the reflection
        let f = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, 33);
        let right = rl_integral(&f, order(0.5), Side::Right, 0.5).unwrap();
        let left = rl_integral(&f.reflected(), order(0.5), Side::Left, 0.5).unwrap();
        assert!((right - left).abs() < 1e-13);
    }

    #[test]
    fn integral_rejects_out_of_range() {
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, 4);
        assert!(matches!(
            rl_integral(&g, order(0.5), Side::Left, 2.0),
            Err(OperatorError::OutOfRange { .. })
        ));
    }

    #[test]
    fn derivative_lacroix_half_derivative_of_x() {
        // D^{1/2} x = 2√(x/π); at x = π the value is exactly 2
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 4.0, 1025);
        let v = rl_derivative(&g, order(0.5), Side::Left, core::f64::consts::PI).unwrap();
        assert!((v - 2.0).abs() < 1e-6, "got {v}");
    }

    #[test]
    fn derivative_integer_order_delegates() {
        let g = sampled(&AnalyticFunction::Power(2.0), 0.0, 1.0, 65);
        let v = rl_derivative(&g, order(1.0), Side::Left, 0.5).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_power_rule_at_boundary() {
        let g = sampled(&AnalyticFunction::Power(2.0), 0.0, 1.0, 1025);
        let v = rl_derivative(&g, order(0.5), Side::Left, 1.0).unwrap();
        assert!((v - POWER2_HALF_AT_ONE).abs() < 5e-3, "got {v}");
    }

    #[test]
    fn derivative_needs_room_for_stencil() {
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, 2);
        assert!(matches!(
            rl_derivative(&g, order(1.5), Side::Left, 0.5),
            Err(OperatorError::InsufficientClearance { .. })
        ));
    }

    #[test]
    fn caputo_of_constant_vanishes_exactly() {
        let spec = GridSpec::new(0.0, 1.0, 65).unwrap();
        let v =
            caputo_derivative(&AnalyticFunction::Constant(7.0), order(0.5), Side::Left, &spec, 0.5)
                .unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn caputo_matches_lacroix_for_vanishing_initial_value() {
        let spec = GridSpec::new(0.0, 4.0, 65).unwrap();
        let v = caputo_derivative(
            &AnalyticFunction::Power(1.0),
            order(0.5),
            Side::Left,
            &spec,
            core::f64::consts::PI,
        )
        .unwrap();
        assert!((v - 2.0).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn caputo_power_two() {
        // f' = 2u is linear, so the quadrature is exact
        let spec = GridSpec::new(0.0, 1.0, 129).unwrap();
        let v = caputo_derivative(&AnalyticFunction::Power(2.0), order(0.5), Side::Left, &spec, 1.0)
            .unwrap();
        assert!((v - POWER2_HALF_AT_ONE).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn caputo_integer_order_is_exact() {
        let spec = GridSpec::new(0.0, 1.0, 17).unwrap();
        let f = AnalyticFunction::Power(3.0);
        let v = caputo_derivative(&f, order(2.0), Side::Left, &spec, 0.5).unwrap();
        assert_eq!(v, 3.0); // d²x³ = 6x
        let v = caputo_derivative(&f, order(1.0), Side::Right, &spec, 0.5).unwrap();
        assert_eq!(v, -0.75); // (−1)·3x²
    }

    #[test]
    fn gl_of_zero_and_power() {
        let z = sampled(&AnalyticFunction::Constant(0.0), 0.0, 1.0, 17);
        let v = gl_derivative(&z, order(0.7), 1.0).unwrap();
        assert_eq!(v, 0.0);

        let g = sampled(&AnalyticFunction::Power(2.0), 0.0, 1.0, 1025);
        let v = gl_derivative(&g, order(0.5), 1.0).unwrap();
        assert!((v - POWER2_HALF_AT_ONE).abs() < 5e-3, "got {v}");
    }

    #[test]
    fn gl_reaches_lacroix_value_near_pi() {
        // GL at the node nearest π on [0,4]: D^{1/2} x = 2√(x/π) ≈ 2 there
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 4.0, 2049);
        let h = g.spacing();
        let node = (core::f64::consts::PI / h).round() * h;
        let v = gl_derivative(&g, order(0.5), node).unwrap();
        let target = 2.0 * (node / core::f64::consts::PI).sqrt();
        assert!((v - target).abs() < 1e-3, "got {v}, target {target}");
    }

    #[test]
    fn gl_requires_grid_node() {
        let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, 11);
        assert!(matches!(
            gl_derivative(&g, order(0.5), 0.55),
            Err(OperatorError::OffGrid { .. })
        ));
        assert!(matches!(
            gl_derivative(&g, order(0.5), 0.0),
            Err(OperatorError::OutOfRange { .. })
        ));
    }

    #[test]
    fn closed_forms() {
        let cf = closed_form_rl_derivative_power(1.0, order(0.5)).unwrap();
        match cf {
            ClosedForm::PowerLaw { coefficient, exponent } => {
                assert!((coefficient - TWO_OVER_SQRT_PI).abs() < 1e-13);
                assert!((exponent - 0.5).abs() < 1e-15);
            }
            ClosedForm::Zero => panic!("expected power law"),
        }

        let cf = closed_form_rl_derivative_power(2.0, order(1.0)).unwrap();
        match cf {
            ClosedForm::PowerLaw { coefficient, exponent } => {
                assert!((coefficient - 2.0).abs() < 1e-12);
                assert!((exponent - 1.0).abs() < 1e-15);
            }
            ClosedForm::Zero => panic!("expected power law"),
        }

        // Γ(1.5)/Γ(1) = √π/2, exponent 0
        let cf = closed_form_rl_derivative_power(0.5, order(0.5)).unwrap();
        match cf {
            ClosedForm::PowerLaw { coefficient, exponent } => {
                assert!((coefficient - 0.886_226_925_452_758).abs() < 1e-13);
                assert!(exponent.abs() < 1e-15);
            }
            ClosedForm::Zero => panic!("expected power law"),
        }

        // m − α + 1 = 0: the coefficient sits on a Γ pole
        assert_eq!(closed_form_rl_derivative_power(0.5, order(1.5)).unwrap(), ClosedForm::Zero);

        assert!(matches!(
            closed_form_rl_derivative_power(-1.0, order(0.5)),
            Err(OperatorError::ExponentOutOfRange { .. })
        ));

        let cf = closed_form_rl_integral_power(1.0, order(0.5)).unwrap();
        match cf {
            ClosedForm::PowerLaw { coefficient, exponent } => {
                assert!((coefficient - POWER1_HALF_AT_ONE).abs() < 1e-13);
                assert!((exponent - 1.5).abs() < 1e-15);
            }
            ClosedForm::Zero => panic!("expected power law"),
        }
    }

    #[test]
    fn closed_form_evaluate() {
        assert_eq!(ClosedForm::Zero.evaluate(3.0), 0.0);
        let pl = ClosedForm::PowerLaw { coefficient: 2.0, exponent: 0.5 };
        assert!((pl.evaluate(4.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn grid_function_preserved_as_operand() {
        let g = GridFunction::new(0.0, 1.0, vec![0.0, 0.5, 1.0]).unwrap();
        let before = g.values().to_vec();
        let _ = rl_integral(&g, order(0.5), Side::Left, 1.0).unwrap();
        assert_eq!(g.values(), &before[..]);
    }
}
