//! Shared test support: an independent double-exponential quadrature
//! oracle for singular integrands, and empirical-order helpers for grid
//! refinement studies.

#![allow(dead_code)]

/// Tanh-sinh (double-exponential) quadrature of f over (a, b).
///
/// The integrand receives the distances from each endpoint,
/// `f(x, x − a, b − x)`, computed without cancellation so algebraic
/// endpoint singularities like (b−x)^{α−1} stay accurate arbitrarily close
/// to the endpoint. Entirely independent of the product-trapezoidal
/// machinery it cross-checks.
pub fn tanh_sinh(f: impl Fn(f64, f64, f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let eval = |u: f64| -> f64 {
        let t = core::f64::consts::FRAC_PI_2 * u.sinh();
        // 1 − tanh(t) = 2/(e^{2t} + 1): distance from the near endpoint
        let dist = (b - a) / ((2.0 * t.abs()).exp() + 1.0);
        let (x, da, db) = if u >= 0.0 {
            (b - dist, b - a - dist, dist)
        } else {
            (a + dist, dist, b - a - dist)
        };
        let weight = half * core::f64::consts::FRAC_PI_2 * u.cosh() / t.cosh().powi(2);
        let v = f(x, da, db) * weight;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let u_max = 4.0;
    let mut h = 1.0;
    let mut total = h * eval(0.0);
    let mut k = 1;
    while (k as f64) * h <= u_max {
        total += h * (eval(k as f64 * h) + eval(-(k as f64) * h));
        k += 1;
    }
    for _ in 0..10 {
        h *= 0.5;
        let mut sum_new = 0.0;
        let mut j = 1;
        while (j as f64) * h <= u_max {
            sum_new += eval(j as f64 * h) + eval(-(j as f64) * h);
            j += 2; // only the new midpoints
        }
        let refined = 0.5 * total + h * sum_new;
        if (refined - total).abs() <= 1e-13 * refined.abs().max(1e-12) {
            return refined;
        }
        total = refined;
    }
    total
}

/// Quadrature oracle for the left RL integral
/// `(1/Γ(α)) ∫_a^x (x−t)^{α−1} f(t) dt` with a smooth integrand f.
pub fn left_rl_integral_oracle(f: impl Fn(f64) -> f64, alpha: f64, a: f64, x: f64) -> f64 {
    let gamma_alpha = fracalc_core::specfun::gamma(alpha).unwrap();
    tanh_sinh(|t, _da, db| db.powf(alpha - 1.0) * f(t), a, x) / gamma_alpha
}

/// log2-based empirical convergence order from a ladder of errors produced
/// by successive grid doublings: mean slope between first and last level.
pub fn empirical_order(errors: &[f64]) -> f64 {
    assert!(errors.len() >= 2);
    let first = errors[0].max(1e-300);
    let last = errors[errors.len() - 1].max(1e-300);
    (first / last).log2() / (errors.len() - 1) as f64
}

/// Passes when the refinement ladder shows at least `min_order`, or when
/// the final error already sits at the rounding floor.
pub fn assert_order_at_least(errors: &[f64], min_order: f64, floor: f64, what: &str) {
    if errors[errors.len() - 1] <= floor {
        return;
    }
    let order = empirical_order(errors);
    assert!(
        order >= min_order,
        "{what}: empirical order {order:.2} < {min_order} (errors {errors:?})"
    );
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.max(1e-300).ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}
