//! Product-quadrature primitives for the weakly singular kernel u^{α−1}:
//! closed-form moments of the kernel against linear weight functions on one
//! panel. Shared by the RL integrals and the fractional action.

// float math through the trait: the inherent methods live in std, not core
#[allow(unused_imports)] // test builds link std and resolve the inherent methods
use num_traits::Float;

/// (∫_v^w u^{α−1} du, ∫_v^w u^{α} du) for 0 ≤ v ≤ w, α > 0.
#[inline]
pub(crate) fn kernel_moments(alpha: f64, w: f64, v: f64) -> (f64, f64) {
    let m0 = (w.powf(alpha) - v.powf(alpha)) / alpha;
    let m1 = (w.powf(alpha + 1.0) - v.powf(alpha + 1.0)) / (alpha + 1.0);
    (m0, m1)
}

/// ∫ over the panel of u^{α−1}·(f_near + slope·(w − u)) du, u from v to w.
///
/// This is the contribution of one panel [p, q] to a LEFT-type integral
/// ∫ (x−t)^{α−1} f(t) dt, with u = x−t, w = x−p, v = x−q, f_near = f(p) and
/// slope = (f(q) − f(p))/(q − p): the kernel is integrated exactly against
/// the linear interpolant of f on the panel.
#[inline]
pub(crate) fn panel_left(alpha: f64, w: f64, v: f64, f_near: f64, slope: f64) -> f64 {
    let (m0, m1) = kernel_moments(alpha, w, v);
    f_near * m0 + slope * (w * m0 - m1)
}

/// Mirror of [`panel_left`] for RIGHT-type integrals ∫ (t−x)^{α−1} f(t) dt:
/// u = t−x, v = p−x, w = q−x, f_near = f(p), slope = (f(q) − f(p))/(q − p).
#[inline]
pub(crate) fn panel_right(alpha: f64, w: f64, v: f64, f_near: f64, slope: f64) -> f64 {
    let (m0, m1) = kernel_moments(alpha, w, v);
    f_near * m0 + slope * (m1 - v * m0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_reduce_to_plain_lengths_at_alpha_one() {
        let (m0, m1) = kernel_moments(1.0, 0.7, 0.2);
        assert!((m0 - 0.5).abs() < 1e-15);
        assert!((m1 - 0.5 * (0.49 - 0.04)).abs() < 1e-15);
    }

    #[test]
    fn left_panel_constant_against_sqrt_kernel() {
        // ∫_0^1 u^{-1/2} du = 2
        let c = panel_left(0.5, 1.0, 0.0, 1.0, 0.0);
        assert!((c - 2.0).abs() < 1e-14);
    }

    #[test]
    fn left_and_right_agree_on_mirrored_data() {
        // f(t) = t on [0,1] against (1−t)^{α−1} equals f(t) = 1−t against t^{α−1}
        let alpha = 0.73;
        let left = panel_left(alpha, 1.0, 0.0, 0.0, 1.0); // f(p=0)=0, slope 1, x=1
        let right = panel_right(alpha, 1.0, 0.0, 1.0, -1.0); // f(p=0)=1, slope -1, x=0
        assert!((left - right).abs() < 1e-14);
    }
}
