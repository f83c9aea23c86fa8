//! Fractional action-weighted variational dynamics.
//!
//! The action of a classical Lagrangian L(q, q̇) = ½ q̇ᵀMq̇ − V(q) under the
//! fractional weight is
//!
//! ```text
//! S^α[q](t) = (1/Γ(α)) ∫_a^{t−ε} L(q̇(τ), q(τ)) (t − τ)^{α−1} dτ ,
//! ```
//!
//! with 0 < α ≤ 1, observer time τ and fixed intrinsic horizon t. The
//! stationary paths satisfy the modified Euler-Lagrange equation
//!
//! ```text
//! ∂L/∂q − d/dτ(∂L/∂q̇) + ((α−1)/(t−τ)) ∂L/∂q̇ = 0 ,
//! ```
//!
//! obtained by integrating the first variation by parts against the decaying
//! weight (the sign of the extra sector is fixed by d/dτ (t−τ)^{α−1}, and is
//! confirmed numerically by the stationarity check: action differences under
//! endpoint-vanishing bumps shrink quadratically only with this convention).
//! For α < 1 the extra term is a genuine friction force: it is exactly
//! −∂𝓕/∂q̇ for the non-negative Rayleigh dissipation function
//! 𝓕(q̇, τ) = ½·((1−α)/(t−τ))·q̇ᵀMq̇, an equivalence checked at the
//! expression level by [`rayleigh_residual_equivalence`], and oscillator
//! energy decays monotonically along simulated paths.
//!
//! The coefficient diverges as τ → t, so every computation stands off the
//! endpoint by ε > 0: the integration domain is [a, t−ε] and evaluation
//! inside the standoff is refused.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
// float math through the trait: the inherent methods live in std, not core
#[allow(unused_imports)] // test builds link std and resolve the inherent methods
use num_traits::Float;

use crate::kernel::kernel_moments;
use crate::specfun::gamma;

/// Errors from model construction, simulation and path evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum FalvaError {
    /// Mass matrix is not square/finite, not symmetric, or not positive
    /// definite (Cholesky failed).
    InvalidMass(&'static str),
    /// Supplied potential gradient disagrees with finite differences of the
    /// potential.
    GradientMismatch { component: usize, analytic: f64, numeric: f64 },
    /// α must lie in (0, 1].
    InvalidAlpha(f64),
    /// Horizon must satisfy t > a.
    InvalidHorizon { a: f64, t: f64 },
    /// Standoff must satisfy 0 < ε < (t−a)/10.
    InvalidStandoff(f64),
    /// At least 16 steps.
    TooFewSteps(usize),
    /// Configuration/velocity dimension does not match the model.
    DimensionMismatch { expected: usize, got: usize },
    /// (t−ε−a)/steps must stay below ε or the coefficient varies too fast
    /// near the endpoint.
    StepExceedsStandoff { dt: f64, epsilon: f64 },
    /// The integrator produced a non-finite state.
    NonFiniteState { step: usize },
    /// Trajectory times must be strictly increasing and consistent.
    InvalidTrajectory(&'static str),
    /// Path does not span [a, t−ε].
    PathDomain,
    /// τ inside the standoff (t−ε, t] where the coefficient is singular,
    /// or outside the path.
    SingularTime(f64),
    /// Variation bump must vanish at both endpoints.
    BumpEndpoints,
    /// Two trajectories must share the same time grid.
    PathMismatch,
}

impl core::fmt::Display for FalvaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InvalidMass(why) => write!(f, "invalid mass matrix: {why}"),
            Self::GradientMismatch { component, analytic, numeric } => write!(
                f,
                "potential gradient component {component}: analytic {analytic} vs finite-difference {numeric}"
            ),
            Self::InvalidAlpha(a) => write!(f, "alpha must lie in (0,1], got {a}"),
            Self::InvalidHorizon { a, t } => write!(f, "horizon requires t > a, got [{a}, {t}]"),
            Self::InvalidStandoff(e) => write!(f, "standoff epsilon {e} outside (0, (t-a)/10)"),
            Self::TooFewSteps(n) => write!(f, "need at least 16 steps, got {n}"),
            Self::DimensionMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            Self::StepExceedsStandoff { dt, epsilon } => {
                write!(f, "step {dt} must stay below the standoff epsilon {epsilon}")
            }
            Self::NonFiniteState { step } => write!(f, "non-finite state at step {step}"),
            Self::InvalidTrajectory(why) => write!(f, "invalid trajectory: {why}"),
            Self::PathDomain => write!(f, "path does not span [a, t-epsilon]"),
            Self::SingularTime(tau) => {
                write!(f, "tau = {tau} is inside the singular standoff or outside the path")
            }
            Self::BumpEndpoints => write!(f, "variation bump must vanish at both endpoints"),
            Self::PathMismatch => write!(f, "trajectories live on different time grids"),
        }
    }
}

impl core::error::Error for FalvaError {}

/// Deterministic probe generator for the construction-time gradient check.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    fn next_signed(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (2.0 / 9_007_199_254_740_992.0) - 1.0
    }
}

fn cholesky(m: &[f64], dim: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut s = m[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[i * dim + i] = s.sqrt();
            } else {
                l[i * dim + j] = s / l[j * dim + j];
            }
        }
    }
    Some(l)
}

type PotentialFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A time-independent Lagrangian L(q, q̇) = ½ q̇ᵀMq̇ − V(q) with symmetric
/// positive-definite mass matrix M (validated by Cholesky factorisation)
/// and a potential gradient cross-checked against finite differences of
/// the potential at construction.
pub struct LagrangianModel {
    dim: usize,
    mass: Vec<f64>,
    chol: Vec<f64>,
    potential: PotentialFn,
    gradient: GradientFn,
}

impl core::fmt::Debug for LagrangianModel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LagrangianModel")
            .field("dim", &self.dim)
            .field("mass", &self.mass)
            .finish_non_exhaustive()
    }
}

impl LagrangianModel {
    pub fn new(
        dim: usize,
        mass: Vec<f64>,
        potential: PotentialFn,
        gradient: GradientFn,
    ) -> Result<Self, FalvaError> {
        if dim == 0 || mass.len() != dim * dim {
            return Err(FalvaError::InvalidMass("wrong shape"));
        }
        if mass.iter().any(|m| !m.is_finite()) {
            return Err(FalvaError::InvalidMass("non-finite entry"));
        }
        let scale = mass.iter().fold(0.0f64, |acc, m| acc.max(m.abs())).max(1.0);
        for i in 0..dim {
            for j in 0..i {
                if (mass[i * dim + j] - mass[j * dim + i]).abs() > 1e-12 * scale {
                    return Err(FalvaError::InvalidMass("not symmetric"));
                }
            }
        }
        let chol = cholesky(&mass, dim).ok_or(FalvaError::InvalidMass("not positive definite"))?;

        // gradient vs central finite differences at fixed pseudo-random probes
        let mut rng = SplitMix64(0x5EED_CAFE_F00D_D00D);
        let fd_step = 1e-5;
        for _ in 0..8 {
            let q: Vec<f64> = (0..dim).map(|_| rng.next_signed()).collect();
            let analytic = gradient(&q);
            if analytic.len() != dim {
                return Err(FalvaError::DimensionMismatch { expected: dim, got: analytic.len() });
            }
            for c in 0..dim {
                let mut qp = q.clone();
                let mut qm = q.clone();
                qp[c] += fd_step;
                qm[c] -= fd_step;
                let numeric = (potential(&qp) - potential(&qm)) / (2.0 * fd_step);
                if (analytic[c] - numeric).abs() > 1e-6 * (1.0 + analytic[c].abs()) {
                    return Err(FalvaError::GradientMismatch {
                        component: c,
                        analytic: analytic[c],
                        numeric,
                    });
                }
            }
        }

        Ok(Self { dim, mass, chol, potential, gradient })
    }

    /// n-dimensional harmonic oscillator, M = I, V = ½ω²|q|².
    pub fn oscillator(dim: usize, omega: f64) -> Result<Self, FalvaError> {
        let w2 = omega * omega;
        Self::new(
            dim,
            identity(dim),
            Box::new(move |q: &[f64]| 0.5 * w2 * q.iter().map(|x| x * x).sum::<f64>()),
            Box::new(move |q: &[f64]| q.iter().map(|x| w2 * x).collect()),
        )
    }

    /// Free particle, M = I, V = 0.
    pub fn free_particle(dim: usize) -> Result<Self, FalvaError> {
        Self::new(
            dim,
            identity(dim),
            Box::new(|_: &[f64]| 0.0),
            Box::new(move |q: &[f64]| vec![0.0; q.len()]),
        )
    }

    /// Quartic well, M = I, V = (k/4) Σ q_i⁴.
    pub fn quartic_well(dim: usize, k: f64) -> Result<Self, FalvaError> {
        Self::new(
            dim,
            identity(dim),
            Box::new(move |q: &[f64]| 0.25 * k * q.iter().map(|x| x.powi(4)).sum::<f64>()),
            Box::new(move |q: &[f64]| q.iter().map(|x| k * x.powi(3)).collect()),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn potential(&self, q: &[f64]) -> f64 {
        (self.potential)(q)
    }

    pub fn potential_gradient(&self, q: &[f64]) -> Vec<f64> {
        (self.gradient)(q)
    }

    pub fn mass_times(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mass[i * self.dim + j] * v[j]).sum())
            .collect()
    }

    /// Solve M x = rhs through the stored Cholesky factor.
    pub fn solve_mass(&self, rhs: &[f64]) -> Vec<f64> {
        let dim = self.dim;
        let mut y = vec![0.0; dim];
        for i in 0..dim {
            let mut s = rhs[i];
            for (k, yk) in y.iter().enumerate().take(i) {
                s -= self.chol[i * dim + k] * yk;
            }
            y[i] = s / self.chol[i * dim + i];
        }
        let mut x = vec![0.0; dim];
        for i in (0..dim).rev() {
            let mut s = y[i];
            for (k, xk) in x.iter().enumerate().skip(i + 1) {
                s -= self.chol[k * dim + i] * xk;
            }
            x[i] = s / self.chol[i * dim + i];
        }
        x
    }

    pub fn kinetic(&self, v: &[f64]) -> f64 {
        0.5 * v.iter().zip(self.mass_times(v)).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn lagrangian(&self, q: &[f64], v: &[f64]) -> f64 {
        self.kinetic(v) - self.potential(q)
    }
}

fn identity(dim: usize) -> Vec<f64> {
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1.0;
    }
    m
}

/// A fractional variational problem: model, order α ∈ (0, 1] (α = 1 is the
/// classical limit), observer-time window [a, t−ε] below the intrinsic
/// horizon t, initial data (q0, v0) and the step count for simulation.
pub struct FalvaProblem {
    pub model: LagrangianModel,
    alpha: f64,
    a: f64,
    t: f64,
    q0: Vec<f64>,
    v0: Vec<f64>,
    epsilon: f64,
    steps: usize,
}

impl FalvaProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        model: LagrangianModel,
        alpha: f64,
        a: f64,
        t: f64,
        q0: Vec<f64>,
        v0: Vec<f64>,
        epsilon: f64,
        steps: usize,
    ) -> Result<Self, FalvaError> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0 {
            return Err(FalvaError::InvalidAlpha(alpha));
        }
        if !(a.is_finite() && t.is_finite() && t > a) {
            return Err(FalvaError::InvalidHorizon { a, t });
        }
        if !epsilon.is_finite() || epsilon <= 0.0 || epsilon >= (t - a) / 10.0 {
            return Err(FalvaError::InvalidStandoff(epsilon));
        }
        if steps < 16 {
            return Err(FalvaError::TooFewSteps(steps));
        }
        if q0.len() != model.dim() {
            return Err(FalvaError::DimensionMismatch { expected: model.dim(), got: q0.len() });
        }
        if v0.len() != model.dim() {
            return Err(FalvaError::DimensionMismatch { expected: model.dim(), got: v0.len() });
        }
        Ok(Self { model, alpha, a, t, q0, v0, epsilon, steps })
    }

    /// The default standoff, one thousandth of the horizon length.
    pub fn default_standoff(a: f64, t: f64) -> f64 {
        1e-3 * (t - a)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn start(&self) -> f64 {
        self.a
    }

    pub fn horizon(&self) -> f64 {
        self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// End of the integration domain, t − ε.
    pub fn domain_end(&self) -> f64 {
        self.t - self.epsilon
    }

    /// The friction-like coefficient (α−1)/(t−τ); zero identically at α = 1.
    pub fn dissipative_coefficient(&self, tau: f64) -> f64 {
        (self.alpha - 1.0) / (self.t - tau)
    }
}

/// A discrete path: observer times with configurations and velocities.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    taus: Vec<f64>,
    qs: Vec<Vec<f64>>,
    vs: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn new(taus: Vec<f64>, qs: Vec<Vec<f64>>, vs: Vec<Vec<f64>>) -> Result<Self, FalvaError> {
        if taus.len() < 2 || taus.len() != qs.len() || taus.len() != vs.len() {
            return Err(FalvaError::InvalidTrajectory("length mismatch"));
        }
        let increasing =
            |w: &[f64]| w[1].partial_cmp(&w[0]) == Some(core::cmp::Ordering::Greater);
        if !taus.windows(2).all(increasing) {
            return Err(FalvaError::InvalidTrajectory("times not strictly increasing"));
        }
        let dim = qs[0].len();
        if qs.iter().any(|q| q.len() != dim) || vs.iter().any(|v| v.len() != dim) {
            return Err(FalvaError::InvalidTrajectory("inconsistent dimension"));
        }
        Ok(Self { taus, qs, vs })
    }

    /// Sample τ ↦ (q(τ), q̇(τ)) on a uniform grid over [start, end].
    pub fn from_functions(
        start: f64,
        end: f64,
        nodes: usize,
        q: impl Fn(f64) -> Vec<f64>,
        v: impl Fn(f64) -> Vec<f64>,
    ) -> Result<Self, FalvaError> {
        if nodes < 2 || end.partial_cmp(&start) != Some(core::cmp::Ordering::Greater) {
            return Err(FalvaError::InvalidTrajectory("bad sampling window"));
        }
        let dt = (end - start) / (nodes - 1) as f64;
        let taus: Vec<f64> = (0..nodes).map(|i| start + i as f64 * dt).collect();
        let qs: Vec<Vec<f64>> = taus.iter().map(|&tau| q(tau)).collect();
        let vs: Vec<Vec<f64>> = taus.iter().map(|&tau| v(tau)).collect();
        Self::new(taus, qs, vs)
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees >= 2 nodes
    }

    pub fn dim(&self) -> usize {
        self.qs[0].len()
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn positions(&self) -> &[Vec<f64>] {
        &self.qs
    }

    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.vs
    }

    pub fn same_time_grid(&self, other: &Self) -> bool {
        self.taus.len() == other.taus.len()
            && self
                .taus
                .iter()
                .zip(&other.taus)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(1.0))
    }

    /// self + s·bump, componentwise in q and v.
    pub fn add_scaled(&self, bump: &Self, s: f64) -> Result<Self, FalvaError> {
        if !self.same_time_grid(bump) || self.dim() != bump.dim() {
            return Err(FalvaError::PathMismatch);
        }
        let qs = self
            .qs
            .iter()
            .zip(&bump.qs)
            .map(|(q, bq)| q.iter().zip(bq).map(|(a, b)| a + s * b).collect())
            .collect();
        let vs = self
            .vs
            .iter()
            .zip(&bump.vs)
            .map(|(v, bv)| v.iter().zip(bv).map(|(a, b)| a + s * b).collect())
            .collect();
        Self::new(self.taus.clone(), qs, vs)
    }

    /// Sup-norm distance in configuration space between two paths on the
    /// same time grid.
    pub fn sup_distance(&self, other: &Self) -> Result<f64, FalvaError> {
        if !self.same_time_grid(other) || self.dim() != other.dim() {
            return Err(FalvaError::PathMismatch);
        }
        let mut worst = 0.0f64;
        for (q, p) in self.qs.iter().zip(&other.qs) {
            for (a, b) in q.iter().zip(p) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }

    fn nearest_interior_index(&self, tau: f64) -> Option<usize> {
        if tau < self.taus[0] || tau > self.taus[self.taus.len() - 1] {
            return None;
        }
        let mut best = 1usize;
        let mut best_d = f64::INFINITY;
        // times are sorted: binary search for the insertion point
        let idx = self.taus.partition_point(|&t| t < tau);
        for cand in [idx.saturating_sub(1), idx, idx + 1] {
            if cand >= 1 && cand + 1 < self.taus.len() {
                let d = (self.taus[cand] - tau).abs();
                if d < best_d {
                    best_d = d;
                    best = cand;
                }
            }
        }
        if best_d.is_finite() {
            Some(best)
        } else {
            None
        }
    }
}

/// Per-node quadrature weights of the fractional action on the path's time
/// grid: the kernel (t−τ)^{α−1} integrated exactly against the hat function
/// of each node. All weights are non-negative for α ∈ (0, 1].
pub fn action_weights(taus: &[f64], t: f64, alpha: f64) -> Vec<f64> {
    let mut weights = vec![0.0; taus.len()];
    for j in 0..taus.len() - 1 {
        let (p, q) = (taus[j], taus[j + 1]);
        let (w, v) = (t - p, t - q);
        let (m0, m1) = kernel_moments(alpha, w, v);
        let dtau = q - p;
        weights[j] += (m1 - v * m0) / dtau;
        weights[j + 1] += (w * m0 - m1) / dtau;
    }
    weights
}

/// The fractional action `S^α[q] = (1/Γ(α)) ∫_a^{t−ε} L(q̇, q)(t−τ)^{α−1} dτ`,
/// product-trapezoidal in L (kernel integrated exactly, L piecewise
/// linear); at α = 1 this is the plain trapezoid action.
pub fn falva_action(problem: &FalvaProblem, path: &Trajectory) -> Result<f64, FalvaError> {
    if path.dim() != problem.model.dim() {
        return Err(FalvaError::DimensionMismatch {
            expected: problem.model.dim(),
            got: path.dim(),
        });
    }
    let tol = 1e-9 * (problem.t - problem.a).max(1.0);
    let end = problem.domain_end();
    if (path.taus[0] - problem.a).abs() > tol
        || (path.taus[path.taus.len() - 1] - end).abs() > tol
    {
        return Err(FalvaError::PathDomain);
    }
    let weights = action_weights(&path.taus, problem.t, problem.alpha);
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w * problem.model.lagrangian(&path.qs[i], &path.vs[i]);
    }
    let scale = gamma(problem.alpha).expect("alpha in (0,1]");
    Ok(acc / scale)
}

/// Acceleration of the explicit dynamics M q̈ = −∇V(q) + ((α−1)/(t−τ)) M q̇
/// (for α < 1 the velocity term damps the motion).
fn acceleration(problem: &FalvaProblem, tau: f64, q: &[f64], v: &[f64]) -> Vec<f64> {
    let grad = problem.model.potential_gradient(q);
    let neg_grad: Vec<f64> = grad.iter().map(|g| -g).collect();
    let mut acc = problem.model.solve_mass(&neg_grad);
    let c = problem.dissipative_coefficient(tau);
    for (a, &vi) in acc.iter_mut().zip(v) {
        *a += c * vi;
    }
    acc
}

/// Integrate the dissipative dynamics from (q0, v0) at τ = a over
/// [a, t−ε] with classical fixed-step fourth-order Runge-Kutta. Returns a
/// dense trajectory with steps+1 nodes; at α = 1 the friction coefficient
/// vanishes and this is a classical integrator.
pub fn simulate(problem: &FalvaProblem) -> Result<Trajectory, FalvaError> {
    let dim = problem.model.dim();
    let dt = (problem.domain_end() - problem.a) / problem.steps as f64;
    // at α = 1 the coefficient is identically zero and no resolution
    // constraint applies near the endpoint
    if problem.alpha < 1.0 && dt >= problem.epsilon {
        return Err(FalvaError::StepExceedsStandoff { dt, epsilon: problem.epsilon });
    }
    let mut q = problem.q0.clone();
    let mut v = problem.v0.clone();
    let mut taus = Vec::with_capacity(problem.steps + 1);
    let mut qs = Vec::with_capacity(problem.steps + 1);
    let mut vs = Vec::with_capacity(problem.steps + 1);
    taus.push(problem.a);
    qs.push(q.clone());
    vs.push(v.clone());

    let shift = |x: &[f64], d: &[f64], s: f64| -> Vec<f64> {
        x.iter().zip(d).map(|(a, b)| a + s * b).collect()
    };

    for step in 0..problem.steps {
        let tau = problem.a + step as f64 * dt;
        let k1q = v.clone();
        let k1v = acceleration(problem, tau, &q, &v);
        let k2q = shift(&v, &k1v, 0.5 * dt);
        let k2v = acceleration(
            problem,
            tau + 0.5 * dt,
            &shift(&q, &k1q, 0.5 * dt),
            &shift(&v, &k1v, 0.5 * dt),
        );
        let k3q = shift(&v, &k2v, 0.5 * dt);
        let k3v = acceleration(
            problem,
            tau + 0.5 * dt,
            &shift(&q, &k2q, 0.5 * dt),
            &shift(&v, &k2v, 0.5 * dt),
        );
        let k4q = shift(&v, &k3v, dt);
        let k4v =
            acceleration(problem, tau + dt, &shift(&q, &k3q, dt), &shift(&v, &k3v, dt));
        for i in 0..dim {
            q[i] += dt / 6.0 * (k1q[i] + 2.0 * k2q[i] + 2.0 * k3q[i] + k4q[i]);
            v[i] += dt / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        if q.iter().chain(v.iter()).any(|x| !x.is_finite()) {
            return Err(FalvaError::NonFiniteState { step });
        }
        // land exactly on the final node
        let next_tau =
            if step + 1 == problem.steps { problem.domain_end() } else { tau + dt };
        taus.push(next_tau);
        qs.push(q.clone());
        vs.push(v.clone());
    }
    Trajectory::new(taus, qs, vs)
}

/// Components of the fractional Euler-Lagrange residual
/// `∂L/∂q − d/dτ(∂L/∂q̇) + ((α−1)/(t−τ)) ∂L/∂q̇` at the path node nearest
/// to τ, the second derivative estimated by central differences of the
/// stored velocities. For the quadratic-kinetic model this is
/// `−∇V(q) − M q̈ + ((α−1)/(t−τ)) M q̇`; it vanishes along action-stationary
/// paths.
pub fn el_residual(
    problem: &FalvaProblem,
    path: &Trajectory,
    tau: f64,
) -> Result<Vec<f64>, FalvaError> {
    if tau > problem.domain_end() || !tau.is_finite() {
        return Err(FalvaError::SingularTime(tau));
    }
    let i = path.nearest_interior_index(tau).ok_or(FalvaError::SingularTime(tau))?;
    residual_at_node(problem, path, i)
}

fn residual_at_node(
    problem: &FalvaProblem,
    path: &Trajectory,
    i: usize,
) -> Result<Vec<f64>, FalvaError> {
    if path.dim() != problem.model.dim() {
        return Err(FalvaError::DimensionMismatch {
            expected: problem.model.dim(),
            got: path.dim(),
        });
    }
    let span = path.taus[i + 1] - path.taus[i - 1];
    let qddot: Vec<f64> = (0..path.dim())
        .map(|c| (path.vs[i + 1][c] - path.vs[i - 1][c]) / span)
        .collect();
    let grad = problem.model.potential_gradient(&path.qs[i]);
    let m_qddot = problem.model.mass_times(&qddot);
    let m_qdot = problem.model.mass_times(&path.vs[i]);
    let c = problem.dissipative_coefficient(path.taus[i]);
    Ok((0..path.dim()).map(|k| -grad[k] - m_qddot[k] + c * m_qdot[k]).collect())
}

/// Max-norm residual over the interior of the path, standing off the
/// singular end by `skip_tail_fraction` of the window (the coefficient
/// varies O(1) per step there and pointwise differencing loses meaning).
pub fn max_interior_residual(
    problem: &FalvaProblem,
    path: &Trajectory,
    skip_tail_fraction: f64,
) -> Result<f64, FalvaError> {
    let end = path.taus[path.taus.len() - 1];
    let cutoff = end - skip_tail_fraction * (end - path.taus[0]);
    let mut worst = 0.0f64;
    for i in 1..path.taus.len() - 1 {
        if path.taus[i] > cutoff {
            break;
        }
        let r = residual_at_node(problem, path, i)?;
        for v in r {
            worst = worst.max(v.abs());
        }
    }
    Ok(worst)
}

/// Max-norm difference between the Euler-Lagrange residual and the same
/// expression rebuilt through the Rayleigh dissipation function
/// 𝓕(q̇, τ) = ½·((1−α)/(t−τ))·q̇ᵀMq̇ (non-negative for α ≤ 1), whose
/// velocity gradient supplies the friction force −∂𝓕/∂q̇: the two agree to
/// rounding (an algebraic identity, the friction sector and the fractional
/// sector are the same term).
pub fn rayleigh_residual_equivalence(
    problem: &FalvaProblem,
    path: &Trajectory,
    tau: f64,
) -> Result<f64, FalvaError> {
    if tau > problem.domain_end() || !tau.is_finite() {
        return Err(FalvaError::SingularTime(tau));
    }
    let i = path.nearest_interior_index(tau).ok_or(FalvaError::SingularTime(tau))?;
    let el = residual_at_node(problem, path, i)?;

    // Rayleigh route: ∂L/∂q − d/dτ(∂L/∂q̇) − ∂𝓕/∂q̇, assembled independently
    // with the symmetrised quadratic-form gradient ∂(q̇ᵀMq̇)/∂q̇ = (M+Mᵀ)q̇.
    let dim = path.dim();
    let span = path.taus[i + 1] - path.taus[i - 1];
    let qddot: Vec<f64> =
        (0..dim).map(|c| (path.vs[i + 1][c] - path.vs[i - 1][c]) / span).collect();
    let grad = problem.model.potential_gradient(&path.qs[i]);
    let m_qddot = problem.model.mass_times(&qddot);
    let rayleigh_coeff = 0.5 * (1.0 - problem.alpha) / (problem.t - path.taus[i]);
    let v = &path.vs[i];
    let mut worst = 0.0f64;
    for k in 0..dim {
        let mut sym_mv = 0.0;
        for (j, vj) in v.iter().enumerate() {
            sym_mv +=
                0.5 * (problem.model.mass[k * dim + j] + problem.model.mass[j * dim + k]) * vj;
        }
        let friction = -rayleigh_coeff * 2.0 * sym_mv; // −∂𝓕/∂q̇_k
        let ray = -grad[k] - m_qddot[k] + friction;
        worst = worst.max((el[k] - ray).abs());
    }
    Ok(worst)
}

/// |S(path + s·bump) − S(path)| for each amplitude s. On a stationary path
/// with an endpoint-vanishing bump the differences shrink as O(s²).
pub fn stationarity_check(
    problem: &FalvaProblem,
    path: &Trajectory,
    bump: &Trajectory,
    amplitudes: &[f64],
) -> Result<Vec<f64>, FalvaError> {
    if !path.same_time_grid(bump) || path.dim() != bump.dim() {
        return Err(FalvaError::PathMismatch);
    }
    let scale =
        bump.qs.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1e-300);
    let first = &bump.qs[0];
    let last = &bump.qs[bump.qs.len() - 1];
    if first.iter().chain(last.iter()).any(|x| x.abs() > 1e-12 * scale) {
        return Err(FalvaError::BumpEndpoints);
    }
    let base = falva_action(problem, path)?;
    amplitudes
        .iter()
        .map(|&s| Ok((falva_action(problem, &path.add_scaled(bump, s)?)? - base).abs()))
        .collect()
}
