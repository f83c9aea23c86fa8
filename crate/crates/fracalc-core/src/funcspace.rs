//! Operand representations shared by every operator: uniform-grid samples,
//! an analytic-function registry with exact integer-order derivatives, and
//! validated fractional orders.

use alloc::vec::Vec;
// float math through the trait: the inherent methods live in std, not core
#[allow(unused_imports)] // test builds link std and resolve the inherent methods
use num_traits::Float;

/// Errors from operand construction and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum FuncError {
    /// Grid endpoints must satisfy b > a and be finite.
    InvalidDomain { a: f64, b: f64 },
    /// A grid needs at least two nodes.
    TooFewPoints(usize),
    /// A sampled or supplied value is not finite.
    NonFiniteValue { index: usize },
    /// The function is undefined at x (e.g. x^m with m < 0 at x = 0).
    Undefined { x: f64 },
    /// Evaluation point outside [a, b].
    OutOfDomain { x: f64, a: f64, b: f64 },
    /// Fractional order must be finite, positive and of sane magnitude.
    InvalidOrder(f64),
    /// Two grids that must coincide do not.
    GridMismatch,
}

impl core::fmt::Display for FuncError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::InvalidDomain { a, b } => write!(f, "invalid domain [{a}, {b}]"),
            Self::TooFewPoints(n) => write!(f, "grid needs at least 2 points, got {n}"),
            Self::NonFiniteValue { index } => write!(f, "non-finite value at node {index}"),
            Self::Undefined { x } => write!(f, "function undefined at x = {x}"),
            Self::OutOfDomain { x, a, b } => {
                write!(f, "evaluation point {x} outside domain [{a}, {b}]")
            }
            Self::InvalidOrder(alpha) => write!(f, "invalid fractional order alpha = {alpha}"),
            Self::GridMismatch => write!(f, "operands live on different grids"),
        }
    }
}

impl core::error::Error for FuncError {}

/// A validated fractional order α > 0 together with the derived integer
/// ceiling n = ⌊α⌋ + 1 (so n − 1 ≤ α < n for non-integer α, and n = α + 1
/// at the integers).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder {
    alpha: f64,
    n: u32,
}

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self, FuncError> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 1.0e6 {
            return Err(FuncError::InvalidOrder(alpha));
        }
        Ok(Self { alpha, n: alpha.floor() as u32 + 1 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// n = ⌊α⌋ + 1, the number of classical derivatives wrapped around the
    /// fractional integral.
    pub fn ceil_order(&self) -> u32 {
        self.n
    }

    pub fn is_integer(&self) -> bool {
        self.alpha == self.alpha.floor()
    }
}

/// Which endpoint the computational grid spans; validated once and shared
/// by operators that sample analytic functions themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, n_points: usize) -> Result<Self, FuncError> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(FuncError::InvalidDomain { a, b });
        }
        if n_points < 2 {
            return Err(FuncError::TooFewPoints(n_points));
        }
        Ok(Self { a, b, n_points })
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.n_points - 1) as f64
    }
}

/// Uniform-grid samples of a real function on [a, b]:
/// `values[i] = f(a + i·h)` with `h = (b − a)/(n − 1)`.
///
/// Immutable after construction; the operand type of every grid-based
/// operator in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    a: f64,
    b: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(a: f64, b: f64, values: Vec<f64>) -> Result<Self, FuncError> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(FuncError::InvalidDomain { a, b });
        }
        if values.len() < 2 {
            return Err(FuncError::TooFewPoints(values.len()));
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FuncError::NonFiniteValue { index });
        }
        Ok(Self { a, b, values })
    }

    /// Sample an arbitrary closure at the grid nodes.
    pub fn from_fn(spec: &GridSpec, f: impl Fn(f64) -> f64) -> Result<Self, FuncError> {
        let h = spec.spacing();
        let abscissa =
            |i: usize| if i == spec.n_points - 1 { spec.b } else { spec.a + i as f64 * h };
        let values: Vec<f64> = (0..spec.n_points).map(|i| f(abscissa(i))).collect();
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(FuncError::Undefined { x: abscissa(index) });
        }
        Self::new(spec.a, spec.b, values)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees >= 2 nodes
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / (self.values.len() - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        // the last node is b exactly; a + (n−1)·h can land one ulp past it
        if i == self.values.len() - 1 {
            self.b
        } else {
            self.a + i as f64 * self.spacing()
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.values.len() == other.values.len()
    }

    /// Piecewise-linear interpolant. Exact at the nodes (to rounding) and
    /// exact everywhere for affine data.
    pub fn interpolate(&self, x: f64) -> Result<f64, FuncError> {
        let tol = 1e-12 * (self.b - self.a);
        if !x.is_finite() || x < self.a - tol || x > self.b + tol {
            return Err(FuncError::OutOfDomain { x, a: self.a, b: self.b });
        }
        let x = x.max(self.a).min(self.b);
        let h = self.spacing();
        let i = (((x - self.a) / h).floor() as usize).min(self.values.len() - 2);
        let theta = (x - self.node(i)) / h;
        Ok(self.values[i] + theta * (self.values[i + 1] - self.values[i]))
    }

    /// Samples of the mirrored function t ↦ f(a + b − t) on the same [a, b].
    pub fn reflected(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { a: self.a, b: self.b, values }
    }

    /// c·f + sign·g on a shared grid.
    pub fn linear_combination(&self, c: f64, sign: f64, g: &Self) -> Result<Self, FuncError> {
        if !self.same_grid(g) {
            return Err(FuncError::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&g.values)
            .map(|(&fv, &gv)| c * fv + sign * gv)
            .collect();
        Self::new(self.a, self.b, values)
    }
}

/// Registry of closed-form functions with exact k-th derivatives.
///
/// These feed the Caputo operator (which integrates the exact n-th
/// derivative) and every closed-form oracle. `derivative(0, x)` equals
/// `value(x)` by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    /// Constant c.
    Constant(f64),
    /// x^m. For non-integer m the domain is x > 0 (x = 0 allowed when m > 0).
    Power(f64),
    /// c0 + c1·x + c2·x² + …
    Polynomial(Vec<f64>),
    /// e^{λx}.
    Exponential(f64),
    /// sin(ωx).
    Sinusoid(f64),
}

impl AnalyticFunction {
    pub fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// Exact k-th derivative at x. Returns NaN/±∞ where the expression is
    /// undefined (negative base with fractional exponent, poles at 0);
    /// [`sample`] turns those into domain errors.
    pub fn derivative(&self, k: u32, x: f64) -> f64 {
        match self {
            Self::Constant(c) => {
                if k == 0 {
                    *c
                } else {
                    0.0
                }
            }
            Self::Power(m) => {
                // d^k/dx^k x^m = m(m-1)…(m-k+1) x^{m-k}
                let mut coeff = 1.0;
                for j in 0..k {
                    coeff *= m - j as f64;
                }
                if coeff == 0.0 {
                    return 0.0; // integer m, differentiated to extinction
                }
                coeff * x.powf(m - k as f64)
            }
            Self::Polynomial(coeffs) => {
                // Horner on the k-times differentiated coefficients
                let k = k as usize;
                if k >= coeffs.len() {
                    return 0.0;
                }
                let mut acc = 0.0;
                for i in (k..coeffs.len()).rev() {
                    let mut falling = 1.0;
                    for j in 0..k {
                        falling *= (i - j) as f64;
                    }
                    acc = acc * x + coeffs[i] * falling;
                }
                acc
            }
            Self::Exponential(lambda) => lambda.powi(k as i32) * (lambda * x).exp(),
            Self::Sinusoid(omega) => {
                // d^k sin(ωx) = ω^k sin(ωx + kπ/2)
                let phase = (k % 4) as f64 * core::f64::consts::FRAC_PI_2;
                omega.powi(k as i32) * (omega * x + phase).sin()
            }
        }
    }
}

/// Sample an analytic function on a uniform grid; errors if the function is
/// undefined anywhere on [a, b].
pub fn sample(f: &AnalyticFunction, spec: &GridSpec) -> Result<GridFunction, FuncError> {
    GridFunction::from_fn(spec, |x| f.value(x))
}

/// Like [`sample`] but for the exact k-th derivative.
pub fn sample_derivative(
    f: &AnalyticFunction,
    k: u32,
    spec: &GridSpec,
) -> Result<GridFunction, FuncError> {
    GridFunction::from_fn(spec, |x| f.derivative(k, x))
}
