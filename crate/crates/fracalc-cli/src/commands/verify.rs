//! The `verify` subcommand: executable property suites for the operator
//! identities and the variational layer, with fixed seeds and deterministic
//! iteration order. One line per property: measured value, bound, verdict.
//! Exit 0 when every property holds, 1 otherwise.

use std::io::Write;

use fracalc_core::falva::{
    action_weights, max_interior_residual, rayleigh_residual_equivalence, simulate,
    stationarity_check, FalvaProblem, LagrangianModel, Trajectory,
};
use fracalc_core::fracops::{
    caputo_derivative, caputo_rl_relation_residual, check_integer_recovery,
    check_integration_by_parts, check_linearity, check_semigroup, check_zero_order_limit,
    gl_derivative, rl_derivative, rl_integral,
};
use fracalc_core::funcspace::{sample, GridSpec};
use fracalc_core::specfun::gamma;
use fracalc_core::{
    AnalyticFunction, FractionalOrder, GridFunction, OperatorKind, OperatorRequest, Side,
};

use super::{func_error, operator_error};
use crate::{validation, CliError, VerifyArgs};

const PI: f64 = std::f64::consts::PI;

/// One checked property: `measured` must stay within `bound` (or reach it,
/// for lower-bounded properties like convergence orders).
struct Outcome {
    property: &'static str,
    measured: f64,
    bound: f64,
    at_least: bool,
    note: &'static str,
}

impl Outcome {
    fn upper(property: &'static str, measured: f64, bound: f64, note: &'static str) -> Self {
        Self { property, measured, bound, at_least: false, note }
    }

    fn lower(property: &'static str, measured: f64, bound: f64, note: &'static str) -> Self {
        Self { property, measured, bound, at_least: true, note }
    }

    fn pass(&self) -> bool {
        if self.at_least {
            self.measured >= self.bound
        } else {
            self.measured <= self.bound
        }
    }
}

/// Deterministic pseudo-random stream for the fixed-seed suites.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / 9_007_199_254_740_992.0;
        lo + unit * (hi - lo)
    }
}

struct Config {
    grid: usize,
    semigroup_pair: Option<(f64, f64)>,
}

fn order(alpha: f64) -> FractionalOrder {
    FractionalOrder::new(alpha).unwrap()
}

fn sampled(f: &AnalyticFunction, a: f64, b: f64, n: usize) -> Result<GridFunction, CliError> {
    sample(f, &GridSpec::new(a, b, n).map_err(func_error)?).map_err(func_error)
}

type SuiteFn = fn(&Config) -> Result<Vec<Outcome>, CliError>;

const SUITES: &[(&str, SuiteFn)] = &[
    ("linearity", suite_linearity),
    ("semigroup", suite_semigroup),
    ("power-law", suite_power_law),
    ("gl-cross", suite_gl_cross),
    ("caputo-constant", suite_caputo_constant),
    ("rl-constant", suite_rl_constant),
    ("nonlocality", suite_nonlocality),
    ("caputo-rl-relation", suite_caputo_rl_relation),
    ("reflection", suite_reflection),
    ("parts", suite_parts),
    ("integer-recovery", suite_integer_recovery),
    ("zero-limit", suite_zero_limit),
    ("classical-limit", suite_classical_limit),
    ("alpha-continuity", suite_alpha_continuity),
    ("residual-consistency", suite_residual_consistency),
    ("rayleigh", suite_rayleigh),
    ("stationarity", suite_stationarity),
    ("action-weights", suite_action_weights),
];

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let config = Config {
        grid: args.grid.unwrap_or(257),
        semigroup_pair: match (args.alpha, args.beta) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(validation("--alpha and --beta must be given together")),
        },
    };
    if config.grid < 9 {
        return Err(validation("--grid must be at least 9"));
    }
    if config.grid > 8193 {
        return Err(validation("--grid larger than 8193 makes the quadratic suites crawl"));
    }

    let selected: Vec<_> = match &args.only {
        Some(name) => {
            let found: Vec<_> =
                SUITES.iter().filter(|(suite, _)| suite == name).collect();
            if found.is_empty() {
                let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
                return Err(validation(format!(
                    "unknown property '{name}'; available: {}",
                    names.join(", ")
                )));
            }
            found
        }
        None => SUITES.iter().collect(),
    };

    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let mut all_pass = true;
    for (suite, runner) in selected {
        for outcome in runner(&config)? {
            let verdict = if outcome.pass() { "pass" } else { "FAIL" };
            all_pass &= outcome.pass();
            let relation = if outcome.at_least { ">=" } else { "<=" };
            writeln!(
                w,
                "{suite:<22} {:<26} measured {:>12.5e} {relation} {:>10.3e}  {verdict}  {}",
                outcome.property, outcome.measured, outcome.bound, outcome.note
            )?;
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::PropertyFailure)
    }
}

// ---------------------------------------------------------------------------
// operator suites
// ---------------------------------------------------------------------------

fn suite_linearity(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let n = 129;
    let f = sampled(&AnalyticFunction::Sinusoid(2.3), 0.0, 1.0, n)?;
    let g = sampled(&AnalyticFunction::Polynomial(vec![0.3, -1.0, 0.7]), 0.0, 1.0, n)?;
    let h = 1.0 / (n - 1) as f64;
    let xs = [32.0 * h, 64.0 * h, 96.0 * h, 128.0 * h];
    let mut rng = SplitMix64(0xA1_1C_E5);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let c = rng.uniform(-3.0, 3.0);
        for (kind, alpha) in [
            (OperatorKind::RlIntegral, 0.5),
            (OperatorKind::RlIntegral, 1.3),
            (OperatorKind::RlDerivative, 0.5),
            (OperatorKind::RlDerivative, 1.5),
            (OperatorKind::Caputo, 0.5),
            (OperatorKind::GrunwaldLetnikov, 0.7),
        ] {
            let req = OperatorRequest::new(kind, Side::Left, order(alpha), 0.0);
            let xs_used: &[f64] =
                if kind == OperatorKind::RlDerivative { &xs[..3] } else { &xs };
            let dev = check_linearity(&req, &f, &g, c, xs_used).map_err(operator_error)?;
            worst = worst.max(dev / (1.0 + c.abs()));
        }
    }
    Ok(vec![Outcome::upper("max deviation / (1+|c|)", worst, 1e-9, "all operator kinds")])
}

fn suite_semigroup(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let functions = [
        AnalyticFunction::Power(1.0),
        AnalyticFunction::Power(2.0),
        AnalyticFunction::Sinusoid(1.0),
    ];
    let mut rng = SplitMix64(0x5E51);
    let pairs: Vec<(f64, f64)> = match c.semigroup_pair {
        Some(pair) => vec![pair],
        None => (0..20).map(|_| (rng.uniform(0.1, 1.5), rng.uniform(0.1, 1.5))).collect(),
    };

    // deviation at the working grid
    let mut worst_dev = 0.0f64;
    for &(a, b) in &pairs {
        for f in &functions {
            let g = sampled(f, 0.0, 1.0, c.grid)?;
            let dev = check_semigroup(&g, order(a), order(b), 1.0).map_err(operator_error)?;
            worst_dev = worst_dev.max(dev);
        }
    }

    // refinement order on the fixed ladder (first five pairs keep it cheap)
    let mut worst_order = f64::INFINITY;
    for &(a, b) in pairs.iter().take(5) {
        for f in &functions {
            let errs: Vec<f64> = [65usize, 129, 257, 513]
                .iter()
                .map(|&n| {
                    let g = sampled(f, 0.0, 1.0, n)?;
                    check_semigroup(&g, order(a), order(b), 1.0).map_err(operator_error)
                })
                .collect::<Result<_, _>>()?;
            if errs[3] > 1e-10 {
                worst_order = worst_order.min((errs[0] / errs[3]).log2() / 3.0);
            }
        }
    }
    if !worst_order.is_finite() {
        worst_order = 2.0; // everything at the rounding floor
    }

    Ok(vec![
        Outcome::upper("I^a I^b vs I^{a+b} deviation", worst_dev, 5e-5, "at x = b"),
        Outcome::lower("refinement order", worst_order, 1.0, "ladder 65..513"),
    ])
}

fn suite_power_law(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let mut worst = 0.0f64;
    for &m in &[1.0, 2.0, 3.0, 0.5] {
        for &alpha in &[0.25, 0.5, 0.75] {
            let g = sampled(&AnalyticFunction::Power(m), 0.0, 1.0, c.grid)?;
            let target = gamma(m + 1.0).map_err(|e| validation(e.to_string()))?
                / gamma(m - alpha + 1.0).map_err(|e| validation(e.to_string()))?
                * 0.7f64.powf(m - alpha);
            let v = rl_derivative(&g, order(alpha), Side::Left, 0.7).map_err(operator_error)?;
            worst = worst.max((v - target).abs());
        }
    }
    Ok(vec![Outcome::upper("worst |D^a x^m - closed form|", worst, 1e-2, "x = 0.7")])
}

fn suite_gl_cross(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let f = AnalyticFunction::Power(2.0);
    let errs: Vec<f64> = [129usize, 257, 513, 1025]
        .iter()
        .map(|&n| {
            let g = sampled(&f, 0.0, 1.0, n)?;
            let h = g.spacing();
            let node = (0.7 / h).round() * h;
            let gl = gl_derivative(&g, order(0.5), node).map_err(operator_error)?;
            let rl = rl_derivative(&g, order(0.5), Side::Left, node).map_err(operator_error)?;
            Ok((gl - rl).abs())
        })
        .collect::<Result<_, CliError>>()?;
    let order_est = (errs[0] / errs[3]).log2() / 3.0;
    Ok(vec![
        Outcome::upper("|GL - RL| at finest grid", errs[3], 1e-3, "two discretisations"),
        Outcome::lower("cross-validation order", order_est, 0.8, "ladder 129..1025"),
    ])
}

fn suite_caputo_constant(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let spec = GridSpec::new(0.0, 2.0, 257).map_err(func_error)?;
    let v = caputo_derivative(&AnalyticFunction::Constant(7.0), order(0.5), Side::Left, &spec, 1.3)
        .map_err(operator_error)?;
    Ok(vec![Outcome::upper("caputo of constant", v.abs(), 0.0, "must vanish exactly")])
}

fn suite_rl_constant(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let g = sampled(&AnalyticFunction::Constant(5.0), 0.0, 2.0, c.grid)?;
    let target = 5.0 / gamma(0.5).map_err(|e| validation(e.to_string()))?;
    let v = rl_derivative(&g, order(0.5), Side::Left, 1.0).map_err(operator_error)?;
    Ok(vec![Outcome::upper(
        "|D^0.5 const - c x^-a / G(1-a)|",
        (v - target).abs(),
        1e-2,
        "RL keeps constants alive",
    )])
}

fn suite_nonlocality(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let f = AnalyticFunction::Power(2.0);
    let spec = GridSpec::new(0.0, 1.0, c.grid).map_err(func_error)?;
    let base = sample(&f, &spec).map_err(func_error)?;
    let x = 0.8;
    let cutoff = 0.25 * x;
    let h = spec.spacing();
    let perturbed: Vec<f64> = (0..c.grid)
        .map(|i| {
            let t = i as f64 * h;
            let bump =
                if t <= cutoff { 0.1 * (PI * t / cutoff).sin().powi(2) } else { 0.0 };
            f.value(t) + bump
        })
        .collect();
    let pert = GridFunction::new(0.0, 1.0, perturbed).map_err(func_error)?;
    let d0 = rl_derivative(&base, order(0.5), Side::Left, x).map_err(operator_error)?;
    let d1 = rl_derivative(&pert, order(0.5), Side::Left, x).map_err(operator_error)?;
    Ok(vec![Outcome::lower(
        "response to far-field bump",
        (d1 - d0).abs(),
        1e-6,
        "memory reaches back to the terminal",
    )])
}

fn suite_caputo_rl_relation(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let f = AnalyticFunction::Polynomial(vec![1.0, 1.0]);
    let coarse = GridSpec::new(0.0, 2.0, c.grid).map_err(func_error)?;
    let fine = GridSpec::new(0.0, 2.0, 2 * (c.grid - 1) + 1).map_err(func_error)?;
    let r_coarse =
        caputo_rl_relation_residual(&f, order(0.5), &coarse, 1.0).map_err(operator_error)?.abs();
    let r_fine =
        caputo_rl_relation_residual(&f, order(0.5), &fine, 1.0).map_err(operator_error)?.abs();
    Ok(vec![
        Outcome::upper("initial-value relation residual", r_coarse, 1e-2, "f = 1 + x"),
        Outcome::upper("residual after refinement", r_fine, r_coarse.max(1e-14), "decreasing"),
    ])
}

fn suite_reflection(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let f = sampled(&AnalyticFunction::Sinusoid(1.3), 0.0, 1.0, 129)?;
    let mut rng = SplitMix64(0x0F_1E_C7);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let alpha = rng.uniform(0.2, 1.8);
        let x = rng.uniform(0.05, 0.95);
        let right = rl_integral(&f, order(alpha), Side::Right, x).map_err(operator_error)?;
        let left =
            rl_integral(&f.reflected(), order(alpha), Side::Left, 1.0 - x).map_err(operator_error)?;
        worst = worst.max((right - left).abs());
    }
    Ok(vec![Outcome::upper("left/right mirror deviation", worst, 1e-12, "symmetric grid")])
}

fn suite_parts(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let n = c.grid.max(129);
    let f = sampled(&AnalyticFunction::Power(2.0), 0.0, 1.0, n)?;
    let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 1.0, n)?;
    let dev = check_integration_by_parts(&f, &g, order(0.7)).map_err(operator_error)?;
    Ok(vec![Outcome::upper("two-sided transfer deviation", dev, 1e-3, "f = x^2, g = x")])
}

fn suite_integer_recovery(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let spec = GridSpec::new(0.0, 1.0, c.grid).map_err(func_error)?;
    let f = AnalyticFunction::Power(3.0);
    let d1 = check_integer_recovery(&f, 1, &spec, 0.5).map_err(operator_error)?;
    let d2 = check_integer_recovery(&f, 2, &spec, 0.5).map_err(operator_error)?;
    Ok(vec![Outcome::upper("classical derivative recovery", d1.max(d2), 1e-3, "f = x^3")])
}

fn suite_zero_limit(c: &Config) -> Result<Vec<Outcome>, CliError> {
    let g = sampled(&AnalyticFunction::Power(1.0), 0.0, 2.0, c.grid)?;
    let ps = [0.4, 0.2, 0.1, 0.05, 0.025];
    let devs = check_zero_order_limit(&g, 1.0, &ps).map_err(operator_error)?;
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    Ok(vec![
        Outcome::upper(
            "final vs first deviation ratio",
            devs[4] / devs[0],
            0.25,
            "D^p f -> f as p -> 0",
        ),
        Outcome::lower("sequence decreasing", monotone as u32 as f64, 1.0, "strictly"),
    ])
}

// ---------------------------------------------------------------------------
// variational suites
// ---------------------------------------------------------------------------

fn oscillator(alpha: f64, t: f64, steps: usize) -> Result<FalvaProblem, CliError> {
    FalvaProblem::new(
        LagrangianModel::oscillator(1, 1.0).map_err(|e| validation(e.to_string()))?,
        alpha,
        0.0,
        t,
        vec![1.0],
        vec![0.0],
        FalvaProblem::default_standoff(0.0, t),
        steps,
    )
    .map_err(|e| validation(e.to_string()))
}

fn suite_classical_limit(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let problem = oscillator(1.0, 2.0 * PI, 4096)?;
    let path = simulate(&problem).map_err(|e| validation(e.to_string()))?;
    let mut sup = 0.0f64;
    for (i, &tau) in path.taus().iter().enumerate() {
        sup = sup.max((path.positions()[i][0] - tau.cos()).abs());
    }
    Ok(vec![Outcome::upper("sup distance to classical", sup, 1e-6, "alpha = 1 oscillator")])
}

fn suite_alpha_continuity(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let t = 2.0 * PI;
    let steps = 8192;
    let base = simulate(&oscillator(1.0, t, steps)?).map_err(|e| validation(e.to_string()))?;
    let d99 = simulate(&oscillator(0.99, t, steps)?)
        .map_err(|e| validation(e.to_string()))?
        .sup_distance(&base)
        .map_err(|e| validation(e.to_string()))?;
    let d999 = simulate(&oscillator(0.999, t, steps)?)
        .map_err(|e| validation(e.to_string()))?
        .sup_distance(&base)
        .map_err(|e| validation(e.to_string()))?;
    Ok(vec![Outcome::upper(
        "distance ratio d(0.999)/d(0.99)",
        d999 / d99,
        1.0,
        "trajectories approach the classical limit",
    )])
}

fn suite_residual_consistency(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let coarse = oscillator(0.9, 10.0, 8192)?;
    let r_coarse = max_interior_residual(
        &coarse,
        &simulate(&coarse).map_err(|e| validation(e.to_string()))?,
        0.05,
    )
    .map_err(|e| validation(e.to_string()))?;
    let fine = oscillator(0.9, 10.0, 16384)?;
    let r_fine = max_interior_residual(
        &fine,
        &simulate(&fine).map_err(|e| validation(e.to_string()))?,
        0.05,
    )
    .map_err(|e| validation(e.to_string()))?;
    Ok(vec![
        Outcome::upper("max interior EL residual", r_coarse, 1e-3, "8192 steps"),
        Outcome::lower("refinement order", (r_coarse / r_fine).log2(), 1.0, "vs 16384 steps"),
    ])
}

fn suite_rayleigh(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let problem = oscillator(0.5, 1.0, 2048)?;
    let path = simulate(&problem).map_err(|e| validation(e.to_string()))?;
    let mut rng = SplitMix64(0xD15);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let tau = rng.uniform(0.005, problem.domain_end() - 0.005);
        worst = worst.max(
            rayleigh_residual_equivalence(&problem, &path, tau)
                .map_err(|e| validation(e.to_string()))?,
        );
    }
    Ok(vec![Outcome::upper(
        "friction vs fractional sector",
        worst,
        1e-12,
        "algebraic identity, 100 probes",
    )])
}

fn suite_stationarity(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let amplitudes = [1e-2, 1e-3, 1e-4];
    let mut outcomes = Vec::new();
    for (label, alpha) in [("slope at alpha = 1", 1.0), ("slope at alpha = 0.8", 0.8)] {
        let problem = oscillator(alpha, 2.0 * PI, 8192)?;
        let path = simulate(&problem).map_err(|e| validation(e.to_string()))?;
        let start = path.taus()[0];
        let end = path.taus()[path.len() - 1];
        let window = end - start;
        let bump = Trajectory::from_functions(
            start,
            end,
            path.len(),
            |tau| vec![(PI * (tau - start) / window).sin()],
            |tau| vec![PI / window * (PI * (tau - start) / window).cos()],
        )
        .map_err(|e| validation(e.to_string()))?;
        let diffs = stationarity_check(&problem, &path, &bump, &amplitudes)
            .map_err(|e| validation(e.to_string()))?;
        let slope = {
            let lx: Vec<f64> = amplitudes.iter().map(|a| a.ln()).collect();
            let ly: Vec<f64> = diffs.iter().map(|d| d.max(1e-300).ln()).collect();
            let mx = lx.iter().sum::<f64>() / 3.0;
            let my = ly.iter().sum::<f64>() / 3.0;
            let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
            let var: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
            cov / var
        };
        outcomes.push(Outcome::lower(label, slope, 1.8, "second-order action response"));
    }
    Ok(outcomes)
}

fn suite_action_weights(_c: &Config) -> Result<Vec<Outcome>, CliError> {
    let mut min_weight = f64::INFINITY;
    for &alpha in &[0.05, 0.25, 0.5, 0.75, 1.0] {
        let taus: Vec<f64> = (0..257).map(|i| i as f64 / 256.0 * 0.99).collect();
        for w in action_weights(&taus, 1.0, alpha) {
            min_weight = min_weight.min(w);
        }
    }
    Ok(vec![Outcome::lower(
        "minimum quadrature weight",
        min_weight,
        0.0,
        "positive kernel, positive weights",
    )])
}
