use std::io::Write;

use fracalc_core::fracops::{
    caputo_derivative, closed_form_rl_derivative_power, closed_form_rl_integral_power,
    gl_derivative, rl_derivative, rl_integral, ClosedForm,
};
use fracalc_core::funcspace::{sample, GridSpec};
use fracalc_core::{AnalyticFunction, FractionalOrder, Side};

use super::{check_size, func_error, operator_error, parse_order};
use crate::funcspec::{parse_function, parse_interval, parse_list};
use crate::output::{fmt, sink};
use crate::{ensure_finite, validation, CliError, ConvergeArgs, MethodArg};

#[derive(Clone, Copy, PartialEq)]
enum Target {
    Integral,
    DerivRl,
    DerivCaputo,
    DerivGl,
}

/// Closed-form value of the target operator applied to `f` at `x`
/// (terminal 0). Only power-law functions admit one; exp/sin do not.
fn oracle(f: &AnalyticFunction, order: FractionalOrder, target: Target, x: f64) -> Result<f64, CliError> {
    let power_term = |m: f64, scale: f64| -> Result<f64, CliError> {
        let cf = match target {
            Target::Integral => {
                closed_form_rl_integral_power(m, order).map_err(operator_error)?
            }
            Target::DerivRl | Target::DerivGl => {
                closed_form_rl_derivative_power(m, order).map_err(operator_error)?
            }
            Target::DerivCaputo => {
                // Caputo annihilates polynomial terms below the ceiling
                // order; above it the power rule coincides with RL
                let n = order.ceil_order() as f64;
                if m <= n - 1.0 && m == m.floor() {
                    ClosedForm::Zero
                } else if m > n - 1.0 {
                    closed_form_rl_derivative_power(m, order).map_err(operator_error)?
                } else {
                    return Err(validation(format!(
                        "no caputo closed form for pow:{m} at alpha {}",
                        order.alpha()
                    )));
                }
            }
        };
        Ok(scale * cf.evaluate(x))
    };
    match f {
        AnalyticFunction::Constant(c) => power_term(0.0, *c),
        AnalyticFunction::Power(m) => power_term(*m, 1.0),
        AnalyticFunction::Polynomial(coeffs) => {
            let mut acc = 0.0;
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0.0 {
                    acc += power_term(i as f64, c)?;
                }
            }
            Ok(acc)
        }
        AnalyticFunction::Exponential(_) | AnalyticFunction::Sinusoid(_) => Err(validation(
            "no closed-form oracle for exp/sin; use const, pow or poly",
        )),
    }
}

pub fn run(args: &ConvergeArgs) -> Result<(), CliError> {
    let f = parse_function(&args.func).map_err(validation)?;
    let order = parse_order(args.alpha)?;
    let (a, b) = parse_interval(&args.domain, "--domain").map_err(validation)?;
    if a != 0.0 {
        return Err(validation("closed-form oracles assume terminal a = 0"));
    }
    let xs = parse_list(&args.at, "--at").map_err(validation)?;
    if xs.len() != 1 {
        return Err(validation("converge takes a single --at point"));
    }
    let x = xs[0];
    let target = match args.method {
        None => Target::Integral,
        Some(MethodArg::Rl) => Target::DerivRl,
        Some(MethodArg::Caputo) => Target::DerivCaputo,
        Some(MethodArg::Gl) => Target::DerivGl,
        Some(MethodArg::All) => {
            return Err(validation("converge studies one method at a time"))
        }
    };
    if args.n < 2 {
        return Err(validation("--n must be at least 2"));
    }
    check_size((args.n - 1) * 16 + 1, "--n (finest level)")?;
    // reject functions without a closed form before emitting anything
    oracle(&f, order, target, x)?;

    let mut w = sink(&args.out)?;
    writeln!(w, "n_points,h,abs_error,observed_order")?;
    let mut previous_error: Option<f64> = None;
    for level in 0..5u32 {
        let n = (args.n - 1) * (1usize << level) + 1;
        let spec = GridSpec::new(a, b, n).map_err(func_error)?;
        let h = spec.spacing();
        let (value, reference) = match target {
            Target::Integral => {
                let grid = sample(&f, &spec).map_err(func_error)?;
                (
                    rl_integral(&grid, order, Side::Left, x).map_err(operator_error)?,
                    oracle(&f, order, target, x)?,
                )
            }
            Target::DerivRl => {
                let grid = sample(&f, &spec).map_err(func_error)?;
                (
                    rl_derivative(&grid, order, Side::Left, x).map_err(operator_error)?,
                    oracle(&f, order, target, x)?,
                )
            }
            Target::DerivCaputo => (
                caputo_derivative(&f, order, Side::Left, &spec, x).map_err(operator_error)?,
                oracle(&f, order, target, x)?,
            ),
            Target::DerivGl => {
                let grid = sample(&f, &spec).map_err(func_error)?;
                let node = a + ((x - a) / h).round() * h;
                (
                    gl_derivative(&grid, order, node).map_err(operator_error)?,
                    oracle(&f, order, target, node)?,
                )
            }
        };
        let value = ensure_finite(value, "operator")?;
        let error = (value - reference).abs();
        // order is meaningless once the error sits at the rounding floor
        let noise_floor = 1e-13 * (1.0 + reference.abs());
        let observed = match previous_error {
            Some(prev) if prev > noise_floor && error > noise_floor => {
                (prev / error).log2()
            }
            _ => f64::NAN,
        };
        writeln!(w, "{},{},{},{}", n, fmt(h), fmt(error), fmt(observed))?;
        previous_error = Some(error);
    }
    Ok(())
}
