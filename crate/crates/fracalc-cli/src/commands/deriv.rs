use std::io::Write;

use fracalc_core::fracops::{caputo_derivative, gl_derivative, rl_derivative};
use fracalc_core::funcspace::{sample, GridSpec};
use fracalc_core::{AnalyticFunction, FractionalOrder, GridFunction, Side};

use super::{check_size, func_error, operator_error, parse_order};
use crate::funcspec::{parse_function, parse_interval, parse_list};
use crate::output::{fmt, sink, write_points};
use crate::{ensure_finite, validation, CliError, DerivArgs, MethodArg, SideArg};

struct Setup {
    f: AnalyticFunction,
    grid: GridFunction,
    spec: GridSpec,
    order: FractionalOrder,
    side: Side,
    xs: Vec<f64>,
}

fn setup(args: &DerivArgs) -> Result<Setup, CliError> {
    let f = parse_function(&args.func).map_err(validation)?;
    let order = parse_order(args.alpha)?;
    let (a, b) = parse_interval(&args.domain, "--domain").map_err(validation)?;
    let xs = parse_list(&args.at, "--at").map_err(validation)?;
    check_size(args.n, "--n")?;
    let spec = GridSpec::new(a, b, args.n).map_err(func_error)?;
    let grid = sample(&f, &spec).map_err(func_error)?;
    let side = match args.side {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    };
    Ok(Setup { f, grid, spec, order, side, xs })
}

/// GL is defined on grid nodes; evaluate at the node nearest to x.
fn gl_at_nearest(s: &Setup, x: f64) -> Result<f64, CliError> {
    let h = s.grid.spacing();
    let node = s.grid.a() + ((x - s.grid.a()) / h).round() * h;
    gl_derivative(&s.grid, s.order, node).map_err(operator_error)
}

pub fn run(args: &DerivArgs) -> Result<(), CliError> {
    let s = setup(args)?;
    if matches!(args.method, MethodArg::Gl | MethodArg::All) && s.side == Side::Right {
        return Err(validation("gl supports the left side only"));
    }

    let mut w = sink(&args.out)?;
    match args.method {
        MethodArg::Rl => {
            let points = evaluate(&s, |s, x| {
                rl_derivative(&s.grid, s.order, s.side, x).map_err(operator_error)
            })?;
            write_points(&mut *w, &points)?;
        }
        MethodArg::Caputo => {
            let points = evaluate(&s, |s, x| {
                caputo_derivative(&s.f, s.order, s.side, &s.spec, x).map_err(operator_error)
            })?;
            write_points(&mut *w, &points)?;
        }
        MethodArg::Gl => {
            let points = evaluate(&s, gl_at_nearest)?;
            write_points(&mut *w, &points)?;
        }
        MethodArg::All => {
            writeln!(w, "x,rl,caputo,gl")?;
            for &x in &s.xs {
                let rl = ensure_finite(
                    rl_derivative(&s.grid, s.order, s.side, x).map_err(operator_error)?,
                    "rl derivative",
                )?;
                let cap = ensure_finite(
                    caputo_derivative(&s.f, s.order, s.side, &s.spec, x)
                        .map_err(operator_error)?,
                    "caputo derivative",
                )?;
                let gl = ensure_finite(gl_at_nearest(&s, x)?, "gl derivative")?;
                writeln!(w, "{},{},{},{}", fmt(x), fmt(rl), fmt(cap), fmt(gl))?;
            }
        }
    }
    Ok(())
}

fn evaluate(
    s: &Setup,
    op: impl Fn(&Setup, f64) -> Result<f64, CliError>,
) -> Result<Vec<(f64, f64)>, CliError> {
    s.xs.iter()
        .map(|&x| Ok((x, ensure_finite(op(s, x)?, "derivative")?)))
        .collect()
}
