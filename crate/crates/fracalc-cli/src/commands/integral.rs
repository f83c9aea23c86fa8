use fracalc_core::fracops::rl_integral;
use fracalc_core::funcspace::{sample, GridSpec};
use fracalc_core::Side;

use super::{check_size, func_error, operator_error, parse_order};
use crate::funcspec::{parse_function, parse_interval, parse_list};
use crate::output::{sink, write_points};
use crate::{ensure_finite, validation, CliError, IntegralArgs, SideArg};

pub fn run(args: &IntegralArgs) -> Result<(), CliError> {
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

    let mut points = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = rl_integral(&grid, order, side, x).map_err(operator_error)?;
        points.push((x, ensure_finite(v, "integral")?));
    }
    let mut w = sink(&args.out)?;
    write_points(&mut *w, &points)?;
    Ok(())
}
