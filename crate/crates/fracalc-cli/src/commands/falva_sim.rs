use std::io::Write;

use fracalc_core::falva::{falva_action, simulate, FalvaError, FalvaProblem};

use super::check_size;
use crate::funcspec::{parse_interval, parse_list, parse_model};
use crate::output::{fmt, sink, write_trajectory};
use crate::{validation, CliError, FalvaSimArgs};

pub fn run(args: &FalvaSimArgs) -> Result<(), CliError> {
    let q0 = parse_list(&args.q0, "--q0").map_err(validation)?;
    let v0 = parse_list(&args.v0, "--v0").map_err(validation)?;
    if q0.len() != v0.len() {
        return Err(validation(format!(
            "--q0 has {} components but --v0 has {}",
            q0.len(),
            v0.len()
        )));
    }
    check_size(args.steps, "--steps")?;
    let model = parse_model(&args.model, q0.len()).map_err(validation)?;
    let (a, t) = parse_interval(&args.horizon, "--horizon").map_err(validation)?;
    let epsilon = args.eps.unwrap_or_else(|| FalvaProblem::default_standoff(a, t));

    let problem = FalvaProblem::new(model, args.alpha, a, t, q0, v0, epsilon, args.steps)
        .map_err(|e| match e {
            FalvaError::InvalidAlpha(_) => validation("alpha must lie in (0,1]"),
            other => validation(other.to_string()),
        })?;

    let path = simulate(&problem).map_err(|e| match e {
        FalvaError::NonFiniteState { step } => {
            CliError::Numerical(format!("integrator state became non-finite at step {step}"))
        }
        other => validation(other.to_string()),
    })?;

    let mut w = sink(&args.out)?;
    write_trajectory(&mut *w, &path)?;
    if args.action {
        let s = falva_action(&problem, &path).map_err(|e| validation(e.to_string()))?;
        if !s.is_finite() {
            return Err(CliError::Numerical("action is non-finite".into()));
        }
        writeln!(w, "# action={}", fmt(s))?;
    }
    Ok(())
}
