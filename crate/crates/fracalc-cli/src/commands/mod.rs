pub mod converge;
pub mod deriv;
pub mod falva_sim;
pub mod integral;
pub mod verify;

use fracalc_core::funcspace::FuncError;
use fracalc_core::fracops::OperatorError;
use fracalc_core::FractionalOrder;

use crate::{validation, CliError};

pub fn parse_order(alpha: f64) -> Result<FractionalOrder, CliError> {
    FractionalOrder::new(alpha)
        .map_err(|_| validation(format!("alpha must be a finite positive order, got {alpha}")))
}

/// Keep grid/step requests within desk scale instead of attempting
/// multi-gigabyte allocations.
pub fn check_size(value: usize, flag: &str) -> Result<(), CliError> {
    const MAX: usize = 10_000_000;
    if value > MAX {
        return Err(validation(format!("{flag} {value} too large (maximum {MAX})")));
    }
    Ok(())
}

pub fn operator_error(e: OperatorError) -> CliError {
    validation(e.to_string())
}

pub fn func_error(e: FuncError) -> CliError {
    validation(e.to_string())
}
