//! Parsers for the little `kind:params` grammars used on the command line:
//! functions (`const:c`, `pow:m`, `poly:c0,c1,…`, `exp:λ`, `sin:ω`),
//! Lagrangian models (`oscillator:ω`, `freeparticle`, `well:k`) and
//! comma-separated numeric lists.

use fracalc_core::falva::LagrangianModel;
use fracalc_core::AnalyticFunction;

pub fn parse_number(s: &str, what: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|_| format!("{what}: expected a number, got '{s}'"))
}

pub fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Err(format!("{what}: empty list"));
    }
    s.split(',').map(|part| parse_number(part, what)).collect()
}

/// "a,b" with b > a.
pub fn parse_interval(s: &str, what: &str) -> Result<(f64, f64), String> {
    let parts = parse_list(s, what)?;
    if parts.len() != 2 {
        return Err(format!("{what}: expected 'a,b', got '{s}'"));
    }
    if parts[1].partial_cmp(&parts[0]) != Some(std::cmp::Ordering::Greater) {
        return Err(format!("{what}: endpoints must satisfy b > a, got '{s}'"));
    }
    Ok((parts[0], parts[1]))
}

pub fn parse_function(spec: &str) -> Result<AnalyticFunction, String> {
    let (kind, params) = match spec.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (spec, None),
    };
    let one = |what: &str| -> Result<f64, String> {
        parse_number(params.ok_or_else(|| format!("function '{kind}' needs a parameter"))?, what)
    };
    match kind {
        "const" => Ok(AnalyticFunction::Constant(one("const:c")?)),
        "pow" => Ok(AnalyticFunction::Power(one("pow:m")?)),
        "exp" => Ok(AnalyticFunction::Exponential(one("exp:lambda")?)),
        "sin" => Ok(AnalyticFunction::Sinusoid(one("sin:omega")?)),
        "poly" => {
            let coeffs = parse_list(
                params.ok_or_else(|| "poly needs coefficients".to_string())?,
                "poly coefficients",
            )?;
            Ok(AnalyticFunction::Polynomial(coeffs))
        }
        other => Err(format!(
            "unknown function kind '{other}' (expected const:c, pow:m, poly:c0,c1,…, exp:λ, sin:ω)"
        )),
    }
}

pub fn parse_model(spec: &str, dim: usize) -> Result<LagrangianModel, String> {
    let (kind, params) = match spec.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (spec, None),
    };
    let one = |what: &str| -> Result<f64, String> {
        parse_number(params.ok_or_else(|| format!("model '{kind}' needs a parameter"))?, what)
    };
    let built = match kind {
        "oscillator" => LagrangianModel::oscillator(dim, one("oscillator:omega")?),
        "freeparticle" => LagrangianModel::free_particle(dim),
        "well" => LagrangianModel::quartic_well(dim, one("well:k")?),
        other => {
            return Err(format!(
                "unknown model '{other}' (expected oscillator:ω, freeparticle, well:k)"
            ))
        }
    };
    built.map_err(|e| format!("invalid model: {e}"))
}
