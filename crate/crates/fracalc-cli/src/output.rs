//! CSV emission. All numeric fields print with 17 significant digits
//! (`{:.16e}`), which round-trips f64 exactly; computed results go to
//! standard output unless `--out` redirects them to a file.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use fracalc_core::falva::Trajectory;

pub fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn fmt(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// `x,value` rows.
pub fn write_points(w: &mut dyn Write, points: &[(f64, f64)]) -> io::Result<()> {
    writeln!(w, "x,value")?;
    for &(x, v) in points {
        writeln!(w, "{},{}", fmt(x), fmt(v))?;
    }
    Ok(())
}

/// `tau,q_1..q_n,v_1..v_n` rows, one per node.
pub fn write_trajectory(w: &mut dyn Write, path: &Trajectory) -> io::Result<()> {
    let dim = path.dim();
    let mut header = String::from("tau");
    for i in 1..=dim {
        header.push_str(&format!(",q_{i}"));
    }
    for i in 1..=dim {
        header.push_str(&format!(",v_{i}"));
    }
    writeln!(w, "{header}")?;
    for (i, &tau) in path.taus().iter().enumerate() {
        let mut row = fmt(tau);
        for q in &path.positions()[i] {
            row.push(',');
            row.push_str(&fmt(*q));
        }
        for v in &path.velocities()[i] {
            row.push(',');
            row.push_str(&fmt(*v));
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}
