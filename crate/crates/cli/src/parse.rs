//! Flag value parsers and the `x,c` data file reader.

use std::path::Path;

use pretest_core::{ErrorDist, Regressor, Sample, ScoreFunction};

use crate::CliError;

/// `a:b:step` (inclusive) or a comma-separated list.
pub fn grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if let Some((range, step)) = spec.rsplit_once(':') {
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| format!("bad grid '{spec}', expected a:b:step"))?;
        let (a, b, step) = (number(a)?, number(b)?, number(step)?);
        if step <= 0.0 || b < a {
            return Err(format!("bad grid '{spec}': need a <= b and step > 0"));
        }
        let count = ((b - a) / step + 1e-9).floor() as usize + 1;
        if count > 1_000_000 {
            return Err(format!("grid '{spec}' has too many points"));
        }
        return Ok((0..count).map(|i| a + i as f64 * step).collect());
    }
    list(spec)
}

pub fn list(spec: &str) -> Result<Vec<f64>, String> {
    let values = spec.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(values)
}

pub fn number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

/// One value for all three levels, or `alpha1,alpha2,alpha3`.
pub fn alphas(spec: &str) -> Result<[f64; 3], String> {
    match list(spec)?.as_slice() {
        [a] => Ok([*a; 3]),
        [a1, a2, a3] => Ok([*a1, *a2, *a3]),
        _ => Err(format!("--alphas takes one value or three, got '{spec}'")),
    }
}

pub fn dist(spec: &str) -> Result<ErrorDist, String> {
    let spec = spec.trim();
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<f64> = if args.is_empty() {
        Vec::new()
    } else {
        list(args)?
    };
    let d = match (name, args.as_slice()) {
        ("normal", []) => ErrorDist::StandardNormal,
        ("laplace", []) => ErrorDist::Laplace { scale: 1.0 },
        ("laplace", [scale]) => ErrorDist::Laplace { scale: *scale },
        ("t", [df]) => ErrorDist::StudentT { df: *df },
        ("contaminated", [eps, scale]) => ErrorDist::ContaminatedNormal {
            eps: *eps,
            scale: *scale,
        },
        _ => {
            return Err(format!(
            "unknown distribution '{spec}' (normal, laplace[:scale], t:df, contaminated:eps,scale)"
        ))
        }
    };
    d.validate().map_err(|e| e.to_string())?;
    Ok(d)
}

pub fn design(spec: &str) -> Result<Regressor, String> {
    match spec.trim() {
        "zeros_ones" => Ok(Regressor::ZerosOnes),
        "neg1_zeros" => Ok(Regressor::Neg1Zeros),
        "neg1_pos1" => Ok(Regressor::Neg1Pos1),
        other => Err(format!(
            "unknown design '{other}' (zeros_ones, neg1_zeros, neg1_pos1)"
        )),
    }
}

pub fn score(psi: &str, k: f64) -> Result<ScoreFunction, String> {
    match psi {
        "huber" => ScoreFunction::huber(k).map_err(|e| e.to_string()),
        "identity" => Ok(ScoreFunction::Identity),
        other => Err(format!("unknown score '{other}' (huber, identity)")),
    }
}

/// Reads a UTF-8 CSV with header `x,c` and at least two data rows.
pub fn data_file(path: &Path) -> Result<Sample, CliError> {
    let usage = CliError::usage;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if headers.iter().collect::<Vec<_>>() != ["x", "c"] {
        return Err(usage(format!(
            "{}: line 1: header must be 'x,c'",
            path.display()
        )));
    }
    let (mut x, mut c) = (Vec::new(), Vec::new());
    for record in reader.records() {
        let record = record.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| {
            number(record.get(i).unwrap_or(""))
                .map_err(|e| usage(format!("{}: line {line}: {e}", path.display())))
        };
        x.push(field(0)?);
        c.push(field(1)?);
    }
    if x.len() < 2 {
        return Err(usage(format!(
            "{}: need at least 2 data rows, found {}",
            path.display(),
            x.len()
        )));
    }
    Sample::from_columns(x, c).map_err(CliError::from)
}
