//! Data-file ingestion and small parsers for the grid/edge flags.
//!
//! Data files hold one positive real per line, optionally preceded by a
//! single header line. Parse failures name the offending line.

use std::path::Path;

use lxdisc::Sample;

use crate::report::CliError;

pub fn read_sample(path: &Path) -> Result<Sample, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display()), None))?;
    let mut values = Vec::new();
    let mut first_data_line = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim().trim_end_matches(',');
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) => {
                if !v.is_finite() || v <= 0.0 {
                    return Err(CliError::input(
                        format!("value {v} is not a positive real"),
                        Some(idx + 1),
                    ));
                }
                values.push(v);
                first_data_line = false;
            }
            Err(_) => {
                // A single leading header line is allowed.
                if first_data_line && values.is_empty() {
                    first_data_line = false;
                    continue;
                }
                return Err(CliError::input(
                    format!("cannot parse '{line}' as a number"),
                    Some(idx + 1),
                ));
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::input(
            "no observations in input".to_string(),
            None,
        ));
    }
    Sample::new(values).map_err(CliError::from)
}

/// `lo:hi` restricts `base` to the closed range; `lo:hi:step` generates an
/// arithmetic progression instead.
pub fn resolve_grid(spec: Option<&str>, base: &[f64]) -> Result<Vec<f64>, CliError> {
    let Some(spec) = spec else {
        return Ok(base.to_vec());
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.parse::<f64>()
            .map_err(|_| CliError::usage(format!("grid component '{s}' is not a number")))
    };
    match parts.as_slice() {
        [lo, hi] => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if !(lo > 0.0 && hi >= lo) {
                return Err(CliError::usage(format!("invalid grid range {lo}:{hi}")));
            }
            let eps = 1e-9;
            Ok(base
                .iter()
                .copied()
                .filter(|&p| p >= lo - eps && p <= hi + eps)
                .collect())
        }
        [lo, hi, step] => {
            let (lo, hi, step) = (parse(lo)?, parse(hi)?, parse(step)?);
            if !(lo > 0.0 && hi >= lo && step > 0.0) {
                return Err(CliError::usage(format!(
                    "invalid grid spec {lo}:{hi}:{step}"
                )));
            }
            let mut grid = Vec::new();
            let mut i = 0u64;
            loop {
                let v = lo + step * i as f64;
                if v > hi + 1e-12 {
                    break;
                }
                grid.push(v);
                i += 1;
            }
            Ok(grid)
        }
        _ => Err(CliError::usage(format!(
            "grid must be lo:hi or lo:hi:step, got '{spec}'"
        ))),
    }
}

pub fn parse_edges(spec: &str) -> Result<Vec<f64>, CliError> {
    let mut edges = Vec::new();
    for part in spec.split(',') {
        let v = part
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::usage(format!("edge '{part}' is not a number")))?;
        edges.push(v);
    }
    Ok(edges)
}

pub fn parse_n_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut ns = Vec::new();
    for part in spec.split(',') {
        let v = part.trim().parse::<usize>().map_err(|_| {
            CliError::usage(format!("sample size '{part}' is not a positive integer"))
        })?;
        ns.push(v);
    }
    Ok(ns)
}
