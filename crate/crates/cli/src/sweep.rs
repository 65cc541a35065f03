//! Cartesian parameter sweeps over `key=v1,v2,...` axes.

use std::fs;
use std::path::Path;

use bousslab_core::decay::NormKind;

use crate::commands::{linear, simulate, RunSummary};
use crate::config::{ExperimentConfig, KEYS};
use crate::error::CliError;
use crate::output::num;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub values: Vec<String>,
}

impl std::str::FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (key, list) = s
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("grid axis '{s}': expected key=v1,v2,...")))?;
        let key = key.trim().to_string();
        if key == "out" || !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("grid axis '{key}' cannot be swept")));
        }
        let values: Vec<String> = list.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
        Ok(Axis { key, values })
    }
}

/// All combinations, first axis slowest. No axes means no runs.
pub fn combinations(axes: &[Axis]) -> Vec<Vec<(String, String)>> {
    if axes.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<Vec<(String, String)>> = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |v| {
                    let mut row = prefix.clone();
                    row.push((axis.key.clone(), v.clone()));
                    row
                })
            })
            .collect();
    }
    out
}

fn run_one(base: &ExperimentConfig, point: &[(String, String)], dir: &Path, exact: bool) -> Result<RunSummary, CliError> {
    let mut cfg = base.clone();
    for (k, v) in point {
        cfg.set(k, v)?;
    }
    cfg.out = dir.to_path_buf();
    if exact {
        linear(&cfg)
    } else {
        simulate(&cfg, false)
    }
}

fn threads() -> Option<usize> {
    std::env::var("BOUSSLAB_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs every grid point into `base.out/run-NNN` and writes `summary.csv`.
/// A failing point is recorded in its row; the sweep carries on.
pub fn sweep(base: &ExperimentConfig, axes: &[Axis], exact: bool) -> Result<usize, CliError> {
    fs::create_dir_all(&base.out)?;
    let points = combinations(axes);
    let dirs: Vec<_> = (0..points.len()).map(|i| base.out.join(format!("run-{i:03}"))).collect();
    let job = |i: usize| run_one(base, &points[i], &dirs[i], exact);

    #[cfg(feature = "parallel")]
    let results: Vec<Result<RunSummary, CliError>> = {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads() {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
        pool.install(|| (0..points.len()).into_par_iter().map(job).collect())
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<RunSummary, CliError>> = {
        let _ = threads();
        (0..points.len()).map(job).collect()
    };

    let mut w = csv::Writer::from_path(base.out.join("summary.csv"))?;
    let mut header = vec!["run".to_string()];
    header.extend(axes.iter().map(|a| a.key.clone()));
    header.push("status".into());
    for k in NormKind::ALL {
        header.push(format!("r_{}", k.id()));
        header.push(format!("C_{}", k.id()));
    }
    header.push("message".into());
    w.write_record(&header)?;

    for (i, (point, result)) in points.iter().zip(&results).enumerate() {
        let mut row = vec![format!("run-{i:03}")];
        row.extend(point.iter().map(|(_, v)| v.clone()));
        match result {
            Ok(s) => {
                row.push(if s.contaminated { "contaminated" } else { "ok" }.into());
                for k in NormKind::ALL {
                    match s.fits.iter().find(|(kind, _)| *kind == k) {
                        Some((_, f)) => {
                            row.push(num(f.r));
                            row.push(num(f.c));
                        }
                        None => row.extend([String::new(), String::new()]),
                    }
                }
                row.push(s.warnings.join("; "));
            }
            Err(e) => {
                row.push("failed".into());
                row.extend(std::iter::repeat_n(String::new(), 2 * NormKind::ALL.len()));
                row.push(e.to_string());
            }
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(points.len())
}
