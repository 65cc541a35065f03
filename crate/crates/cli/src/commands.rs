use std::fs;
use std::io::BufWriter;
use std::path::Path;

use bousslab_core::decay::{fit, norms, DecayFit, NormKind, NormSeries};
use bousslab_core::linprop::{e_folding_time, evolve_linear, SpectralPair};
use bousslab_core::params::{Dissipation, Preset, SystemSpec};
use bousslab_core::solver::{initial_soliton, write_snapshot, FieldState, RunWarning, Solver, CONTAMINATION_LIMIT};
use bousslab_core::symbol::classify;
use num_complex::Complex64;

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{num, write_fits, write_norms, write_svg, CLASSIFY_HEADER};

/// What a finished run produced.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub fits: Vec<(NormKind, DecayFit)>,
    pub warnings: Vec<String>,
    pub contaminated: bool,
}

fn fits_of(series: &NormSeries) -> Vec<(NormKind, DecayFit)> {
    NormKind::ALL
        .into_iter()
        .filter_map(|k| fit(series, k).ok().map(|f| (k, f)))
        .collect()
}

fn write_outputs(cfg: &ExperimentConfig, series: &NormSeries) -> Result<Vec<(NormKind, DecayFit)>, CliError> {
    fs::create_dir_all(&cfg.out)?;
    fs::write(cfg.out.join("config.txt"), cfg.emit())?;
    let fits = fits_of(series);
    write_norms(&cfg.out.join("norms.csv"), series)?;
    write_fits(&cfg.out.join("fit.csv"), &cfg.system_label(), cfg.diss.id(), &fits)?;
    write_svg(&cfg.out.join("decay.svg"), series, &fits)?;
    Ok(fits)
}

/// Nonlinear run of the soliton data; writes `norms.csv`, `fit.csv`,
/// `decay.svg` and `config.txt` into `cfg.out`.
pub fn simulate(cfg: &ExperimentConfig, snapshot: bool) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    let solver = Solver::new(cfg.spec()?, cfg.grid()?, cfg.solver_config())?;
    let out = solver.run(cfg.x0())?;
    let fits = write_outputs(cfg, &out.series)?;
    if snapshot {
        let f = fs::File::create(cfg.out.join("final.bin"))?;
        write_snapshot(BufWriter::new(f), &out.final_state)?;
    }
    Ok(RunSummary {
        fits,
        warnings: out.warnings.iter().map(ToString::to_string).collect(),
        contaminated: out.contaminated(),
    })
}

/// Exact linear evolution of the same data, sampled like [`simulate`].
pub fn linear(cfg: &ExperimentConfig) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    let spec = cfg.spec()?;
    let grid = cfg.grid()?;
    let (_, per_sample) = cfg.solver_config().schedule()?;
    let every = per_sample as f64 * cfg.dt;
    let count = (cfg.t_final / every).round() as usize;

    let s0 = initial_soliton(grid.clone(), cfg.x0());
    let y0 = SpectralPair::from_eta_u(&spec, grid.clone(), s0.eta_hat, &s0.u_hat);
    let mut series = NormSeries::new();
    let mut first_bad = None;
    for n in 0..=count {
        let t = n as f64 * every;
        let y = evolve_linear(&spec, &y0, t);
        let u_hat = y.u_hat(&spec);
        let state = FieldState::from_spectral(grid.clone(), t, y.eta_hat, u_hat);
        let rec = norms(&state, &spec);
        if rec.boundary_monitor > CONTAMINATION_LIMIT && first_bad.is_none() {
            first_bad = Some(t);
        }
        series.push(rec).expect("sample times increase");
    }
    let fits = write_outputs(cfg, &series)?;
    let mut warnings = Vec::new();
    if let Some(first_t) = first_bad {
        warnings.push(
            RunWarning::BoundaryContamination {
                first_t,
                max_monitor: series.max_boundary_monitor(),
            }
            .to_string(),
        );
    }
    Ok(RunSummary {
        fits,
        contaminated: first_bad.is_some(),
        warnings,
    })
}

/// `(ξ0, τ)` for the mode started at `(1, 0)`; `None` when it never
/// reaches `1/e`.
pub fn e_folding_table(spec: &SystemSpec, xis: &[f64]) -> Vec<(f64, Option<f64>)> {
    let y0 = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    xis.iter().map(|&xi| (xi, e_folding_time(spec, xi, y0))).collect()
}

pub fn write_e_folding(path: &Path, rows: &[(f64, Option<f64>)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["xi0", "tau", "tau_over_xi0_sq"])?;
    for &(xi, tau) in rows {
        let (a, b) = match tau {
            Some(t) => (num(t), num(t / (xi * xi))),
            None => (String::new(), String::new()),
        };
        w.write_record([num(xi), a, b])?;
    }
    w.flush()?;
    Ok(())
}

/// One `classify.csv` row per `(label, spec)`.
pub fn classify_rows(specs: &[(String, SystemSpec)]) -> Result<Vec<[String; 6]>, CliError> {
    specs
        .iter()
        .map(|(label, spec)| {
            let c = classify(spec)?;
            Ok([
                label.clone(),
                spec.dissipation().id().to_string(),
                c.klass.id().to_string(),
                num(c.delta_m),
                num(c.delta_big_m),
                c.resonance.map(num).unwrap_or_default(),
            ])
        })
        .collect()
}

pub fn write_classify<W: std::io::Write>(w: W, rows: &[[String; 6]]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record(CLASSIFY_HEADER)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Every preset under each of `dissipations`.
pub fn all_presets(dissipations: &[Dissipation]) -> Vec<(String, SystemSpec)> {
    Preset::ALL
        .iter()
        .flat_map(|p| dissipations.iter().map(move |&d| (p.id().to_string(), p.spec(d))))
        .collect()
}

pub fn presets_table() -> String {
    let mut s = format!("{:<22}{:>10}{:>10}{:>10}{:>10}  regime\n", "preset", "a", "b", "c", "d");
    for p in Preset::ALL {
        let [a, b, c, d] = p.coefficients();
        let regime = p.spec(Dissipation::Complete).regime();
        s.push_str(&format!("{:<22}{a:>10.5}{b:>10.5}{c:>10.5}{d:>10.5}  {regime:?}\n", p.id()));
    }
    s
}
