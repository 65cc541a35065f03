//! Flat `key=value` experiment configuration.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use bousslab_core::params::{make_spec, Dissipation, Preset, SystemSpec};
use bousslab_core::solver::SolverConfig;
use bousslab_core::Grid;

use crate::error::CliError;

/// Keys accepted in config files, `--grid` axes and `set`.
pub const KEYS: [&str; 15] = [
    "preset",
    "a",
    "b",
    "c",
    "d",
    "diss",
    "L",
    "dx",
    "dt",
    "T",
    "x0",
    "dealias",
    "asselin",
    "sample_every",
    "out",
];

#[derive(Debug, Clone, PartialEq)]
pub enum System {
    Preset(Preset),
    Custom([f64; 4]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub system: System,
    pub diss: Dissipation,
    pub length: f64,
    pub dx: f64,
    pub dt: f64,
    pub t_final: f64,
    /// Soliton centre; `None` means `L/2`.
    pub x0: Option<f64>,
    pub dealias: bool,
    pub asselin: f64,
    pub sample_every: f64,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let solver = SolverConfig::default();
        ExperimentConfig {
            system: System::Preset(Preset::BbmBbm),
            diss: Dissipation::Complete,
            length: 320.0,
            dx: 0.1,
            dt: solver.dt,
            t_final: solver.t_final,
            x0: None,
            dealias: solver.dealias,
            asselin: solver.asselin,
            sample_every: solver.sample_every,
            out: PathBuf::from("out"),
        }
    }
}

fn number(key: &str, value: &str) -> Result<f64, CliError> {
    let v = f64::from_str(value.trim())
        .map_err(|_| CliError::Config(format!("{key}: '{value}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Config(format!("{key}: '{value}' is not finite")));
    }
    Ok(v)
}

fn boolean(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        other => Err(CliError::Config(format!("{key}: '{other}' is not a boolean"))),
    }
}

impl ExperimentConfig {
    /// Assigns one key. A single coefficient switches the system to
    /// explicit coefficients, starting from the current values.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let coeff = |cfg: &mut Self, i: usize| -> Result<(), CliError> {
            let mut c = cfg.coefficients();
            c[i] = number(key, value)?;
            cfg.system = System::Custom(c);
            Ok(())
        };
        match key {
            "preset" => self.system = System::Preset(value.trim().parse()?),
            "a" => coeff(self, 0)?,
            "b" => coeff(self, 1)?,
            "c" => coeff(self, 2)?,
            "d" => coeff(self, 3)?,
            "diss" => self.diss = value.trim().parse()?,
            "L" => self.length = number(key, value)?,
            "dx" => self.dx = number(key, value)?,
            "dt" => self.dt = number(key, value)?,
            "T" => self.t_final = number(key, value)?,
            "x0" => self.x0 = Some(number(key, value)?),
            "dealias" => self.dealias = boolean(key, value)?,
            "asselin" => self.asselin = number(key, value)?,
            "sample_every" => self.sample_every = number(key, value)?,
            "out" => self.out = PathBuf::from(value.trim()),
            other => {
                return Err(CliError::Config(format!(
                    "unknown key '{other}' (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies `key=value` lines on top of `self`. Blank lines and `#`
    /// comments are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value, got '{line}'", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        match &self.system {
            System::Preset(p) => writeln!(s, "preset={p}").unwrap(),
            System::Custom([a, b, c, d]) => {
                writeln!(s, "a={a}\nb={b}\nc={c}\nd={d}").unwrap();
            }
        }
        writeln!(s, "diss={}", self.diss).unwrap();
        writeln!(s, "L={}", self.length).unwrap();
        writeln!(s, "dx={}", self.dx).unwrap();
        writeln!(s, "dt={}", self.dt).unwrap();
        writeln!(s, "T={}", self.t_final).unwrap();
        if let Some(x0) = self.x0 {
            writeln!(s, "x0={x0}").unwrap();
        }
        writeln!(s, "dealias={}", self.dealias).unwrap();
        writeln!(s, "asselin={}", self.asselin).unwrap();
        writeln!(s, "sample_every={}", self.sample_every).unwrap();
        writeln!(s, "out={}", self.out.display()).unwrap();
        s
    }

    pub fn coefficients(&self) -> [f64; 4] {
        match &self.system {
            System::Preset(p) => p.coefficients(),
            System::Custom(c) => *c,
        }
    }

    /// Preset id, or `custom` for explicit coefficients.
    pub fn system_label(&self) -> String {
        match &self.system {
            System::Preset(p) => p.id().to_string(),
            System::Custom(_) => "custom".to_string(),
        }
    }

    pub fn spec(&self) -> Result<SystemSpec, CliError> {
        let [a, b, c, d] = self.coefficients();
        Ok(make_spec(a, b, c, d, self.diss)?)
    }

    pub fn grid(&self) -> Result<Arc<Grid>, CliError> {
        Ok(Arc::new(Grid::from_spacing(self.length, self.dx)?))
    }

    pub fn x0(&self) -> f64 {
        self.x0.unwrap_or(0.5 * self.length)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            dt: self.dt,
            t_final: self.t_final,
            dealias: self.dealias,
            asselin: self.asselin,
            sample_every: self.sample_every,
            ..SolverConfig::default()
        }
    }

    /// Checks everything a run needs before any work starts.
    pub fn validate(&self) -> Result<(), CliError> {
        self.spec()?;
        self.grid()?;
        self.solver_config().schedule()?;
        let x0 = self.x0();
        if !(0.0..=self.length).contains(&x0) {
            return Err(CliError::Config(format!("x0 = {x0} lies outside [0, {}]", self.length)));
        }
        Ok(())
    }
}
