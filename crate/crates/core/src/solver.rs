//! Pseudo-spectral solver for the damped abcd system on a periodic domain.
//!
//! In Fourier variables, per mode,
//!
//! ```text
//! (1+bξ²) η̂_t = −iξ(1−aξ²) û − iξ·(ηu)^ − ν_η ξ² η̂
//! (1+dξ²) û_t = −iξ(1−cξ²) η̂ − iξ·(u²/2)^ − ν_u ξ² û
//! ```
//!
//! Time stepping is leap-frog for the dispersive and nonlinear terms with
//! the damping averaged over levels `n−1` and `n+1`, followed by a
//! Robert–Asselin filter on level `n`. The first step is classical RK4.

use std::io::{self, Read, Write};
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::decay::{norms, NormSeries};
use crate::grid::Grid;
use crate::par::{self, Execution};
use crate::params::{multipliers, SystemSpec};

/// Any norm above this aborts the run.
pub const BLOW_UP_LIMIT: f64 = 1e6;
/// Boundary-monitor level above which a run is flagged as contaminated.
pub const CONTAMINATION_LIMIT: f64 = 1e-12;
/// Fraction of nodes (split over both ends) watched by the boundary monitor.
pub const BOUNDARY_FRACTION: f64 = 0.05;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("blow-up at step {step} (t = {t}): norm {norm:.3e}, largest mode ξ = {xi}")]
    BlowUp { step: usize, t: f64, norm: f64, xi: f64 },
}

/// Snapshot of `(η, u)` at time `t` in both representations.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub grid: Arc<Grid>,
    pub t: f64,
    pub eta: Vec<f64>,
    pub u: Vec<f64>,
    pub eta_hat: Vec<Complex64>,
    pub u_hat: Vec<Complex64>,
    /// Largest imaginary part discarded when the physical fields were formed.
    pub max_imag: f64,
}

impl FieldState {
    pub fn zeros(grid: Arc<Grid>, t: f64) -> Self {
        let n = grid.len();
        FieldState {
            grid,
            t,
            eta: vec![0.0; n],
            u: vec![0.0; n],
            eta_hat: vec![ZERO; n],
            u_hat: vec![ZERO; n],
            max_imag: 0.0,
        }
    }

    pub fn from_physical(grid: Arc<Grid>, t: f64, eta: Vec<f64>, u: Vec<f64>) -> Self {
        let eta_hat = grid.forward(&eta);
        let u_hat = grid.forward(&u);
        FieldState {
            grid,
            t,
            eta,
            u,
            eta_hat,
            u_hat,
            max_imag: 0.0,
        }
    }

    pub fn from_spectral(grid: Arc<Grid>, t: f64, eta_hat: Vec<Complex64>, u_hat: Vec<Complex64>) -> Self {
        let (eta, im_eta) = grid.inverse(&eta_hat);
        let (u, im_u) = grid.inverse(&u_hat);
        FieldState {
            grid,
            t,
            eta,
            u,
            eta_hat,
            u_hat,
            max_imag: im_eta.max(im_u),
        }
    }

    /// `max(|η|, |u|)` over the outer nodes at both ends of the domain.
    pub fn boundary_monitor(&self) -> f64 {
        let n = self.eta.len();
        let edge = ((n as f64 * BOUNDARY_FRACTION * 0.5).ceil() as usize).clamp(1, n / 2);
        (0..edge)
            .chain(n - edge..n)
            .map(|j| self.eta[j].abs().max(self.u[j].abs()))
            .fold(0.0, f64::max)
    }

    /// `(∫η dx, ∫u dx)`, read off the zeroth modes.
    pub fn mass(&self) -> (f64, f64) {
        (self.eta_hat[0].re, self.u_hat[0].re)
    }

    /// Largest relative mismatch between the stored spectral form and the
    /// transform of the stored physical form.
    pub fn consistency_defect(&self) -> f64 {
        let scale = self
            .eta_hat
            .iter()
            .chain(&self.u_hat)
            .fold(0.0f64, |m, z| m.max(z.norm()))
            .max(f64::MIN_POSITIVE);
        let fe = self.grid.forward(&self.eta);
        let fu = self.grid.forward(&self.u);
        fe.iter()
            .zip(&self.eta_hat)
            .chain(fu.iter().zip(&self.u_hat))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }

    pub fn symmetry_defect(&self) -> f64 {
        self.grid
            .symmetry_defect(&self.eta_hat)
            .max(self.grid.symmetry_defect(&self.u_hat))
    }
}

/// Soliton-like data `η0 = sech²((√2/2)(x − x0))`, `u0 = η0 − η0²/4`.
pub fn initial_soliton(grid: Arc<Grid>, x0: f64) -> FieldState {
    let kappa = std::f64::consts::FRAC_1_SQRT_2;
    let dx = grid.dx();
    let centre = x0 / dx;
    // Offsets in grid units keep the profile exactly even about a node.
    let eta: Vec<f64> = (0..grid.len())
        .map(|j| (kappa * (j as f64 - centre) * dx).cosh().powi(-2))
        .collect();
    let u = eta.iter().map(|e| e - 0.25 * e * e).collect();
    FieldState::from_physical(grid, 0.0, eta, u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    /// 2/3-rule dealiasing of the quadratic terms.
    pub dealias: bool,
    /// Robert–Asselin coefficient in `[0, 0.2]`.
    pub asselin: f64,
    pub sample_every: f64,
    /// `false` drops the quadratic terms.
    pub nonlinear: bool,
    pub execution: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dt: 0.05,
            t_final: 50.0,
            dealias: true,
            asselin: 0.01,
            sample_every: 1.0,
            nonlinear: true,
            execution: Execution::default(),
        }
    }
}

fn whole_ratio(num: f64, den: f64) -> Option<usize> {
    let r = num / den;
    let n = r.round();
    ((r - n).abs() <= 1e-9 * n.max(1.0)).then_some(n as usize)
}

impl SolverConfig {
    /// Checks the invariants and returns `(steps, steps_per_sample)`.
    pub fn schedule(&self) -> Result<(usize, usize), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidConfig(m));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return bad(format!("T must be non-negative, got {}", self.t_final));
        }
        if !(0.0..=0.2).contains(&self.asselin) {
            return bad(format!("asselin must lie in [0, 0.2], got {}", self.asselin));
        }
        if !(self.sample_every.is_finite() && self.sample_every > self.dt) {
            return bad(format!(
                "sample_every ({}) must exceed dt ({})",
                self.sample_every, self.dt
            ));
        }
        if self.t_final > 0.0 && self.sample_every > self.t_final {
            return bad(format!(
                "sample_every ({}) must not exceed T ({})",
                self.sample_every, self.t_final
            ));
        }
        let Some(per_sample) = whole_ratio(self.sample_every, self.dt) else {
            return bad(format!("sample_every ({}) is not a multiple of dt ({})", self.sample_every, self.dt));
        };
        let Some(steps) = whole_ratio(self.t_final, self.dt) else {
            return bad(format!("T ({}) is not a multiple of dt ({})", self.t_final, self.dt));
        };
        Ok((steps, per_sample))
    }
}

/// Things worth reporting that do not stop a run.
#[derive(Debug, Clone, PartialEq)]
pub enum RunWarning {
    /// The boundary monitor exceeded the contamination limit.
    BoundaryContamination { first_t: f64, max_monitor: f64 },
    /// `dt·max|ξσ| >= 1`: leap-frog is unstable on the dispersive part.
    CourantExceeded { courant: f64 },
    /// Nonlinear decay is not established for this dissipation placement.
    OutsideProvenTheory,
}

impl std::fmt::Display for RunWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunWarning::BoundaryContamination { first_t, max_monitor } => write!(
                f,
                "boundary contamination: monitor reached {max_monitor:.3e} (first above {CONTAMINATION_LIMIT:e} at t = {first_t})"
            ),
            RunWarning::CourantExceeded { courant } => {
                write!(f, "dt·max|ξσ| = {courant:.3} >= 1; leap-frog is unstable for the top modes")
            }
            RunWarning::OutsideProvenTheory => {
                f.write_str("nonlinear run outside the established theory for this dissipation")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub series: NormSeries,
    pub final_state: FieldState,
    pub warnings: Vec<RunWarning>,
    /// Largest imaginary residual seen in any sampled state.
    pub max_imag: f64,
    /// Largest conjugate-symmetry defect seen in any sampled state.
    pub max_symmetry_defect: f64,
    /// Largest drift of `(∫η, ∫u)` from their initial values.
    pub max_mass_drift: f64,
}

impl RunOutput {
    pub fn contaminated(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| matches!(w, RunWarning::BoundaryContamination { .. }))
    }
}

#[derive(Debug, Clone, Copy)]
struct ModeOp {
    lin_eta: Complex64,
    nl_eta: Complex64,
    damp_eta: f64,
    lin_u: Complex64,
    nl_u: Complex64,
    damp_u: f64,
}

type Spectra = (Vec<Complex64>, Vec<Complex64>);

#[derive(Debug, Clone)]
pub struct Solver {
    spec: SystemSpec,
    grid: Arc<Grid>,
    config: SolverConfig,
    ops: Vec<ModeOp>,
    steps: usize,
    per_sample: usize,
}

impl Solver {
    pub fn new(spec: SystemSpec, grid: Arc<Grid>, config: SolverConfig) -> Result<Self, SolverError> {
        let (steps, per_sample) = config.schedule()?;
        let [a, b, c, d] = spec.coefficients();
        let (nu_eta, nu_u) = spec.dissipation().switches();
        let nyquist = grid.nyquist();
        let ops = grid
            .wavenumbers()
            .iter()
            .enumerate()
            .map(|(k, &xi)| {
                // Odd derivatives have no real representation at the Nyquist mode.
                let odd = if k == nyquist { 0.0 } else { xi };
                let x2 = xi * xi;
                let rb = 1.0 + b * x2;
                let rd = 1.0 + d * x2;
                ModeOp {
                    lin_eta: Complex64::new(0.0, -odd * (1.0 - a * x2) / rb),
                    nl_eta: Complex64::new(0.0, -odd / rb),
                    damp_eta: nu_eta * x2 / rb,
                    lin_u: Complex64::new(0.0, -odd * (1.0 - c * x2) / rd),
                    nl_u: Complex64::new(0.0, -odd / rd),
                    damp_u: nu_u * x2 / rd,
                }
            })
            .collect();
        Ok(Solver {
            spec,
            grid,
            config,
            ops,
            steps,
            per_sample,
        })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// `dt·max|ξσ|` over the representable modes.
    pub fn courant_number(&self) -> f64 {
        let nyquist = self.grid.nyquist();
        self.grid
            .wavenumbers()
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != nyquist)
            .map(|(_, &xi)| (xi * multipliers(&self.spec, xi).sigma).abs())
            .fold(0.0, f64::max)
            * self.config.dt
    }

    fn masked(&self, f: &[Complex64]) -> Vec<Complex64> {
        f.iter()
            .zip(self.grid.dealias_mask())
            .map(|(&z, &keep)| if keep { z } else { ZERO })
            .collect()
    }

    /// Transforms of `ηu` and `u²/2`.
    fn products(&self, eta_hat: &[Complex64], u_hat: &[Complex64]) -> Spectra {
        let ((eta, _), (u, _)) = if self.config.dealias {
            (self.grid.inverse(&self.masked(eta_hat)), self.grid.inverse(&self.masked(u_hat)))
        } else {
            (self.grid.inverse(eta_hat), self.grid.inverse(u_hat))
        };
        let eu: Vec<f64> = eta.iter().zip(&u).map(|(e, v)| e * v).collect();
        let uu: Vec<f64> = u.iter().map(|v| 0.5 * v * v).collect();
        let (p, q) = (self.grid.forward(&eu), self.grid.forward(&uu));
        if self.config.dealias {
            (self.masked(&p), self.masked(&q))
        } else {
            (p, q)
        }
    }

    /// Dispersive plus nonlinear tendency, without damping.
    fn tendency(&self, eta_hat: &[Complex64], u_hat: &[Complex64]) -> Spectra {
        let n = eta_hat.len();
        let (p, q) = if self.config.nonlinear {
            self.products(eta_hat, u_hat)
        } else {
            (vec![ZERO; n], vec![ZERO; n])
        };
        let mut fe = vec![ZERO; n];
        let mut fu = vec![ZERO; n];
        par::for_each_pair(self.config.execution, &mut fe, &mut fu, |k, a, b| {
            let op = &self.ops[k];
            *a = op.lin_eta * u_hat[k] + op.nl_eta * p[k];
            *b = op.lin_u * eta_hat[k] + op.nl_u * q[k];
        });
        (fe, fu)
    }

    fn rhs(&self, eta_hat: &[Complex64], u_hat: &[Complex64]) -> Spectra {
        let (mut fe, mut fu) = self.tendency(eta_hat, u_hat);
        par::for_each_pair(self.config.execution, &mut fe, &mut fu, |k, a, b| {
            let op = &self.ops[k];
            *a -= op.damp_eta * eta_hat[k];
            *b -= op.damp_u * u_hat[k];
        });
        (fe, fu)
    }

    /// Full right-hand side `(η̂_t, û_t)` at a state.
    pub fn rhs_spectral(&self, state: &FieldState) -> Spectra {
        self.rhs(&state.eta_hat, &state.u_hat)
    }

    fn rk4(&self, eta_hat: &[Complex64], u_hat: &[Complex64], dt: f64) -> Spectra {
        let axpy = |x: &[Complex64], h: f64, k: &[Complex64]| -> Vec<Complex64> {
            x.iter().zip(k).map(|(&a, &b)| a + h * b).collect()
        };
        let (k1e, k1u) = self.rhs(eta_hat, u_hat);
        let (k2e, k2u) = self.rhs(&axpy(eta_hat, 0.5 * dt, &k1e), &axpy(u_hat, 0.5 * dt, &k1u));
        let (k3e, k3u) = self.rhs(&axpy(eta_hat, 0.5 * dt, &k2e), &axpy(u_hat, 0.5 * dt, &k2u));
        let (k4e, k4u) = self.rhs(&axpy(eta_hat, dt, &k3e), &axpy(u_hat, dt, &k3u));
        let combine = |y: &[Complex64], k1: &[Complex64], k2: &[Complex64], k3: &[Complex64], k4: &[Complex64]| {
            (0..y.len())
                .map(|i| y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect::<Vec<_>>()
        };
        (
            combine(eta_hat, &k1e, &k2e, &k3e, &k4e),
            combine(u_hat, &k1u, &k2u, &k3u, &k4u),
        )
    }

    /// One RK4 step of length `dt` from the initial state.
    pub fn bootstrap_first_step(&self, initial: &FieldState) -> Result<FieldState, SolverError> {
        self.bootstrap_with(initial, self.config.dt)
    }

    /// One RK4 step of arbitrary length.
    pub fn bootstrap_with(&self, initial: &FieldState, dt: f64) -> Result<FieldState, SolverError> {
        let (e, u) = self.rk4(&initial.eta_hat, &initial.u_hat, dt);
        self.check_growth(&e, &u, 1, initial.t + dt)?;
        Ok(FieldState::from_spectral(self.grid.clone(), initial.t + dt, e, u))
    }

    /// Leap-frog update on raw spectra; filters `curr` in place.
    fn leapfrog(
        &self,
        prev: (&[Complex64], &[Complex64]),
        curr: (&mut [Complex64], &mut [Complex64]),
    ) -> Spectra {
        let dt = self.config.dt;
        let (fe, fu) = self.tendency(curr.0, curr.1);
        let mut ne = fe;
        let mut nu = fu;
        par::for_each_pair(self.config.execution, &mut ne, &mut nu, |k, a, b| {
            let op = &self.ops[k];
            let ge = dt * op.damp_eta;
            let gu = dt * op.damp_u;
            *a = (prev.0[k] * (1.0 - ge) + 2.0 * dt * *a) / (1.0 + ge);
            *b = (prev.1[k] * (1.0 - gu) + 2.0 * dt * *b) / (1.0 + gu);
        });
        let rho = self.config.asselin;
        if rho != 0.0 {
            par::for_each_pair(self.config.execution, curr.0, curr.1, |k, a, b| {
                *a += rho * (ne[k] - 2.0 * *a + prev.0[k]);
                *b += rho * (nu[k] - 2.0 * *b + prev.1[k]);
            });
        }
        (ne, nu)
    }

    /// Advances `(prev, curr)` by one step. `curr` receives the
    /// Robert–Asselin correction.
    pub fn step_leapfrog(&self, prev: &FieldState, curr: &mut FieldState) -> Result<FieldState, SolverError> {
        let step = (curr.t / self.config.dt).round() as usize + 1;
        let (ne, nu) = self.leapfrog(
            (&prev.eta_hat, &prev.u_hat),
            (&mut curr.eta_hat, &mut curr.u_hat),
        );
        if self.config.asselin != 0.0 {
            *curr = FieldState::from_spectral(
                self.grid.clone(),
                curr.t,
                std::mem::take(&mut curr.eta_hat),
                std::mem::take(&mut curr.u_hat),
            );
        }
        let t = curr.t + self.config.dt;
        self.check_growth(&ne, &nu, step, t)?;
        Ok(FieldState::from_spectral(self.grid.clone(), t, ne, nu))
    }

    fn check_growth(&self, e: &[Complex64], u: &[Complex64], step: usize, t: f64) -> Result<(), SolverError> {
        // L² norm through Parseval.
        let mut sum = 0.0;
        let mut worst = (0.0, 0usize);
        for (k, (a, b)) in e.iter().zip(u).enumerate() {
            let m = a.norm_sqr() + b.norm_sqr();
            sum += m;
            if m > worst.0 || m.is_nan() {
                worst = (m, k);
            }
        }
        let norm = (sum / self.grid.length()).sqrt();
        if norm.is_finite() && norm <= BLOW_UP_LIMIT {
            return Ok(());
        }
        Err(SolverError::BlowUp {
            step,
            t,
            norm,
            xi: self.grid.wavenumbers()[worst.1],
        })
    }

    /// Runs from the soliton data centred at `x0`.
    pub fn run(&self, x0: f64) -> Result<RunOutput, SolverError> {
        self.run_from(initial_soliton(self.grid.clone(), x0))
    }

    /// Runs from an arbitrary state at `t = 0`, sampling norms every
    /// `sample_every`.
    pub fn run_from(&self, initial: FieldState) -> Result<RunOutput, SolverError> {
        let mut tracker = Tracker::new(&self.spec, &initial);
        let mut warnings = Vec::new();
        if !self.spec.within_proven_theory() && self.config.nonlinear {
            warnings.push(RunWarning::OutsideProvenTheory);
        }
        let courant = self.courant_number();
        if courant >= 1.0 {
            warnings.push(RunWarning::CourantExceeded { courant });
        }

        tracker.record(&initial);
        if self.steps == 0 {
            return Ok(tracker.finish(initial, warnings));
        }

        let sample_time = |n: usize| (n / self.per_sample) as f64 * self.config.sample_every;
        let first = self.bootstrap_first_step(&initial)?;
        let mut last = first.clone();
        if self.per_sample == 1 {
            tracker.record(&FieldState { t: sample_time(1), ..first.clone() });
        }

        let (mut pe, mut pu) = (initial.eta_hat, initial.u_hat);
        let (mut ce, mut cu) = (first.eta_hat, first.u_hat);
        for n in 2..=self.steps {
            let (ne, nu) = self.leapfrog((&pe, &pu), (&mut ce, &mut cu));
            let t = n as f64 * self.config.dt;
            self.check_growth(&ne, &nu, n, t)?;
            pe = std::mem::replace(&mut ce, ne);
            pu = std::mem::replace(&mut cu, nu);
            if n % self.per_sample == 0 || n == self.steps {
                let label = if n % self.per_sample == 0 { sample_time(n) } else { t };
                let state = FieldState::from_spectral(self.grid.clone(), label, ce.clone(), cu.clone());
                if n % self.per_sample == 0 {
                    tracker.record(&state);
                }
                last = state;
            }
        }

        let mut out = tracker.finish(last, warnings);
        let max_monitor = out.series.max_boundary_monitor();
        if max_monitor > CONTAMINATION_LIMIT {
            let first_t = out
                .series
                .records()
                .iter()
                .find(|r| r.boundary_monitor > CONTAMINATION_LIMIT)
                .map_or(0.0, |r| r.t);
            out.warnings.push(RunWarning::BoundaryContamination { first_t, max_monitor });
        }
        Ok(out)
    }
}

/// Running diagnostics over the sampled states.
struct Tracker<'a> {
    spec: &'a SystemSpec,
    series: NormSeries,
    mass0: (f64, f64),
    max_imag: f64,
    max_symmetry_defect: f64,
    max_mass_drift: f64,
}

impl<'a> Tracker<'a> {
    fn new(spec: &'a SystemSpec, initial: &FieldState) -> Self {
        Tracker {
            spec,
            series: NormSeries::new(),
            mass0: initial.mass(),
            max_imag: 0.0,
            max_symmetry_defect: 0.0,
            max_mass_drift: 0.0,
        }
    }

    fn record(&mut self, state: &FieldState) {
        self.series
            .push(norms(state, self.spec))
            .expect("sample times are generated in increasing order");
        self.max_imag = self.max_imag.max(state.max_imag);
        self.max_symmetry_defect = self.max_symmetry_defect.max(state.symmetry_defect());
        let (me, mu) = state.mass();
        self.max_mass_drift = self
            .max_mass_drift
            .max((me - self.mass0.0).abs())
            .max((mu - self.mass0.1).abs());
    }

    fn finish(self, final_state: FieldState, warnings: Vec<RunWarning>) -> RunOutput {
        RunOutput {
            series: self.series,
            final_state,
            warnings,
            max_imag: self.max_imag,
            max_symmetry_defect: self.max_symmetry_defect,
            max_mass_drift: self.max_mass_drift,
        }
    }
}

/// Convenience wrapper around [`Solver::new`] and [`Solver::run`].
pub fn run(spec: SystemSpec, grid: Arc<Grid>, config: SolverConfig, x0: f64) -> Result<RunOutput, SolverError> {
    Solver::new(spec, grid, config)?.run(x0)
}

/// Writes `N, L, t, η…, u…` as little-endian `f64`.
pub fn write_snapshot<W: Write>(mut w: W, state: &FieldState) -> io::Result<()> {
    let header = [state.grid.len() as f64, state.grid.length(), state.t];
    for v in header.iter().chain(&state.eta).chain(&state.u) {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()
}

pub fn read_snapshot<R: Read>(mut r: R) -> io::Result<FieldState> {
    let mut next = || -> io::Result<f64> {
        let mut buf = [0u8; 8];
        r.read_exact(&mut buf)?;
        Ok(f64::from_le_bytes(buf))
    };
    let n = next()?;
    let length = next()?;
    let t = next()?;
    if !(n >= 2.0 && n.fract() == 0.0 && n <= 1e9) {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("bad mode count {n}")));
    }
    let n = n as usize;
    let grid = Grid::new(length, n).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    let eta = (0..n).map(|_| next()).collect::<io::Result<Vec<_>>>()?;
    let u = (0..n).map(|_| next()).collect::<io::Result<Vec<_>>>()?;
    Ok(FieldState::from_physical(Arc::new(grid), t, eta, u))
}
