//! Exact evolution of the linearized system `Ŷ_t + A(ξ)Ŷ = 0` on a periodic
//! grid, one 2×2 exponential per mode, and the energy `E = ∫|Ŷ|² dξ`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::grid::Grid;
use crate::par::{self, Execution};
use crate::params::{multipliers, SystemSpec};
use crate::symbol::{eigen_of, mat_vec, propagator_of, symbol_matrix};

/// `(η̂, ŵ)` with `ŵ = Ĥ·û`, in the grid's spectral convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPair {
    pub grid: Arc<Grid>,
    pub eta_hat: Vec<Complex64>,
    pub w_hat: Vec<Complex64>,
}

impl SpectralPair {
    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.len();
        SpectralPair {
            grid,
            eta_hat: vec![Complex64::new(0.0, 0.0); n],
            w_hat: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_eta_u(spec: &SystemSpec, grid: Arc<Grid>, eta_hat: Vec<Complex64>, u_hat: &[Complex64]) -> Self {
        assert_eq!(eta_hat.len(), grid.len());
        let w_hat = grid
            .wavenumbers()
            .iter()
            .zip(u_hat)
            .map(|(&xi, &u)| u * multipliers(spec, xi).h_hat)
            .collect();
        SpectralPair { grid, eta_hat, w_hat }
    }

    pub fn from_physical(spec: &SystemSpec, grid: Arc<Grid>, eta: &[f64], u: &[f64]) -> Self {
        let eta_hat = grid.forward(eta);
        let u_hat = grid.forward(u);
        SpectralPair::from_eta_u(spec, grid, eta_hat, &u_hat)
    }

    /// Undoes the `Ĥ` weighting.
    pub fn u_hat(&self, spec: &SystemSpec) -> Vec<Complex64> {
        self.grid
            .wavenumbers()
            .iter()
            .zip(&self.w_hat)
            .map(|(&xi, &w)| w / multipliers(spec, xi).h_hat)
            .collect()
    }

    /// Physical `(η, u)`.
    pub fn to_physical(&self, spec: &SystemSpec) -> (Vec<f64>, Vec<f64>) {
        let (eta, _) = self.grid.inverse(&self.eta_hat);
        let (u, _) = self.grid.inverse(&self.u_hat(spec));
        (eta, u)
    }

    pub fn symmetry_defect(&self) -> f64 {
        self.grid
            .symmetry_defect(&self.eta_hat)
            .max(self.grid.symmetry_defect(&self.w_hat))
    }
}

/// `Ŷ(t) = exp(−tA)·Ŷ0` mode by mode.
pub fn evolve_linear(spec: &SystemSpec, y0: &SpectralPair, t: f64) -> SpectralPair {
    evolve_linear_with(Execution::default(), spec, y0, t)
}

pub fn evolve_linear_with(exec: Execution, spec: &SystemSpec, y0: &SpectralPair, t: f64) -> SpectralPair {
    debug_assert!(t >= 0.0, "negative evolution time {t}");
    evolve_signed(exec, spec, y0, t)
}

/// Same as [`evolve_linear_with`] but also accepts `t < 0`.
fn evolve_signed(exec: Execution, spec: &SystemSpec, y0: &SpectralPair, t: f64) -> SpectralPair {
    let mut out = y0.clone();
    let xi = y0.grid.wavenumbers();
    let nyquist = y0.grid.nyquist();
    par::for_each_pair(exec, &mut out.eta_hat, &mut out.w_hat, |k, eta, w| {
        let mut m = symbol_matrix(spec, xi[k]);
        if k == nyquist {
            // The unpaired mode of a real field carries no odd-derivative coupling.
            m.off12 = 0.0;
            m.off21 = 0.0;
        }
        let e = eigen_of(&m);
        let p = propagator_of(&m, &e, t);
        let [a, b] = mat_vec(&p, [*eta, *w]);
        *eta = a;
        *w = b;
    });
    out
}

/// `Σ(|η̂|² + |ŵ|²)·2π/L`, summed in index order.
pub fn energy(y: &SpectralPair) -> f64 {
    let sum: f64 = y
        .eta_hat
        .iter()
        .zip(&y.w_hat)
        .map(|(e, w)| e.norm_sqr() + w.norm_sqr())
        .sum();
    sum * y.grid.dxi()
}

/// `2Σ(ν_η α|η̂|² + ν_u ε|ŵ|²)·2π/L`, i.e. `−dE/dt`.
pub fn dissipation_rate(spec: &SystemSpec, y: &SpectralPair) -> f64 {
    let (nu_eta, nu_u) = spec.dissipation().switches();
    let sum: f64 = y
        .grid
        .wavenumbers()
        .iter()
        .zip(y.eta_hat.iter().zip(&y.w_hat))
        .map(|(&xi, (e, w))| {
            let m = multipliers(spec, xi);
            nu_eta * m.alpha * e.norm_sqr() + nu_u * m.epsilon * w.norm_sqr()
        })
        .sum();
    2.0 * sum * y.grid.dxi()
}

/// `|(E(t+h) − E(t−h))/(2h) + 2Σ(ν_η α|η̂|² + ν_u ε|ŵ|²)Δξ|` around `y`.
pub fn energy_identity_residual(spec: &SystemSpec, y: &SpectralPair, dt_probe: f64) -> f64 {
    let exec = Execution::default();
    let ahead = energy(&evolve_signed(exec, spec, y, dt_probe));
    let behind = energy(&evolve_signed(exec, spec, y, -dt_probe));
    ((ahead - behind) / (2.0 * dt_probe) + dissipation_rate(spec, y)).abs()
}

/// First time at which `|exp(−tA(ξ))·y0|` falls to `|y0|/e`.
///
/// `|Ŷ|` is non-increasing because `Re(Ŷ*AŶ) = Ŷ*DŶ >= 0`, so the crossing
/// is bracketed by doubling and then bisected. Returns `None` if the mode
/// is not damped by `t = 1e12`.
pub fn e_folding_time(spec: &SystemSpec, xi: f64, y0: [Complex64; 2]) -> Option<f64> {
    let m = symbol_matrix(spec, xi);
    let e = eigen_of(&m);
    let size = |t: f64| {
        let [a, b] = mat_vec(&propagator_of(&m, &e, t), y0);
        (a.norm_sqr() + b.norm_sqr()).sqrt()
    };
    let target = size(0.0) / std::f64::consts::E;
    if target == 0.0 {
        return None;
    }
    let mut hi = 1.0;
    while size(hi) > target {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if size(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}
