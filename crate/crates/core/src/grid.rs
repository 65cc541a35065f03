//! Periodic grid on `[0, L)` with cached FFT plans.
//!
//! Spectral values follow the continuous-transform convention
//! `f̂(ξ_k) = dx·Σ_j f_j e^{−iξ_k x_j}`, so `f_j = (1/L)·Σ_k f̂_k e^{iξ_k x_j}`
//! and Parseval reads `dx·Σ|f_j|² = (1/L)·Σ|f̂_k|²`. Mode arrays are stored in
//! FFT order: `k = 0, 1, …, N/2−1, −N/2, …, −1`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("domain length must be positive and finite, got {0}")]
    InvalidLength(f64),
    #[error("mode count must be even and at least 2, got {0}")]
    InvalidModeCount(usize),
    #[error("spacing {dx} does not divide length {length} (ratio {ratio})")]
    SpacingMismatch { length: f64, dx: f64, ratio: f64 },
}

#[derive(Clone)]
pub struct Grid {
    length: f64,
    n: usize,
    dx: f64,
    xi: Vec<f64>,
    keep: Vec<bool>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("length", &self.length)
            .field("n", &self.n)
            .field("dx", &self.dx)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.n == other.n
    }
}

impl Grid {
    pub fn new(length: f64, n: usize) -> Result<Self, GridError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(GridError::InvalidLength(length));
        }
        if n < 2 || !n.is_multiple_of(2) {
            return Err(GridError::InvalidModeCount(n));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);

        let half = n / 2;
        let base = 2.0 * std::f64::consts::PI / length;
        let signed = |k: usize| -> i64 {
            if k < half {
                k as i64
            } else {
                k as i64 - n as i64
            }
        };
        let xi = (0..n).map(|k| base * signed(k) as f64).collect();
        // 2/3 rule: keep |k| <= N/3.
        let keep = (0..n).map(|k| 3 * signed(k).unsigned_abs() as usize <= n).collect();

        Ok(Grid {
            length,
            n,
            dx: length / n as f64,
            xi,
            keep,
            forward,
            inverse,
        })
    }

    /// Grid with spacing `dx`; `L/dx` must be an integer to within 1e−9,
    /// and is rounded up to the next even count if odd.
    pub fn from_spacing(length: f64, dx: f64) -> Result<Self, GridError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(GridError::InvalidLength(length));
        }
        let ratio = length / dx;
        if !(ratio.is_finite() && ratio >= 1.0) || (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            return Err(GridError::SpacingMismatch { length, dx, ratio });
        }
        let mut n = ratio.round() as usize;
        if n % 2 == 1 {
            n += 1;
        }
        Grid::new(length, n)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// `x_j = j·dx`.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.xi
    }

    /// Spacing of the wavenumber lattice, `2π/L`.
    pub fn dxi(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.length
    }

    /// Index of the unpaired `k = −N/2` mode.
    pub fn nyquist(&self) -> usize {
        self.n / 2
    }

    /// Index of the mode with the given signed wavenumber index.
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// `true` for modes kept by the 2/3 rule.
    pub fn dealias_mask(&self) -> &[bool] {
        &self.keep
    }

    pub fn forward(&self, f: &[f64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.n);
        let mut buf: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        for z in &mut buf {
            *z *= self.dx;
        }
        buf
    }

    /// Physical field plus the largest discarded imaginary part.
    pub fn inverse(&self, f_hat: &[Complex64]) -> (Vec<f64>, f64) {
        assert_eq!(f_hat.len(), self.n);
        let mut buf = f_hat.to_vec();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.length;
        let mut max_imag = 0.0f64;
        let re = buf
            .iter()
            .map(|z| {
                max_imag = max_imag.max((z.im * scale).abs());
                z.re * scale
            })
            .collect();
        (re, max_imag)
    }

    /// Largest `|f̂(−ξ) − conj f̂(ξ)|`, with the Nyquist mode compared to its
    /// own conjugate.
    pub fn symmetry_defect(&self, f_hat: &[Complex64]) -> f64 {
        (0..self.n)
            .map(|k| (f_hat[(self.n - k) % self.n] - f_hat[k].conj()).norm())
            .fold(0.0, f64::max)
    }
}
