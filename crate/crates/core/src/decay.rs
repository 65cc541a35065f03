//! Discrete norms of `(η, u)` and the last-five-samples power-law fit
//! `‖v‖ ≈ C·t^{−r}`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::params::{multipliers, SystemSpec};
use crate::solver::FieldState;

/// Number of trailing rates averaged by [`fit`].
pub const FIT_WINDOW: usize = 5;
/// Relative spread below which the trailing rates count as a plateau.
pub const PLATEAU_TOL: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecayError {
    #[error("degenerate series: {usable} usable records, need at least {needed}")]
    DegenerateSeries { usable: usize, needed: usize },
    #[error("unknown norm '{0}' (expected l2, linf, linf_sum, h1 or l2_etaw)")]
    UnknownNorm(String),
    #[error("sample times must be strictly increasing and non-negative ({prev} then {next})")]
    NonMonotone { prev: f64, next: f64 },
}

/// Norms of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRecord {
    pub t: f64,
    /// `(‖η‖² + ‖u‖²)^{1/2}`.
    pub l2_uv: f64,
    /// `max(‖η‖∞, ‖u‖∞)`.
    pub linf_uv: f64,
    /// `‖η‖∞ + ‖u‖∞`.
    pub linf_sum: f64,
    /// `(‖η‖²_{H¹} + ‖u‖²_{H¹})^{1/2}`.
    pub h1_uv: f64,
    /// `(‖η‖² + ‖Ĥu‖²)^{1/2}`.
    pub l2_etaw: f64,
    pub boundary_monitor: f64,
}

impl NormRecord {
    pub fn get(&self, kind: NormKind) -> f64 {
        match kind {
            NormKind::L2 => self.l2_uv,
            NormKind::Linf => self.linf_uv,
            NormKind::LinfSum => self.linf_sum,
            NormKind::H1 => self.h1_uv,
            NormKind::L2EtaW => self.l2_etaw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    L2,
    Linf,
    LinfSum,
    H1,
    L2EtaW,
}

impl NormKind {
    pub const ALL: [NormKind; 5] = [
        NormKind::L2,
        NormKind::Linf,
        NormKind::LinfSum,
        NormKind::H1,
        NormKind::L2EtaW,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
            NormKind::LinfSum => "linf_sum",
            NormKind::H1 => "h1",
            NormKind::L2EtaW => "l2_etaw",
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NormKind {
    type Err = DecayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        NormKind::ALL
            .into_iter()
            .find(|k| k.id() == key)
            .ok_or(DecayError::UnknownNorm(key))
    }
}

/// Time-ordered norm samples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NormSeries {
    records: Vec<NormRecord>,
}

impl NormSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_records(records: Vec<NormRecord>) -> Result<Self, DecayError> {
        let mut s = NormSeries::new();
        for r in records {
            s.push(r)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, record: NormRecord) -> Result<(), DecayError> {
        let prev = self.records.last().map_or(-f64::INFINITY, |r| r.t);
        if !(record.t > prev && record.t >= 0.0) {
            return Err(DecayError::NonMonotone { prev, next: record.t });
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[NormRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn values(&self, kind: NormKind) -> Vec<(f64, f64)> {
        self.records.iter().map(|r| (r.t, r.get(kind))).collect()
    }

    /// Largest boundary monitor over all samples.
    pub fn max_boundary_monitor(&self) -> f64 {
        self.records.iter().map(|r| r.boundary_monitor).fold(0.0, f64::max)
    }
}

/// Discrete norms of a state. Physical sums use `dx·Σ`; the derivative and
/// `Ĥ`-weighted parts go through Parseval.
pub fn norms(state: &FieldState, spec: &SystemSpec) -> NormRecord {
    let grid = &state.grid;
    let dx = grid.dx();
    let inv_l = 1.0 / grid.length();

    let sq = |f: &[f64]| f.iter().map(|v| v * v).sum::<f64>();
    let sup = |f: &[f64]| f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let l2_sq = dx * (sq(&state.eta) + sq(&state.u));

    let mut grad_sq = 0.0;
    let mut w_sq = 0.0;
    for ((&xi, e), u) in grid.wavenumbers().iter().zip(&state.eta_hat).zip(&state.u_hat) {
        grad_sq += xi * xi * (e.norm_sqr() + u.norm_sqr());
        let h = multipliers(spec, xi).h_hat;
        w_sq += h * h * u.norm_sqr();
    }
    let eta_sq: f64 = state.eta_hat.iter().map(|z| z.norm_sqr()).sum();

    let (se, su) = (sup(&state.eta), sup(&state.u));
    NormRecord {
        t: state.t,
        l2_uv: l2_sq.sqrt(),
        linf_uv: se.max(su),
        linf_sum: se + su,
        h1_uv: (l2_sq + grad_sq * inv_l).sqrt(),
        l2_etaw: ((eta_sq + w_sq) * inv_l).sqrt(),
        boundary_monitor: state.boundary_monitor(),
    }
}

/// Local exponents `r_n` between consecutive usable samples.
#[derive(Debug, Clone, PartialEq)]
pub struct RateSequence {
    pub points: Vec<(f64, f64)>,
    /// Samples dropped for `t <= 0` or a non-positive norm.
    pub skipped: usize,
}

impl RateSequence {
    pub fn any_skipped(&self) -> bool {
        self.skipped > 0
    }
}

fn usable(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    samples
        .iter()
        .copied()
        .filter(|&(t, v)| t > 0.0 && v > 0.0 && t.is_finite() && v.is_finite())
        .collect()
}

/// `r_n = −log(v_n/v_{n−1}) / log(t_n/t_{n−1})` over `(t, v)` samples.
pub fn rate_sequence_of(samples: &[(f64, f64)]) -> Result<RateSequence, DecayError> {
    let usable = usable(samples);
    if usable.len() < 2 {
        return Err(DecayError::DegenerateSeries {
            usable: usable.len(),
            needed: 2,
        });
    }
    let points = usable
        .windows(2)
        .map(|w| {
            let (t0, v0) = w[0];
            let (t1, v1) = w[1];
            (t1, -(v1 / v0).ln() / (t1 / t0).ln())
        })
        .collect();
    Ok(RateSequence {
        points,
        skipped: samples.len() - usable.len(),
    })
}

pub fn rate_sequence(series: &NormSeries, kind: NormKind) -> Result<RateSequence, DecayError> {
    rate_sequence_of(&series.values(kind))
}

/// Power-law fit from the trailing window.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub r: f64,
    pub c: f64,
    pub r_sequence: Vec<(f64, f64)>,
    pub window: usize,
    /// The trailing rates have settled: relative spread and relative drift
    /// across the window both below [`PLATEAU_TOL`].
    pub plateau: bool,
}

/// `r` = mean of the last five `r_n`; `C` = mean of the last five `v_n·t_n^r`.
pub fn fit_samples(samples: &[(f64, f64)]) -> Result<DecayFit, DecayError> {
    let needed = FIT_WINDOW + 1;
    let kept = usable(samples);
    let rates = rate_sequence_of(samples).map_err(|_| DecayError::DegenerateSeries {
        usable: kept.len(),
        needed,
    })?;
    if rates.points.len() < FIT_WINDOW {
        return Err(DecayError::DegenerateSeries {
            usable: rates.points.len() + 1,
            needed,
        });
    }
    let tail = &rates.points[rates.points.len() - FIT_WINDOW..];
    let w = FIT_WINDOW as f64;
    let r = tail.iter().map(|p| p.1).sum::<f64>() / w;

    let c = kept[kept.len() - FIT_WINDOW..]
        .iter()
        .map(|&(t, v)| v * t.powf(r))
        .sum::<f64>()
        / w;

    let spread = (tail.iter().map(|p| (p.1 - r).powi(2)).sum::<f64>() / w).sqrt();
    let drift = (tail[FIT_WINDOW - 1].1 - tail[0].1).abs();
    let plateau = r != 0.0 && spread / r.abs() < PLATEAU_TOL && drift / r.abs() < PLATEAU_TOL;

    Ok(DecayFit {
        r,
        c,
        r_sequence: rates.points,
        window: FIT_WINDOW,
        plateau,
    })
}

pub fn fit(series: &NormSeries, kind: NormKind) -> Result<DecayFit, DecayError> {
    fit_samples(&series.values(kind))
}
