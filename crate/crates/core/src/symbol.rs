//! The 2×2 Fourier symbol `A(ξ)` of the linearized system in the
//! `(η̂, ŵ = Ĥû)` variables, its eigen-structure, the semigroup
//! `exp(−tA)`, and the low/high-frequency classification built on top.
//!
//! ```text
//!        ⎡ ν_η α            i·sgn(ω1)·ξσ ⎤
//! A(ξ) = ⎢                               ⎥
//!        ⎣ i·sgn(ω2)·ξσ     ν_u ε        ⎦
//! ```

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::params::{multipliers, orders, Dissipation, SystemSpec};
use crate::par::{self, Execution};

pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymbolError {
    #[error("cannot classify {0}: order conditions are contradictory")]
    Unclassifiable(String),
    #[error("no low-frequency threshold for {0}: smallest scan point already fails")]
    NoThreshold(String),
}

/// Entries of `A(ξ)`. The off-diagonal entries are `i·off12` and `i·off21`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolMatrix {
    pub xi: f64,
    pub d11: f64,
    pub d22: f64,
    pub off12: f64,
    pub off21: f64,
}

impl SymbolMatrix {
    pub fn to_mat(&self) -> Mat2 {
        [
            [Complex64::new(self.d11, 0.0), Complex64::new(0.0, self.off12)],
            [Complex64::new(0.0, self.off21), Complex64::new(self.d22, 0.0)],
        ]
    }

    /// Dissipative part `D`.
    pub fn dissipative(&self) -> Mat2 {
        [
            [Complex64::new(self.d11, 0.0), ZERO],
            [ZERO, Complex64::new(self.d22, 0.0)],
        ]
    }

    /// Dispersive part `U = A − D`.
    pub fn dispersive(&self) -> Mat2 {
        [
            [ZERO, Complex64::new(0.0, self.off12)],
            [Complex64::new(0.0, self.off21), ZERO],
        ]
    }

    pub fn trace(&self) -> f64 {
        self.d11 + self.d22
    }

    /// `det A = d11·d22 + off12·off21` (the product `i·i = −1` flips the sign).
    pub fn det(&self) -> f64 {
        self.d11 * self.d22 + self.off12 * self.off21
    }
}

pub fn symbol_matrix(spec: &SystemSpec, xi: f64) -> SymbolMatrix {
    let m = multipliers(spec, xi);
    let (nu_eta, nu_u) = spec.dissipation().switches();
    let coupling = xi * m.sigma;
    SymbolMatrix {
        xi,
        d11: nu_eta * m.alpha,
        d22: nu_u * m.epsilon,
        off12: m.sign_omega1() * coupling,
        off21: m.sign_omega2() * coupling,
    }
}

/// Eigen-data of `A(ξ)`, ordered by `Re λ1 <= Re λ2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub tr: f64,
    pub det: f64,
    pub delta: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    /// Modulus of the off-diagonal entry of the Schur form.
    pub z_abs: f64,
    /// `λ2 − λ1`, evaluated as `sqrt(Δ)` rather than by subtraction.
    gap: Complex64,
}

impl EigenData {
    /// Complex-conjugate (or repeated) eigenvalues.
    pub fn is_perturbation_range(&self) -> bool {
        self.delta <= 0.0 || self.is_degenerate()
    }

    pub fn is_degenerate(&self) -> bool {
        self.delta.abs() < 1e-14 * (self.tr * self.tr).max(1.0)
    }
}

pub fn eigen(spec: &SystemSpec, xi: f64) -> EigenData {
    eigen_of(&symbol_matrix(spec, xi))
}

pub fn eigen_of(m: &SymbolMatrix) -> EigenData {
    let tr = m.trace();
    let det = m.det();
    let delta = tr * tr - 4.0 * det;
    let half = 0.5 * tr;
    let dd = m.d11 - m.d22;

    let degenerate = delta.abs() < 1e-14 * (tr * tr).max(1.0);
    let (lambda1, lambda2, gap, z_abs) = if degenerate {
        let l = Complex64::new(half, 0.0);
        let gap = Complex64::new(delta, 0.0).sqrt();
        (l, l, gap, dd.abs())
    } else if delta < 0.0 {
        let im = 0.5 * (-delta).sqrt();
        (
            Complex64::new(half, -im),
            Complex64::new(half, im),
            Complex64::new(0.0, 2.0 * im),
            dd.abs(),
        )
    } else {
        // tr >= 0, so the larger root carries no cancellation.
        let root = delta.sqrt();
        let big = 0.5 * (tr + root);
        let small = if big > 0.0 { det / big } else { 0.0 };
        (
            Complex64::new(small, 0.0),
            Complex64::new(big, 0.0),
            Complex64::new(root, 0.0),
            2.0 * (m.off12 * m.off21).abs().sqrt(),
        )
    };

    EigenData {
        tr,
        det,
        delta,
        lambda1,
        lambda2,
        z_abs,
        gap,
    }
}

fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        ONE + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Divided difference `(e^{−tλ1} − e^{−tλ2}) / (λ1 − λ2)`, with the
/// confluent limit `−t·e^{−tλ}`.
fn divided_difference(e: &EigenData, t: f64) -> Complex64 {
    let half_gap = 0.5 * e.gap;
    if (t * half_gap).norm() < 0.5 {
        let mean = Complex64::new(0.5 * e.tr, 0.0);
        -t * (-t * mean).exp() * sinhc(t * half_gap)
    } else {
        ((-t * e.lambda2).exp() - (-t * e.lambda1).exp()) / e.gap
    }
}

/// `exp(−tA)` from `f(A) = f(λ1)·I + f[λ1, λ2]·(A − λ1·I)`.
pub fn propagator_of(m: &SymbolMatrix, e: &EigenData, t: f64) -> Mat2 {
    let a = m.to_mat();
    let base = (-t * e.lambda1).exp();
    let dd = divided_difference(e, t);
    [
        [base + dd * (a[0][0] - e.lambda1), dd * a[0][1]],
        [dd * a[1][0], base + dd * (a[1][1] - e.lambda1)],
    ]
}

pub fn propagator(spec: &SystemSpec, xi: f64, t: f64) -> Mat2 {
    let m = symbol_matrix(spec, xi);
    let e = eigen_of(&m);
    propagator_of(&m, &e, t)
}

pub fn mat_vec(m: &Mat2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Largest singular value of a complex 2×2 matrix.
pub fn operator_norm(m: &Mat2) -> f64 {
    // Scale first so squared entries neither underflow nor overflow.
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let s = m.map(|row| row.map(|z| z / scale));
    let fro2: f64 = s.iter().flatten().map(|z| z.norm_sqr()).sum();
    let det = (s[0][0] * s[1][1] - s[0][1] * s[1][0]).norm();
    let half = 0.5 * fro2;
    let disc = (half * half - det * det).max(0.0);
    scale * (half + disc.sqrt()).sqrt()
}

/// `‖exp(−tA(ξ))‖` from the exact 2×2 exponential.
pub fn semigroup_norm_exact(spec: &SystemSpec, xi: f64, t: f64) -> f64 {
    operator_norm(&propagator(spec, xi, t))
}

/// Trace bound `‖e^{−tA}‖² <= Tr(e^{−tA*} e^{−tA})` written through the
/// Schur form.
pub fn semigroup_norm_bound(spec: &SystemSpec, xi: f64, t: f64) -> f64 {
    let e = eigen(spec, xi);
    bound_from(&e, t)
}

fn bound_from(e: &EigenData, t: f64) -> f64 {
    let dd = divided_difference(e, t);
    let sq = (-2.0 * t * e.lambda1.re).exp()
        + (-2.0 * t * e.lambda2.re).exp()
        + e.z_abs * e.z_abs * dd.norm_sqr();
    sq.sqrt()
}

/// Worst-case outcome of [`check_bounds`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub samples: usize,
    /// `max(exact − bound)`; non-positive when the bound dominates.
    pub max_excess: f64,
    /// Largest violation of `det/tr <= λ1 <= min(tr, 2 det/tr)` over the
    /// samples with `Δ > 0`; non-positive when the sandwich holds.
    pub max_sandwich_violation: f64,
    pub nonperturbative: usize,
}

/// Evaluates the norm bound and the eigenvalue sandwich over a batch of
/// `(spec, ξ, t)` samples.
pub fn check_bounds(exec: Execution, samples: &[(SystemSpec, f64, f64)]) -> BoundCheck {
    let rows = par::map_indexed(exec, samples.len(), |i| {
        let (spec, xi, t) = &samples[i];
        let m = symbol_matrix(spec, *xi);
        let e = eigen_of(&m);
        let exact = operator_norm(&propagator_of(&m, &e, *t));
        let excess = exact - bound_from(&e, *t);
        let sandwich = if e.delta > 0.0 && e.tr > 0.0 {
            let l1 = e.lambda1.re;
            let lower = e.det / e.tr - l1;
            let upper = l1 - e.tr.min(2.0 * e.det / e.tr);
            Some(lower.max(upper))
        } else {
            None
        };
        (excess, sandwich)
    });
    let mut out = BoundCheck {
        samples: samples.len(),
        max_excess: f64::NEG_INFINITY,
        max_sandwich_violation: f64::NEG_INFINITY,
        nonperturbative: 0,
    };
    for (excess, sandwich) in rows {
        out.max_excess = out.max_excess.max(excess);
        if let Some(v) = sandwich {
            out.nonperturbative += 1;
            out.max_sandwich_violation = out.max_sandwich_violation.max(v);
        }
    }
    out
}

/// High-frequency behaviour of the semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecayClass {
    /// High modes damped like `exp(−βξ²t)`.
    KdVBurgers,
    /// High modes damped like `exp(−βt)`.
    BBMBurgers,
    /// High-mode damping rate vanishes as `|ξ| → ∞`.
    SlowDecay,
}

impl DecayClass {
    pub fn id(self) -> &'static str {
        match self {
            DecayClass::KdVBurgers => "kdv-burgers",
            DecayClass::BBMBurgers => "bbm-burgers",
            DecayClass::SlowDecay => "slow-decay",
        }
    }
}

impl fmt::Display for DecayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub klass: DecayClass,
    pub delta_m: f64,
    pub delta_big_m: f64,
    pub resonance: Option<f64>,
}

fn describe(spec: &SystemSpec) -> String {
    let [a, b, c, d] = spec.coefficients();
    format!("(a,b,c,d)=({a},{b},{c},{d}) {}", spec.dissipation())
}

/// Class from the asymptotic orders alone.
pub fn decay_class(spec: &SystemSpec) -> Result<DecayClass, SymbolError> {
    let o = orders(spec);
    // Damping exponent of the single damped component; η and u swap roles
    // under PartialEta.
    let damped_order = match spec.dissipation() {
        Dissipation::Complete => {
            return Ok(if o.order_sigma <= 0 {
                DecayClass::BBMBurgers
            } else {
                DecayClass::KdVBurgers
            });
        }
        Dissipation::PartialU => o.order_epsilon,
        Dissipation::PartialEta => o.order_alpha,
    };
    // Orders are even, so the halves are exact.
    let limit = 2 - damped_order / 2;
    let os = o.order_sigma;
    let kdv = os >= limit;
    let bbm = os.abs() < limit;
    let slow = os <= -limit;
    match (kdv, bbm, slow) {
        (true, false, false) => Ok(DecayClass::KdVBurgers),
        (false, true, false) => Ok(DecayClass::BBMBurgers),
        (false, false, true) => Ok(DecayClass::SlowDecay),
        _ => Err(SymbolError::Unclassifiable(describe(spec))),
    }
}

pub fn classify(spec: &SystemSpec) -> Result<Classification, SymbolError> {
    let klass = decay_class(spec)?;
    let delta_m = low_freq_threshold(spec)?;
    let delta_big_m = high_freq_threshold(spec, delta_m);
    Ok(Classification {
        klass,
        delta_m,
        delta_big_m,
        resonance: spec.resonance(),
    })
}

const LOW_SCAN_STEP: f64 = 1e-3;
const LOW_SCAN_MAX: f64 = 10.0;
const HIGH_SCAN_MAX: f64 = 1e3;
const HIGH_SCAN_POINTS: usize = 4000;

/// Largest `δ` on the grid `ξ = k·10⁻³ <= 10` such that every grid point in
/// `(0, δ]` has `Δ <= 0` and `1/2 <= Tr A / ((ν_η+ν_u)ξ²) <= 2`. Under (C2)
/// the scan also stops short of the resonance point.
pub fn low_freq_threshold(spec: &SystemSpec) -> Result<f64, SymbolError> {
    let (nu_eta, nu_u) = spec.dissipation().switches();
    let weight = nu_eta + nu_u;
    let resonance = spec.resonance().unwrap_or(f64::INFINITY);
    let steps = (LOW_SCAN_MAX / LOW_SCAN_STEP).round() as usize;

    let mut last_ok = None;
    for k in 1..=steps {
        let xi = k as f64 * LOW_SCAN_STEP;
        if xi >= resonance {
            break;
        }
        let e = eigen(spec, xi);
        let ratio = e.tr / (weight * xi * xi);
        if e.delta > 0.0 || !(0.5..=2.0).contains(&ratio) {
            break;
        }
        last_ok = Some(xi);
    }
    last_ok.ok_or_else(|| SymbolError::NoThreshold(describe(spec)))
}

/// Smallest `ξ >= δ_m` beyond which, up to `|ξ| = 10³`, the sign of `Δ`
/// is frozen and `Tr A`, `det A` and `ξ²σ²` each stay within a factor 2 of
/// their leading power law.
pub fn high_freq_threshold(spec: &SystemSpec, delta_m: f64) -> f64 {
    let probe = |xi: f64| {
        let m = symbol_matrix(spec, xi);
        let coupling = m.off12.abs() * m.off21.abs();
        let e = eigen_of(&m);
        (e.tr, e.det, coupling, e.delta > 0.0)
    };

    let top = probe(HIGH_SCAN_MAX);
    let half = probe(0.5 * HIGH_SCAN_MAX);
    let exponent = |hi: f64, lo: f64| -> i32 {
        if hi > 0.0 && lo > 0.0 {
            (hi / lo).log2().round() as i32
        } else {
            0
        }
    };
    let laws = [
        (top.0, exponent(top.0, half.0)),
        (top.1, exponent(top.1, half.1)),
        (top.2, exponent(top.2, half.2)),
    ];
    let within = |value: f64, (scale, power): (f64, i32), xi: f64| {
        if scale == 0.0 {
            return value == 0.0;
        }
        let law = scale * (xi / HIGH_SCAN_MAX).powi(power);
        let r = value / law;
        (0.5..=2.0).contains(&r)
    };

    let start = delta_m.max(LOW_SCAN_STEP);
    let ratio = (HIGH_SCAN_MAX / start).ln();
    let mut threshold = HIGH_SCAN_MAX;
    for i in (0..=HIGH_SCAN_POINTS).rev() {
        let xi = start * (ratio * i as f64 / HIGH_SCAN_POINTS as f64).exp();
        let (tr, det, coupling, positive) = probe(xi);
        let ok = positive == top.3
            && within(tr, laws[0], xi)
            && within(det, laws[1], xi)
            && within(coupling, laws[2], xi);
        if !ok {
            break;
        }
        threshold = xi;
    }
    threshold.max(delta_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Preset;

    fn mat_close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    fn bbm(diss: Dissipation) -> SystemSpec {
        Preset::BbmBbm.spec(diss)
    }

    #[test]
    fn bbm_symbol_at_one() {
        let m = symbol_matrix(&bbm(Dissipation::Complete), 1.0);
        for v in [m.d11, m.d22, m.off12, m.off21] {
            assert!((v - 6.0 / 7.0).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_wavenumber_gives_zero_matrix() {
        for p in Preset::ALL {
            let m = symbol_matrix(&p.spec(Dissipation::Complete), 0.0);
            assert_eq!(m.to_mat(), [[ZERO; 2]; 2]);
            let e = eigen_of(&m);
            assert_eq!(e.lambda1, ZERO);
            assert_eq!(e.lambda2, ZERO);
        }
    }

    #[test]
    fn kdv_symbol_at_resonance_is_diagonal() {
        let m = symbol_matrix(&Preset::KdvKdv.spec(Dissipation::Complete), 6f64.sqrt());
        assert!((m.d11 - 6.0).abs() < 1e-14 && (m.d22 - 6.0).abs() < 1e-14);
        assert!(m.off12.abs() < 1e-14 && m.off21.abs() < 1e-14);
    }

    #[test]
    fn dispersive_part_is_skew_hermitian() {
        for p in Preset::ALL {
            for xi in [-7.0, -1.3, 0.4, 2.449, 3.0, 50.0] {
                let m = symbol_matrix(&p.spec(Dissipation::Complete), xi);
                let u = m.dispersive();
                for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    assert_eq!(u[j][i].conj(), -u[i][j]);
                }
                let d = m.dissipative();
                assert!(d[0][0].re >= 0.0 && d[1][1].re >= 0.0);
            }
        }
    }

    #[test]
    fn bbm_eigenvalues_at_one() {
        let e = eigen(&bbm(Dissipation::Complete), 1.0);
        assert!((e.tr - 12.0 / 7.0).abs() < 1e-14);
        assert!((e.det - 72.0 / 49.0).abs() < 1e-14);
        assert!((e.delta + 144.0 / 49.0).abs() < 1e-13);
        assert!((e.lambda1 - Complex64::new(6.0 / 7.0, -6.0 / 7.0)).norm() < 1e-14);
        assert!((e.lambda2 - Complex64::new(6.0 / 7.0, 6.0 / 7.0)).norm() < 1e-14);
        assert!(e.z_abs.abs() < 1e-15);
    }

    #[test]
    fn slow_mode_for_partial_bbm() {
        let e = eigen(&bbm(Dissipation::PartialU), 100.0);
        let expected = 2.0 / (2.0 * (1.0 / 6.0) * 100.0 * 100.0);
        assert!(e.delta > 0.0);
        assert!((e.lambda1.re - expected).abs() / expected < 0.05, "{}", e.lambda1);
    }

    #[test]
    fn norm_examples() {
        let s = bbm(Dissipation::Complete);
        assert!((semigroup_norm_exact(&s, 1.3, 0.0) - 1.0).abs() < 1e-15);
        let n = semigroup_norm_exact(&s, 1.0, 1.0);
        assert!((n - (-6.0f64 / 7.0).exp()).abs() < 1e-14, "{n}");
        let b = semigroup_norm_bound(&s, 1.0, 1.0);
        assert!((b - 2f64.sqrt() * (-6.0f64 / 7.0).exp()).abs() < 1e-14, "{b}");
        assert!((semigroup_norm_bound(&s, 0.7, 0.0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((semigroup_norm_bound(&s, 0.0, 5.0) - 2f64.sqrt()).abs() < 1e-15);

        let k = Preset::KdvKdv.spec(Dissipation::Complete);
        let n = semigroup_norm_exact(&k, 6f64.sqrt(), 1.0);
        assert!((n - (-6.0f64).exp()).abs() < 1e-15, "{n}");
    }

    #[test]
    fn exponential_matches_taylor_series() {
        // Independent reference: truncated power series with scaling and squaring.
        fn series(a: &Mat2, t: f64) -> Mat2 {
            let squarings = 12;
            let h = -t / f64::from(1 << squarings);
            let mut term = [[ONE, ZERO], [ZERO, ONE]];
            let mut sum = term;
            for k in 1..30 {
                let mut next = [[ZERO; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        next[i][j] = (term[i][0] * a[0][j] + term[i][1] * a[1][j]) * h / k as f64;
                    }
                }
                term = next;
                for i in 0..2 {
                    for j in 0..2 {
                        sum[i][j] += term[i][j];
                    }
                }
            }
            for _ in 0..squarings {
                let mut sq = [[ZERO; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        sq[i][j] = sum[i][0] * sum[0][j] + sum[i][1] * sum[1][j];
                    }
                }
                sum = sq;
            }
            sum
        }
        for p in Preset::ALL {
            for diss in Dissipation::ALL {
                let s = p.spec(diss);
                for xi in [0.05, 0.8, 2.0, 6f64.sqrt(), 4.0, 11.0] {
                    for t in [0.1, 1.0, 3.0] {
                        let m = symbol_matrix(&s, xi);
                        let exact = propagator(&s, xi, t);
                        let reference = series(&m.to_mat(), t);
                        assert!(mat_close(&exact, &reference, 1e-9), "{p} {diss} xi={xi} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn norm_is_at_least_spectral_radius() {
        for p in Preset::ALL {
            let s = p.spec(Dissipation::PartialU);
            for xi in [0.3, 1.0, 3.0, 10.0] {
                let e = eigen(&s, xi);
                for t in [0.5, 5.0, 50.0] {
                    let n = semigroup_norm_exact(&s, xi, t);
                    assert!(n >= (-t * e.lambda1.re).exp() * (1.0 - 1e-12));
                }
            }
        }
    }

    #[test]
    fn vieta_and_schur_identities() {
        for p in Preset::ALL {
            for diss in Dissipation::ALL {
                let s = p.spec(diss);
                for xi in [-9.0, -2.0, -0.01, 0.3, 1.7, 2.3, 5.0, 40.0] {
                    let m = symbol_matrix(&s, xi);
                    let e = eigen_of(&m);
                    let scale = e.tr.abs().max(e.det.abs()).max(1.0);
                    assert!(((e.lambda1 + e.lambda2).re - e.tr).abs() <= 1e-10 * scale);
                    assert!(((e.lambda1 * e.lambda2).re - e.det).abs() <= 1e-10 * scale);
                    // Tr(A*A) = |λ1|² + |λ2|² + |z|²
                    let fro2: f64 = m.to_mat().iter().flatten().map(|z| z.norm_sqr()).sum();
                    let rhs = e.lambda1.norm_sqr() + e.lambda2.norm_sqr() + e.z_abs * e.z_abs;
                    assert!((fro2 - rhs).abs() <= 1e-10 * fro2.max(1.0), "{p} {diss} {xi}");
                    if !e.is_perturbation_range() {
                        let expected = 2.0 * xi.abs() * multipliers(&s, xi).sigma;
                        assert!((e.z_abs - expected).abs() <= 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify(&Preset::KdvKdv.spec(Dissipation::Complete)).unwrap();
        assert_eq!(c.klass, DecayClass::KdVBurgers);
        for diss in [Dissipation::Complete, Dissipation::PartialU] {
            let c = classify(&Preset::ClassicalBoussinesq.spec(diss)).unwrap();
            assert_eq!(c.klass, DecayClass::BBMBurgers);
        }
        let c = classify(&bbm(Dissipation::PartialU)).unwrap();
        assert_eq!(c.klass, DecayClass::SlowDecay);
        // PartialEta mirrors PartialU when b and d are swapped.
        assert_eq!(decay_class(&bbm(Dissipation::PartialEta)).unwrap(), DecayClass::SlowDecay);
    }

    #[test]
    fn thresholds_are_ordered() {
        for p in Preset::ALL {
            for diss in Dissipation::ALL {
                let c = classify(&p.spec(diss)).unwrap();
                assert!(c.delta_m > 0.0 && c.delta_m <= c.delta_big_m, "{p} {diss} {c:?}");
                if let Some(r) = c.resonance {
                    assert!(c.delta_m <= r && r <= c.delta_big_m, "{p} {diss} {c:?}");
                }
            }
        }
    }

    #[test]
    fn low_frequency_threshold_examples() {
        let d = low_freq_threshold(&bbm(Dissipation::Complete)).unwrap();
        assert!(d >= 0.5);
        // Tr/(2ξ²) = 1/(1 + ξ²/6) stays above 1/2 up to ξ = √6.
        assert!((d - 6f64.sqrt()).abs() < 2e-3, "{d}");

        let kdv = Preset::KdvKdv.spec(Dissipation::Complete);
        assert!(low_freq_threshold(&kdv).unwrap() < 6f64.sqrt());
        // Without the resonance cut the complete KdV–KdV scan would run to
        // the end: Δ = −4ξ²σ² never turns positive.
        for k in 1..10_000 {
            assert!(eigen(&kdv, k as f64 * 1e-3).delta <= 0.0);
        }
        let partial = low_freq_threshold(&Preset::KdvKdv.spec(Dissipation::PartialU)).unwrap();
        // Δ = ξ⁴ − 4ξ²(1 − ξ²/6)² first turns positive at ξ = 1.5(√(11/3) − 1).
        assert!((partial - 1.5 * ((11.0f64 / 3.0).sqrt() - 1.0)).abs() < 2e-3, "{partial}");
    }
}
