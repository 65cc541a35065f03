//! System coefficients for the four-parameter (abcd) Boussinesq family,
//! their admissibility constraints, and the Fourier multipliers built from
//! them.
//!
//! The family reads
//!
//! ```text
//! η_t + u_x + (uη)_x + a u_xxx − b η_xxt = ν_η η_xx
//! u_t + η_x + u u_x  + c η_xxx − d u_xxt = ν_u u_xx
//! ```
//!
//! with the dissipation switches `(ν_η, ν_u)` selected by [`Dissipation`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Tolerance used for the equality part of the (C0) constraint.
pub const CONSTRAINT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `a + b + c + d = 1/3` and `c + d >= 0`.
    C0,
    /// Neither `b,d >= 0, a,c <= 0` nor `b,d >= 0, a = c > 0` holds.
    C1C2,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::C0 => f.write_str("C0"),
            Constraint::C1C2 => f.write_str("C1/C2"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("constraint {which} violated: {detail}")]
    ConstraintViolation { which: Constraint, detail: String },
    #[error("coefficient {name} is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("unknown dissipation '{0}' (expected complete, partial-u or partial-eta)")]
    UnknownDissipation(String),
}

/// Where the `∂²_x` damping terms act.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dissipation {
    /// Damping in both equations (`ν_η = ν_u = 1`).
    Complete,
    /// Damping in the velocity equation only (`ν_η = 0, ν_u = 1`).
    PartialU,
    /// Damping in the elevation equation only (`ν_η = 1, ν_u = 0`).
    PartialEta,
}

impl Dissipation {
    pub const ALL: [Dissipation; 3] = [
        Dissipation::Complete,
        Dissipation::PartialU,
        Dissipation::PartialEta,
    ];

    /// `(ν_η, ν_u)`.
    pub fn switches(self) -> (f64, f64) {
        match self {
            Dissipation::Complete => (1.0, 1.0),
            Dissipation::PartialU => (0.0, 1.0),
            Dissipation::PartialEta => (1.0, 0.0),
        }
    }

    pub fn nu_eta(self) -> f64 {
        self.switches().0
    }

    pub fn nu_u(self) -> f64 {
        self.switches().1
    }

    pub fn id(self) -> &'static str {
        match self {
            Dissipation::Complete => "complete",
            Dissipation::PartialU => "partial-u",
            Dissipation::PartialEta => "partial-eta",
        }
    }
}

impl fmt::Display for Dissipation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Dissipation {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "complete" | "full" => Ok(Dissipation::Complete),
            "partial-u" | "partial_u" | "partial" | "partialu" => Ok(Dissipation::PartialU),
            "partial-eta" | "partial_eta" | "partialeta" => Ok(Dissipation::PartialEta),
            other => Err(ParamsError::UnknownDissipation(other.to_string())),
        }
    }
}

/// Which well-posedness regime an admissible system falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `b >= 0, d >= 0, a <= 0, c <= 0`.
    C1,
    /// `b >= 0, d >= 0, a = c > 0`.
    C2,
}

/// A validated member of the abcd family together with its dissipation.
///
/// Only [`make_spec`] (or [`SystemSpec::new`]) constructs one, so every
/// value in circulation satisfies (C0) and exactly one of (C1)/(C2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    diss: Dissipation,
    regime: Regime,
    theta_sq: f64,
}

/// Validates coefficients and dissipation placement.
pub fn make_spec(a: f64, b: f64, c: f64, d: f64, diss: Dissipation) -> Result<SystemSpec, ParamsError> {
    for (name, value) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !value.is_finite() {
            return Err(ParamsError::NonFinite { name, value });
        }
    }

    let sum = a + b + c + d;
    if (sum - 1.0 / 3.0).abs() > CONSTRAINT_TOL {
        return Err(ParamsError::ConstraintViolation {
            which: Constraint::C0,
            detail: format!("a+b+c+d = {sum} differs from 1/3"),
        });
    }
    if c + d < -CONSTRAINT_TOL {
        return Err(ParamsError::ConstraintViolation {
            which: Constraint::C0,
            detail: format!("c+d = {} is negative", c + d),
        });
    }

    let regularizing = b >= 0.0 && d >= 0.0;
    let c1 = regularizing && a <= 0.0 && c <= 0.0;
    let c2 = regularizing && a == c && a > 0.0;
    let regime = match (c1, c2) {
        (true, false) => Regime::C1,
        (false, true) => Regime::C2,
        _ => {
            let detail = if !regularizing {
                format!("need b >= 0 and d >= 0 (b = {b}, d = {d})")
            } else {
                format!("need a,c <= 0 or a = c > 0 (a = {a}, c = {c})")
            };
            return Err(ParamsError::ConstraintViolation {
                which: Constraint::C1C2,
                detail,
            });
        }
    };

    Ok(SystemSpec {
        a,
        b,
        c,
        d,
        diss,
        regime,
        theta_sq: 1.0 - 2.0 * (c + d),
    })
}

impl SystemSpec {
    pub fn new(a: f64, b: f64, c: f64, d: f64, diss: Dissipation) -> Result<Self, ParamsError> {
        make_spec(a, b, c, d, diss)
    }

    /// Runs validation again on the stored coefficients.
    pub fn revalidate(&self) -> Result<Self, ParamsError> {
        make_spec(self.a, self.b, self.c, self.d, self.diss)
    }

    /// Same coefficients, different dissipation.
    pub fn with_dissipation(&self, diss: Dissipation) -> Self {
        SystemSpec { diss, ..*self }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
    pub fn dissipation(&self) -> Dissipation {
        self.diss
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }
    /// θ² = 1 − 2(c + d); informational only.
    pub fn theta_sq(&self) -> f64 {
        self.theta_sq
    }

    /// Location `a^{-1/2}` of the common zero of ω1 and ω2 under (C2).
    pub fn resonance(&self) -> Option<f64> {
        match self.regime {
            Regime::C2 => Some(self.a.sqrt().recip()),
            Regime::C1 => None,
        }
    }

    /// Nonlinear theory is only established for complete dissipation or
    /// for partial velocity damping under (C1).
    pub fn within_proven_theory(&self) -> bool {
        match self.diss {
            Dissipation::Complete => true,
            Dissipation::PartialU => self.regime == Regime::C1,
            Dissipation::PartialEta => false,
        }
    }
}

/// All Fourier-side multipliers at one wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierValues {
    pub xi: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub sigma: f64,
    pub alpha: f64,
    pub epsilon: f64,
    pub h_hat: f64,
}

impl MultiplierValues {
    pub fn sign_omega1(&self) -> f64 {
        sign(self.omega1)
    }
    pub fn sign_omega2(&self) -> f64 {
        sign(self.omega2)
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn multipliers(spec: &SystemSpec, xi: f64) -> MultiplierValues {
    let xi2 = xi * xi;
    let reg_b = 1.0 + spec.b * xi2;
    let reg_d = 1.0 + spec.d * xi2;
    let omega1 = (1.0 - spec.a * xi2) / reg_b;
    let omega2 = (1.0 - spec.c * xi2) / reg_d;

    let (sigma, h_hat) = match spec.regime {
        // a = c: ω1ω2 = (1−aξ²)²/(reg_b·reg_d) and the numerators cancel in Ĥ.
        Regime::C2 => {
            let sigma = (1.0 - spec.a * xi2).abs() / (reg_b * reg_d).sqrt();
            (sigma, (reg_d / reg_b).sqrt())
        }
        Regime::C1 => ((omega1 * omega2).sqrt(), (omega1 / omega2).sqrt()),
    };

    MultiplierValues {
        xi,
        omega1,
        omega2,
        sigma,
        alpha: xi2 / reg_b,
        epsilon: xi2 / reg_d,
        h_hat,
    }
}

/// Asymptotic orders (powers of |ξ| as |ξ| → ∞) of the multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderProfile {
    pub order_sigma: i32,
    pub order_epsilon: i32,
    pub order_alpha: i32,
    pub order_h: i32,
}

fn indicator(r: f64) -> i32 {
    i32::from(r != 0.0)
}

pub fn orders(spec: &SystemSpec) -> OrderProfile {
    let (a, b, c, d) = (
        indicator(spec.a),
        indicator(spec.b),
        indicator(spec.c),
        indicator(spec.d),
    );
    OrderProfile {
        order_sigma: a + c - b - d,
        order_epsilon: 2 - 2 * d,
        order_alpha: 2 - 2 * b,
        order_h: a + d - c - b,
    }
}

/// Named members of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    BbmBbm,
    BonaSmith,
    KdvKdv,
    ClassicalBoussinesq,
    KdvBbm,
    BbmKdv,
    WeaklyDispersive,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::BbmBbm,
        Preset::BonaSmith,
        Preset::KdvKdv,
        Preset::ClassicalBoussinesq,
        Preset::KdvBbm,
        Preset::BbmKdv,
        Preset::WeaklyDispersive,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Preset::BbmBbm => "bbm-bbm",
            Preset::BonaSmith => "bona-smith",
            Preset::KdvKdv => "kdv-kdv",
            Preset::ClassicalBoussinesq => "classical-boussinesq",
            Preset::KdvBbm => "kdv-bbm",
            Preset::BbmKdv => "bbm-kdv",
            Preset::WeaklyDispersive => "weakly-dispersive",
        }
    }

    /// `(a, b, c, d)`.
    ///
    /// The coupled KdV–BBM (`b = c = 0`) and BBM–KdV (`a = d = 0`) patterns
    /// only fix zeros and signs; the values below are the admissible members
    /// picked for them. With `d = 0`, (C0) forces `c >= 0` and (C1) forces
    /// `c <= 0`, so BBM–KdV is pinned to `(0, 1/3, 0, 0)`.
    pub fn coefficients(self) -> [f64; 4] {
        const THIRD: f64 = 1.0 / 3.0;
        const SIXTH: f64 = 1.0 / 6.0;
        match self {
            Preset::BbmBbm => [0.0, SIXTH, 0.0, SIXTH],
            Preset::BonaSmith => [0.0, THIRD, -THIRD, THIRD],
            Preset::KdvKdv => [SIXTH, 0.0, SIXTH, 0.0],
            Preset::ClassicalBoussinesq => [0.0, 0.0, 0.0, THIRD],
            Preset::KdvBbm => [-SIXTH, 0.0, 0.0, 0.5],
            Preset::BbmKdv => [0.0, THIRD, 0.0, 0.0],
            Preset::WeaklyDispersive => [-SIXTH, 0.25, 0.0, 0.25],
        }
    }

    pub fn spec(self, diss: Dissipation) -> SystemSpec {
        let [a, b, c, d] = self.coefficients();
        make_spec(a, b, c, d, diss).expect("preset coefficients are admissible")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        Preset::ALL
            .into_iter()
            .find(|p| p.id() == key)
            .ok_or(ParamsError::UnknownPreset(key))
    }
}
