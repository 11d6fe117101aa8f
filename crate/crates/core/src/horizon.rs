//! Horizon location, classification, surface gravity, and temperature.
//!
//! The time-time component of the covariant effective metric vanishes where
//! the flow speed equals the in-medium light speed, `β(r)² = 1/ε`. For a
//! purely radial flow that ergo-surface is an apparent horizon, and with an
//! eternally stationary flow it coincides with the event horizon: inward
//! flow makes a black hole, outward flow a white hole.
//!
//! The surface gravity of the static representation is
//!
//! ```text
//! κ = |∂β/∂r| / (1 − β²)   evaluated at the horizon, β² = 1/ε,
//! ```
//!
//! the non-relativistic velocity gradient enhanced by the relativistic
//! factor 1/(1−β²). The magnitude is taken because the gradient sign only
//! distinguishes black from white holes, which is reported separately. The
//! associated temperature is `T = κ ħ c / (4π k_B)` (see
//! [`crate::constants::TEMPERATURE_PREFACTOR`]) and its order of magnitude
//! is `ħ c / (k_B n R)` with `n = √ε` and `R` the horizon radius.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::{BOLTZMANN, HBAR, ROOT_TOL, SPEED_OF_LIGHT, TEMPERATURE_PREFACTOR};
use crate::flow::{FlowDirection, FlowProfile};

/// Number of uniform samples in the bracket scan ahead of bisection.
pub const BRACKET_SAMPLES: usize = 512;

#[derive(Debug, Error)]
pub enum HorizonError {
    #[error("permittivity must be >= 1, got {0}")]
    InvalidEpsilon(f64),
    #[error("no horizon: the flow never reaches the in-medium light speed")]
    NoHorizon,
    #[error("temperature must be > 0, got {0}")]
    NonPositiveTemperature(f64),
    #[error("length scale must be > 0, got {0}")]
    NonPositiveLengthScale(f64),
}

/// Black hole (inward flow), white hole (outward flow), or no horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HorizonKind {
    Black,
    White,
    None,
}

/// Result of the ergo-surface search.
#[derive(Debug, Clone, PartialEq)]
pub struct Ergosurface {
    pub kind: HorizonKind,
    /// Horizon radius, in flow length units; `None` when kind is `None`.
    pub radius: Option<f64>,
    /// Flow speed at the horizon (equals 1/√ε at a root).
    pub beta_h: Option<f64>,
    /// Every root of β(r) − 1/√ε on the domain, ascending. More than one
    /// entry means nested horizons; `radius` is the outermost.
    pub roots: Vec<f64>,
}

impl Ergosurface {
    fn none() -> Self {
        Self {
            kind: HorizonKind::None,
            radius: None,
            beta_h: None,
            roots: Vec::new(),
        }
    }
}

/// Locate the ergo-surface/horizon: the roots of β(r) = 1/√ε.
///
/// A bracket scan with [`BRACKET_SAMPLES`] uniform samples feeds bisection
/// to a relative tolerance of 1e-10. No sign change on the domain means no
/// horizon (kind `None`); multiple sign changes are all reported, with the
/// outermost taken as the horizon.
pub fn find_ergosurface(profile: &FlowProfile, epsilon: f64) -> Result<Ergosurface, HorizonError> {
    if !(epsilon >= 1.0) {
        return Err(HorizonError::InvalidEpsilon(epsilon));
    }
    let target = 1.0 / epsilon.sqrt();
    let f = |r: f64| profile.beta(r) - target;

    let (a, b) = (profile.r_min(), profile.r_max());
    let mut roots = Vec::new();
    let mut prev_r = a;
    let mut prev_f = f(a);
    if prev_f == 0.0 {
        roots.push(a);
    }
    for i in 1..=BRACKET_SAMPLES {
        let r = a + (b - a) * i as f64 / BRACKET_SAMPLES as f64;
        let fr = f(r);
        if fr == 0.0 {
            roots.push(r);
        } else if prev_f * fr < 0.0 {
            roots.push(bisect(&f, prev_r, r));
        }
        prev_r = r;
        prev_f = fr;
    }

    if roots.is_empty() {
        return Ok(Ergosurface::none());
    }
    let radius = *roots.last().unwrap();
    let kind = match profile.direction() {
        FlowDirection::Inward => HorizonKind::Black,
        FlowDirection::Outward => HorizonKind::White,
    };
    Ok(Ergosurface {
        kind,
        radius: Some(radius),
        beta_h: Some(profile.beta(radius)),
        roots,
    })
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= ROOT_TOL * mid.abs() || mid == lo || mid == hi {
            return mid;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
}

/// Direction-based black/white classification. Refused when the profile has
/// no horizon at this permittivity.
pub fn classify(profile: &FlowProfile, epsilon: f64) -> Result<HorizonKind, HorizonError> {
    let ergo = find_ergosurface(profile, epsilon)?;
    match ergo.kind {
        HorizonKind::None => Err(HorizonError::NoHorizon),
        kind => Ok(kind),
    }
}

/// Surface gravity κ = |dβ/dr| / (1 − β²) at the horizon, in inverse flow
/// length units. The denominator is 1 − 1/ε, so ε → 1 is singular (and no
/// subluminal horizon exists there anyway).
pub fn surface_gravity(profile: &FlowProfile, epsilon: f64) -> Result<f64, HorizonError> {
    if !(epsilon > 1.0) {
        return Err(HorizonError::InvalidEpsilon(epsilon));
    }
    let ergo = find_ergosurface(profile, epsilon)?;
    let r_h = ergo.radius.ok_or(HorizonError::NoHorizon)?;
    let slope = profile.beta_prime(r_h).abs();
    Ok(slope / (1.0 - 1.0 / epsilon))
}

/// Convert a surface gravity to kelvin: `T = κ ħ c / (4π k_B)`, with κ
/// given in units of 1/length_scale and the scale in metres.
pub fn hawking_temperature(kappa: f64, length_scale_m: f64) -> Result<f64, HorizonError> {
    if !(length_scale_m > 0.0) {
        return Err(HorizonError::NonPositiveLengthScale(length_scale_m));
    }
    let kappa_si = kappa / length_scale_m;
    Ok(kappa_si * HBAR * SPEED_OF_LIGHT / (TEMPERATURE_PREFACTOR * BOLTZMANN))
}

/// Order-of-magnitude temperature `T ~ ħ c / (k_B n R)`: in-medium light
/// speed over horizon size. `n` is the refractive index, `R` the horizon
/// radius in metres.
pub fn temperature_estimate(n: f64, radius_m: f64) -> Result<f64, HorizonError> {
    if !(radius_m > 0.0) {
        return Err(HorizonError::NonPositiveLengthScale(radius_m));
    }
    Ok(HBAR * SPEED_OF_LIGHT / (BOLTZMANN * n * radius_m))
}

/// Thermal occupation number 1/(exp(ħω/k_B T) − 1) on a grid of angular
/// frequencies (rad/s). Overflow-safe: far Wien-tail points return 0.
pub fn planck_spectrum(temperature_k: f64, omega_grid: &[f64]) -> Result<Vec<f64>, HorizonError> {
    if !(temperature_k > 0.0) {
        return Err(HorizonError::NonPositiveTemperature(temperature_k));
    }
    let scale = HBAR / (BOLTZMANN * temperature_k);
    Ok(omega_grid
        .iter()
        .map(|&omega| {
            let x = omega * scale;
            if x > 700.0 {
                0.0
            } else {
                1.0 / (x.exp() - 1.0)
            }
        })
        .collect())
}

/// Full horizon characterization with SI temperatures.
///
/// Radii and κ are reported in flow length units; `length_scale_m` states
/// the metre value of that unit and is the only place SI constants enter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonReport {
    pub kind: HorizonKind,
    /// Horizon radius in flow length units.
    pub radius: Option<f64>,
    /// Flow speed at the horizon.
    pub beta_h: Option<f64>,
    /// Surface gravity in inverse flow length units.
    pub kappa: Option<f64>,
    /// Hawking temperature in kelvin.
    pub temperature_kelvin: Option<f64>,
    /// Order-of-magnitude estimate in kelvin.
    pub estimate_kelvin: Option<f64>,
    /// Metre value of one flow length unit.
    pub length_scale_m: f64,
    /// All roots of the horizon condition (ascending).
    pub roots: Vec<f64>,
}

impl HorizonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Assemble the complete report for a flow/permittivity pair.
pub fn report(
    profile: &FlowProfile,
    epsilon: f64,
    length_scale_m: f64,
) -> Result<HorizonReport, HorizonError> {
    if !(length_scale_m > 0.0) {
        return Err(HorizonError::NonPositiveLengthScale(length_scale_m));
    }
    let ergo = find_ergosurface(profile, epsilon)?;
    let mut report = HorizonReport {
        kind: ergo.kind,
        radius: ergo.radius,
        beta_h: ergo.beta_h,
        kappa: None,
        temperature_kelvin: None,
        estimate_kelvin: None,
        length_scale_m,
        roots: ergo.roots,
    };
    if let Some(r_h) = report.radius {
        let kappa = surface_gravity(profile, epsilon)?;
        report.kappa = Some(kappa);
        report.temperature_kelvin = Some(hawking_temperature(kappa, length_scale_m)?);
        report.estimate_kelvin =
            Some(temperature_estimate(epsilon.sqrt(), r_h * length_scale_m)?);
    }
    Ok(report)
}
