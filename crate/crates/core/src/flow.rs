//! Radial flow profiles of the medium.
//!
//! A profile is a speed field β(r) on a finite radial domain together with a
//! direction tag: the medium streams radially inward or outward with speed
//! 0 ≤ β(r) < 1. Parametric families carry analytic derivatives; tabulated
//! profiles use a monotone cubic interpolant so sampled data in [0, 1)
//! stays in [0, 1).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interp::{InterpError, MonotoneCubic};

#[derive(Debug, Error)]
pub enum FlowError {
    #[error("domain must satisfy 0 < r_min < r_max, got [{0}, {1}]")]
    BadDomain(f64, f64),
    #[error("flow speed must stay in [0, 1): beta({r}) = {beta}")]
    SpeedOutOfRange { r: f64, beta: f64 },
    #[error("power-law exponent must be > 0, got {0}")]
    BadExponent(f64),
    #[error("power-law reference radius must be > 0, got {0}")]
    BadReferenceRadius(f64),
    #[error("tanh-step width must be > 0, got {0}")]
    BadWidth(f64),
    #[error("tabulated profile: {0}")]
    Table(#[from] InterpError),
    #[error("non-finite parameter")]
    NonFinite,
}

/// Which way the medium streams along the radial direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowDirection {
    Inward,
    Outward,
}

impl FlowDirection {
    /// Sign of the radial velocity component: −1 inward, +1 outward.
    pub fn sign(&self) -> f64 {
        match self {
            FlowDirection::Inward => -1.0,
            FlowDirection::Outward => 1.0,
        }
    }
}

/// Functional form of the speed field.
#[derive(Debug, Clone)]
pub enum FlowFamily {
    /// β(r) = beta0 · (r0/r)^exponent
    PowerLaw { beta0: f64, r0: f64, exponent: f64 },
    /// Smooth step between `beta_near` (small r) and `beta_far` (large r)
    /// centred at `r_center` with the given `width`.
    TanhStep {
        beta_far: f64,
        beta_near: f64,
        r_center: f64,
        width: f64,
    },
    /// Monotone-cubic interpolation of (r, β) samples.
    Tabulated(MonotoneCubic),
}

/// A validated radial flow: speed field, direction, and domain.
#[derive(Debug, Clone)]
pub struct FlowProfile {
    family: FlowFamily,
    direction: FlowDirection,
    r_min: f64,
    r_max: f64,
}

impl FlowProfile {
    pub fn power_law(
        beta0: f64,
        r0: f64,
        exponent: f64,
        direction: FlowDirection,
        r_min: f64,
        r_max: f64,
    ) -> Result<Self, FlowError> {
        if ![beta0, r0, exponent].iter().all(|v| v.is_finite()) {
            return Err(FlowError::NonFinite);
        }
        if exponent <= 0.0 {
            return Err(FlowError::BadExponent(exponent));
        }
        if r0 <= 0.0 {
            return Err(FlowError::BadReferenceRadius(r0));
        }
        Self::validated(
            FlowFamily::PowerLaw { beta0, r0, exponent },
            direction,
            r_min,
            r_max,
        )
    }

    pub fn tanh_step(
        beta_far: f64,
        beta_near: f64,
        r_center: f64,
        width: f64,
        direction: FlowDirection,
        r_min: f64,
        r_max: f64,
    ) -> Result<Self, FlowError> {
        if ![beta_far, beta_near, r_center, width].iter().all(|v| v.is_finite()) {
            return Err(FlowError::NonFinite);
        }
        if width <= 0.0 {
            return Err(FlowError::BadWidth(width));
        }
        Self::validated(
            FlowFamily::TanhStep { beta_far, beta_near, r_center, width },
            direction,
            r_min,
            r_max,
        )
    }

    /// Tabulated profile; the domain is the sample range.
    pub fn tabulated(
        samples: &[(f64, f64)],
        direction: FlowDirection,
    ) -> Result<Self, FlowError> {
        let interp = MonotoneCubic::new(samples)?;
        let (r_min, r_max) = (interp.x_min(), interp.x_max());
        Self::validated(FlowFamily::Tabulated(interp), direction, r_min, r_max)
    }

    fn validated(
        family: FlowFamily,
        direction: FlowDirection,
        r_min: f64,
        r_max: f64,
    ) -> Result<Self, FlowError> {
        if !(r_min.is_finite() && r_max.is_finite() && 0.0 < r_min && r_min < r_max) {
            return Err(FlowError::BadDomain(r_min, r_max));
        }
        let profile = Self { family, direction, r_min, r_max };
        profile.check_speed_range()?;
        Ok(profile)
    }

    /// The speed bound 0 ≤ β < 1 is checked where the extrema can live:
    /// domain endpoints for the monotone families, every knot for tables
    /// (the monotone interpolant cannot overshoot its data).
    fn check_speed_range(&self) -> Result<(), FlowError> {
        let check = |r: f64, beta: f64| -> Result<(), FlowError> {
            if !(0.0..1.0).contains(&beta) {
                return Err(FlowError::SpeedOutOfRange { r, beta });
            }
            Ok(())
        };
        match &self.family {
            FlowFamily::PowerLaw { .. } | FlowFamily::TanhStep { .. } => {
                check(self.r_min, self.beta(self.r_min))?;
                check(self.r_max, self.beta(self.r_max))?;
            }
            FlowFamily::Tabulated(interp) => {
                for (r, beta) in interp.samples() {
                    check(r, beta)?;
                }
            }
        }
        Ok(())
    }

    pub fn direction(&self) -> FlowDirection {
        self.direction
    }

    pub fn family(&self) -> &FlowFamily {
        &self.family
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn contains(&self, r: f64) -> bool {
        // one-part-in-1e9 slack: accumulated grid arithmetic may land a
        // hair outside the closed interval
        let slack = 1e-9 * (self.r_max - self.r_min);
        (self.r_min - slack..=self.r_max + slack).contains(&r)
    }

    /// Flow speed β(r) ≥ 0.
    pub fn beta(&self, r: f64) -> f64 {
        debug_assert!(self.contains(r), "r = {r} outside [{}, {}]", self.r_min, self.r_max);
        match &self.family {
            FlowFamily::PowerLaw { beta0, r0, exponent } => beta0 * (r0 / r).powf(*exponent),
            FlowFamily::TanhStep { beta_far, beta_near, r_center, width } => {
                let step = 0.5 * (1.0 - ((r - r_center) / width).tanh());
                beta_far + (beta_near - beta_far) * step
            }
            FlowFamily::Tabulated(interp) => interp.value(r),
        }
    }

    /// dβ/dr, analytic for the parametric families.
    pub fn beta_prime(&self, r: f64) -> f64 {
        debug_assert!(self.contains(r));
        match &self.family {
            FlowFamily::PowerLaw { beta0, r0, exponent } => {
                -exponent * beta0 * (r0 / r).powf(*exponent) / r
            }
            FlowFamily::TanhStep { beta_far, beta_near, r_center, width } => {
                let s = ((r - r_center) / width).tanh();
                (beta_far - beta_near) * 0.5 * (1.0 - s * s) / width
            }
            FlowFamily::Tabulated(interp) => interp.derivative(r),
        }
    }

    /// Signed radial velocity component, negative for inward flow.
    pub fn radial_velocity(&self, r: f64) -> f64 {
        self.direction.sign() * self.beta(r)
    }

    /// Re-express this profile as a dense table over its domain (used to
    /// test reparametrization invariance of derived quantities).
    pub fn resample(&self, n: usize) -> Result<Self, FlowError> {
        let n = n.max(2);
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let r = if i == n - 1 {
                    self.r_max
                } else {
                    self.r_min + (self.r_max - self.r_min) * i as f64 / (n - 1) as f64
                };
                (r, self.beta(r))
            })
            .collect();
        Self::tabulated(&samples, self.direction)
    }
}
