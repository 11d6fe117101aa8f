//! Dielectric medium model.
//!
//! Microscopically the medium is a bath of localized harmonic oscillators
//! with couplings `χ_α` and fundamental frequencies `Ω_α`; integrating the
//! oscillators out leaves a frequency-dependent permittivity
//!
//! ```text
//! ε(ω) = 1 + Σ_α χ_α² / (Ω_α² − ω²)
//! ```
//!
//! For photon frequencies well below every `Ω_α` the response expands into a
//! geometric series whose lowest term is the constant, non-dispersive
//! permittivity `ε = 1 + Σ_α χ_α²/Ω_α²` used by the effective-metric modules.
//! Couplings are reduced to scalar magnitudes (isotropic medium), and
//! everything is in natural units with frequencies relative to a
//! user-declared scale.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default resonance guard: ε(ω) is refused when |Ω² − ω²| < guard · Ω².
pub const RESONANCE_GUARD: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum MediumError {
    #[error("oscillator frequency must be > 0, got {0}")]
    NonPositiveFrequency(f64),
    #[error("oscillator coupling must be >= 0, got {0}")]
    NegativeCoupling(f64),
    #[error("direct permittivity must be >= 1, got {0}")]
    PermittivityBelowVacuum(f64),
    #[error("omega = {omega} is within the guard band of the resonance at {resonance}")]
    Resonance { omega: f64, resonance: f64 },
    #[error("series diverges: omega = {omega} >= lowest resonance {lowest}")]
    SeriesDivergent { omega: f64, lowest: f64 },
    #[error("frequency must be >= 0, got {0}")]
    NegativeFrequency(f64),
}

/// One vibration mode of the medium: scalar coupling magnitude and
/// fundamental frequency, both in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorMode {
    coupling: f64,
    frequency: f64,
}

impl OscillatorMode {
    pub fn new(coupling: f64, frequency: f64) -> Result<Self, MediumError> {
        if !(frequency > 0.0) {
            return Err(MediumError::NonPositiveFrequency(frequency));
        }
        if !(coupling >= 0.0) {
            return Err(MediumError::NegativeCoupling(coupling));
        }
        Ok(Self { coupling, frequency })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Static susceptibility contribution χ²/Ω².
    fn static_term(&self) -> f64 {
        let x = self.coupling / self.frequency;
        x * x
    }
}

/// A medium specified either by its oscillator modes or directly by a
/// constant permittivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MediumModel {
    Oscillators(Vec<OscillatorMode>),
    Direct { epsilon: f64 },
}

impl MediumModel {
    pub fn from_modes(modes: Vec<OscillatorMode>) -> Self {
        MediumModel::Oscillators(modes)
    }

    pub fn with_permittivity(epsilon: f64) -> Result<Self, MediumError> {
        if !(epsilon >= 1.0) {
            return Err(MediumError::PermittivityBelowVacuum(epsilon));
        }
        Ok(MediumModel::Direct { epsilon })
    }

    /// Lowest oscillator frequency, if any mode exists.
    pub fn lowest_resonance(&self) -> Option<f64> {
        match self {
            MediumModel::Oscillators(modes) => modes
                .iter()
                .map(|m| m.frequency)
                .min_by(|a, b| a.total_cmp(b)),
            MediumModel::Direct { .. } => None,
        }
    }

    /// Static (zero-frequency) permittivity `ε = 1 + Σ χ²/Ω²`; always ≥ 1.
    pub fn static_permittivity(&self) -> f64 {
        match self {
            MediumModel::Oscillators(modes) => {
                1.0 + modes.iter().map(OscillatorMode::static_term).sum::<f64>()
            }
            MediumModel::Direct { epsilon } => *epsilon,
        }
    }

    /// Refractive index `n = √ε` of the static medium.
    pub fn refractive_index(&self) -> f64 {
        self.static_permittivity().sqrt()
    }

    /// Full dispersive permittivity `ε(ω) = 1 + Σ χ²/(Ω² − ω²)`.
    ///
    /// Refused inside the default guard band around each resonance, where
    /// the linear response model breaks down.
    pub fn dispersive_permittivity(&self, omega: f64) -> Result<f64, MediumError> {
        self.dispersive_permittivity_with_guard(omega, RESONANCE_GUARD)
    }

    /// Same as [`Self::dispersive_permittivity`] with an explicit guard band
    /// (relative to Ω²).
    pub fn dispersive_permittivity_with_guard(
        &self,
        omega: f64,
        guard: f64,
    ) -> Result<f64, MediumError> {
        if !(omega >= 0.0) {
            return Err(MediumError::NegativeFrequency(omega));
        }
        match self {
            MediumModel::Direct { epsilon } => Ok(*epsilon),
            MediumModel::Oscillators(modes) => {
                let w2 = omega * omega;
                let mut eps = 1.0;
                for m in modes {
                    let o2 = m.frequency * m.frequency;
                    if (o2 - w2).abs() < guard * o2 {
                        return Err(MediumError::Resonance {
                            omega,
                            resonance: m.frequency,
                        });
                    }
                    eps += m.coupling * m.coupling / (o2 - w2);
                }
                Ok(eps)
            }
        }
    }

    /// Partial sum of the local-operator expansion of ε(ω):
    ///
    /// ```text
    /// ε_n(ω) = 1 + Σ_α (χ_α²/Ω_α²) Σ_{k=0..n} (ω²/Ω_α²)^k
    /// ```
    ///
    /// `n_terms = 0` is the static permittivity; for ω below every
    /// resonance the sum converges to the dispersive value.
    pub fn truncated_permittivity(&self, omega: f64, n_terms: usize) -> Result<f64, MediumError> {
        if !(omega >= 0.0) {
            return Err(MediumError::NegativeFrequency(omega));
        }
        match self {
            MediumModel::Direct { epsilon } => Ok(*epsilon),
            MediumModel::Oscillators(modes) => {
                if let Some(lowest) = self.lowest_resonance() {
                    if omega >= lowest {
                        return Err(MediumError::SeriesDivergent { omega, lowest });
                    }
                }
                let mut eps = 1.0;
                for m in modes {
                    let q = (omega / m.frequency) * (omega / m.frequency);
                    let mut partial = 0.0;
                    let mut power = 1.0;
                    for _ in 0..=n_terms {
                        partial += power;
                        power *= q;
                    }
                    eps += m.static_term() * partial;
                }
                Ok(eps)
            }
        }
    }
}
