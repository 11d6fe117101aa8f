//! Physical constants (CODATA 2018) and shared numerical tolerances.
//!
//! The library itself works in natural units; these constants are only used
//! where results are converted to SI (temperatures in kelvin).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Prefactor in the horizon temperature relation `T = κ ħ c / (4π k_B)`.
///
/// Kept as a named constant: conventions in the literature differ by how
/// much of the metric-gradient normalization is absorbed into κ, and this
/// library follows the 4π form together with κ = β′/(1−β²).
pub const TEMPERATURE_PREFACTOR: f64 = 4.0 * std::f64::consts::PI;

/// Tolerance for identities that hold to machine precision after a handful
/// of floating-point operations (metric inverse, determinant, Lagrangian
/// equivalence).
pub const EXACT_IDENTITY_TOL: f64 = 1e-12;

/// Relative tolerance of horizon root finding.
pub const ROOT_TOL: f64 = 1e-10;

/// Null-constraint drift budget for geodesic integration, relative to p_t².
pub const NULL_DRIFT_TOL: f64 = 1e-8;
