//! Numerical toolkit for light propagation in flowing dielectric media.
//!
//! A transparent medium with permittivity `ε` moving with four-velocity `u`
//! presents light with an effective curved spacetime, the Gordon metric
//! `g^{μν} = η^{μν} + (ε−1) u^μ u^ν`. When the flow speed exceeds the
//! in-medium light speed `1/√ε`, the flow develops a one-way surface — a
//! black-hole horizon for inward flow, a white-hole horizon for outward
//! flow — with an associated surface gravity and Hawking temperature.
//!
//! The crate covers the full chain from the medium model to the horizon
//! phenomenology:
//!
//! * [`medium`] — oscillator-bath medium model and its static, dispersive,
//!   and series-truncated permittivities.
//! * [`metric`] — the effective metric, its inverse and determinant, and the
//!   three equivalent forms of the field Lagrangian.
//! * [`flow`] — radial velocity profiles (parametric and tabulated).
//! * [`horizon`] — horizon location, black/white classification, surface
//!   gravity, Hawking temperature, and thermal spectra.
//! * [`coords`] — transformation of the stationary radial metric to static
//!   (Schwarzschild-like) form.
//! * [`geodesic`] — Hamiltonian null-ray integration and escape/capture
//!   classification.
//! * [`wavesim`] — 1+1D curved-space scalar wave evolution on a radial grid.
//!
//! Everything is in natural units (`c = 1`); radii are measured in the flow
//! profile's length unit. SI constants enter only through the temperature
//! conversions in [`horizon`], via an explicit metre scale.

pub mod constants;
pub mod coords;
pub mod flow;
pub mod geodesic;
pub mod horizon;
pub mod interp;
pub mod medium;
pub mod metric;
pub mod radial;
pub mod wavesim;

pub use flow::{FlowDirection, FlowFamily, FlowProfile};
pub use horizon::{HorizonKind, HorizonReport};
pub use medium::{MediumModel, OscillatorMode};
pub use metric::{FieldStrength, FourVelocity, MetricTensor, Variance};
