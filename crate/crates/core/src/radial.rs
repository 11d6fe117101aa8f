//! The (t, r) block of the effective metric for a radial flow.
//!
//! For `u^μ = γ(1, v, 0, 0)` with signed radial speed `v = ±β(r)`,
//! the contravariant block of the effective metric is
//!
//! ```text
//! g^{tt} = 1 + (ε−1)γ²          g^{tr} = (ε−1)γ²v
//! g^{rr} = −1 + (ε−1)γ²v²       with γ² = 1/(1−β²)
//! ```
//!
//! Two identities make this block pleasant to integrate on: its determinant
//! is `−ε` at every radius, and `g^{tt} − g^{rr} = 1 + ε` is constant, so
//! `g^{tt} ≥ 1` everywhere and nothing degenerates at the horizon (the
//! stationary form is horizon-regular). Both [`crate::geodesic`] and
//! [`crate::wavesim`] consume this block; [`crate::coords`] uses the
//! covariant one.

use crate::flow::FlowProfile;

/// Contravariant (t, r) metric block at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContravariantBlock {
    pub tt: f64,
    pub tr: f64,
    pub rr: f64,
}

impl ContravariantBlock {
    pub fn at(profile: &FlowProfile, epsilon: f64, r: f64) -> Self {
        let beta = profile.beta(r);
        let v = profile.direction().sign() * beta;
        let gamma2 = 1.0 / (1.0 - beta * beta);
        let a = (epsilon - 1.0) * gamma2;
        Self {
            tt: 1.0 + a,
            tr: a * v,
            rr: -1.0 + a * v * v,
        }
    }

    /// Radial derivative of the block, analytic in β and β′.
    pub fn d_dr(profile: &FlowProfile, epsilon: f64, r: f64) -> Self {
        let beta = profile.beta(r);
        let bp = profile.beta_prime(r);
        let s = profile.direction().sign();
        let gamma2 = 1.0 / (1.0 - beta * beta);
        let gamma4 = gamma2 * gamma2;
        let e1 = epsilon - 1.0;
        // d(γ²)/dr = 2ββ′γ⁴ and d(γ²v)/dr = sβ′γ⁴(1+β²)
        Self {
            tt: 2.0 * e1 * beta * bp * gamma4,
            tr: s * e1 * bp * gamma4 * (1.0 + beta * beta),
            rr: 2.0 * e1 * beta * bp * gamma4,
        }
    }

    /// Determinant `g^{tt} g^{rr} − (g^{tr})²`; equals −ε identically.
    pub fn det(&self) -> f64 {
        self.tt * self.rr - self.tr * self.tr
    }

    /// Lab-frame speeds dr/dt of the two null directions through this
    /// point, returned as (outward-most, inward-most), i.e. sorted
    /// descending. These are the characteristic speeds of the radial wave
    /// problem and the branch speeds of [`crate::geodesic`] rays.
    pub fn null_speeds(&self, epsilon: f64) -> (f64, f64) {
        // Null condition for v = dr/dt reads g_rr v² + 2 g_tr v + g_tt = 0
        // on the covariant block; using det = −ε the roots reduce to
        // v = (g^{tr} ± √ε)/g^{tt}, regular everywhere since g^{tt} ≥ 1.
        let root = epsilon.sqrt();
        ((self.tr + root) / self.tt, (self.tr - root) / self.tt)
    }
}

/// Covariant (t, r) metric block at one radius:
/// `g_tt = 1 − ((ε−1)/ε)γ²`, `g_tr = ((ε−1)/ε)γ²v`, `g_rr = −1 − ((ε−1)/ε)γ²v²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovariantBlock {
    pub tt: f64,
    pub tr: f64,
    pub rr: f64,
}

impl CovariantBlock {
    pub fn at(profile: &FlowProfile, epsilon: f64, r: f64) -> Self {
        let beta = profile.beta(r);
        let v = profile.direction().sign() * beta;
        let gamma2 = 1.0 / (1.0 - beta * beta);
        let a = (epsilon - 1.0) / epsilon * gamma2;
        // u_μ = γ(1, −v): the cross term picks up one sign flip.
        Self {
            tt: 1.0 - a,
            tr: a * v,
            rr: -1.0 - a * v * v,
        }
    }

    pub fn det(&self) -> f64 {
        self.tt * self.rr - self.tr * self.tr
    }
}
