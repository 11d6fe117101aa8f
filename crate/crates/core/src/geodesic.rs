//! Null geodesics of the radial effective metric, in Hamiltonian form.
//!
//! Rays are integrated from `H = ½ g^{μν}(r) p_μ p_ν` in the (t, r) sector:
//!
//! ```text
//! dt/dλ = g^{tt} p_t + g^{tr} p_r         dp_t/dλ = 0
//! dr/dλ = g^{tr} p_t + g^{rr} p_r         dp_r/dλ = −½ ∂_r g^{μν} p_μ p_ν
//! ```
//!
//! The Hamiltonian form needs only the first radial derivative of the
//! contravariant metric, which is analytic in β(r), so nothing is finite
//! differenced near the horizon. The metric is t-independent, so p_t is
//! conserved; its value is pinned to −1, which fixes the affine
//! normalization. That normalization can make λ run against coordinate
//! time, so integration proceeds in the λ direction with dt/dλ > 0 at
//! launch — only the ray's path matters physically, and reversing affine
//! orientation is a reparametrization of the same null curve.
//!
//! Branch bookkeeping: at every point the null condition is a quadratic in
//! p_r with two roots — the locally outward-most and inward-most ray. The
//! marginal outward root at a horizon has dr/dt = 0 and cannot be
//! normalized to finite p_r with p_t = −1.

use thiserror::Error;

use crate::constants::NULL_DRIFT_TOL;
use crate::flow::FlowProfile;
use crate::radial::ContravariantBlock;

#[derive(Debug, Error)]
pub enum GeodesicError {
    #[error("launch radius {0} outside the profile domain")]
    OutsideDomain(f64),
    #[error("requested branch is the marginal horizon ray; it has no finite p_r at p_t = -1")]
    MarginalRay,
    #[error("initial point violates the null constraint: residual {0}")]
    NotNull(f64),
    #[error(
        "step collapse: reaching drift {target} needs a step below {min_step} of the domain"
    )]
    StepCollapse { target: f64, min_step: f64 },
    #[error("invalid step control: {0}")]
    BadControl(String),
}

/// Which of the two local null branches to launch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayDirection {
    /// The branch with the larger lab-frame dr/dt (tries to move out).
    Outward,
    /// The branch with the smaller lab-frame dr/dt.
    Inward,
}

/// A point of the ray's phase space: position (t, r) and covariant
/// momentum (p_t, p_r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub t: f64,
    pub r: f64,
    pub p_t: f64,
    pub p_r: f64,
}

impl PhasePoint {
    fn block(&self, profile: &FlowProfile, epsilon: f64) -> ContravariantBlock {
        // edge samples of a trajectory may sit a rounding error outside
        let r = self.r.clamp(profile.r_min(), profile.r_max());
        ContravariantBlock::at(profile, epsilon, r)
    }

    /// Null residual g^{μν} p_μ p_ν at this point, normalized by p_t².
    pub fn null_residual(&self, profile: &FlowProfile, epsilon: f64) -> f64 {
        let g = self.block(profile, epsilon);
        let h2 = g.tt * self.p_t * self.p_t
            + 2.0 * g.tr * self.p_t * self.p_r
            + g.rr * self.p_r * self.p_r;
        h2.abs() / (self.p_t * self.p_t)
    }

    /// Lab-frame coordinate velocity dr/dt.
    pub fn lab_speed(&self, profile: &FlowProfile, epsilon: f64) -> f64 {
        let g = self.block(profile, epsilon);
        (g.tr * self.p_t + g.rr * self.p_r) / (g.tt * self.p_t + g.tr * self.p_r)
    }
}

/// Solve the null condition for p_r at radius `r` with p_t = −1.
///
/// The two roots of `g^{rr} p_r² − 2 g^{tr} p_r + g^{tt} = 0` are the two
/// ray branches; the requested one is selected by its lab-frame dr/dt.
pub fn null_momentum(
    profile: &FlowProfile,
    epsilon: f64,
    r: f64,
    direction: RayDirection,
) -> Result<PhasePoint, GeodesicError> {
    if !profile.contains(r) {
        return Err(GeodesicError::OutsideDomain(r));
    }
    let g = ContravariantBlock::at(profile, epsilon, r);

    // With p_t = −1 the condition is g^{rr} p_r² − 2 g^{tr} p_r + g^{tt} = 0;
    // the discriminant is 4(g^{tr}² − g^{rr} g^{tt}) = 4ε > 0, so a real
    // pair always exists for β < 1, ε ≥ 1. The roots pair with the branch
    // speeds as
    //
    //   p_r = (g^{tr} − √ε)/g^{rr}  ↔  dr/dt = (g^{tr} + √ε)/g^{tt}  (outward)
    //   p_r = (g^{tr} + √ε)/g^{rr}  ↔  dr/dt = (g^{tr} − √ε)/g^{tt}  (inward)
    //
    // and each direct quotient is rewritten through the root product
    // g^{tt}/g^{rr} when its numerator cancels, so the finite branch stays
    // accurate as g^{rr} → 0 at a horizon while the marginal branch
    // correctly diverges.
    let s = epsilon.sqrt();
    let (outward, inward) = if g.tr >= 0.0 {
        (g.tt / (g.tr + s), (g.tr + s) / g.rr)
    } else {
        ((g.tr - s) / g.rr, g.tt / (g.tr - s))
    };
    let p_r = match direction {
        RayDirection::Outward => outward,
        RayDirection::Inward => inward,
    };
    if !p_r.is_finite() {
        return Err(GeodesicError::MarginalRay);
    }
    Ok(PhasePoint { t: 0.0, r, p_t: -1.0, p_r })
}

/// One recorded integration sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    /// Affine parameter distance from launch (non-negative, increasing).
    pub lambda: f64,
    pub point: PhasePoint,
    /// Null residual |g^{μν} p_μ p_ν| / p_t² at this sample.
    pub null_residual: f64,
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Reached the outer domain edge.
    Escaped,
    /// Reached the inner domain edge.
    Captured,
    /// Left the valid domain without cleanly crossing an edge.
    Boundary,
    /// The affine-parameter budget ran out.
    MaxSteps,
}

/// An integrated null ray.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn max_null_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.null_residual)
            .fold(0.0, f64::max)
    }

    pub fn final_point(&self) -> &PhasePoint {
        &self.samples.last().expect("trajectory has at least the launch sample").point
    }

    pub fn min_radius(&self) -> f64 {
        self.samples.iter().map(|s| s.point.r).fold(f64::MAX, f64::min)
    }

    pub fn max_radius(&self) -> f64 {
        self.samples.iter().map(|s| s.point.r).fold(f64::MIN, f64::max)
    }
}

/// Step-size policy for [`integrate_null`].
#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    /// Starting affine step.
    pub initial_step: f64,
    /// Whole-trajectory null-drift budget, relative to p_t².
    pub drift_tolerance: f64,
    /// Give up when the step falls below this fraction of the domain size.
    pub min_step_fraction: f64,
    /// Hard cap on steps per attempt.
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            initial_step: 1e-3,
            drift_tolerance: NULL_DRIFT_TOL,
            min_step_fraction: 1e-12,
            max_steps: 4_000_000,
        }
    }
}

/// Integrate a null ray with fixed-step RK4, halving the step and redoing
/// the trajectory until the worst null-constraint drift over the whole
/// trajectory is within the control's budget.
///
/// Integration runs toward increasing coordinate time regardless of the
/// affine normalization's orientation, and stops at the domain edges, at
/// the affine budget `lambda_max`, or with a step-collapse error.
pub fn integrate_null(
    profile: &FlowProfile,
    epsilon: f64,
    initial: PhasePoint,
    lambda_max: f64,
    control: StepControl,
) -> Result<Trajectory, GeodesicError> {
    if !profile.contains(initial.r) {
        return Err(GeodesicError::OutsideDomain(initial.r));
    }
    if !(lambda_max > 0.0) || !(control.initial_step > 0.0) {
        return Err(GeodesicError::BadControl(format!(
            "lambda_max = {lambda_max}, initial_step = {}",
            control.initial_step
        )));
    }
    let launch_residual = initial.null_residual(profile, epsilon);
    if launch_residual > control.drift_tolerance {
        return Err(GeodesicError::NotNull(launch_residual));
    }

    let domain = profile.r_max() - profile.r_min();
    let min_step = control.min_step_fraction * domain;
    let mut h = control.initial_step.min(lambda_max);
    loop {
        let trajectory = attempt(profile, epsilon, initial, lambda_max, h, control.max_steps);
        if trajectory.max_null_residual() <= control.drift_tolerance {
            return Ok(trajectory);
        }
        h *= 0.5;
        if h < min_step {
            return Err(GeodesicError::StepCollapse {
                target: control.drift_tolerance,
                min_step: control.min_step_fraction,
            });
        }
    }
}

fn attempt(
    profile: &FlowProfile,
    epsilon: f64,
    initial: PhasePoint,
    lambda_max: f64,
    h: f64,
    max_steps: usize,
) -> Trajectory {
    // Integrate toward increasing t: flip the affine step if the p_t = −1
    // normalization makes λ past-directed at launch.
    let g0 = ContravariantBlock::at(profile, epsilon, initial.r);
    let dt_dlambda = g0.tt * initial.p_t + g0.tr * initial.p_r;
    let h_signed = if dt_dlambda >= 0.0 { h } else { -h };

    let mut y = [initial.t, initial.r, initial.p_t, initial.p_r];
    let mut lambda = 0.0;
    let mut samples = Vec::with_capacity(1024);
    let record = |samples: &mut Vec<TrajectorySample>, lambda: f64, y: &[f64; 4]| {
        let point = PhasePoint { t: y[0], r: y[1], p_t: y[2], p_r: y[3] };
        let null_residual = point.null_residual(profile, epsilon);
        samples.push(TrajectorySample { lambda, point, null_residual });
    };
    record(&mut samples, 0.0, &y);

    let inner = profile.r_min();
    let outer = profile.r_max();
    let mut steps = 0;
    let termination = loop {
        if lambda >= lambda_max || steps >= max_steps {
            break Termination::MaxSteps;
        }
        let next = rk4_step(profile, epsilon, &y, h_signed, inner, outer);
        let next = match next {
            Some(v) => v,
            None => break Termination::Boundary,
        };

        // When the step crosses a domain edge, land exactly on it with a
        // fractional step instead: dr/dλ is constant on the null shell, so
        // linear interpolation gives the crossing fraction exactly.
        let crossed = if next[1] >= outer {
            Some((outer, Termination::Escaped))
        } else if next[1] <= inner {
            Some((inner, Termination::Captured))
        } else {
            None
        };
        if let Some((edge, termination)) = crossed {
            let frac = ((edge - y[1]) / (next[1] - y[1])).clamp(1e-12, 1.0);
            match rk4_step(profile, epsilon, &y, h_signed * frac, inner, outer) {
                Some(mut v) => {
                    // land exactly on the edge (the fractional step can
                    // miss by the off-shell drift of dr/dλ)
                    v[1] = edge;
                    y = v;
                    lambda += h * frac;
                    record(&mut samples, lambda, &y);
                    break termination;
                }
                None => break Termination::Boundary,
            }
        }

        y = next;
        lambda += h;
        steps += 1;
        record(&mut samples, lambda, &y);
    };

    Trajectory { samples, termination }
}

/// One RK4 step; `None` if an intermediate stage left the metric's domain.
fn rk4_step(
    profile: &FlowProfile,
    epsilon: f64,
    y: &[f64; 4],
    h: f64,
    inner: f64,
    outer: f64,
) -> Option<[f64; 4]> {
    let f = |y: &[f64; 4]| -> Option<[f64; 4]> {
        let r = y[1].clamp(inner, outer);
        if !r.is_finite() {
            return None;
        }
        let g = ContravariantBlock::at(profile, epsilon, r);
        let dg = ContravariantBlock::d_dr(profile, epsilon, r);
        let (p_t, p_r) = (y[2], y[3]);
        Some([
            g.tt * p_t + g.tr * p_r,
            g.tr * p_t + g.rr * p_r,
            0.0,
            -0.5 * (dg.tt * p_t * p_t + 2.0 * dg.tr * p_t * p_r + dg.rr * p_r * p_r),
        ])
    };
    let k1 = f(y)?;
    let k2 = f(&add(y, &k1, 0.5 * h))?;
    let k3 = f(&add(y, &k2, 0.5 * h))?;
    let k4 = f(&add(y, &k3, h))?;
    let mut out = *y;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Some(out)
}

fn add(y: &[f64; 4], k: &[f64; 4], scale: f64) -> [f64; 4] {
    let mut out = *y;
    for i in 0..4 {
        out[i] += scale * k[i];
    }
    out
}

/// Outcome of comparing a finished trajectory with the horizon radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeClass {
    Escaped,
    Captured,
    Undecided,
}

/// Classify a completed ray against the horizon at `r_h`, with a 1%
/// hysteresis band: reaching the outer edge is an escape, ending below
/// 0.99 r_h a capture, and anything ending inside the band (the marginal
/// hover region) stays undecided.
pub fn classify_escape(trajectory: &Trajectory, r_h: f64) -> EscapeClass {
    let final_r = trajectory.final_point().r;
    match trajectory.termination {
        Termination::Escaped => EscapeClass::Escaped,
        Termination::Captured => EscapeClass::Captured,
        _ => {
            if final_r <= 0.99 * r_h {
                EscapeClass::Captured
            } else {
                EscapeClass::Undecided
            }
        }
    }
}
