//! 1+1D scalar wave evolution in the radial effective metric.
//!
//! The field obeys `∂_μ(√−g g^{μν} ∂_ν φ) = 0`; the metric determinant is
//! the constant −ε, so √−g factors out and the flux-conservative
//! first-order system in (φ, π) with `π = g^{tt} ∂_t φ + g^{tr} ∂_r φ` is
//!
//! ```text
//! ∂_t φ = (π − g^{tr} φ_r) / g^{tt}
//! ∂_t π = −∂_r F,   F = (g^{tr} π − ε φ_r) / g^{tt}
//! ```
//!
//! using `g^{tt} g^{rr} − (g^{tr})² = −ε`. Since `g^{tt} ≥ 1` everywhere,
//! every coefficient stays regular at a horizon — the stationary form is
//! the right chart for this problem. Discretization: second-order centered
//! differences on cell centres with fluxes on faces, a second-order
//! two-stage (midpoint) time update, a fourth-difference dissipation filter
//! to control the grid-scale mode of the centered scheme, and sponge layers
//! that absorb outgoing waves at both domain ends.

use thiserror::Error;

use crate::flow::FlowProfile;
use crate::radial::ContravariantBlock;

/// Default CFL factor: dt = cfl · dr / max characteristic speed.
pub const CFL_FACTOR: f64 = 0.5;

/// Default strength of the fourth-difference dissipation filter. Must
/// dominate the O((k dr)⁴) weak instability of the centered-in-space,
/// two-stage-in-time scheme at the default CFL factor: the per-step growth
/// is at most (cfl·sinθ)⁴/4 against a filter damping of σ(2 sin θ/2)⁴/16,
/// which σ = 0.4 covers for every grid wavenumber θ at cfl = 0.5.
pub const DISSIPATION: f64 = 0.4;

/// Fields blowing past this multiple of the initial amplitude abort a run.
pub const INSTABILITY_FACTOR: f64 = 1e6;

#[derive(Debug, Error)]
pub enum WaveError {
    #[error("grid needs at least 16 cells, got {0}")]
    TooFewCells(usize),
    #[error("grid domain invalid: [{0}, {1}]")]
    BadDomain(f64, f64),
    #[error("sponge width {width} does not leave an interior (domain length {length})")]
    SpongeTooWide { width: f64, length: f64 },
    #[error("time step {dt} violates the CFL bound {bound}")]
    CflViolated { dt: f64, bound: f64 },
    #[error("packet at {center} ± 4·{width} overlaps a sponge layer")]
    PacketInSponge { center: f64, width: f64 },
    #[error("instability: |phi| grew to {0} times the initial amplitude")]
    Unstable(f64),
    #[error("field length {0} does not match the grid ({1} cells)")]
    LengthMismatch(usize, usize),
    #[error("zero-amplitude packet: nothing to normalize against")]
    ZeroField,
}

/// Radial grid: `n_cells` cell centres between `r_min` and `r_max`,
/// absorbing sponge layers of width `sponge_width` at both ends, and an
/// explicit time step (validated against the CFL bound at construction of
/// [`WaveSimulation`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub r_min: f64,
    pub r_max: f64,
    pub n_cells: usize,
    pub dt: f64,
    pub sponge_width: f64,
}

impl Grid1D {
    /// Grid with the time step chosen from the CFL condition against the
    /// fastest characteristic on the grid.
    pub fn with_cfl(
        r_min: f64,
        r_max: f64,
        n_cells: usize,
        sponge_width: f64,
        profile: &FlowProfile,
        epsilon: f64,
    ) -> Result<Self, WaveError> {
        let mut grid = Self {
            r_min,
            r_max,
            n_cells,
            dt: 0.0,
            sponge_width,
        };
        grid.validate_geometry()?;
        grid.dt = CFL_FACTOR * grid.dr() / grid.max_characteristic_speed(profile, epsilon);
        Ok(grid)
    }

    fn validate_geometry(&self) -> Result<(), WaveError> {
        if self.n_cells < 16 {
            return Err(WaveError::TooFewCells(self.n_cells));
        }
        if !(self.r_min.is_finite() && self.r_max.is_finite() && self.r_min < self.r_max) {
            return Err(WaveError::BadDomain(self.r_min, self.r_max));
        }
        let length = self.r_max - self.r_min;
        if !(0.0..0.5 * length).contains(&self.sponge_width) {
            return Err(WaveError::SpongeTooWide {
                width: self.sponge_width,
                length,
            });
        }
        Ok(())
    }

    pub fn dr(&self) -> f64 {
        (self.r_max - self.r_min) / self.n_cells as f64
    }

    /// Radius of cell centre `i`.
    pub fn cell_center(&self, i: usize) -> f64 {
        self.r_min + (i as f64 + 0.5) * self.dr()
    }

    /// Radius of face `i` (between cells i−1 and i), i = 0..n_cells.
    pub fn face(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.dr()
    }

    pub fn max_characteristic_speed(&self, profile: &FlowProfile, epsilon: f64) -> f64 {
        let mut v: f64 = 0.0;
        for i in 0..=self.n_cells {
            let r = self.face(i).clamp(profile.r_min(), profile.r_max());
            let (out, inw) = ContravariantBlock::at(profile, epsilon, r).null_speeds(epsilon);
            v = v.max(out.abs()).max(inw.abs());
        }
        v
    }

    /// Interior (sponge-free) region.
    pub fn interior(&self) -> (f64, f64) {
        (self.r_min + self.sponge_width, self.r_max - self.sponge_width)
    }
}

/// Discretized field: φ and its conjugate density π on cell centres.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub phi: Vec<f64>,
    pub pi: Vec<f64>,
}

impl WaveField {
    pub fn zeros(n: usize) -> Self {
        Self {
            phi: vec![0.0; n],
            pi: vec![0.0; n],
        }
    }

    pub fn max_abs_phi(&self) -> f64 {
        self.phi.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// a + scale * b, fieldwise.
    pub fn linear_combination(a: &WaveField, b: &WaveField, scale: f64) -> WaveField {
        WaveField {
            phi: a.phi.iter().zip(&b.phi).map(|(x, y)| x + scale * y).collect(),
            pi: a.pi.iter().zip(&b.pi).map(|(x, y)| x + scale * y).collect(),
        }
    }

    /// |φ|²-weighted centroid radius.
    pub fn centroid(&self, grid: &Grid1D) -> Result<f64, WaveError> {
        let mut weight = 0.0;
        let mut moment = 0.0;
        for (i, &p) in self.phi.iter().enumerate() {
            let w = p * p;
            weight += w;
            moment += w * grid.cell_center(i);
        }
        if weight == 0.0 {
            return Err(WaveError::ZeroField);
        }
        Ok(moment / weight)
    }
}

/// Launch direction of an initial wavepacket, defined against the local
/// characteristics of the metric (not the lab frame).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketDirection {
    Outward,
    Inward,
}

/// Gaussian wavepacket `φ = exp(−(r−c)²/2w²) cos(k(r−c))`, with π chosen so
/// the packet rides a single local characteristic (one-directional in the
/// medium frame). The support `center ± 4 width` must avoid the sponges.
pub fn init_packet(
    grid: &Grid1D,
    profile: &FlowProfile,
    epsilon: f64,
    center: f64,
    width: f64,
    wavenumber: f64,
    direction: PacketDirection,
) -> Result<WaveField, WaveError> {
    let (lo, hi) = grid.interior();
    if center - 4.0 * width < lo || center + 4.0 * width > hi {
        return Err(WaveError::PacketInSponge { center, width });
    }
    let mut field = WaveField::zeros(grid.n_cells);
    for i in 0..grid.n_cells {
        let r = grid.cell_center(i);
        let x = r - center;
        let envelope = (-x * x / (2.0 * width * width)).exp();
        let phi = envelope * (wavenumber * x).cos();
        // analytic d/dr of envelope * cos
        let dphi = envelope
            * (-(x / (width * width)) * (wavenumber * x).cos()
                - wavenumber * (wavenumber * x).sin());
        let g = ContravariantBlock::at(
            profile,
            epsilon,
            r.clamp(profile.r_min(), profile.r_max()),
        );
        let (v_out, v_in) = g.null_speeds(epsilon);
        let v = match direction {
            PacketDirection::Outward => v_out,
            PacketDirection::Inward => v_in,
        };
        // a profile translating at speed v has ∂_t φ = −v φ_r
        field.phi[i] = phi;
        field.pi[i] = (g.tr - v * g.tt) * dphi;
    }
    Ok(field)
}

/// Precomputed per-cell and per-face metric data for a grid.
#[derive(Debug, Clone)]
pub struct MetricCoefficients {
    pub grid: Grid1D,
    pub epsilon: f64,
    /// g^{tt}, g^{tr}, g^{rr} at cell centres.
    cell: Vec<ContravariantBlock>,
    /// g^{tt}, g^{tr} at faces (n_cells + 1 entries).
    face: Vec<ContravariantBlock>,
    /// Per-step sponge damping factor per cell (1 outside the layers).
    damp: Vec<f64>,
    /// Dissipation filter strength.
    sigma: f64,
}

impl MetricCoefficients {
    pub fn new(grid: &Grid1D, profile: &FlowProfile, epsilon: f64) -> Result<Self, WaveError> {
        grid.validate_geometry()?;
        let bound = CFL_FACTOR * grid.dr() / grid.max_characteristic_speed(profile, epsilon);
        if !(grid.dt > 0.0) || grid.dt > bound * (1.0 + 1e-12) {
            return Err(WaveError::CflViolated { dt: grid.dt, bound });
        }
        let clamp = |r: f64| r.clamp(profile.r_min(), profile.r_max());
        let cell: Vec<_> = (0..grid.n_cells)
            .map(|i| ContravariantBlock::at(profile, epsilon, clamp(grid.cell_center(i))))
            .collect();
        let face: Vec<_> = (0..=grid.n_cells)
            .map(|i| ContravariantBlock::at(profile, epsilon, clamp(grid.face(i))))
            .collect();

        // Sponge absorption rate ramps quadratically over each layer. The
        // 5/width scale absorbs a crossing wave by a few e-foldings per
        // pass; pushing it harder just reflects more off the ramp.
        let damp: Vec<f64> = (0..grid.n_cells)
            .map(|i| {
                let r = grid.cell_center(i);
                let depth = if grid.sponge_width == 0.0 {
                    0.0
                } else if r < grid.r_min + grid.sponge_width {
                    (grid.r_min + grid.sponge_width - r) / grid.sponge_width
                } else if r > grid.r_max - grid.sponge_width {
                    (r - (grid.r_max - grid.sponge_width)) / grid.sponge_width
                } else {
                    0.0
                };
                if depth == 0.0 {
                    1.0
                } else {
                    let rate = 5.0 / grid.sponge_width * depth * depth;
                    (-rate * grid.dt).exp()
                }
            })
            .collect();

        Ok(Self {
            grid: *grid,
            epsilon,
            cell,
            face,
            damp,
            sigma: DISSIPATION,
        })
    }

    fn rhs(&self, phi: &[f64], pi: &[f64], dphi: &mut [f64], dpi: &mut [f64]) {
        let n = self.grid.n_cells;
        let dr = self.grid.dr();
        let inv_2dr = 0.5 / dr;
        let at = |v: &[f64], i: isize| -> f64 {
            // zero-gradient ghost cells
            let i = i.clamp(0, n as isize - 1) as usize;
            v[i]
        };
        // phi update from the definition of pi
        for i in 0..n {
            let g = &self.cell[i];
            let phi_r = (at(phi, i as isize + 1) - at(phi, i as isize - 1)) * inv_2dr;
            dphi[i] = (pi[i] - g.tr * phi_r) / g.tt;
        }
        // pi update in flux form; face flux F = (g^{tr} π − ε φ_r)/g^{tt}
        let flux_at = |i: usize| -> f64 {
            let g = &self.face[i];
            let (pi_f, phi_r) = if i == 0 {
                (pi[0], 0.0)
            } else if i == n {
                (pi[n - 1], 0.0)
            } else {
                (0.5 * (pi[i - 1] + pi[i]), (phi[i] - phi[i - 1]) / dr)
            };
            (g.tr * pi_f - self.epsilon * phi_r) / g.tt
        };
        let mut left = flux_at(0);
        for i in 0..n {
            let right = flux_at(i + 1);
            dpi[i] = -(right - left) / dr;
            left = right;
        }
    }

    /// Fourth-difference dissipation and sponge damping, applied in place
    /// after each time step.
    fn filter(&self, v: &mut [f64]) {
        let n = v.len();
        if n >= 5 && self.sigma > 0.0 {
            let scale = self.sigma / 16.0;
            let mut filtered = Vec::with_capacity(n);
            for i in 0..n {
                let im2 = v[i.saturating_sub(2).min(n - 1)];
                let im1 = v[i.saturating_sub(1)];
                let ip1 = v[(i + 1).min(n - 1)];
                let ip2 = v[(i + 2).min(n - 1)];
                filtered.push(v[i] - scale * (im2 - 4.0 * im1 + 6.0 * v[i] - 4.0 * ip1 + ip2));
            }
            v.copy_from_slice(&filtered);
        }
        for (x, &d) in v.iter_mut().zip(&self.damp) {
            *x *= d;
        }
    }
}

/// One explicit midpoint (two-stage, second-order) time step.
pub fn step(field: &WaveField, coeffs: &MetricCoefficients) -> Result<WaveField, WaveError> {
    let n = coeffs.grid.n_cells;
    if field.phi.len() != n || field.pi.len() != n {
        return Err(WaveError::LengthMismatch(field.phi.len(), n));
    }
    let dt = coeffs.grid.dt;
    let mut k = WaveField::zeros(n);
    coeffs.rhs(&field.phi, &field.pi, &mut k.phi, &mut k.pi);
    let mid = WaveField::linear_combination(field, &k, 0.5 * dt);
    coeffs.rhs(&mid.phi, &mid.pi, &mut k.phi, &mut k.pi);
    let mut out = WaveField::linear_combination(field, &k, dt);
    coeffs.filter(&mut out.phi);
    coeffs.filter(&mut out.pi);
    for &v in out.phi.iter().chain(&out.pi) {
        if !v.is_finite() {
            return Err(WaveError::Unstable(f64::INFINITY));
        }
    }
    Ok(out)
}

/// Discrete energy functional of the stationary metric,
/// `Σ_i dr [ (π − g^{tr} φ_r)² / (2 g^{tt}) − ½ g^{rr} φ_r² ]`.
///
/// Conserved by the continuum equations between the sponges (the metric is
/// t-independent); used as a drift monitor. Not positive definite inside a
/// horizon, where g^{rr} > 0.
pub fn energy_diagnostic(field: &WaveField, coeffs: &MetricCoefficients) -> f64 {
    let n = coeffs.grid.n_cells;
    let dr = coeffs.grid.dr();
    let mut total = 0.0;
    for i in 0..n {
        let g = &coeffs.cell[i];
        let phi_r = if i == 0 {
            (field.phi[1] - field.phi[0]) / dr
        } else if i == n - 1 {
            (field.phi[n - 1] - field.phi[n - 2]) / dr
        } else {
            (field.phi[i + 1] - field.phi[i - 1]) / (2.0 * dr)
        };
        let w = field.pi[i] - g.tr * phi_r;
        total += dr * (w * w / (2.0 * g.tt) - 0.5 * g.rr * phi_r * phi_r);
    }
    total
}

/// Time series of φ at one probe radius.
#[derive(Debug, Clone)]
pub struct ProbeSeries {
    pub r: f64,
    /// (t, φ(r, t)) samples at the run's output cadence.
    pub samples: Vec<(f64, f64)>,
}

/// Result of [`run`]: probe series, optional snapshots, and the final field.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub probes: Vec<ProbeSeries>,
    /// (t, field) snapshots at the requested cadence (always includes t=0).
    pub snapshots: Vec<(f64, WaveField)>,
    pub final_field: WaveField,
    pub final_time: f64,
    pub steps: usize,
}

/// Evolution parameters for [`run`].
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub t_final: f64,
    /// Record probes every this many steps (≥ 1).
    pub probe_stride: usize,
    /// Record a field snapshot every this many steps; 0 = only t=0/final.
    pub snapshot_stride: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            t_final: 0.0,
            probe_stride: 1,
            snapshot_stride: 0,
        }
    }
}

/// Evolve `initial` to `t_final`, sampling φ at the probe radii by linear
/// interpolation. Aborts with an instability error if |φ| exceeds
/// [`INSTABILITY_FACTOR`] times its initial maximum.
pub fn run(
    grid: &Grid1D,
    profile: &FlowProfile,
    epsilon: f64,
    initial: &WaveField,
    probes: &[f64],
    config: &RunConfig,
) -> Result<RunResult, WaveError> {
    let coeffs = MetricCoefficients::new(grid, profile, epsilon)?;
    if initial.phi.len() != grid.n_cells {
        return Err(WaveError::LengthMismatch(initial.phi.len(), grid.n_cells));
    }
    let phi_cap = {
        let m = initial.max_abs_phi();
        if m > 0.0 {
            m * INSTABILITY_FACTOR
        } else {
            f64::MAX
        }
    };

    let sample = |field: &WaveField, r: f64| -> f64 {
        let x = (r - grid.r_min) / grid.dr() - 0.5;
        let i = x.floor();
        let frac = x - i;
        let i = (i.max(0.0) as usize).min(grid.n_cells - 1);
        let j = (i + 1).min(grid.n_cells - 1);
        field.phi[i] * (1.0 - frac) + field.phi[j] * frac
    };

    let mut probes_out: Vec<ProbeSeries> = probes
        .iter()
        .map(|&r| ProbeSeries { r, samples: vec![(0.0, sample(initial, r))] })
        .collect();
    let mut snapshots = vec![(0.0, initial.clone())];

    let n_steps = if config.t_final <= 0.0 {
        0
    } else {
        (config.t_final / grid.dt).ceil() as usize
    };
    let mut field = initial.clone();
    let mut t = 0.0;
    for step_index in 1..=n_steps {
        field = step(&field, &coeffs)?;
        t = step_index as f64 * grid.dt;
        let m = field.max_abs_phi();
        if m > phi_cap {
            return Err(WaveError::Unstable(m / (phi_cap / INSTABILITY_FACTOR)));
        }
        if step_index % config.probe_stride.max(1) == 0 || step_index == n_steps {
            for series in &mut probes_out {
                let v = sample(&field, series.r);
                series.samples.push((t, v));
            }
        }
        if config.snapshot_stride > 0 && step_index % config.snapshot_stride == 0 {
            snapshots.push((t, field.clone()));
        }
    }
    if n_steps > 0 && (config.snapshot_stride == 0 || n_steps % config.snapshot_stride != 0) {
        snapshots.push((t, field.clone()));
    }
    Ok(RunResult {
        probes: probes_out,
        snapshots,
        final_field: field.clone(),
        final_time: t,
        steps: n_steps,
    })
}
