//! The effective metric of a moving dielectric and the equivalent forms of
//! the macroscopic field Lagrangian.
//!
//! With Minkowski signature (+,−,−,−) and a medium of permittivity ε moving
//! with four-velocity u, light propagates on the Gordon metric
//!
//! ```text
//! g^{μν} = η^{μν} + (ε−1) u^μ u^ν           (contravariant)
//! g_{μν} = η_{μν} − ((ε−1)/ε) u_μ u_ν        (covariant, its inverse)
//! det(g^{μν}) = −ε
//! ```
//!
//! The same physics is expressed three ways, and the module exposes all of
//! them so they can be checked against each other:
//!
//! * [`lagrangian_rest`] — ½(εE² − B²) in the medium rest frame,
//! * [`lagrangian_covariant`] — the boosted form −¼F² − ((ε−1)/2)(F·u)²,
//! * [`lagrangian_geometric`] — −¼ F g g F with the effective metric.
//!
//! Index raising and lowering of the field tensor always uses the Minkowski
//! metric; the effective metric enters only through
//! [`lagrangian_geometric`]. The constant √ε volume factor from the metric
//! determinant is not folded into any stored component (see
//! [`crate::constants::TEMPERATURE_PREFACTOR`] for the analogous convention
//! note on temperatures); it would only rescale the action by a constant.

use thiserror::Error;

/// Minkowski metric diag(+1,−1,−1,−1); identical for both index positions.
pub const MINKOWSKI: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

/// Sign of the diagonal Minkowski entry for index `mu`.
#[inline]
fn eta_sign(mu: usize) -> f64 {
    if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("three-velocity magnitude {0} must be < 1")]
    Superluminal(f64),
    #[error("permittivity {0} must be >= 1")]
    PermittivityBelowVacuum(f64),
    #[error("non-finite component")]
    NonFinite,
}

/// Normalized medium four-velocity, `u^μ = (1, β)/√(1−β²)`.
///
/// Stored contravariant; satisfies `u_μ u^μ = 1` by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVelocity {
    components: [f64; 4],
}

impl FourVelocity {
    /// Build from a three-velocity. Fails for |β| ≥ 1.
    pub fn from_beta(beta: [f64; 3]) -> Result<Self, MetricError> {
        let b2 = beta.iter().map(|b| b * b).sum::<f64>();
        if !b2.is_finite() {
            return Err(MetricError::NonFinite);
        }
        if b2 >= 1.0 {
            return Err(MetricError::Superluminal(b2.sqrt()));
        }
        let gamma = 1.0 / (1.0 - b2).sqrt();
        Ok(Self {
            components: [gamma, gamma * beta[0], gamma * beta[1], gamma * beta[2]],
        })
    }

    pub fn rest() -> Self {
        Self {
            components: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Contravariant components u^μ.
    pub fn upper(&self) -> [f64; 4] {
        self.components
    }

    /// Covariant components u_μ = η_μν u^ν.
    pub fn lower(&self) -> [f64; 4] {
        let u = self.components;
        [u[0], -u[1], -u[2], -u[3]]
    }

    pub fn gamma(&self) -> f64 {
        self.components[0]
    }

    /// Minkowski norm u_μ u^μ; equals 1 up to rounding.
    pub fn norm(&self) -> f64 {
        let up = self.upper();
        let lo = self.lower();
        (0..4).map(|i| lo[i] * up[i]).sum()
    }
}

/// Index position of a stored metric tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Contravariant,
    Covariant,
}

/// A 4×4 symmetric Lorentzian metric with an explicit variance tag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor {
    components: [[f64; 4]; 4],
    variance: Variance,
}

impl MetricTensor {
    pub fn components(&self) -> &[[f64; 4]; 4] {
        &self.components
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn minkowski(variance: Variance) -> Self {
        Self {
            components: MINKOWSKI,
            variance,
        }
    }

    /// Largest |g[i][j] − g[j][i]|; zero for the constructors in this module.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                worst = worst.max((self.components[i][j] - self.components[j][i]).abs());
            }
        }
        worst
    }

    /// Determinant of the stored components. Computed by Laplace expansion
    /// into 2×2 minors with compensated (error-free transformation)
    /// arithmetic: the heavily cancelling products at large ε and γ would
    /// otherwise cost ~8 digits.
    pub fn determinant(&self) -> f64 {
        det4(&self.components)
    }

    /// Lorentzian signature test: exactly one positive and three negative
    /// eigenvalues. Uses a cyclic Jacobi sweep; valid in any frame,
    /// including inside an ergoregion where the time-time entry has already
    /// changed sign.
    pub fn is_lorentzian(&self) -> bool {
        let eig = symmetric_eigenvalues(&self.components);
        let positive = eig.iter().filter(|&&e| e > 0.0).count();
        let negative = eig.iter().filter(|&&e| e < 0.0).count();
        positive == 1 && negative == 3
    }

    /// Matrix product of two metric tensors' components.
    pub fn matmul(&self, other: &MetricTensor) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0.0;
                for k in 0..4 {
                    s += self.components[i][k] * other.components[k][j];
                }
                out[i][j] = s;
            }
        }
        out
    }
}

// --- compensated arithmetic helpers -------------------------------------
//
// Error-free transformations: two_prod and two_sum return the exact result
// as an unevaluated (high, low) pair. Used for the determinant, where the
// leading products cancel almost completely.

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    (s, (a - (s - bv)) + (b - bv))
}

/// Unevaluated double-double accumulator.
#[derive(Clone, Copy, Default)]
struct Accum {
    hi: f64,
    lo: f64,
}

impl Accum {
    #[inline]
    fn add(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        Self { hi: s, lo: self.lo + e }
    }

    #[inline]
    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// 2×2 determinant a·d − b·c with its rounding error (Kahan's algorithm).
#[inline]
fn det2_exact(a: f64, b: f64, c: f64, d: f64) -> Accum {
    let (w, e1) = two_prod(b, c);
    let (f, e2) = two_prod(a, d);
    let (hi, e3) = two_sum(f, -w);
    Accum { hi, lo: e2 - e1 + e3 }
}

/// 4×4 determinant via the 2×2 Laplace expansion
/// `det = s01·c23 − s02·c13 + s03·c12 + s12·c03 − s13·c02 + s23·c01`,
/// carried in compensated arithmetic throughout.
fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let s = |i: usize, j: usize| det2_exact(m[0][i], m[0][j], m[1][i], m[1][j]);
    let c = |i: usize, j: usize| det2_exact(m[2][i], m[2][j], m[3][i], m[3][j]);
    let terms = [
        (s(0, 1), c(2, 3), 1.0),
        (s(0, 2), c(1, 3), -1.0),
        (s(0, 3), c(1, 2), 1.0),
        (s(1, 2), c(0, 3), 1.0),
        (s(1, 3), c(0, 2), -1.0),
        (s(2, 3), c(0, 1), 1.0),
    ];
    let mut acc = Accum::default();
    for (a, b, sign) in terms {
        let (p, e) = two_prod(a.hi, b.hi);
        let cross = a.hi * b.lo + a.lo * b.hi;
        acc = acc.add(sign * p).add(sign * (e + cross));
    }
    acc.value()
}

/// Eigenvalues of a symmetric 4×4 matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues(m: &[[f64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;
    for _ in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = cos * akp - sin * akq;
                    a[k][q] = sin * akp + cos * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = cos * apk - sin * aqk;
                    a[q][k] = sin * apk + cos * aqk;
                }
            }
        }
    }
    [a[0][0], a[1][1], a[2][2], a[3][3]]
}

fn check_epsilon(epsilon: f64) -> f64 {
    assert!(
        epsilon >= 1.0,
        "permittivity must be >= 1, got {epsilon}; the oscillator model only produces eps >= 1"
    );
    epsilon
}

/// Contravariant effective metric `g^{μν} = η^{μν} + (ε−1) u^μ u^ν`.
///
/// Reduces exactly to Minkowski for ε = 1.
pub fn contravariant_metric(epsilon: f64, u: &FourVelocity) -> MetricTensor {
    let epsilon = check_epsilon(epsilon);
    let up = u.upper();
    let mut g = MINKOWSKI;
    for (i, gi) in g.iter_mut().enumerate() {
        for (j, gij) in gi.iter_mut().enumerate() {
            // grouping the velocity product first keeps the result
            // bit-exactly symmetric
            *gij += (epsilon - 1.0) * (up[i] * up[j]);
        }
    }
    MetricTensor {
        components: g,
        variance: Variance::Contravariant,
    }
}

/// Covariant effective metric `g_{μν} = η_{μν} − ((ε−1)/ε) u_μ u_ν`,
/// the exact inverse of [`contravariant_metric`].
pub fn covariant_metric(epsilon: f64, u: &FourVelocity) -> MetricTensor {
    let epsilon = check_epsilon(epsilon);
    let lo = u.lower();
    let mut g = MINKOWSKI;
    for (i, gi) in g.iter_mut().enumerate() {
        for (j, gij) in gi.iter_mut().enumerate() {
            *gij -= (epsilon - 1.0) / epsilon * (lo[i] * lo[j]);
        }
    }
    MetricTensor {
        components: g,
        variance: Variance::Covariant,
    }
}

/// Determinant of a contravariant effective metric. Equals −ε independently
/// of the flow velocity (matrix-determinant lemma); computed here by direct
/// cofactor expansion so the identity stays a genuine cross-check.
pub fn metric_determinant(g: &MetricTensor) -> f64 {
    debug_assert_eq!(g.variance, Variance::Contravariant);
    g.determinant()
}

/// Macroscopic electric and magnetic field vectors in the lab frame.
///
/// The covariant field tensor follows the (+,−,−,−) convention
/// `F_{0i} = E_i`, `F_{ij} = −ε_{ijk} B_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStrength {
    pub electric: [f64; 3],
    pub magnetic: [f64; 3],
}

impl FieldStrength {
    pub fn new(electric: [f64; 3], magnetic: [f64; 3]) -> Self {
        Self { electric, magnetic }
    }

    pub fn zero() -> Self {
        Self {
            electric: [0.0; 3],
            magnetic: [0.0; 3],
        }
    }

    /// Covariant components F_{μν}.
    pub fn lower(&self) -> [[f64; 4]; 4] {
        let e = self.electric;
        let b = self.magnetic;
        [
            [0.0, e[0], e[1], e[2]],
            [-e[0], 0.0, -b[2], b[1]],
            [-e[1], b[2], 0.0, -b[0]],
            [-e[2], -b[1], b[0], 0.0],
        ]
    }

    /// Contravariant components F^{μν} = η^{μα} η^{νβ} F_{αβ}.
    pub fn upper(&self) -> [[f64; 4]; 4] {
        let lo = self.lower();
        let mut up = [[0.0; 4]; 4];
        for (i, upi) in up.iter_mut().enumerate() {
            for (j, upij) in upi.iter_mut().enumerate() {
                *upij = eta_sign(i) * eta_sign(j) * lo[i][j];
            }
        }
        up
    }
}

/// Rest-frame Lagrangian of the macroscopic field, `L = ½(εE² − B²)`.
pub fn lagrangian_rest(f: &FieldStrength, epsilon: f64) -> f64 {
    let e2: f64 = f.electric.iter().map(|e| e * e).sum();
    let b2: f64 = f.magnetic.iter().map(|b| b * b).sum();
    0.5 * (epsilon * e2 - b2)
}

/// Poincaré-invariant form of the Lagrangian,
/// `L = −¼ F_{μν} F^{μν} − ((ε−1)/2) (F_{μν} u^ν)(F^{μλ} u_λ)`,
/// with all indices raised and lowered by the Minkowski metric.
///
/// For `u` at rest this equals [`lagrangian_rest`].
pub fn lagrangian_covariant(f: &FieldStrength, u: &FourVelocity, epsilon: f64) -> f64 {
    let lo = f.lower();
    let up = f.upper();
    let u_up = u.upper();
    let u_lo = u.lower();

    let mut ff = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            ff += lo[i][j] * up[i][j];
        }
    }

    // a_μ = F_{μν} u^ν, b^μ = F^{μλ} u_λ; the interaction scalar is a·b.
    let mut fuu = 0.0;
    for mu in 0..4 {
        let mut a = 0.0;
        let mut b = 0.0;
        for nu in 0..4 {
            a += lo[mu][nu] * u_up[nu];
            b += up[mu][nu] * u_lo[nu];
        }
        fuu += a * b;
    }

    -0.25 * ff - 0.5 * (epsilon - 1.0) * fuu
}

/// Curved-space form of the Lagrangian,
/// `L = −¼ F_{μν} g^{μρ} g^{νσ} F_{ρσ}` with the contravariant effective
/// metric. Agrees with [`lagrangian_covariant`] for the matching (u, ε):
/// expanding the metric and using u·u = 1 with the antisymmetry of F
/// recovers the invariant form term by term.
pub fn lagrangian_geometric(f: &FieldStrength, g: &MetricTensor) -> f64 {
    debug_assert_eq!(g.variance, Variance::Contravariant);
    let lo = f.lower();
    let gc = g.components;
    let mut total = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            // (g F g^T)^{μν} contracted against F_{μν}
            let mut raised = 0.0;
            for rho in 0..4 {
                for sigma in 0..4 {
                    raised += gc[mu][rho] * gc[nu][sigma] * lo[rho][sigma];
                }
            }
            total += lo[mu][nu] * raised;
        }
    }
    -0.25 * total
}
