//! Monotone cubic (Fritsch–Carlson) interpolation.
//!
//! Used for tabulated flow profiles: the interpolant never overshoots the
//! data, so a table with samples in [0, 1) stays in [0, 1) everywhere.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("sample abscissae must be strictly increasing (violated at index {0})")]
    NonIncreasing(usize),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
}

/// Piecewise-cubic Hermite interpolant with monotonicity-preserving slopes.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x: Vec<f64>,
    y: Vec<f64>,
    slope: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self, InterpError> {
        if samples.len() < 2 {
            return Err(InterpError::TooFewSamples(samples.len()));
        }
        for (i, &(x, y)) in samples.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(InterpError::NonFinite(i));
            }
            if i > 0 && x <= samples[i - 1].0 {
                return Err(InterpError::NonIncreasing(i));
            }
        }
        let x: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let y: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let slope = fritsch_carlson_slopes(&x, &y);
        Ok(Self { x, y, slope })
    }

    pub fn x_min(&self) -> f64 {
        self.x[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.x.last().unwrap()
    }

    /// Index of the interval containing `x` (clamped to the table range).
    fn segment(&self, x: f64) -> usize {
        match self.x.partition_point(|&xi| xi <= x) {
            0 => 0,
            k if k >= self.x.len() => self.x.len() - 2,
            k => k - 1,
        }
    }

    /// Interpolated value at `x`. Outside the table the boundary cubic is
    /// extrapolated; callers are expected to stay within range.
    pub fn value(&self, x: f64) -> f64 {
        let k = self.segment(x);
        let h = self.x[k + 1] - self.x[k];
        let t = (x - self.x[k]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.y[k] + h10 * h * self.slope[k] + h01 * self.y[k + 1] + h11 * h * self.slope[k + 1]
    }

    /// Derivative of the interpolant at `x`.
    pub fn derivative(&self, x: f64) -> f64 {
        let k = self.segment(x);
        let h = self.x[k + 1] - self.x[k];
        let t = (x - self.x[k]) / h;
        let t2 = t * t;
        let d00 = (6.0 * t2 - 6.0 * t) / h;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = (-6.0 * t2 + 6.0 * t) / h;
        let d11 = 3.0 * t2 - 2.0 * t;
        d00 * self.y[k] + d10 * self.slope[k] + d01 * self.y[k + 1] + d11 * self.slope[k + 1]
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }
}

/// Fritsch–Carlson slope limiting: harmonic-mean interior slopes, one-sided
/// endpoint slopes clamped so no segment overshoots its data.
fn fritsch_carlson_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = (0..n - 1).map(|k| x[k + 1] - x[k]).collect();
    let d: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();

    if n == 2 {
        return vec![d[0], d[0]];
    }

    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        if d[k - 1] * d[k] <= 0.0 {
            m[k] = 0.0;
        } else {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
    m[0] = edge_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

/// Three-point endpoint slope with the usual shape-preserving clamps.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_is_linear() {
        let c = MonotoneCubic::new(&[(0.0, 1.0), (2.0, 3.0)]).unwrap();
        assert!((c.value(1.0) - 2.0).abs() < 1e-15);
        assert!((c.derivative(0.5) - 1.0).abs() < 1e-15);
        assert!((c.derivative(1.7) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reproduces_linear_data_exactly() {
        let samples: Vec<(f64, f64)> = (0..11).map(|i| (i as f64, 0.5 + 0.2 * i as f64)).collect();
        let c = MonotoneCubic::new(&samples).unwrap();
        for i in 0..50 {
            let x = 10.0 * i as f64 / 49.0;
            assert!((c.value(x) - (0.5 + 0.2 * x)).abs() < 1e-13);
            assert!((c.derivative(x) - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn no_overshoot_on_monotone_data() {
        // beta-like decreasing data in [0, 1): interpolant must stay there.
        let samples: Vec<(f64, f64)> = (0..20)
            .map(|i| {
                let r = 1.0 + 0.2 * i as f64;
                (r, 0.8 / r)
            })
            .collect();
        let c = MonotoneCubic::new(&samples).unwrap();
        for i in 0..2000 {
            let x = 1.0 + 3.8 * i as f64 / 1999.0;
            let v = c.value(x);
            assert!(v > 0.0 && v <= 0.8 + 1e-15, "overshoot at x={x}: {v}");
        }
    }

    #[test]
    fn derivative_converges_to_true_slope() {
        // Dense table of beta(r) = 0.8/r: slope error should be O(h^2).
        let n = 4001;
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let r = 0.9 + (3.5 - 0.9) * i as f64 / (n - 1) as f64;
                (r, 0.8 / r)
            })
            .collect();
        let c = MonotoneCubic::new(&samples).unwrap();
        let r = 1.6;
        let truth = -0.8 / (r * r);
        let rel = ((c.derivative(r) - truth) / truth).abs();
        assert!(rel < 2e-6, "relative slope error {rel}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MonotoneCubic::new(&[(0.0, 1.0)]).is_err());
        assert!(MonotoneCubic::new(&[(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(MonotoneCubic::new(&[(0.0, f64::NAN), (1.0, 2.0)]).is_err());
    }
}
