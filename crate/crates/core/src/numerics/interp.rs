//! Piecewise cubic Hermite interpolation with three-point slopes.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// C1 cubic interpolant through `(x_i, y_i)` with finite-difference slopes.
#[derive(Clone, Debug)]
pub struct CubicHermite {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl CubicHermite {
    pub fn new(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Domain("interpolation needs at least two matching samples".into()));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("interpolation knots must be strictly increasing".into()));
        }
        let n = xs.len();
        let mut slopes = Vec::with_capacity(n);
        for i in 0..n {
            let s = if n == 2 {
                (ys[1] - ys[0]) / (xs[1] - xs[0])
            } else if i == 0 {
                let (h0, h1) = (xs[1] - xs[0], xs[2] - xs[1]);
                let (d0, d1) = ((ys[1] - ys[0]) / h0, (ys[2] - ys[1]) / h1);
                ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
            } else if i == n - 1 {
                let (h0, h1) = (xs[n - 2] - xs[n - 3], xs[n - 1] - xs[n - 2]);
                let (d0, d1) = ((ys[n - 2] - ys[n - 3]) / h0, (ys[n - 1] - ys[n - 2]) / h1);
                ((2.0 * h1 + h0) * d1 - h1 * d0) / (h0 + h1)
            } else {
                let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
                let (d0, d1) = ((ys[i] - ys[i - 1]) / h0, (ys[i + 1] - ys[i]) / h1);
                (h1 * d0 + h0 * d1) / (h0 + h1)
            };
            slopes.push(s);
        }
        Ok(Self { xs: xs.to_vec(), ys: ys.to_vec(), slopes })
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }

    /// Evaluates on knot interval `i` (clamped to the data range).
    pub fn eval_on(&self, i: usize, x: f64) -> f64 {
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&k| k <= x) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        self.eval_on(i, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_quadratics() {
        let xs = [0.0, 0.3, 1.0, 1.2, 2.0];
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 + x - 2.0 * x * x).collect();
        let c = CubicHermite::new(&xs, &ys).unwrap();
        for &x in &[0.1, 0.5, 1.1, 1.9] {
            assert!((c.eval(x) - (1.0 + x - 2.0 * x * x)).abs() < 1e-12);
        }
    }
}
