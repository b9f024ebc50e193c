//! Gragg-Bulirsch-Stoer extrapolation on fixed macro panels.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Number of extrapolation levels (substep sequence 2, 4, ..., 2 * LEVELS).
pub const LEVELS: usize = 8;

fn axpy<const D: usize>(y: &[f64; D], a: f64, x: &[f64; D]) -> [f64; D] {
    let mut out = *y;
    for i in 0..D {
        out[i] += a * x[i];
    }
    out
}

fn modified_midpoint<const D: usize, F>(f: &mut F, x: f64, y: &[f64; D], h: f64, n: usize) -> [f64; D]
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
{
    let hs = h / n as f64;
    let mut z0 = *y;
    let mut z1 = axpy(&z0, hs, &f(x, y));
    for m in 1..n {
        let fz = f(x + m as f64 * hs, &z1);
        let z2 = axpy(&z0, 2.0 * hs, &fz);
        z0 = z1;
        z1 = z2;
    }
    let fz = f(x + h, &z1);
    let mut out = [0.0; D];
    for i in 0..D {
        out[i] = 0.5 * (z0[i] + z1[i] + hs * fz[i]);
    }
    out
}

/// One extrapolated step from `x` to `x + h`. Returns the state and an error estimate
/// (max-norm difference of the last two diagonal tableau entries).
pub fn gbs_step<const D: usize, F>(f: &mut F, x: f64, y: &[f64; D], h: f64) -> ([f64; D], f64)
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
{
    let mut prev: Vec<[f64; D]> = Vec::with_capacity(LEVELS);
    let mut err = 0.0;
    for j in 0..LEVELS {
        let nj = 2 * (j + 1);
        let mut row: Vec<[f64; D]> = Vec::with_capacity(j + 1);
        row.push(modified_midpoint(f, x, y, h, nj));
        for k in 1..=j {
            let nk = 2 * (j + 1 - k);
            let ratio = (nj as f64 / nk as f64).powi(2) - 1.0;
            let mut t = row[k - 1];
            for i in 0..D {
                t[i] += (row[k - 1][i] - prev[k - 1][i]) / ratio;
            }
            row.push(t);
        }
        if j == LEVELS - 1 {
            err = (0..D).fold(0.0f64, |m, i| m.max((row[j][i] - row[j - 1][i]).abs()));
        }
        prev = row;
    }
    (prev[LEVELS - 1], err)
}

/// Solution sampled at the panel boundaries of a fixed-panel integration.
#[derive(Clone, Debug)]
pub struct Checkpoints<const D: usize> {
    pub start: f64,
    pub step: f64,
    pub states: Vec<[f64; D]>,
    /// Sum of the per-panel error estimates.
    pub error: f64,
}

impl<const D: usize> Checkpoints<D> {
    pub fn end_state(&self) -> [f64; D] {
        self.states[self.states.len() - 1]
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.states.len() - 1) as f64
    }

    /// Evaluates the solution at `x` by stepping from the nearest stored checkpoint.
    pub fn evaluate<F>(&self, f: &mut F, x: f64) -> [f64; D]
    where
        F: FnMut(f64, &[f64; D]) -> [f64; D],
    {
        let last = self.states.len() - 1;
        let pos = (x - self.start) / self.step;
        let idx = if pos <= 0.0 { 0 } else { (pos.round() as usize).min(last) };
        let xi = self.start + self.step * idx as f64;
        let dx = x - xi;
        if dx == 0.0 {
            return self.states[idx];
        }
        gbs_step(f, xi, &self.states[idx], dx).0
    }
}

/// Integrates from `x0` to `x1` (either direction) over `panels` equal macro steps.
pub fn integrate_panels<const D: usize, F>(f: &mut F, x0: f64, x1: f64, y0: [f64; D], panels: usize) -> Checkpoints<D>
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
{
    let panels = panels.max(1);
    let step = (x1 - x0) / panels as f64;
    let mut states = Vec::with_capacity(panels + 1);
    states.push(y0);
    let mut y = y0;
    let mut error = 0.0;
    for p in 0..panels {
        let x = x0 + step * p as f64;
        let (next, e) = gbs_step(f, x, &y, step);
        y = next;
        error += e;
        states.push(y);
    }
    Checkpoints { start: x0, step, states, error }
}

/// Integrates to `x1` and returns only the final state and accumulated error estimate.
pub fn integrate_final<const D: usize, F>(f: &mut F, x0: f64, x1: f64, y0: [f64; D], panels: usize) -> ([f64; D], f64)
where
    F: FnMut(f64, &[f64; D]) -> [f64; D],
{
    let panels = panels.max(1);
    let step = (x1 - x0) / panels as f64;
    let mut y = y0;
    let mut error = 0.0;
    for p in 0..panels {
        let (next, e) = gbs_step(f, x0 + step * p as f64, &y, step);
        y = next;
        error += e;
    }
    (y, error)
}

/// One extrapolated step for a system whose dimension is only known at run time.
/// `f(x, y, dy)` writes the derivative into `dy`.
pub fn gbs_step_dyn<F>(f: &mut F, x: f64, y: &[f64], h: f64) -> (Vec<f64>, f64)
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let d = y.len();
    let mut prev: Vec<Vec<f64>> = Vec::new();
    let mut err = 0.0;
    let mut dy = alloc::vec![0.0; d];
    for j in 0..LEVELS {
        let nj = 2 * (j + 1);
        let hs = h / nj as f64;
        let mut z0 = y.to_vec();
        f(x, y, &mut dy);
        let mut z1: Vec<f64> = (0..d).map(|i| z0[i] + hs * dy[i]).collect();
        for m in 1..nj {
            f(x + m as f64 * hs, &z1, &mut dy);
            for i in 0..d {
                let z2 = z0[i] + 2.0 * hs * dy[i];
                z0[i] = z1[i];
                z1[i] = z2;
            }
        }
        f(x + h, &z1, &mut dy);
        let mut row: Vec<Vec<f64>> = Vec::with_capacity(j + 1);
        row.push((0..d).map(|i| 0.5 * (z0[i] + z1[i] + hs * dy[i])).collect());
        for k in 1..=j {
            let nk = 2 * (j + 1 - k);
            let ratio = (nj as f64 / nk as f64).powi(2) - 1.0;
            let t: Vec<f64> = (0..d).map(|i| row[k - 1][i] + (row[k - 1][i] - prev[k - 1][i]) / ratio).collect();
            row.push(t);
        }
        if j == LEVELS - 1 {
            err = (0..d).fold(0.0f64, |m, i| m.max((row[j][i] - row[j - 1][i]).abs()));
        }
        prev = row;
    }
    (prev.pop().unwrap_or_default(), err)
}

/// Dynamic-dimension counterpart of [`integrate_final`].
pub fn integrate_final_dyn<F>(f: &mut F, x0: f64, x1: f64, y0: &[f64], panels: usize) -> (Vec<f64>, f64)
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let panels = panels.max(1);
    let step = (x1 - x0) / panels as f64;
    let mut y = y0.to_vec();
    let mut error = 0.0;
    for p in 0..panels {
        let (next, e) = gbs_step_dyn(f, x0 + step * p as f64, &y, step);
        y = next;
        error += e;
    }
    (y, error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_long_run() {
        let mut f = |_x: f64, y: &[f64; 2]| [y[1], -y[0]];
        let cp = integrate_panels(&mut f, 0.0, 50.0, [0.0, 1.0], 50);
        let y = cp.end_state();
        assert!((y[0] - 50f64.sin()).abs() < 1e-12, "{}", y[0] - 50f64.sin());
        assert!((y[1] - 50f64.cos()).abs() < 1e-12);
        let mid = cp.evaluate(&mut f, 17.3);
        assert!((mid[0] - 17.3f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn dynamic_matches_fixed() {
        let mut f = |_x: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
            dy[2] = y[0] * y[0];
        };
        let (y, _) = integrate_final_dyn(&mut f, 0.0, 3.0, &[0.0, 1.0, 0.0], 6);
        assert!((y[0] - 3f64.sin()).abs() < 1e-13);
        // integral of sin^2 over [0, 3]
        assert!((y[2] - (1.5 - 6f64.sin() / 4.0)).abs() < 1e-13);
    }

    #[test]
    fn backward_integration() {
        let mut f = |x: f64, _y: &[f64; 1]| [x.exp()];
        let (y, _) = integrate_final(&mut f, 1.0, 0.0, [1f64.exp()], 4);
        assert!((y[0] - 1.0).abs() < 1e-13);
    }
}
