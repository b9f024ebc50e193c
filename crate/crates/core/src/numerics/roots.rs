//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a bracketing interval. `f` may fail; failures propagate.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    brent_with_values(&mut f, a, fa, b, fb, xtol, max_iter)
}

/// Brent's method when the endpoint values are already known.
pub fn brent_with_values<F>(f: &mut F, a: f64, fa: f64, b: f64, fb: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut fa, mut b, mut fb) = (a, fa, b, fb);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::RootBracket { lo: a.min(b), hi: a.max(b) });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Ok(b)
}

/// Expands `[center - w, center + w]` until `f` changes sign, keeping the lower end above `floor`.
/// Returns `(lo, f(lo), hi, f(hi))`.
pub fn expand_bracket<F>(f: &mut F, center: f64, half_width: f64, floor: f64, max_doublings: usize) -> Result<(f64, f64, f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut w = half_width;
    let mut lo = (center - w).max(floor);
    let mut hi = center + w;
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    for _ in 0..max_doublings {
        if flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0 {
            return Ok((lo, flo, hi, fhi));
        }
        w *= 2.0;
        let new_lo = (center - w).max(floor);
        if new_lo < lo {
            lo = new_lo;
            flo = f(lo)?;
            if flo.signum() != fhi.signum() {
                return Ok((lo, flo, hi, fhi));
            }
        }
        hi = center + w;
        fhi = f(hi)?;
    }
    Err(Error::RootBracket { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| Ok(x * x * x - 2.0), 0.0, 2.0, 1e-15, 100).unwrap();
        assert!((r - 2.0f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        assert!(matches!(brent(|x| Ok(x * x + 1.0), -1.0, 1.0, 1e-12, 100), Err(Error::RootBracket { .. })));
    }

    #[test]
    fn bracket_expansion_reaches_distant_root() {
        let mut f = |x: f64| Ok(x - 10.0);
        let (lo, _, hi, _) = expand_bracket(&mut f, 1.0, 0.5, 0.0, 20).unwrap();
        assert!(lo <= 10.0 && hi >= 10.0);
    }
}
