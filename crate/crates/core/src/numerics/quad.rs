//! Adaptive Gauss-Kronrod (10/21 point) quadrature for scalar and vector integrands.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_643_474_480,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Stopping rule for adaptive quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: tol, ..Self::default() }
    }
}

/// Integral estimate with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: f64,
}

fn rule<F>(f: &mut F, a: f64, b: f64, dim: usize, buf: &mut [f64]) -> Panel
where
    F: FnMut(f64, &mut [f64]),
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = vec![0.0; dim];
    let mut gauss = vec![0.0; dim];
    f(c, buf);
    for d in 0..dim {
        kron[d] = WGK[10] * buf[d];
    }
    for (j, &x) in XGK.iter().enumerate().take(10) {
        let dx = h * x;
        for &t in &[c - dx, c + dx] {
            f(t, buf);
            for d in 0..dim {
                kron[d] += WGK[j] * buf[d];
                if j % 2 == 1 {
                    gauss[d] += WG[j / 2] * buf[d];
                }
            }
        }
    }
    let mut error: f64 = 0.0;
    for d in 0..dim {
        kron[d] *= h;
        gauss[d] *= h;
        error = error.max((kron[d] - gauss[d]).abs());
    }
    Panel { a, b, value: kron, error }
}

/// Integrates a vector-valued function over `[a, b]`. `f(x, out)` fills `out` (length `dim`).
///
/// The stopping test uses the componentwise maximum of the Kronrod-Gauss difference against
/// `max(abs_tol, rel_tol * max_d |I_d|)`.
pub fn integrate_vec<F>(mut f: F, a: f64, b: f64, dim: usize, opts: &QuadOptions) -> Result<QuadResult<Vec<f64>>>
where
    F: FnMut(f64, &mut [f64]),
{
    integrate_vec_split(&mut f, &[a, b], dim, opts)
}

/// Like [`integrate_vec`] but starts from the given breakpoints (sorted, at least two).
pub fn integrate_vec_split<F>(f: &mut F, breaks: &[f64], dim: usize, opts: &QuadOptions) -> Result<QuadResult<Vec<f64>>>
where
    F: FnMut(f64, &mut [f64]),
{
    if breaks.len() < 2 {
        return Err(Error::Domain("quadrature needs at least two breakpoints".into()));
    }
    let mut buf = vec![0.0; dim];
    let mut panels: Vec<Panel> = breaks.windows(2).map(|w| rule(f, w[0], w[1], dim, &mut buf)).collect();
    loop {
        let mut total = vec![0.0; dim];
        let mut err = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            for (t, v) in total.iter_mut().zip(&p.value) {
                *t += v;
            }
            err += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = opts.abs_tol.max(opts.rel_tol * scale);
        if err <= target {
            return Ok(QuadResult { value: total, error: err, intervals: panels.len() });
        }
        let p = &panels[worst];
        let (pa, pb) = (p.a, p.b);
        let mid = 0.5 * (pa + pb);
        if panels.len() >= opts.max_intervals || !(mid > pa && mid < pb) {
            // Round-off floor: accept when the remaining error is at machine level.
            if err <= 64.0 * f64::EPSILON * scale.max(1e-300) * panels.len() as f64 {
                return Ok(QuadResult { value: total, error: err, intervals: panels.len() });
            }
            return Err(Error::Quadrature { lo: breaks[0], hi: breaks[breaks.len() - 1], error: err });
        }
        let left = rule(f, pa, mid, dim, &mut buf);
        let right = rule(f, mid, pb, dim, &mut buf);
        panels[worst] = left;
        panels.push(right);
    }
}

/// Integrates a scalar function over `[a, b]`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadResult<f64>>
where
    F: FnMut(f64) -> f64,
{
    let r = integrate_vec(|x, out| out[0] = f(x), a, b, 1, opts)?;
    Ok(QuadResult { value: r.value[0], error: r.error, intervals: r.intervals })
}

/// Integrates over `[a, inf)` through `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<F>(mut f: F, a: f64, opts: &QuadOptions) -> Result<QuadResult<f64>>
where
    F: FnMut(f64) -> f64,
{
    integrate(
        |t| {
            let s = 1.0 - t;
            let v = f(a + t / s) / (s * s);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        1.0,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| x.powi(20) - 3.0 * x.powi(7), -1.0, 2.0, &QuadOptions::default()).unwrap();
        let exact = (2f64.powi(21) + 1.0) / 21.0 - 3.0 * (2f64.powi(8) - 1.0) / 8.0;
        assert!((r.value - exact).abs() < 1e-10 * exact.abs());
    }

    #[test]
    fn oscillatory_integral() {
        let r = integrate(|x| (40.0 * x).cos(), 0.0, PI, &QuadOptions::default()).unwrap();
        assert!(r.value.abs() < 1e-12);
        let r = integrate(|x| x.exp(), 0.0, 1.0, &QuadOptions::default()).unwrap();
        assert!((r.value - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn semi_infinite_gaussian() {
        let r = integrate_to_infinity(|x| (-x * x).exp(), 0.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 0.5 * PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn vector_integrand_components() {
        let r = integrate_vec(
            |x, out| {
                out[0] = x.sin();
                out[1] = x.cos();
            },
            0.0,
            PI / 2.0,
            2,
            &QuadOptions::default(),
        )
        .unwrap();
        assert!((r.value[0] - 1.0).abs() < 1e-14 && (r.value[1] - 1.0).abs() < 1e-14);
    }
}
