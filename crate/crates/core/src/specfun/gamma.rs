use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln(sin(pi z))`, evaluated without overflow for large `|Im z|`.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let two_i = Complex64::new(0.0, 2.0);
    if z.im > 1.0 {
        let e = (i * 2.0 * PI * z).exp();
        -i * PI * z + ((e - 1.0) / two_i).ln()
    } else if z.im < -1.0 {
        let e = (-i * 2.0 * PI * z).exp();
        i * PI * z + ((-e + 1.0) / two_i).ln()
    } else {
        // reduce the real part to keep sin accurate
        let shift = z.re.round();
        let s = (z - shift).scale(PI).sin();
        let sign = if (shift as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        (s * sign).ln()
    }
}

/// Principal-sheet-agnostic `ln Gamma(z)`: `exp(ln_gamma(z)) == Gamma(z)`.
///
/// Lanczos approximation (g = 7, nine terms) for `Re z >= 1/2`, reflection otherwise.
/// Relative accuracy of the exponentiated value is near 1e-15 away from the poles.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let ln_pi = PI.ln();
        return Complex64::new(ln_pi, 0.0) - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

/// `Gamma(z)`.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}
