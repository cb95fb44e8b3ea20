//! Complex gamma function (Lanczos, g = 7, nine coefficients) and the
//! reciprocal-gamma Taylor series used by the Temme expansion of Y_nu.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{domain, Result};

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
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

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// ln Γ(z) for Re z >= 0.5 via the Lanczos sum.
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI + sum.ln()
}

/// ln sin(pi z), stable for large |Im z| where sin itself would overflow.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return (z * PI).sin().ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| = e^{-2 pi Im z}
    let i = Complex64::i();
    let e2 = (2.0 * i * PI * z).exp();
    -i * PI * z + (i * 0.5).ln() + (Complex64::new(1.0, 0.0) - e2).ln()
}

/// Principal-ish branch of ln Γ(z); the imaginary part is only defined modulo 2π.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain(format!("gamma argument {z} is not finite")));
    }
    if is_pole(z) {
        return Err(domain(format!("gamma has a pole at {}", z.re)));
    }
    if z.re < 0.5 {
        // reflection: Γ(z) Γ(1 - z) = π / sin(π z)
        let one = Complex64::new(1.0, 0.0);
        Ok(PI.ln() - ln_sin_pi(z) - ln_gamma_lanczos(one - z))
    } else {
        Ok(ln_gamma_lanczos(z))
    }
}

/// Γ(z) for complex z; errors at the non-positive integers.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 0.0 && z.re <= 171.0 {
        // real positive axis: avoid the spurious imaginary round-off of exp(ln)
        let g = ln_gamma_lanczos(z);
        return Ok(Complex64::new(g.re.exp(), 0.0));
    }
    if z.im == 0.0 && z.re < 0.5 && !is_pole(z) {
        let s = (PI * z.re).sin();
        let g = gamma_complex(Complex64::new(1.0 - z.re, 0.0))?;
        return Ok(Complex64::new(PI / (s * g.re), 0.0));
    }
    Ok(ln_gamma_complex(z)?.exp())
}

// Taylor coefficients of 1/Γ(z) = Σ c_k z^k (c_1 = 1).
const RGAMMA_COEF: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// Returns (gam1, gam2, 1/Γ(1+mu), 1/Γ(1-mu)) for |mu| <= 1/2, where
/// gam1 = (1/Γ(1-mu) - 1/Γ(1+mu)) / (2 mu) and gam2 = (1/Γ(1-mu) + 1/Γ(1+mu)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    // 1/Γ(1+x) = Σ_k c_{k+1} x^k
    let mut even = 0.0;
    let mut odd = 0.0;
    let mu2 = mu * mu;
    let mut p = 1.0;
    for pair in RGAMMA_COEF.chunks(2) {
        even += pair[0] * p;
        if pair.len() > 1 {
            odd += pair[1] * p;
        }
        p *= mu2;
    }
    // 1/Γ(1+mu) = even + mu*odd, 1/Γ(1-mu) = even - mu*odd
    let gampl = even + mu * odd;
    let gammi = even - mu * odd;
    (-odd, even, gampl, gammi)
}
