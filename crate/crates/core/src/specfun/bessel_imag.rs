//! Modified Bessel functions of purely imaginary order, I_{i nu}(x) and
//! K_{i nu}(x), for real nu and positive real x.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::gamma::ln_gamma_complex;
use crate::error::{domain, Error, Result};

/// Largest |nu| accepted for imaginary-order functions.
pub const MAX_IMAG_ORDER: f64 = 100.0;

/// Integrand cut: the scaled integrand e^{-x (cosh t - 1)} drops below e^{-45}.
const K_CUTOFF_EXPONENT: f64 = 45.0;

fn check(nu: f64, x: f64, allow_negative: bool) -> Result<()> {
    if !nu.is_finite() || nu.abs() > MAX_IMAG_ORDER || (!allow_negative && nu < 0.0) {
        return Err(domain(format!(
            "imaginary order magnitude {nu} outside [0, {MAX_IMAG_ORDER}]"
        )));
    }
    if !x.is_finite() || x <= 0.0 {
        return Err(domain(format!("argument {x} must be positive")));
    }
    Ok(())
}

/// Simpson's rule on `n` (even) panels of width `h` over [0, n h].
fn simpson<F: Fn(f64) -> f64>(f: &F, h: f64, n: usize) -> f64 {
    let mut odd = 0.0;
    let mut even = 0.0;
    for k in 1..n {
        let v = f(k as f64 * h);
        if k % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(0.0) + f(n as f64 * h) + 4.0 * odd + 2.0 * even)
}

/// e^{x} K_{i nu}(x) (or e^{x} dK_{i nu}/dx) from
/// K_{i nu}(x) = ∫_0^∞ e^{-x cosh t} cos(nu t) dt.
pub fn bessel_k_imag_scaled(nu: f64, x: f64, derivative: bool) -> Result<f64> {
    check(nu, x, false)?;
    let t_max = (1.0 + K_CUTOFF_EXPONENT / x).acosh();
    // the oscillation bound alone under-resolves the e^{-x t^2/2} core once x is large
    let h_max = 0.1f64.min(1.0 / (4.0 * (1.0 + nu))).min(0.25 / x.sqrt());
    let mut n = (t_max / h_max).ceil() as usize;
    n += n % 2;
    n = n.max(2);
    let h = t_max / n as f64;
    let integrand = |t: f64| {
        let c = t.cosh();
        let v = (-x * (c - 1.0)).exp() * (nu * t).cos();
        if derivative {
            -c * v
        } else {
            v
        }
    };
    let coarse = simpson(&integrand, h, n);
    let fine = simpson(&integrand, 0.5 * h, 2 * n);
    Ok(fine + (fine - coarse) / 15.0)
}

/// K_{i nu}(x) or its x-derivative, real for real nu and x > 0.
pub fn bessel_k_imag(nu: f64, x: f64, derivative: bool) -> Result<f64> {
    let scaled = bessel_k_imag_scaled(nu, x, derivative)?;
    let e = (-x).exp();
    if e < f64::MIN_POSITIVE {
        return Err(Error::Underflow(format!(
            "K_(i{nu})({x}) is below the smallest normal number"
        )));
    }
    Ok(scaled * e)
}

/// I_{i nu}(x) and dI_{i nu}/dx from the ascending series
/// Σ_k (x/2)^{i nu + 2k} / (k! Γ(i nu + k + 1)). Negative nu gives I_{-i|nu|},
/// the complex conjugate.
pub fn bessel_i_imag_pair(nu: f64, x: f64) -> Result<(Complex64, Complex64)> {
    check(nu, x, true)?;
    if x > 700.0 {
        return Err(Error::Overflow(format!("I_(i{nu})({x}) overflows")));
    }
    let half = 0.5 * x;
    let inu = Complex64::new(0.0, nu);
    let lead = (inu * half.ln() - ln_gamma_complex(inu + 1.0)?).exp();
    let mut term = lead;
    let mut sum = term;
    let mut dsum = inu * term;
    let mut max_term = term.norm();
    let h2 = half * half;
    for k in 1..2000 {
        let kf = k as f64;
        term *= h2 / (kf * (inu + kf));
        sum += term;
        dsum += (inu + 2.0 * kf) * term;
        let m = term.norm();
        max_term = max_term.max(m);
        if m < 1e-17 * sum.norm() && kf > half {
            break;
        }
    }
    if max_term > 1e5 * sum.norm() {
        return Err(Error::Accuracy(format!(
            "cancellation in the I_(i{nu})({x}) series exceeds the accuracy budget"
        )));
    }
    Ok((sum, dsum / x))
}

/// I_{i nu}(x) or its x-derivative.
pub fn bessel_i_imag(nu: f64, x: f64, derivative: bool) -> Result<Complex64> {
    let (i, ip) = bessel_i_imag_pair(nu, x)?;
    Ok(if derivative { ip } else { i })
}

/// K_{i nu}(x) through the connection formula
/// K_{i nu} = π (I_{-i nu} - I_{i nu}) / (2 i sinh(π nu)) = -π Im I_{i nu} / sinh(π nu).
///
/// This is a second, quadrature-free route to K; it degenerates at nu = 0.
pub fn bessel_k_imag_connection(nu: f64, x: f64, derivative: bool) -> Result<f64> {
    check(nu, x, false)?;
    if nu < 1e-6 {
        return Err(domain(
            "connection formula for K_(i nu) is degenerate for nu below 1e-6",
        ));
    }
    let i = bessel_i_imag(nu, x, derivative)?;
    Ok(-PI * i.im / (PI * nu).sinh())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K_0 from its ascending series (small x) and Hankel asymptotics (large x),
    /// written out independently of the quadrature.
    fn k0_reference(x: f64) -> f64 {
        if x <= 4.0 {
            let euler = 0.577_215_664_901_532_9;
            let h = 0.5 * x;
            let mut term = 1.0;
            let mut harmonic = 0.0;
            let mut sum = -(h.ln() + euler);
            for k in 1..60 {
                let kf = k as f64;
                term *= h * h / (kf * kf);
                harmonic += 1.0 / kf;
                sum += term * (harmonic - h.ln() - euler);
            }
            sum
        } else {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..40 {
                let kf = k as f64;
                let next = term * -((2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
                if next.abs() > term.abs() {
                    break;
                }
                term = next;
                sum += term;
            }
            (PI / (2.0 * x)).sqrt() * (-x).exp() * sum
        }
    }

    #[test]
    fn k_zero_order_matches_reference() {
        // K_0(1) = 0.42102443824070833
        let k = bessel_k_imag(0.0, 1.0, false).unwrap();
        assert!((k - k0_reference(1.0)).abs() < 1e-13);
        assert!((k - 0.421_024_438_240_708_33).abs() < 1e-13);
        for &x in &[0.05, 0.5, 3.0, 20.0, 35.0] {
            let k = bessel_k_imag(0.0, x, false).unwrap();
            assert!((k - k0_reference(x)).abs() < 1e-12 * (-x).exp().max(1e-300), "x = {x}");
        }
        // K_0' = -K_1, K_1(1) = 0.6019072301972346
        let kp = bessel_k_imag(0.0, 1.0, true).unwrap();
        assert!((kp + 0.601_907_230_197_234_6).abs() < 1e-13);
    }

    #[test]
    fn k_imaginary_order_frozen_values() {
        // reference values from an arbitrary-precision evaluation
        let cases = [
            (0.3, 0.1, 2.088_548_514_966_67),
            (8.0, 0.1, 2.858_669_436_982_87e-6),
            (8.0, 6.0, 3.633_695_035_661_08e-6),
            (4.7473, 2.236, -1.282_384_032_398_03e-7),
            (0.3, 6.0, 1.235_358_658_386_08e-3),
        ];
        for (nu, x, v) in cases {
            let k = bessel_k_imag(nu, x, false).unwrap();
            assert!((k - v).abs() < 1e-12 * (-x).exp(), "nu={nu} x={x}: {k} vs {v}");
        }
    }

    #[test]
    fn leading_modulus_of_i_series() {
        // |(x/2)^{i nu} / Γ(1 + i nu)| = sqrt(sinh(pi nu)/(pi nu))
        for &nu in &[0.5, 2.0, 6.0] {
            let i = bessel_i_imag(nu, 1e-9, false).unwrap();
            let expected = ((PI * nu).sinh() / (PI * nu)).sqrt();
            assert!((i.norm() / expected - 1.0).abs() < 1e-12);
        }
        let i0 = bessel_i_imag(0.0, 1e-12, false).unwrap();
        assert!((i0.re - 1.0).abs() < 1e-15 && i0.im == 0.0);
    }

    #[test]
    fn negative_order_is_conjugate() {
        let a = bessel_i_imag(2.3, 1.7, false).unwrap();
        let b = bessel_i_imag(-2.3, 1.7, false).unwrap();
        assert!((a.conj() - b).norm() < 1e-15 * a.norm());
    }

    #[test]
    fn quadrature_and_connection_agree() {
        for &nu in &[0.3, 1.0, 2.236, 4.7473, 8.0] {
            for &x in &[0.1, 1.0, 2.236, 6.0] {
                for d in [false, true] {
                    let q = bessel_k_imag(nu, x, d).unwrap();
                    let c = bessel_k_imag_connection(nu, x, d).unwrap();
                    assert!((q - c).abs() < 1e-11, "nu={nu} x={x} d={d}: {q} {c}");
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(bessel_k_imag(1.0, 0.0, false).is_err());
        assert!(bessel_k_imag(-1.0, 1.0, false).is_err());
        assert!(bessel_k_imag(101.0, 1.0, false).is_err());
        assert!(matches!(bessel_k_imag(1.0, 750.0, false), Err(Error::Underflow(_))));
        assert!(bessel_i_imag(1.0, -1.0, false).is_err());
        assert!(bessel_k_imag_connection(0.0, 1.0, false).is_err());
    }
}
