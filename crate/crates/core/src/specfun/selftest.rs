//! Identity suite for the special functions. Each check reports the largest
//! deviation found on its grid.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::*;
use crate::report::{Check, MaxDev};

const FD_STEP: f64 = 1e-6;

fn fd_rel(f: impl Fn(f64) -> Option<f64>, df: f64, x: f64) -> f64 {
    match (f(x + FD_STEP), f(x - FD_STEP), f(x)) {
        (Some(p), Some(m), Some(v)) => {
            let fd = (p - m) / (2.0 * FD_STEP);
            (fd - df).abs() / (df.abs() + v.abs()).max(1e-300)
        }
        _ => f64::INFINITY,
    }
}

pub fn hankel_wronskian() -> Check {
    let mut dev = MaxDev::default();
    for &nu in &[0.0, 0.5, 1.7, 5.6] {
        for &x in &[0.5, 2.0, 7.0, 50.0] {
            let h = |k, d| hankel(k, nu, x, d);
            match (
                h(HankelKind::First, false),
                h(HankelKind::Second, true),
                h(HankelKind::Second, false),
                h(HankelKind::First, true),
            ) {
                (Ok(h1), Ok(h2p), Ok(h2), Ok(h1p)) => {
                    let w = h1 * h2p - h2 * h1p;
                    dev.push((w + Complex64::new(0.0, 4.0 / (PI * x))).norm());
                }
                _ => dev.push(f64::INFINITY),
            }
        }
    }
    Check::below("hankel wronskian", dev.0, 1e-10)
}

pub fn hankel_conjugation() -> Check {
    let mut dev = MaxDev::default();
    for &nu in &[0.0, 0.5, 1.7, 2.7, 5.6, -3.3] {
        for &x in &[0.5, 2.0, 5.0, 7.0, 50.0] {
            for d in [false, true] {
                match (
                    hankel(HankelKind::First, nu, x, d),
                    hankel(HankelKind::Second, nu, x, d),
                ) {
                    (Ok(a), Ok(b)) => dev.push(if a.conj() == b { 0.0 } else { (a.conj() - b).norm() }),
                    _ => dev.push(f64::INFINITY),
                }
            }
        }
    }
    // exact equality required
    Check::below("hankel conjugation", dev.0, f64::MIN_POSITIVE)
}

pub fn hankel_large_argument_modulus() -> Check {
    let d = hankel(HankelKind::First, 1.0, 100.0, false)
        .map(|h| (h.norm() * (PI * 100.0 / 2.0).sqrt() - 1.0).abs())
        .unwrap_or(f64::INFINITY);
    Check::below("hankel modulus at large argument", d, 1e-2)
}

pub fn k_connection_cross_check() -> Check {
    let mut dev = MaxDev::default();
    for &nu in &[0.5, 1.0, 2.5, 4.75, 7.0] {
        for &x in &[0.3, 1.0, 2.236, 5.0] {
            for d in [false, true] {
                match (bessel_k_imag(nu, x, d), bessel_k_imag_connection(nu, x, d)) {
                    (Ok(a), Ok(b)) => dev.push((a - b).abs()),
                    _ => dev.push(f64::INFINITY),
                }
            }
        }
    }
    Check::below("K quadrature vs I-series connection", dev.0, 1e-9)
}

pub fn small_argument_law() -> Check {
    let mut dev = MaxDev::default();
    let z = 1e-3;
    for &nu in &[0.3, 2.5] {
        let r = bessel_j(nu, z, false).and_then(|j| {
            let g = gamma_complex(Complex64::new(nu + 1.0, 0.0))?.re;
            Ok(j * g / (0.5 * z).powf(nu))
        });
        dev.push(r.map(|v| (v - 1.0).abs()).unwrap_or(f64::INFINITY));
    }
    Check::below("small-argument law", dev.0, 1e-6)
}

pub fn derivative_consistency() -> Check {
    let mut dev = MaxDev::default();
    let points = [(0.0, 1.0), (1.7, 2.0), (5.6, 7.07), (-2.4, 3.3), (3.0, 40.0)];
    for &(nu, x) in &points {
        if let Ok(r) = bessel_jy(nu, x) {
            dev.push(fd_rel(|t| bessel_j(nu, t, false).ok(), r.jp, x));
            dev.push(fd_rel(|t| bessel_y(nu, t, false).ok(), r.yp, x));
        } else {
            dev.push(f64::INFINITY);
        }
    }
    for &(nu, x) in &[(0.0, 1.0), (2.0, 2.236), (4.75, 2.236), (1.0, 0.2)] {
        match bessel_k_imag(nu, x, true) {
            Ok(dk) => dev.push(fd_rel(|t| bessel_k_imag(nu, t, false).ok(), dk, x)),
            Err(_) => dev.push(f64::INFINITY),
        }
        match bessel_i_imag(nu, x, true) {
            Ok(di) => {
                dev.push(fd_rel(|t| bessel_i_imag(nu, t, false).ok().map(|c| c.re), di.re, x));
                dev.push(fd_rel(|t| bessel_i_imag(nu, t, false).ok().map(|c| c.im), di.im, x));
            }
            Err(_) => dev.push(f64::INFINITY),
        }
    }
    Check::below("derivative vs central difference", dev.0, 1e-6)
}

pub fn gamma_identities() -> Check {
    let mut dev = MaxDev::default();
    let one = gamma_complex(Complex64::new(1.0, 0.0)).map(|g| (g - 1.0).norm());
    let half = gamma_complex(Complex64::new(0.5, 0.0)).map(|g| (g - PI.sqrt()).norm());
    let y = 1.5;
    let refl = gamma_complex(Complex64::new(1.0, y))
        .map(|g| (g.norm_sqr() - PI * y / (PI * y).sinh()).abs());
    for r in [one, half, refl] {
        dev.push(r.unwrap_or(f64::INFINITY));
    }
    Check::below("gamma identities", dev.0, 1e-12)
}

/// Runs every identity check.
pub fn run() -> Vec<Check> {
    vec![
        hankel_wronskian(),
        hankel_conjugation(),
        hankel_large_argument_modulus(),
        k_connection_cross_check(),
        small_argument_law(),
        derivative_consistency(),
        gamma_identities(),
    ]
}
