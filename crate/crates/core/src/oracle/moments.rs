use crate::error::{Error, Result};
use crate::spectra::{trapezoid, WavefunctionGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    X,
    P,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Moment {
    pub value: f64,
    /// `None` unless the value is exact by symmetry or the grid is marginal
    pub note: Option<String>,
}

/// Central differences inside, one-sided at the ends.
fn derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    d[0] = (f[1] - f[0]) / h;
    d[n - 1] = (f[n - 1] - f[n - 2]) / h;
    d
}

/// Mean number of grid points between sign changes in the outer tenth of the window.
fn points_per_half_wave(psi: &[f64]) -> Option<f64> {
    let n = psi.len();
    let edge = (n / 10).max(2);
    let mut crossings = 0usize;
    let mut span = 0usize;
    for part in [&psi[..edge], &psi[n - edge..]] {
        crossings += part.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        span += part.len();
    }
    (crossings > 0).then(|| span as f64 / crossings as f64)
}

/// <x^n> or <p^n> over |x| <= cutoff, with psi renormalised on that window.
///
/// <p^2m> is computed as the integral of |d^m psi / dx^m|^2 (finite
/// differences); odd powers of p vanish for real psi and are returned as 0.
pub fn moments(psi: &WavefunctionGrid, observable: Observable, power: u32, cutoff: f64) -> Result<Moment> {
    if power == 0 {
        return Err(Error::Domain("moment power must be at least 1".into()));
    }
    if !(cutoff > 0.0) {
        return Err(Error::Domain(format!("cutoff must be positive, got {cutoff}")));
    }
    let h = psi.step();
    let slack = 1e-9 * h;
    let (xs, vals): (Vec<f64>, Vec<f64>) = psi
        .xs
        .iter()
        .zip(&psi.psi)
        .filter(|(x, _)| x.abs() <= cutoff + slack)
        .map(|(x, p)| (*x, *p))
        .unzip();
    if xs.len() < 3 {
        return Err(Error::Domain(format!(
            "fewer than three grid points inside |x| <= {cutoff}"
        )));
    }
    let norm = trapezoid(&vals.iter().map(|p| p * p).collect::<Vec<_>>(), h);
    if !(norm > 0.0) {
        return Err(Error::Domain("wavefunction vanishes on the cutoff window".into()));
    }
    let mut note = points_per_half_wave(&vals)
        .filter(|&p| p < 8.0)
        .map(|p| format!("grid resolution: {p:.1} points per half-wavelength near the cutoff"));
    let value = match observable {
        Observable::X => {
            let w: Vec<f64> = xs
                .iter()
                .zip(&vals)
                .map(|(x, p)| x.powi(power as i32) * p * p)
                .collect();
            trapezoid(&w, h) / norm
        }
        Observable::P if power % 2 == 1 => {
            note = Some(format!("<p^{power}> of a real wavefunction is exactly zero"));
            0.0
        }
        Observable::P => {
            let mut d = vals.clone();
            for _ in 0..power / 2 {
                d = derivative(&d, h);
            }
            trapezoid(&d.iter().map(|v| v * v).collect::<Vec<_>>(), h) / norm
        }
    };
    Ok(Moment { value, note })
}
