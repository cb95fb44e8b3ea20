use std::f64::consts::PI;

use super::shooting::{decaying_profile, shoot_levels, Matching, ShootingProblem};
use crate::error::{Error, Result};
use crate::spectra::{sort_dedup, EnergyLevel, WavefunctionGrid};

fn cubic(x: f64) -> f64 {
    x * x * x
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicOptions {
    /// decaying-side start; `None` uses E^{1/3} + 6 for the largest scanned E
    pub x_right: Option<f64>,
    /// left end of the plotting/moment domain (no condition is imposed there)
    pub x_left: f64,
    pub step: f64,
}

impl Default for CubicOptions {
    fn default() -> Self {
        CubicOptions {
            x_right: None,
            x_left: -8.0,
            step: 5e-4,
        }
    }
}

const MIN_POINTS_PER_WAVELENGTH: f64 = 30.0;

fn check_resolution(energy: f64, opts: &CubicOptions) -> Result<()> {
    let deepest = (energy - cubic(opts.x_left.min(0.0))).max(1e-300);
    let wavelength = 2.0 * PI / deepest.sqrt();
    if wavelength / opts.step < MIN_POINTS_PER_WAVELENGTH {
        return Err(Error::Resolution(format!(
            "step {} gives {:.1} points per wavelength at x = {} (E = {energy}); need {MIN_POINTS_PER_WAVELENGTH}",
            opts.step,
            wavelength / opts.step,
            opts.x_left
        )));
    }
    Ok(())
}

fn x_right_for(e_max: f64, opts: &CubicOptions) -> Result<f64> {
    let x = opts.x_right.unwrap_or(e_max.max(0.0).cbrt() + 6.0);
    if x <= e_max.max(0.0).cbrt() {
        return Err(Error::Domain(format!(
            "x_right = {x} is not beyond the turning point {} ",
            e_max.cbrt()
        )));
    }
    Ok((x / opts.step).ceil() * opts.step)
}

/// The lowest `n_max` hybrid levels of V = x^3: decay for x -> +inf and
/// psi'(0) = 0 (even label) or psi(0) = 0 (odd label).
pub fn cubic_levels(n_max: usize, opts: &CubicOptions) -> Result<Vec<EnergyLevel>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    if !(opts.step > 0.0) || !(opts.x_left < 0.0) {
        return Err(Error::Domain("need step > 0 and x_left < 0".into()));
    }
    let mut e_max = 8.0;
    loop {
        let x_right = x_right_for(e_max, opts)?;
        let points = (e_max / 0.02).ceil() as usize;
        let mut levels = Vec::new();
        for matching in [Matching::DpsiZeroAtOrigin, Matching::PsiZeroAtOrigin] {
            let problem = ShootingProblem {
                potential: cubic,
                matching,
                x_start: x_right,
                x_end: 0.0,
                grid_step: opts.step,
                scale: 1.0,
            };
            levels.extend(shoot_levels(&problem, 0.0, e_max, points)?);
        }
        sort_dedup(&mut levels);
        if levels.len() >= n_max {
            levels.truncate(n_max);
            for l in &levels {
                check_resolution(l.energy, opts)?;
            }
            return Ok(levels);
        }
        if e_max > 4096.0 {
            return Err(Error::ScanExhausted {
                found: levels.len(),
                wanted: n_max,
                ceiling: e_max,
            });
        }
        e_max *= 2.0;
    }
}

/// Eigenfunction of a cubic level on [x_left, x_right], integrated from the
/// decaying side through the origin, normalised on that domain.
pub fn cubic_wavefunction(level: &EnergyLevel, opts: &CubicOptions) -> Result<WavefunctionGrid> {
    check_resolution(level.energy, opts)?;
    let x_right = x_right_for(level.energy, opts)?;
    let x_left = (opts.x_left / opts.step).round() * opts.step;
    let mut g = decaying_profile(cubic, level.energy, x_right, x_left, opts.step)?;
    g.parity = Some(level.parity);
    g.normalize()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_two_levels() {
        let l = cubic_levels(2, &CubicOptions::default()).unwrap();
        assert!((l[0].energy - 1.023).abs() < 2e-3, "{}", l[0].energy);
        assert!((l[1].energy - 3.451).abs() < 2e-3, "{}", l[1].energy);
    }

    #[test]
    fn coarse_step_is_rejected() {
        let opts = CubicOptions {
            step: 0.01,
            ..CubicOptions::default()
        };
        assert!(matches!(cubic_levels(1, &opts), Err(Error::Resolution(_))));
    }
}
