//! Left-incidence scattering amplitudes for V4 and V2, the transfer matrix,
//! probability flux, and the pole map under V0 -> -V0.
//!
//! V4: psi_L = A H2(z) + B H1(z) with z = qa e^{-x/a} on x < 0 and
//! psi_R = H1(qa e^{x/a}). V2: psi_L = A I_{i nu}(z) + B I_{-i nu}(z) and
//! psi_R = I_{-i nu}(z) with z = qa e^{-|x|/a}. In both cases T = 1/|A|^2 and
//! R = |B/A|^2.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potentials::Family;
use crate::roots::{interior_grid, scan_sign_changes};
use crate::specfun::{bessel_i_imag_pair, bessel_j_series, bessel_jy, bessel_k_imag_connection};
use crate::spectra::{
    default_valley_ceiling, refine_levels, sort_dedup, Condition, EnergyLevel, ScanOptions,
};

/// |A| below this is treated as a pole of T = 1/|A|^2.
pub const POLE_THRESHOLD: f64 = 1e-12;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub energy: f64,
    pub amp_a: Complex64,
    pub amp_b: Complex64,
    pub r: f64,
    pub t: f64,
}

impl ScatteringResult {
    fn new(energy: f64, amp_a: Complex64, amp_b: Complex64) -> Self {
        let na = amp_a.norm_sqr();
        ScatteringResult {
            energy,
            amp_a,
            amp_b,
            r: amp_b.norm_sqr() / na,
            t: 1.0 / na,
        }
    }

    /// |A|^2 - |B|^2 - 1.
    pub fn unitarity_defect(&self) -> f64 {
        self.amp_a.norm_sqr() - self.amp_b.norm_sqr() - 1.0
    }
}

fn check_va(v0: f64, a: f64) -> Result<()> {
    if !(v0.is_finite() && v0 > 0.0 && a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!(
            "V0 and a must be positive, got V0 = {v0}, a = {a}"
        )));
    }
    Ok(())
}

/// A = -(i pi z0 / 2) H1 H1', B = (i pi z0 / 4)(H1 H2' + H2 H1') with
/// H_r = H^(r)_nu(z0), nu = sqrt(V0 - E) a and z0 = qa.
pub fn amplitudes_v4(energy: f64, v0: f64, a: f64) -> Result<ScatteringResult> {
    check_va(v0, a)?;
    if !(energy > 0.0 && energy < v0) {
        return Err(Error::Regime(format!(
            "V4 amplitudes need 0 < E < V0, got E = {energy}, V0 = {v0}"
        )));
    }
    let nu = (v0 - energy).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let r = bessel_jy(nu, z0)?;
    let h1 = Complex64::new(r.j, r.y);
    let h1p = Complex64::new(r.jp, r.yp);
    let (h2, h2p) = (h1.conj(), h1p.conj());
    let amp_a = -I * (0.5 * PI * z0) * h1 * h1p;
    let amp_b = I * (0.25 * PI * z0) * (h1 * h2p + h2 * h1p);
    Ok(ScatteringResult::new(energy, amp_a, amp_b))
}

struct V2Data {
    i: Complex64,
    ip: Complex64,
    z0: f64,
    sinh: f64,
}

fn v2_data(energy: f64, v0: f64, a: f64) -> Result<V2Data> {
    check_va(v0, a)?;
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(Error::Regime(format!("V2 amplitudes need E > 0, got E = {energy}")));
    }
    let nu = (energy + v0).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let (i, ip) = bessel_i_imag_pair(nu, z0)?;
    Ok(V2Data {
        i,
        ip,
        z0,
        sinh: (PI * nu).sinh(),
    })
}

/// V2 amplitudes from matching A I_{i nu} + B I_{-i nu} to I_{-i nu} at x = 0:
/// A = (i pi qa / sinh(pi nu)) I_{-i nu} I'_{-i nu},
/// B = -(i pi qa / (2 sinh(pi nu))) (I_{i nu} I'_{-i nu} + I_{-i nu} I'_{i nu}).
pub fn amplitudes_v2(energy: f64, v0: f64, a: f64) -> Result<ScatteringResult> {
    let d = v2_data(energy, v0, a)?;
    let (im, imp) = (d.i.conj(), d.ip.conj());
    let c = PI * d.z0 / d.sinh;
    let amp_a = I * c * im * imp;
    let amp_b = -I * (0.5 * c) * (d.i * imp + im * d.ip);
    Ok(ScatteringResult::new(energy, amp_a, amp_b))
}

/// The closed form for the V2 amplitudes exactly as it is usually quoted,
/// A = -(i pi qa / (2 sinh)) I_{i nu} I'_{i nu},
/// B = (i pi qa / (2 sinh)) (I_{i nu} I'_{i nu} + I_{-i nu} I'_{-i nu}).
/// Kept for comparison only; it does not satisfy |A|^2 - |B|^2 = 1 (see
/// `unitarity_defect`), whereas `amplitudes_v2` does.
pub fn amplitudes_v2_as_printed(energy: f64, v0: f64, a: f64) -> Result<ScatteringResult> {
    let d = v2_data(energy, v0, a)?;
    let c = 0.5 * PI * d.z0 / d.sinh;
    let amp_a = -I * c * d.i * d.ip;
    let amp_b = I * c * (d.i * d.ip + d.i.conj() * d.ip.conj());
    Ok(ScatteringResult::new(energy, amp_a, amp_b))
}

/// Amplitudes for a supported scattering family.
pub fn amplitudes(family: Family, energy: f64, v0: f64, a: f64) -> Result<ScatteringResult> {
    match family {
        Family::V4 => amplitudes_v4(energy, v0, a),
        Family::V2 => amplitudes_v2(energy, v0, a),
        f => Err(Error::Incompatible(format!(
            "scattering amplitudes are implemented for v4 and v2, not {f}"
        ))),
    }
}

/// (R, T) = (|B/A|^2, 1/|A|^2); a pole error when |A| < 1e-12.
pub fn reflection_transmission(result: &ScatteringResult) -> Result<(f64, f64)> {
    let abs_a = result.amp_a.norm();
    if !(abs_a >= POLE_THRESHOLD) {
        return Err(Error::Pole {
            energy: result.energy,
            abs_a,
        });
    }
    let ba = result.amp_b / result.amp_a;
    Ok((ba.norm_sqr(), 1.0 / (abs_a * abs_a)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl TransferMatrix {
    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    /// Both eigenvalues, from the characteristic polynomial.
    pub fn eigenvalues(&self) -> [Complex64; 2] {
        let half_tr = 0.5 * self.trace();
        let disc = (half_tr * half_tr - self.det()).sqrt();
        [half_tr + disc, half_tr - disc]
    }
}

/// M22 = A, M21 = -B, M11 = conj(M22), M12 = conj(M21).
pub fn transfer_matrix(result: &ScatteringResult) -> TransferMatrix {
    TransferMatrix {
        m11: result.amp_a.conj(),
        m12: -result.amp_b.conj(),
        m21: -result.amp_b,
        m22: result.amp_a,
    }
}

/// Probability current Im(conj(psi) psi') (units 2m/hbar^2 = 1).
pub fn flux(psi: Complex64, dpsi_dx: Complex64) -> f64 {
    (psi.conj() * dpsi_dx).im
}

/// Flux of amplitude * H1_nu(z(x)) with z = qa e^{x/a}, evaluated at argument z.
pub fn probability_flux_at(nu: f64, a: f64, amplitude: Complex64, z: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    let r = bessel_jy(nu, z)?;
    let psi = amplitude * Complex64::new(r.j, r.y);
    let dpsi = amplitude * Complex64::new(r.jp, r.yp) * (z / a);
    Ok(flux(psi, dpsi))
}

/// Flux of amplitude * H1_nu(z), equal to |amplitude|^2 2/(pi a) for every z.
/// Evaluated at z = 1 + nu, clear of both the small-z and large-order extremes.
pub fn probability_flux(nu: f64, a: f64, amplitude: Complex64) -> Result<f64> {
    probability_flux_at(nu, a, amplitude, 1.0 + nu.abs())
}

fn pole_condition_v4_flipped(v0: f64, a: f64, e: f64, even: bool) -> Result<(f64, f64)> {
    // q -> iq, kappa -> i kappa turns H1_{kappa a}(qa) into K_{i kappa' a}(qa), kappa' = sqrt(E + V0);
    // K is evaluated through the I-series connection formula, not the quadrature
    let nu = (e + v0).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let k = bessel_k_imag_connection(nu, z0, false)?;
    let kp = bessel_k_imag_connection(nu, z0, true)?;
    Ok(if even { (kp, k) } else { (k, kp) })
}

fn pole_condition_v2_flipped(v0: f64, a: f64, e: f64, even: bool) -> Result<(f64, f64)> {
    // I_{i kappa a}(qa) becomes I_{nu}(-iqa) ∝ J_nu(qa) with nu = sqrt(V0 - E) a; ascending series
    let nu = (v0 - e).max(0.0).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let (j, jp) = bessel_j_series(nu, z0)?;
    Ok(if even { (jp, j) } else { (j, jp) })
}

/// Poles of the amplitude A. With `sign_flipped` the substituted condition
/// functions are scanned: for V4, K_{i nu}(qa) K'_{i nu}(qa) (the V1 spectrum);
/// for V2, J_nu(qa) J'_nu(qa) (the V5 spectrum). Each root carries the label of
/// the factor that vanished. Without the flip, |A| is scanned for values
/// below the pole threshold (there are none for real energies).
pub fn find_poles(
    family: Family,
    v0: f64,
    a: f64,
    sign_flipped: bool,
    e_range: (f64, f64),
    n_max: usize,
) -> Result<Vec<EnergyLevel>> {
    check_va(v0, a)?;
    let (lo, hi) = e_range;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!("empty energy range [{lo}, {hi}]")));
    }
    if !matches!(family, Family::V4 | Family::V2) {
        return Err(Error::Incompatible(format!(
            "poles are defined for v4 and v2, not {family}"
        )));
    }
    let opts = ScanOptions::default();
    let mut levels = Vec::new();
    if !sign_flipped {
        let grid = interior_grid(lo, hi, opts.points);
        let hits: Vec<Option<EnergyLevel>> = grid
            .par_iter()
            .map(|&e| match amplitudes(family, e, v0, a) {
                Ok(r) if r.amp_a.norm() < POLE_THRESHOLD => Some(EnergyLevel {
                    energy: e,
                    parity: crate::spectra::Parity::Even,
                    condition: if family == Family::V4 {
                        Condition::JPrimeZero
                    } else {
                        Condition::KPrimeZero
                    },
                    residual: r.amp_a.norm(),
                    bracket: (e, e),
                }),
                _ => None,
            })
            .collect();
        levels.extend(hits.into_iter().flatten());
    } else {
        for even in [true, false] {
            let (cond, grid) = match family {
                Family::V4 => {
                    let lo = lo.max(0.0);
                    let nu_lo = (lo + v0).sqrt() * a;
                    let nu_hi = (hi + v0).sqrt() * a;
                    let n = opts
                        .points
                        .max(((nu_hi - nu_lo) / opts.max_nu_step).ceil() as usize);
                    let mut g: Vec<f64> = interior_grid(nu_lo, nu_hi, n)
                        .into_iter()
                        .map(|nu| (nu / a) * (nu / a) - v0)
                        .filter(|&e| e > lo && e < hi)
                        .collect();
                    g.push(hi);
                    let cond = if even { Condition::KPrimeZero } else { Condition::KZero };
                    (cond, g)
                }
                _ => {
                    let hi = hi.min(v0);
                    if hi <= lo {
                        continue;
                    }
                    let cond = if even { Condition::JPrimeZero } else { Condition::JZero };
                    (cond, interior_grid(lo, hi, opts.points))
                }
            };
            let f = |e: f64| match family {
                Family::V4 => pole_condition_v4_flipped(v0, a, e, even),
                _ => pole_condition_v2_flipped(v0, a, e, even),
            };
            let brackets = scan_sign_changes(|e| Ok(f(e)?.0), &grid)?;
            levels.extend(refine_levels(f, &brackets, cond, opts.rel_width)?);
        }
    }
    sort_dedup(&mut levels);
    levels.truncate(n_max);
    Ok(levels)
}

/// Default pole-search range: up to the valley ceiling for V4 (V1 levels), (0, V0) for V2.
pub fn default_pole_range(family: Family, v0: f64, a: f64) -> (f64, f64) {
    match family {
        Family::V4 => (0.0, default_valley_ceiling(v0, a)),
        _ => (0.0, v0),
    }
}

/// Smallest |A| on an interior grid of `points` energies (diagnostic).
pub fn min_abs_amplitude(family: Family, v0: f64, a: f64, e_range: (f64, f64), points: usize) -> Result<f64> {
    let grid = interior_grid(e_range.0, e_range.1, points);
    let vals: Vec<f64> = grid
        .par_iter()
        .map(|&e| amplitudes(family, e, v0, a).map(|r| r.amp_a.norm()))
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{special_states_valley_family, special_states_well_family, Parity};

    #[test]
    fn v4_unitarity_and_pure_imaginary_b() {
        let r = amplitudes_v4(25.0, 50.0, 1.0).unwrap();
        assert!(r.unitarity_defect().abs() < 1e-9);
        assert!(r.amp_b.re.abs() < 1e-10 * r.amp_b.norm());
        assert!((r.r + r.t - 1.0).abs() < 1e-9);
        assert!(matches!(amplitudes_v4(60.0, 50.0, 1.0), Err(Error::Regime(_))));
        assert!(matches!(amplitudes_v4(0.0, 50.0, 1.0), Err(Error::Regime(_))));
    }

    #[test]
    fn v4_special_energy_identity() {
        let e0 = special_states_well_family(50.0, 1.0, Parity::Even, 1).unwrap()[0].energy;
        let e1 = special_states_well_family(50.0, 1.0, Parity::Odd, 1).unwrap()[0].energy;
        let d0 = amplitudes_v4(e0, 50.0, 1.0).map(|r| r.amp_b - r.amp_a).unwrap();
        let d1 = amplitudes_v4(e1, 50.0, 1.0).map(|r| r.amp_b - r.amp_a).unwrap();
        assert!((d0 + 1.0).norm() < 1e-6, "{d0}");
        assert!((d1 - 1.0).norm() < 1e-6, "{d1}");
    }

    #[test]
    fn v2_derived_form_is_unitary() {
        for &e in &[0.5, 10.0, 40.0] {
            let r = amplitudes_v2(e, 5.0, 1.0).unwrap();
            assert!(r.unitarity_defect().abs() < 1e-8, "E={e}: {}", r.unitarity_defect());
        }
        assert!(amplitudes_v2(500.0, 5.0, 1.0).unwrap().t > 0.99);
        assert!(matches!(amplitudes_v2(0.0, 5.0, 1.0), Err(Error::Regime(_))));
    }

    #[test]
    fn v2_printed_form_is_not_unitary() {
        let r = amplitudes_v2_as_printed(10.0, 5.0, 1.0).unwrap();
        assert!(r.unitarity_defect().abs() > 0.1);
    }

    #[test]
    fn reflection_transmission_forms() {
        let r = ScatteringResult::new(1.0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        assert_eq!(reflection_transmission(&r).unwrap(), (0.0, 1.0));
        let b = 0.7;
        let r = ScatteringResult::new(1.0, Complex64::new(-1.0, b), Complex64::new(0.0, b));
        let (rr, tt) = reflection_transmission(&r).unwrap();
        assert!((tt - 1.0 / (1.0 + b * b)).abs() < 1e-15);
        assert!((rr - b * b / (1.0 + b * b)).abs() < 1e-15);
        let r = ScatteringResult::new(1.0, Complex64::new(1e-13, 0.0), Complex64::new(0.0, 0.0));
        assert!(matches!(reflection_transmission(&r), Err(Error::Pole { .. })));
    }

    #[test]
    fn transfer_matrix_at_special_energy() {
        let e0 = special_states_well_family(50.0, 1.0, Parity::Even, 1).unwrap()[0].energy;
        let m = transfer_matrix(&amplitudes_v4(e0, 50.0, 1.0).unwrap());
        let one = Complex64::new(1.0, 0.0);
        let v = m.apply([one, one]);
        // A = 1 + ib at a J' zero, so (1, 1) has eigenvalue +1
        assert!((v[0] - one).norm() < 1e-6 && (v[1] - one).norm() < 1e-6);
        assert!((m.det() - one).norm() < 1e-9);
        assert_eq!(m.m11, m.m22.conj());
        assert_eq!(m.m12, m.m21.conj());
    }

    #[test]
    fn flux_is_constant() {
        let f1 = probability_flux_at(2.3, 1.0, Complex64::new(1.0, 0.0), 0.8).unwrap();
        let f2 = probability_flux_at(2.3, 1.0, Complex64::new(1.0, 0.0), 17.0).unwrap();
        assert!((f1 - 2.0 / PI).abs() < 1e-10 && (f2 - 2.0 / PI).abs() < 1e-10);
        let f = probability_flux(2.3, 1.0, Complex64::new(2.0, 0.0)).unwrap();
        assert!((f - 8.0 / PI).abs() < 1e-10);
        let r = bessel_jy(2.3, 3.0).unwrap();
        assert_eq!(flux(Complex64::new(r.j, 0.0), Complex64::new(r.jp, 0.0)), 0.0);
    }

    #[test]
    fn poles_match_bound_states() {
        let p = find_poles(Family::V4, 5.0, 1.0, true, default_pole_range(Family::V4, 5.0, 1.0), 2)
            .unwrap();
        assert!((p[0].energy - 6.465).abs() < 1e-3 && (p[1].energy - 17.537).abs() < 1e-3);
        let s = special_states_valley_family(5.0, 1.0, Parity::Even, 1).unwrap();
        assert!((p[0].energy - s[0].energy).abs() < 1e-8);

        let p = find_poles(Family::V2, 50.0, 1.0, true, (0.0, 50.0), 2).unwrap();
        assert!((p[0].energy - 18.611).abs() < 1e-3 && (p[1].energy - 37.263).abs() < 1e-3);
        assert_eq!(p[0].condition, Condition::JPrimeZero);

        let none = find_poles(Family::V4, 50.0, 1.0, false, (0.0, 50.0), 10).unwrap();
        assert!(none.is_empty());
        assert!(min_abs_amplitude(Family::V4, 50.0, 1.0, (0.0, 50.0), 400).unwrap() >= 1.0 - 1e-9);
    }
}
