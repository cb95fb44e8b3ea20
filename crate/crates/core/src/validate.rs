//! Invariant suite behind `besselwell validate`.
//!
//! `run` returns one `Check` per invariant. `diagnostics` returns measured
//! quantities that are reported but not asserted: the unitarity defect of the
//! quoted closed form for the V2 amplitudes and the cutoff dependence of <x^2>.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{E, PI};

use crate::error::Result;
use crate::oracle::{
    cubic_levels, cubic_wavefunction, decaying_profile, eigen_shoot, moments,
    numerov_integrate_fn, CubicOptions, Matching, Observable, ShootingProblem,
};
use crate::potentials::{Family, PotentialSpec};
use crate::report::{Check, MaxDev};
use crate::scattering::{
    amplitudes_v2, amplitudes_v2_as_printed, amplitudes_v4, default_pole_range, find_poles,
    probability_flux_at, reflection_transmission, transfer_matrix,
};
use crate::specfun::{bessel_jy, gamma_complex, selftest};
use crate::spectra::{
    levels_for, nonphysical_states, special_states_well_family, uniform_grid, valley_family_with,
    wavefunction, well_family_with, EnergyLevel, Parity, ScanOptions, WavefunctionGrid,
};

/// Parameters of the two reference configurations.
pub const WELL: (f64, f64) = (50.0, 1.0);
pub const VALLEY: (f64, f64) = (5.0, 1.0);

fn spec(f: Family, (v0, a): (f64, f64)) -> PotentialSpec {
    PotentialSpec::new(f, v0, a).expect("reference parameters are valid")
}

fn guard(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::failed(name, e.to_string()))
}

fn all_levels(f: Family, p: (f64, f64), n: Option<usize>) -> Result<Vec<EnergyLevel>> {
    levels_for(&spec(f, p), None, n, false, &ScanOptions::default())
}

fn first_of_parity(levels: &[EnergyLevel], parity: Parity, n: usize) -> Vec<EnergyLevel> {
    levels.iter().filter(|l| l.parity == parity).take(n).copied().collect()
}

fn reference_levels(name: &str, f: Family, p: (f64, f64), expected: [f64; 2], tol: f64) -> Check {
    guard(name, || {
        let l = all_levels(f, p, Some(2))?;
        let dev = (l[0].energy - expected[0])
            .abs()
            .max((l[1].energy - expected[1]).abs());
        Ok(Check::below(name, dev, tol).with_detail(format!(
            "E0 = {:.6}, E1 = {:.6}",
            l[0].energy, l[1].energy
        )))
    })
}

fn well_energies() -> Check {
    reference_levels("well_family_energies", Family::V5, WELL, [18.611, 37.263], 1e-3)
}

fn valley_energies() -> Check {
    reference_levels("valley_family_energies", Family::V1, VALLEY, [6.465, 17.537], 1e-3)
}

fn cubic_energies() -> Check {
    guard("cubic_hybrid_energies", || {
        let l = cubic_levels(2, &CubicOptions::default())?;
        let dev = (l[0].energy - 1.023).abs().max((l[1].energy - 3.451).abs());
        Ok(Check::below("cubic_hybrid_energies", dev, 2e-3).with_detail(format!(
            "E0 = {:.6}, E1 = {:.6}",
            l[0].energy, l[1].energy
        )))
    })
}

fn shallow_well_empty() -> Check {
    guard("shallow_well_has_no_states", || {
        let mut n = 0;
        for p in [Parity::Even, Parity::Odd] {
            n += special_states_well_family(0.01, 1.0, p, 10)?.len();
            n += nonphysical_states(0.01, 1.0, p, 10)?.len();
        }
        Ok(Check::below("shallow_well_has_no_states", n as f64, 0.5))
    })
}

fn nonphysical_disjoint() -> Check {
    guard("nonphysical_roots_disjoint", || {
        let phys = all_levels(Family::V5, WELL, None)?;
        let spec5 = spec(Family::V5, WELL);
        let non = levels_for(&spec5, None, None, true, &ScanOptions::default())?;
        let closest = non
            .iter()
            .flat_map(|n| phys.iter().map(move |p| (n.energy - p.energy).abs()))
            .fold(f64::INFINITY, f64::min);
        // pass when no non-physical root sits on a physical one
        Ok(Check::below("nonphysical_roots_disjoint", 1e-6 / closest, 1.0)
            .with_detail(format!("{} roots, closest distance {closest:.3e}", non.len())))
    })
}

fn oracle_match(name: &str, f: Family, p: (f64, f64)) -> Check {
    guard(name, || {
        let s = spec(f, p);
        let levels = all_levels(f, p, None)?;
        let mut dev = MaxDev::default();
        let mut n = 0;
        for parity in [Parity::Even, Parity::Odd] {
            let m = match parity {
                Parity::Even => Matching::DpsiZeroAtOrigin,
                Parity::Odd => Matching::PsiZeroAtOrigin,
            };
            let problem = ShootingProblem::for_spec(s, m);
            for l in first_of_parity(&levels, parity, 3) {
                let hi = if f.is_well_family() {
                    (l.energy * 1.01).min(0.5 * (l.energy + s.v0))
                } else {
                    l.energy * 1.01
                };
                let shot = eigen_shoot(&problem, l.energy * 0.99, hi)?;
                dev.push((shot.energy - l.energy).abs() / l.energy);
                n += 1;
            }
        }
        Ok(Check::below(name, dev.0, 1e-5).with_detail(format!("{n} levels")))
    })
}

fn root_completeness() -> Check {
    guard("root_completeness_half_step", || {
        let mut dev = 0.0f64;
        let prod = ScanOptions::default();
        let fine = prod.refined();
        for parity in [Parity::Even, Parity::Odd] {
            for nonphys in [false, true] {
                let a = well_family_with(WELL.0, WELL.1, parity, nonphys, usize::MAX, &prod)?;
                let b = well_family_with(WELL.0, WELL.1, parity, nonphys, usize::MAX, &fine)?;
                dev = dev.max((a.len() as f64 - b.len() as f64).abs());
            }
            let a = valley_family_with(VALLEY.0, VALLEY.1, parity, &prod)?;
            let b = valley_family_with(VALLEY.0, VALLEY.1, parity, &fine)?;
            dev = dev.max((a.len() as f64 - b.len() as f64).abs());
        }
        Ok(Check::below("root_completeness_half_step", dev, 0.5))
    })
}

fn special_energy_identity() -> Check {
    guard("special_energy_b_minus_a", || {
        let mut dev = MaxDev::default();
        for l in all_levels(Family::V4, WELL, None)? {
            let r = amplitudes_v4(l.energy, WELL.0, WELL.1)?;
            let target = if l.parity == Parity::Even { -1.0 } else { 1.0 };
            dev.push((r.amp_b - r.amp_a - target).norm());
        }
        Ok(Check::below("special_energy_b_minus_a", dev.0, 1e-6))
    })
}

fn sweep(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn unitarity_v4() -> Check {
    guard("unitarity_v4", || {
        let (v0, a) = WELL;
        let defects: Vec<f64> = sweep(0.02 * v0, 0.98 * v0, 200)
            .par_iter()
            .map(|&e| amplitudes_v4(e, v0, a).map(|r| r.unitarity_defect().abs()))
            .collect::<Result<_>>()?;
        Ok(Check::below("unitarity_v4", defects.into_iter().fold(0.0, f64::max), 1e-8))
    })
}

fn b_imaginary_v4() -> Check {
    guard("v4_b_purely_imaginary", || {
        let (v0, a) = WELL;
        let rel: Vec<f64> = sweep(0.02 * v0, 0.98 * v0, 200)
            .par_iter()
            .map(|&e| amplitudes_v4(e, v0, a).map(|r| r.amp_b.re.abs() / r.amp_b.norm()))
            .collect::<Result<_>>()?;
        Ok(Check::below("v4_b_purely_imaginary", rel.into_iter().fold(0.0, f64::max), 1e-10))
    })
}

fn unitarity_v2() -> Check {
    guard("unitarity_v2", || {
        let (v0, a) = VALLEY;
        let defects: Vec<f64> = sweep(0.1, 8.0 * v0, 200)
            .par_iter()
            .map(|&e| {
                let r = amplitudes_v2(e, v0, a)?;
                let (rr, tt) = reflection_transmission(&r)?;
                Ok(r.unitarity_defect().abs().max((rr + tt - 1.0).abs()))
            })
            .collect::<Result<_>>()?;
        Ok(Check::below("unitarity_v2", defects.into_iter().fold(0.0, f64::max), 1e-8))
    })
}

fn v2_high_energy_transmission() -> Check {
    guard("v2_high_energy_transmission", || {
        let r = amplitudes_v2(100.0 * VALLEY.0, VALLEY.0, VALLEY.1)?;
        Ok(Check::below("v2_high_energy_transmission", 1.0 - r.t, 0.01)
            .with_detail(format!("T = {:.6}", r.t)))
    })
}

/// Well-family roots bisected until the midpoint repeats.
pub fn full_precision_well_roots() -> Result<Vec<EnergyLevel>> {
    let opts = ScanOptions {
        rel_width: 0.0,
        ..ScanOptions::default()
    };
    let mut all = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        all.extend(well_family_with(WELL.0, WELL.1, p, false, usize::MAX, &opts)?);
    }
    Ok(all)
}

fn transfer_matrix_checks() -> Vec<Check> {
    let levels = match full_precision_well_roots() {
        Ok(l) => l,
        Err(e) => {
            return vec![Check::failed("transfer_matrix", e.to_string())];
        }
    };
    let one = Complex64::new(1.0, 0.0);
    let (mut eig, mut det, mut vec) = (MaxDev::default(), MaxDev::default(), MaxDev::default());
    for l in &levels {
        match amplitudes_v4(l.energy, WELL.0, WELL.1) {
            Ok(r) => {
                let m = transfer_matrix(&r);
                let s = if l.parity == Parity::Even { 1.0 } else { -1.0 };
                let v = m.apply([one, one]);
                vec.push((v[0] - s).norm().max((v[1] - s).norm()));
                det.push((m.det() - 1.0).norm());
                for ev in m.eigenvalues() {
                    eig.push((ev - s).norm());
                }
            }
            Err(_) => vec.push(f64::INFINITY),
        }
    }
    vec![
        Check::below("transfer_matrix_eigenvector", vec.0, 1e-6),
        Check::below("transfer_matrix_determinant", det.0, 1e-9),
        Check::below("transfer_matrix_degenerate_eigenvalue", eig.0, 1e-6),
    ]
}

fn pole_equivalence() -> Vec<Check> {
    let run = |fam: Family, p: (f64, f64), reference: Family| -> Result<Check> {
        let name = format!("poles_{}_flipped_match_{}", fam, reference);
        let refs = all_levels(reference, p, None)?;
        let range = default_pole_range(fam, p.0, p.1);
        let poles = find_poles(fam, p.0, p.1, true, range, refs.len())?;
        if poles.len() != refs.len() {
            return Ok(Check::failed(
                name,
                format!("{} poles vs {} levels", poles.len(), refs.len()),
            ));
        }
        let mut dev = MaxDev::default();
        for (a, b) in poles.iter().zip(&refs) {
            dev.push((a.energy - b.energy).abs());
            if a.parity != b.parity {
                dev.push(f64::INFINITY);
            }
        }
        Ok(Check::below(name, dev.0, 1e-8).with_detail(format!("{} levels", refs.len())))
    };
    let unflipped = guard("poles_v4_unflipped_empty", || {
        let p = find_poles(Family::V4, WELL.0, WELL.1, false, (0.0, WELL.0), 10)?;
        Ok(Check::below("poles_v4_unflipped_empty", p.len() as f64, 0.5))
    });
    vec![
        guard("poles_v4_flipped", || run(Family::V4, VALLEY, Family::V1)),
        guard("poles_v2_flipped", || run(Family::V2, WELL, Family::V5)),
        unflipped,
    ]
}

fn flux_constant() -> Check {
    guard("flux_two_over_pi_a", || {
        let mut dev = MaxDev::default();
        for &nu in &[0.0, 2.3, 5.6] {
            for &a in &[0.5, 1.0, 2.0] {
                for &z in &[0.7, 3.0, 40.0] {
                    let f = probability_flux_at(nu, a, Complex64::new(1.0, 0.0), z)?;
                    dev.push((f - 2.0 / (PI * a)).abs());
                }
            }
        }
        Ok(Check::below("flux_two_over_pi_a", dev.0, 1e-10))
    })
}

/// psi at -3h..3h (index 3 is the origin).
fn origin_stencil(spec: &PotentialSpec, level: &EnergyLevel, h: f64) -> Result<Vec<f64>> {
    Ok(wavefunction(spec, level, -3.0 * h, 3.0 * h, 7, false)?.psi)
}

/// One-sided quadratic-fit slopes at 0 from the left and from the right.
fn one_sided_slopes(p: &[f64], h: f64) -> (f64, f64) {
    let left = (2.5 * p[2] - 4.0 * p[1] + 1.5 * p[0]) / h;
    let right = -(2.5 * p[4] - 4.0 * p[5] + 1.5 * p[6]) / h;
    (left, right)
}

const ORIGIN_STEP: f64 = 3e-6;

fn origin_conditions() -> Check {
    guard("origin_conditions", || {
        let mut dev = MaxDev::default();
        for (f, p) in [
            (Family::V4, WELL),
            (Family::V5, WELL),
            (Family::V1, VALLEY),
            (Family::V2, VALLEY),
        ] {
            let s = spec(f, p);
            for l in all_levels(f, p, Some(4))? {
                let st = origin_stencil(&s, &l, ORIGIN_STEP * s.a)?;
                let (_, slope) = one_sided_slopes(&st, ORIGIN_STEP * s.a);
                let scale = st[3].abs().max(slope.abs() * s.a);
                dev.push(match l.parity {
                    Parity::Even => slope.abs() * s.a / scale,
                    Parity::Odd => st[3].abs() / scale,
                });
            }
        }
        Ok(Check::below("origin_conditions", dev.0, 1e-6))
    })
}

fn hybrid_continuity() -> Check {
    guard("hybrid_gluing_continuity", || {
        let mut dev = MaxDev::default();
        for (f, p) in [(Family::V6, WELL), (Family::V3, VALLEY)] {
            let s = spec(f, p);
            let reference = if f == Family::V6 { Family::V5 } else { Family::V1 };
            for l in all_levels(reference, p, Some(4))? {
                dev.push(crate::spectra::hybrid_glue(&s, &l)?.mismatch);
                // the mirrored one-sided stencils share their h^2 error term, so a wide
                // step keeps evaluation noise (~1e-13 relative) far below 1e-8
                let h = 1e-4 * s.a;
                let st = origin_stencil(&s, &l, h)?;
                let (left, right) = one_sided_slopes(&st, h);
                // quadratic extrapolation of the x < 0 samples to the origin
                let value_left = 3.0 * st[2] - 3.0 * st[1] + st[0];
                let scale = st[3].abs().max(left.abs().max(right.abs()) * s.a);
                dev.push((value_left - st[3]).abs() / scale);
                dev.push((left - right).abs() * s.a / scale);
            }
        }
        Ok(Check::below("hybrid_gluing_continuity", dev.0, 1e-8))
    })
}

fn v4_envelope() -> Check {
    guard("v4_envelope_decay", || {
        let s = spec(Family::V4, WELL);
        let mut worst = 0.0f64;
        for l in all_levels(Family::V4, WELL, Some(2))? {
            let g = wavefunction(&s, &l, -5.0, 5.0, 200_001, false)?;
            let env: Vec<f64> = g
                .xs
                .iter()
                .zip(&g.psi)
                .filter(|(x, _)| x.abs() >= 2.0 * s.a)
                .map(|(x, p)| p.abs() * (x.abs() / (2.0 * s.a)).exp())
                .collect();
            let max = env.iter().fold(0.0f64, |m, v| m.max(*v));
            let mut sorted = env.clone();
            sorted.sort_by(f64::total_cmp);
            worst = worst.max(max / sorted[sorted.len() / 2]);
        }
        Ok(Check::below("v4_envelope_decay", worst, 10.0))
    })
}

fn v5_small_z_tail() -> Check {
    guard("v5_small_z_tail", || {
        let s = spec(Family::V5, WELL);
        let l = all_levels(Family::V5, WELL, Some(1))?[0];
        let g = wavefunction(&s, &l, 0.0, 8.0, 8001, false)?;
        let w = s.wave_params(l.energy)?;
        let ratio = |x: f64| -> Result<f64> {
            let z = w.z0 * (-x / s.a).exp();
            let lead = (0.5 * z).powf(w.nu) / gamma_complex(Complex64::new(w.nu + 1.0, 0.0))?.re;
            Ok(g.value_at(x) / lead)
        };
        let (r7, r8) = (ratio(7.0)?, ratio(8.0)?);
        Ok(Check::below("v5_small_z_tail", (r7 / r8 - 1.0).abs(), 1e-4))
    })
}

fn numerov_order() -> Check {
    guard("numerov_fourth_order", || {
        let err = |h: f64| -> Result<f64> {
            let g = numerov_integrate_fn(|_| 0.0, 1.0, 0.0, 10.0, h, 0.0, h.sin())?;
            Ok(g.xs.iter().zip(&g.psi).map(|(x, p)| (p - x.sin()).abs()).fold(0.0, f64::max))
        };
        let e = [err(0.2)?, err(0.1)?, err(0.05)?, err(0.025)?];
        let dev = e
            .windows(2)
            .map(|w| (w[0] / w[1] / 16.0 - 1.0).abs())
            .fold(0.0, f64::max);
        Ok(Check::below("numerov_fourth_order", dev, 0.2))
    })
}

fn shooting_log_derivative() -> Check {
    guard("v5_shooting_log_derivative", || {
        let s = spec(Family::V5, WELL);
        let e = 18.611;
        let p = ShootingProblem {
            potential: |x: f64| s.evaluate(x),
            matching: Matching::DpsiZeroAtOrigin,
            x_start: 8.0 * s.a,
            x_end: 0.0,
            grid_step: 1e-3 * s.a,
            scale: s.a,
        };
        let (psi, dpsi) = p.end_values(e)?;
        let w = s.wave_params(e)?;
        let r = bessel_jy(w.nu, w.z0)?;
        let analytic = -w.z0 / s.a * r.jp / r.j;
        Ok(Check::below("v5_shooting_log_derivative", (dpsi / psi - analytic).abs(), 1e-4))
    })
}

fn linear_well() -> Check {
    guard("linear_well_two_run", || {
        let problem = |step: f64| ShootingProblem {
            potential: |x: f64| x.abs(),
            matching: Matching::DpsiZeroAtOrigin,
            x_start: 12.0,
            x_end: 0.0,
            grid_step: step,
            scale: 1.0,
        };
        let e1 = eigen_shoot(&problem(1e-3), 0.5, 1.5)?.energy;
        let e2 = eigen_shoot(&problem(5e-4), 0.5, 1.5)?.energy;
        Ok(Check::below("linear_well_two_run", (e1 - e2).abs(), 1e-6)
            .with_detail(format!("E0 = {e2:.10}")))
    })
}

fn v6_oracle_gluing() -> Check {
    guard("v6_oracle_left_tail", || {
        let s = spec(Family::V6, WELL);
        let mut worst = 0.0f64;
        for l in all_levels(Family::V5, WELL, Some(2))? {
            let g = decaying_profile(|x| s.evaluate(x), l.energy, 6.0, -4.0, 2.5e-5)?;
            let env: Vec<f64> = g
                .xs
                .iter()
                .zip(&g.psi)
                .filter(|(x, _)| **x <= 0.0)
                .map(|(x, p)| p.abs() * (x.abs() / (2.0 * s.a)).exp())
                .collect();
            let max = env.iter().fold(0.0f64, |m, v| m.max(*v));
            let mut sorted = env.clone();
            sorted.sort_by(f64::total_cmp);
            worst = worst.max(max / sorted[sorted.len() / 2]);
        }
        Ok(Check::below("v6_oracle_left_tail", worst, 10.0))
    })
}

/// V4 ground state on [-L, L] with at least 40 points per local wavelength at the edge.
pub fn v4_ground_state_grid(cutoff: f64) -> Result<WavefunctionGrid> {
    let s = spec(Family::V4, WELL);
    let l = special_states_well_family(WELL.0, WELL.1, Parity::Even, 1)?[0];
    let k_edge = s.v0.sqrt() * (cutoff / s.a).exp();
    let step = 2.0 * PI / k_edge / 40.0;
    let n = (2.0 * cutoff / step).ceil() as usize + 1;
    wavefunction(&s, &l, -cutoff, cutoff, n | 1, false)
}

fn moment_checks() -> Vec<Check> {
    let run = || -> Result<Vec<Check>> {
        let g6 = v4_ground_state_grid(6.0)?;
        let g4 = v4_ground_state_grid(4.0)?;
        let x1 = moments(&g6, Observable::X, 1, 6.0)?.value;
        let p2_4 = moments(&g6, Observable::P, 2, 4.0)?.value;
        let p2_6 = moments(&g6, Observable::P, 2, 6.0)?.value;
        let x2_a = moments(&g4, Observable::X, 2, 4.0)?.value;
        let x2_b = moments(&g6, Observable::X, 2, 4.0)?.value;
        Ok(vec![
            Check::below("v4_mean_position_zero", x1.abs(), 1e-8),
            Check::below("v4_p2_grows_faster_than_e", E / (p2_6 / p2_4), 1.0)
                .with_detail(format!("<p^2>(6a)/<p^2>(4a) = {:.4}", p2_6 / p2_4)),
            Check::below("moment_window_renormalisation", (x2_a / x2_b - 1.0).abs(), 1e-4),
        ])
    };
    run().unwrap_or_else(|e| vec![Check::failed("moments", e.to_string())])
}

fn cubic_checks() -> Vec<Check> {
    let run = || -> Result<Vec<Check>> {
        let opts = CubicOptions::default();
        let l = cubic_levels(2, &opts)?;
        let half = cubic_levels(
            2,
            &CubicOptions {
                step: 0.5 * opts.step,
                ..opts
            },
        )?;
        let shift = l
            .iter()
            .zip(&half)
            .map(|(a, b)| (a.energy - b.energy).abs())
            .fold(0.0, f64::max);
        let mut worst = 0.0f64;
        for lv in &l {
            let g = cubic_wavefunction(lv, &opts)?;
            let env: Vec<f64> = g
                .xs
                .iter()
                .zip(&g.psi)
                .filter(|(x, _)| **x <= -3.0)
                .map(|(x, p)| p.abs() * x.abs().powf(0.75))
                .collect();
            let max = env.iter().fold(0.0f64, |m, v| m.max(*v));
            let mut sorted = env.clone();
            sorted.sort_by(f64::total_cmp);
            worst = worst.max(max / sorted[sorted.len() / 2]);
        }
        Ok(vec![
            Check::below("cubic_step_halving", shift, 1e-5),
            Check::below("cubic_left_envelope", worst, 10.0),
        ])
    };
    run().unwrap_or_else(|e| vec![Check::failed("cubic", e.to_string())])
}

fn cross_grid_is_uniform() -> Check {
    guard("uniform_grid", || {
        let g = uniform_grid(-1.0, 1.0, 2001)?;
        let dev = g
            .windows(2)
            .map(|w| (w[1] - w[0] - 1e-3).abs())
            .fold(0.0, f64::max);
        Ok(Check::below("uniform_grid", dev, 1e-12))
    })
}

/// Every invariant, in a fixed order.
pub fn run() -> Vec<Check> {
    type Job = fn() -> Vec<Check>;
    let jobs: Vec<Job> = vec![
        selftest::run,
        || vec![well_energies(), valley_energies(), cubic_energies()],
        || vec![shallow_well_empty(), nonphysical_disjoint(), root_completeness()],
        || vec![
            oracle_match("oracle_matches_v5", Family::V5, WELL),
            oracle_match("oracle_matches_v1", Family::V1, VALLEY),
        ],
        || vec![special_energy_identity(), unitarity_v4(), b_imaginary_v4()],
        || vec![unitarity_v2(), v2_high_energy_transmission()],
        transfer_matrix_checks,
        pole_equivalence,
        || vec![flux_constant(), origin_conditions(), hybrid_continuity()],
        || vec![v4_envelope(), v5_small_z_tail(), v6_oracle_gluing()],
        || vec![numerov_order(), shooting_log_derivative(), linear_well()],
        moment_checks,
        cubic_checks,
        || vec![cross_grid_is_uniform()],
    ];
    jobs.par_iter().map(|j| j()).collect::<Vec<_>>().concat()
}

/// A measured quantity reported alongside the suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
    pub detail: String,
}

/// Quantities that are reported, not asserted.
pub fn diagnostics() -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let printed: Result<f64> = sweep(0.1, 8.0 * VALLEY.0, 200)
        .iter()
        .map(|&e| amplitudes_v2_as_printed(e, VALLEY.0, VALLEY.1).map(|r| r.unitarity_defect().abs()))
        .try_fold(0.0f64, |m, d| Ok(m.max(d?)));
    if let Ok(v) = printed {
        out.push(Diagnostic {
            name: "v2_quoted_closed_form_unitarity_defect".into(),
            value: v,
            detail: "max | |A|^2 - |B|^2 - 1 | of the quoted V2 closed form over E in [0.1, 40]".into(),
        });
    }
    if let (Ok(g4), Ok(g6)) = (v4_ground_state_grid(4.0), v4_ground_state_grid(6.0)) {
        if let (Ok(a), Ok(b)) = (
            moments(&g4, Observable::X, 2, 4.0),
            moments(&g6, Observable::X, 2, 6.0),
        ) {
            out.push(Diagnostic {
                name: "v4_x2_cutoff_dependence".into(),
                value: (b.value / a.value - 1.0).abs(),
                detail: format!(
                    "<x^2> = {:.6} at L = 4a, {:.6} at L = 6a (|psi|^2 ~ e^(-|x|/a) leaves a tail ~ L^2 e^(-L/a))",
                    a.value, b.value
                ),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn suite_passes() {
        let checks = super::run();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(checks.len() > 30);
    }
}
