use std::f64::consts::PI;

use besselwell::potentials::{Family, PotentialSpec};
use besselwell::roots::{bisect, scan_sign_changes, Bracket};
use besselwell::scattering::{amplitudes_v2, amplitudes_v4, flux, probability_flux_at, reflection_transmission, transfer_matrix};
use besselwell::specfun::{bessel_jy, gamma_complex, hankel, HankelKind};
use besselwell::spectra::{levels_for, ScanOptions};
use num_complex::Complex64;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn v4_amplitudes_unitary(v0 in 1.0..80.0f64, a in 0.3..2.0f64, frac in 0.01..0.99f64) {
        let r = amplitudes_v4(frac * v0, v0, a).unwrap();
        prop_assert!(r.unitarity_defect().abs() < 1e-8);
        let (rr, tt) = reflection_transmission(&r).unwrap();
        prop_assert!((rr + tt - 1.0).abs() < 1e-8);
        prop_assert!(r.amp_b.re.abs() <= 1e-10 * r.amp_b.norm());
    }

    #[test]
    fn v2_amplitudes_unitary(v0 in 0.5..30.0f64, a in 0.3..2.0f64, e in 0.05..60.0f64) {
        let r = amplitudes_v2(e, v0, a).unwrap();
        prop_assert!(r.unitarity_defect().abs() < 1e-8, "defect {}", r.unitarity_defect());
        let (rr, tt) = reflection_transmission(&r).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&rr) && (0.0..=1.0 + 1e-12).contains(&tt));
    }

    #[test]
    fn transfer_matrix_unimodular(v0 in 1.0..80.0f64, frac in 0.01..0.99f64) {
        let m = transfer_matrix(&amplitudes_v4(frac * v0, v0, 1.0).unwrap());
        prop_assert!((m.det() - 1.0).norm() < 1e-9);
    }

    #[test]
    fn hankel_flux_is_constant(nu in 0.0..12.0f64, a in 0.2..4.0f64, z in 0.2..120.0f64) {
        let f = probability_flux_at(nu, a, Complex64::new(1.0, 0.0), z).unwrap();
        prop_assert!((f - 2.0 / (PI * a)).abs() < 1e-10 * (1.0 + 2.0 / (PI * a)));
    }

    #[test]
    fn flux_scales_with_amplitude(re in -3.0..3.0f64, im in -3.0..3.0f64, z in 0.5..30.0f64) {
        let amp = Complex64::new(re, im);
        let f = probability_flux_at(1.7, 1.0, amp, z).unwrap();
        prop_assert!((f - amp.norm_sqr() * 2.0 / PI).abs() < 1e-10 * (1.0 + amp.norm_sqr()));
    }

    #[test]
    fn flux_of_real_function_vanishes(p in -5.0..5.0f64, d in -5.0..5.0f64) {
        prop_assert_eq!(flux(Complex64::new(p, 0.0), Complex64::new(d, 0.0)), 0.0);
    }

    #[test]
    fn hankel_wronskian(nu in 0.0..10.0f64, x in 0.3..60.0f64) {
        let h1 = hankel(HankelKind::First, nu, x, false).unwrap();
        let h2 = hankel(HankelKind::Second, nu, x, false).unwrap();
        let h1p = hankel(HankelKind::First, nu, x, true).unwrap();
        let h2p = hankel(HankelKind::Second, nu, x, true).unwrap();
        let w = h1 * h2p - h1p * h2;
        let expected = Complex64::new(0.0, -4.0 / (PI * x));
        prop_assert!((w - expected).norm() <= 1e-9 * (1.0 + h1.norm() * h1p.norm() * x));
    }

    #[test]
    fn bessel_wronskian(nu in 0.0..15.0f64, x in 0.3..80.0f64) {
        let r = bessel_jy(nu, x).unwrap();
        let w = r.j * r.yp - r.y * r.jp;
        let expected = 2.0 / (PI * x);
        prop_assert!((w / expected - 1.0).abs() < 1e-9 * (1.0 + r.y.abs() * r.yp.abs() * x));
    }

    #[test]
    fn gamma_modulus_on_imaginary_line(y in 0.01..20.0f64) {
        let g = gamma_complex(Complex64::new(1.0, y)).unwrap();
        let expected = PI * y / (PI * y).sinh();
        prop_assert!((g.norm_sqr() - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn bisection_stays_in_bracket(root in -5.0..5.0f64, width in 0.1..3.0f64) {
        let f = |x: f64| Ok((x - root).atan());
        let (lo, hi) = (root - width, root + 0.7 * width);
        let b = Bracket { lo, hi, f_lo: (lo - root).atan(), f_hi: (hi - root).atan() };
        let x = bisect(f, b, 1e-13, 0.0).unwrap();
        prop_assert!(x >= lo && x <= hi);
        prop_assert!((x - root).abs() < 1e-11 * (1.0 + root.abs()));
    }

    #[test]
    fn sign_scan_finds_every_simple_root(k in 1usize..12) {
        let grid: Vec<f64> = (0..=4000).map(|i| 1e-3 + i as f64 * (k as f64 * PI) / 4000.0).collect();
        let brackets = scan_sign_changes(|x: f64| Ok(x.sin()), &grid).unwrap();
        prop_assert_eq!(brackets.len(), k - 1 + usize::from((k as f64 * PI) < grid[4000]));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn spectra_sorted_and_refined(v0 in 5.0..80.0f64, a in 0.5..1.5f64, well in any::<bool>()) {
        let family = if well { Family::V5 } else { Family::V1 };
        let spec = PotentialSpec::new(family, v0, a).unwrap();
        let levels = levels_for(&spec, None, None, false, &ScanOptions::default()).unwrap();
        for w in levels.windows(2) {
            prop_assert!(w[0].energy < w[1].energy);
            prop_assert!(w[0].parity != w[1].parity, "parities alternate");
        }
        for l in &levels {
            prop_assert!(l.bracket.0 <= l.energy && l.energy <= l.bracket.1);
            prop_assert!(l.residual < 1e-10);
            if well {
                prop_assert!(l.energy > 0.0 && l.energy < v0);
            }
        }
    }
}
