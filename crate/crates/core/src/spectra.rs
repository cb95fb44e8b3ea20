//! Discrete energies defined by the Bessel-zero conditions, and the
//! corresponding wavefunctions for the six exponential potentials.
//!
//! The well family (V4, V5, V6) shares one set of energies: roots of
//! J'_{kappa a}(qa) = 0 (even) and J_{kappa a}(qa) = 0 (odd) with
//! kappa = sqrt(V0 - E). They are the special scattering states of V4, the
//! bound states of V5 and the hybrid states of V6. The valley family (V1, V2,
//! V3) likewise shares the roots of K'_{i kappa a}(qa) and K_{i kappa a}(qa)
//! with kappa = sqrt(E + V0).

use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::potentials::{Family, PotentialSpec};
use crate::roots::{bisect, interior_grid, scan_sign_changes, Bracket};
use crate::specfun::{bessel_i_imag_pair, bessel_jy, bessel_k_imag, sin_cos_pi};

/// Residual threshold relative to the local amplitude hypot(f, f').
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Domain(format!("unknown parity '{s}'"))),
        }
    }
}

/// The equation an energy level solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Condition {
    JPrimeZero,
    JZero,
    KPrimeZero,
    KZero,
    JNegPrimeZero,
    JNegZero,
    /// psi'(0) = 0 after inward integration (finite-difference solver)
    DpsiZeroAtOrigin,
    /// psi(0) = 0 after inward integration (finite-difference solver)
    PsiZeroAtOrigin,
}

impl Condition {
    pub fn parity(self) -> Parity {
        match self {
            Condition::JPrimeZero
            | Condition::KPrimeZero
            | Condition::JNegPrimeZero
            | Condition::DpsiZeroAtOrigin => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// The negative-order roots have no bound-state interpretation.
    pub fn is_physical(self) -> bool {
        !matches!(self, Condition::JNegPrimeZero | Condition::JNegZero)
    }

    pub fn name(self) -> &'static str {
        match self {
            Condition::JPrimeZero => "J_PRIME_ZERO",
            Condition::JZero => "J_ZERO",
            Condition::KPrimeZero => "K_PRIME_ZERO",
            Condition::KZero => "K_ZERO",
            Condition::JNegPrimeZero => "J_NEG_PRIME_ZERO",
            Condition::JNegZero => "J_NEG_ZERO",
            Condition::DpsiZeroAtOrigin => "DPSI_ZERO_AT_ORIGIN",
            Condition::PsiZeroAtOrigin => "PSI_ZERO_AT_ORIGIN",
        }
    }

    fn well(parity: Parity, nonphysical: bool) -> Self {
        match (parity, nonphysical) {
            (Parity::Even, false) => Condition::JPrimeZero,
            (Parity::Odd, false) => Condition::JZero,
            (Parity::Even, true) => Condition::JNegPrimeZero,
            (Parity::Odd, true) => Condition::JNegZero,
        }
    }

    fn valley(parity: Parity) -> Self {
        match parity {
            Parity::Even => Condition::KPrimeZero,
            Parity::Odd => Condition::KZero,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One refined root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub energy: f64,
    pub parity: Parity,
    pub condition: Condition,
    /// |condition function| / hypot(f, f') at the root
    pub residual: f64,
    pub bracket: (f64, f64),
}

impl EnergyLevel {
    pub fn is_physical(&self) -> bool {
        self.condition.is_physical()
    }
}

/// Scan and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// grid points across the search interval
    pub points: usize,
    /// relative bracket width at which bisection stops
    pub rel_width: f64,
    /// largest step in nu = kappa a for the valley family
    pub max_nu_step: f64,
    /// valley-family ceiling; `None` uses V0 (1 + 20/(qa)^2) + 50/a^2
    pub energy_ceiling: Option<f64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            points: 2000,
            rel_width: 1e-12,
            max_nu_step: 0.02,
            energy_ceiling: None,
        }
    }
}

impl ScanOptions {
    /// Same settings at half the production step, for completeness checks.
    pub fn refined(self) -> Self {
        ScanOptions {
            points: 2 * self.points + 1,
            max_nu_step: 0.5 * self.max_nu_step,
            ..self
        }
    }
}

/// Default valley-family energy ceiling V0 (1 + 20/(qa)^2) + 50/a^2.
pub fn default_valley_ceiling(v0: f64, a: f64) -> f64 {
    let qa2 = v0 * a * a;
    v0 * (1.0 + 20.0 / qa2) + 50.0 / (a * a)
}

fn check_va(v0: f64, a: f64) -> Result<()> {
    if !(v0.is_finite() && v0 > 0.0 && a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!(
            "V0 and a must be positive, got V0 = {v0}, a = {a}"
        )));
    }
    Ok(())
}

/// Condition function and its companion (for the residual scale) of the well family.
fn well_condition(v0: f64, a: f64, e: f64, cond: Condition) -> Result<(f64, f64)> {
    let nu = (v0 - e).max(0.0).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let order = if cond.is_physical() { nu } else { -nu };
    let r = bessel_jy(order, z0)?;
    Ok(match cond.parity() {
        Parity::Even => (r.jp, r.j),
        Parity::Odd => (r.j, r.jp),
    })
}

fn valley_condition(v0: f64, a: f64, e: f64, parity: Parity) -> Result<(f64, f64)> {
    let nu = (e + v0).sqrt() * a;
    let z0 = v0.sqrt() * a;
    let k = bessel_k_imag(nu, z0, false)?;
    let kp = bessel_k_imag(nu, z0, true)?;
    Ok(match parity {
        Parity::Even => (kp, k),
        Parity::Odd => (k, kp),
    })
}

/// Refines each bracket of `f` (a function of E) and applies the residual check.
pub(crate) fn refine_levels<F>(
    f: F,
    brackets: &[Bracket],
    condition: Condition,
    rel_width: f64,
) -> Result<Vec<EnergyLevel>>
where
    F: Fn(f64) -> Result<(f64, f64)> + Sync,
{
    let refined: Vec<Option<EnergyLevel>> = brackets
        .par_iter()
        .map(|b| {
            let e = bisect(|x| Ok(f(x)?.0), *b, rel_width, 1.0)?;
            let (v, w) = f(e)?;
            let residual = v.abs() / v.hypot(w).max(f64::MIN_POSITIVE);
            // a sign change that does not refine to a small residual is not a root
            Ok((residual < RESIDUAL_TOL).then_some(EnergyLevel {
                energy: e,
                parity: condition.parity(),
                condition,
                residual,
                bracket: (b.lo.min(b.hi), b.lo.max(b.hi)),
            }))
        })
        .collect::<Result<_>>()?;
    let mut levels: Vec<EnergyLevel> = refined.into_iter().flatten().collect();
    sort_dedup(&mut levels);
    Ok(levels)
}

pub(crate) fn sort_dedup(levels: &mut Vec<EnergyLevel>) {
    levels.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    levels.dedup_by(|b, a| (b.energy - a.energy).abs() < 1e-9 && b.condition == a.condition);
}

fn well_roots(
    v0: f64,
    a: f64,
    parity: Parity,
    nonphysical: bool,
    n_max: usize,
    opts: &ScanOptions,
) -> Result<Vec<EnergyLevel>> {
    check_va(v0, a)?;
    let cond = Condition::well(parity, nonphysical);
    let f = |e: f64| well_condition(v0, a, e, cond);
    let grid = interior_grid(0.0, v0, opts.points);
    let brackets = scan_sign_changes(|e| Ok(f(e)?.0), &grid)?;
    let mut levels = refine_levels(f, &brackets, cond, opts.rel_width)?;
    levels.truncate(n_max);
    Ok(levels)
}

/// Roots of J'_{kappa a}(qa) (even) or J_{kappa a}(qa) (odd) for E in (0, V0),
/// lowest `n_max` first. Possibly empty.
pub fn special_states_well_family(
    v0: f64,
    a: f64,
    parity: Parity,
    n_max: usize,
) -> Result<Vec<EnergyLevel>> {
    well_roots(v0, a, parity, false, n_max, &ScanOptions::default())
}

/// Roots of the negative-order conditions J'_{-kappa a}(qa), J_{-kappa a}(qa) on (0, V0).
pub fn nonphysical_states(
    v0: f64,
    a: f64,
    parity: Parity,
    n_max: usize,
) -> Result<Vec<EnergyLevel>> {
    well_roots(v0, a, parity, true, n_max, &ScanOptions::default())
}

/// Well-family roots with explicit scan settings.
pub fn well_family_with(
    v0: f64,
    a: f64,
    parity: Parity,
    nonphysical: bool,
    n_max: usize,
    opts: &ScanOptions,
) -> Result<Vec<EnergyLevel>> {
    well_roots(v0, a, parity, nonphysical, n_max, opts)
}

/// All valley-family roots of one parity with 0 < E <= ceiling.
pub fn valley_family_with(
    v0: f64,
    a: f64,
    parity: Parity,
    opts: &ScanOptions,
) -> Result<Vec<EnergyLevel>> {
    check_va(v0, a)?;
    let ceiling = opts
        .energy_ceiling
        .unwrap_or_else(|| default_valley_ceiling(v0, a));
    if ceiling <= 0.0 {
        return Ok(Vec::new());
    }
    let cond = Condition::valley(parity);
    let nu_lo = v0.sqrt() * a;
    let nu_hi = (ceiling + v0).sqrt() * a;
    let n = opts
        .points
        .max(((nu_hi - nu_lo) / opts.max_nu_step).ceil() as usize);
    let nu_grid = interior_grid(nu_lo, nu_hi, n);
    let e_of_nu = |nu: f64| (nu / a) * (nu / a) - v0;
    let mut e_grid: Vec<f64> = nu_grid.iter().map(|&nu| e_of_nu(nu)).collect();
    e_grid.push(ceiling);
    let f = |e: f64| valley_condition(v0, a, e, parity);
    let brackets = scan_sign_changes(|e| Ok(f(e)?.0), &e_grid)?;
    refine_levels(f, &brackets, cond, opts.rel_width)
}

/// Lowest `n_max` roots of K'_{i kappa a}(qa) (even) or K_{i kappa a}(qa) (odd), E > 0.
/// Fails with `ScanExhausted` if the default ceiling holds fewer than `n_max`.
pub fn special_states_valley_family(
    v0: f64,
    a: f64,
    parity: Parity,
    n_max: usize,
) -> Result<Vec<EnergyLevel>> {
    let opts = ScanOptions::default();
    let mut levels = valley_family_with(v0, a, parity, &opts)?;
    if levels.len() < n_max {
        return Err(Error::ScanExhausted {
            found: levels.len(),
            wanted: n_max,
            ceiling: default_valley_ceiling(v0, a),
        });
    }
    levels.truncate(n_max);
    Ok(levels)
}

/// Levels of either or both parities for an exponential family, merged and
/// sorted. `n_max = None` returns every root found in the search range.
pub fn levels_for(
    spec: &PotentialSpec,
    parity: Option<Parity>,
    n_max: Option<usize>,
    nonphysical: bool,
    opts: &ScanOptions,
) -> Result<Vec<EnergyLevel>> {
    let parities: Vec<Parity> = match parity {
        Some(p) => vec![p],
        None => vec![Parity::Even, Parity::Odd],
    };
    let mut all = Vec::new();
    if spec.family.is_well_family() {
        for p in parities {
            all.extend(well_roots(spec.v0, spec.a, p, nonphysical, usize::MAX, opts)?);
        }
    } else if spec.family.is_valley_family() {
        if nonphysical {
            return Err(Error::Incompatible(
                "negative-order roots are defined for the V4/V5/V6 family only".into(),
            ));
        }
        for p in parities {
            all.extend(valley_family_with(spec.v0, spec.a, p, opts)?);
        }
    } else {
        return Err(Error::Incompatible(format!(
            "{} levels come from the finite-difference solver",
            spec.family
        )));
    }
    sort_dedup(&mut all);
    if let Some(n) = n_max {
        if all.len() < n && spec.family.is_valley_family() {
            return Err(Error::ScanExhausted {
                found: all.len(),
                wanted: n,
                ceiling: opts
                    .energy_ceiling
                    .unwrap_or_else(|| default_valley_ceiling(spec.v0, spec.a)),
            });
        }
        all.truncate(n);
    }
    Ok(all)
}

/// Sampled wavefunction on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionGrid {
    pub xs: Vec<f64>,
    pub psi: Vec<f64>,
    /// `None` for raw integrations with no parity meaning
    pub parity: Option<Parity>,
    pub normalized: bool,
    pub sign_flip_at_origin: bool,
    pub energy: f64,
}

impl WavefunctionGrid {
    pub fn step(&self) -> f64 {
        if self.xs.len() < 2 {
            0.0
        } else {
            self.xs[1] - self.xs[0]
        }
    }

    /// Trapezoid ∫ |psi|^2 dx over the grid.
    pub fn norm_sq(&self) -> f64 {
        trapezoid(&self.psi.iter().map(|p| p * p).collect::<Vec<_>>(), self.step())
    }

    /// Linear interpolation of psi at x (clamped to the grid).
    pub fn value_at(&self, x: f64) -> f64 {
        let h = self.step();
        if h == 0.0 {
            return self.psi.first().copied().unwrap_or(0.0);
        }
        let t = ((x - self.xs[0]) / h).clamp(0.0, (self.xs.len() - 1) as f64);
        let i = (t.floor() as usize).min(self.xs.len() - 2);
        let f = t - i as f64;
        self.psi[i] * (1.0 - f) + self.psi[i + 1] * f
    }

    /// Scales psi so that the trapezoid norm is one.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sq();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain(format!("cannot normalise: norm^2 = {n}")));
        }
        let s = 1.0 / n.sqrt();
        self.psi.iter_mut().for_each(|p| *p *= s);
        self.normalized = true;
        Ok(())
    }
}

/// Trapezoid rule on uniformly spaced samples.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => h * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}

/// Uniform grid of n points on [x_min, x_max].
pub fn uniform_grid(x_min: f64, x_max: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
        return Err(Error::Domain(format!(
            "need n >= 2 and x_min < x_max, got n = {n}, [{x_min}, {x_max}]"
        )));
    }
    let h = (x_max - x_min) / (n - 1) as f64;
    Ok((0..n).map(|i| x_min + h * i as f64).collect())
}

const NEAR_INTEGER: f64 = 1e-6;

/// Value and z-derivative of the V4-type standing wave built from J_{±nu}
/// (or J_nu, Y_nu when nu is within 1e-6 of an integer), matched at z0 so that
/// the even combination has zero slope and the odd one vanishes there.
fn well_standing(nu: f64, z0: f64, z: f64, parity: Parity) -> Result<(f64, f64)> {
    let near_int = (nu - nu.round()).abs() < NEAR_INTEGER;
    let (a0, b0, az, bz) = if near_int {
        let r0 = bessel_jy(nu, z0)?;
        let rz = bessel_jy(nu, z)?;
        // Y_nu replaces J_{-nu}; the sign keeps continuity with -sin(nu pi) times this form
        let (s, _) = sin_cos_pi(nu);
        let sg = if s > 0.0 { -1.0 } else { 1.0 };
        (
            (r0.j, r0.jp),
            (sg * r0.y, sg * r0.yp),
            (rz.j, rz.jp),
            (sg * rz.y, sg * rz.yp),
        )
    } else {
        let p0 = bessel_jy(nu, z0)?;
        let m0 = bessel_jy(-nu, z0)?;
        let pz = bessel_jy(nu, z)?;
        let mz = bessel_jy(-nu, z)?;
        ((p0.j, p0.jp), (m0.j, m0.jp), (pz.j, pz.jp), (mz.j, mz.jp))
    };
    // a = J_nu, b = J_{-nu}
    Ok(match parity {
        Parity::Even => (
            b0.1 * az.0 - a0.1 * bz.0,
            b0.1 * az.1 - a0.1 * bz.1,
        ),
        Parity::Odd => (b0.0 * az.0 - a0.0 * bz.0, b0.0 * az.1 - a0.0 * bz.1),
    })
}

/// Value and z-derivative of the V2-type standing wave from I_{±i nu}:
/// even: Im(conj(I'(z0)) I(z)), odd: Im(conj(I(z0)) I(z)).
fn valley_standing(nu: f64, z0: f64, z: f64, parity: Parity) -> Result<(f64, f64)> {
    let (i0, ip0) = bessel_i_imag_pair(nu, z0)?;
    let (iz, ipz) = bessel_i_imag_pair(nu, z)?;
    let c = match parity {
        Parity::Even => ip0.conj(),
        Parity::Odd => i0.conj(),
    };
    Ok(((c * iz).im, (c * ipz).im))
}

/// J_{order}(z) and its z-derivative, with J -> 0 as z -> 0 for positive order.
fn j_profile(order: f64, z: f64) -> Result<(f64, f64)> {
    if z < 1e-300 {
        return if order > 0.0 {
            Ok((0.0, 0.0))
        } else {
            Err(Error::Domain("J of non-positive order at z = 0".into()))
        };
    }
    let r = bessel_jy(order, z)?;
    Ok((r.j, r.jp))
}

/// K_{i nu}(z) and its z-derivative, zero once the value underflows.
fn k_profile(nu: f64, z: f64) -> Result<(f64, f64)> {
    if z > 700.0 {
        return Ok((0.0, 0.0));
    }
    Ok((bessel_k_imag(nu, z, false)?, bessel_k_imag(nu, z, true)?))
}

fn compatible(family: Family, cond: Condition) -> bool {
    match family {
        Family::V4 | Family::V5 => matches!(
            cond,
            Condition::JPrimeZero | Condition::JZero | Condition::JNegPrimeZero | Condition::JNegZero
        ),
        Family::V6 => matches!(cond, Condition::JPrimeZero | Condition::JZero),
        Family::V1 | Family::V2 | Family::V3 => {
            matches!(cond, Condition::KPrimeZero | Condition::KZero)
        }
        _ => false,
    }
}

/// Glued profile of a hybrid potential: value/derivative pairs of the left
/// and right pieces at x = 0 give the scale applied to the left piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlueReport {
    /// factor multiplying the left piece
    pub scale: f64,
    /// mismatch of the quantity not used for matching, relative to the
    /// right piece's |psi(0)| + a |psi'(0)| ... scale
    pub mismatch: f64,
}

fn glue(left: (f64, f64), right: (f64, f64), parity: Parity, a: f64) -> GlueReport {
    // values are psi, derivatives are d psi/dx
    let (scale, mismatch) = match parity {
        Parity::Even => {
            let s = right.0 / left.0;
            (s, (right.1 - s * left.1).abs() * a)
        }
        Parity::Odd => {
            let s = right.1 / left.1;
            (s, (right.0 - s * left.0).abs())
        }
    };
    let norm = right.0.abs() + a * right.1.abs();
    GlueReport {
        scale,
        mismatch: mismatch / norm.max(f64::MIN_POSITIVE),
    }
}

/// Left/right x-derivative data of the hybrid pieces at x = 0.
pub fn hybrid_glue(spec: &PotentialSpec, level: &EnergyLevel) -> Result<GlueReport> {
    let p = spec.wave_params(level.energy)?;
    let a = spec.a;
    match spec.family {
        Family::V6 => {
            // left: z = qa e^{-x/a}, dz/dx = -z/a; right: J_nu(qa e^{-x/a})
            let (lv, ld) = well_standing(p.nu, p.z0, p.z0, level.parity)?;
            let (rv, rd) = j_profile(p.nu, p.z0)?;
            Ok(glue((lv, -p.z0 / a * ld), (rv, -p.z0 / a * rd), level.parity, a))
        }
        Family::V3 => {
            // left: K_{i nu}(qa e^{-x/a}); right: I-series standing wave at z = qa e^{-x/a}
            let (lv, ld) = k_profile(p.nu, p.z0)?;
            let (rv, rd) = valley_standing(p.nu, p.z0, p.z0, level.parity)?;
            // report relative to the left piece by swapping roles
            let g = glue((rv, -p.z0 / a * rd), (lv, -p.z0 / a * ld), level.parity, a);
            Ok(GlueReport {
                scale: 1.0 / g.scale,
                mismatch: g.mismatch,
            })
        }
        f => Err(Error::Incompatible(format!("{f} is not a hybrid potential"))),
    }
}

/// Reconstructs psi for `level` on a uniform grid and normalises it (trapezoid
/// norm over the requested grid).
///
/// Odd states are stored as the true odd function. With `cosmetic_sign_flip`
/// the x < 0 half of a symmetric odd state is negated, which gives the raw
/// half-line Bessel profile f(|x|) (with its cusp at the origin).
pub fn wavefunction(
    spec: &PotentialSpec,
    level: &EnergyLevel,
    x_min: f64,
    x_max: f64,
    n_points: usize,
    cosmetic_sign_flip: bool,
) -> Result<WavefunctionGrid> {
    if !compatible(spec.family, level.condition) {
        return Err(Error::Incompatible(format!(
            "level condition {} does not belong to {}",
            level.condition, spec.family
        )));
    }
    let xs = uniform_grid(x_min, x_max, n_points)?;
    let p = spec.wave_params(level.energy)?;
    let (nu, z0, a) = (p.nu, p.z0, spec.a);
    let parity = level.parity;
    let odd_sign = |x: f64| {
        if parity == Parity::Odd && x < 0.0 {
            -1.0
        } else {
            1.0
        }
    };
    let glue_scale = match spec.family {
        Family::V3 | Family::V6 => hybrid_glue(spec, level)?.scale,
        _ => 1.0,
    };
    let order = if level.is_physical() { nu } else { -nu };

    let eval = |x: f64| -> Result<f64> {
        let ax = x.abs();
        Ok(match spec.family {
            Family::V4 => odd_sign(x) * well_standing(order.abs(), z0, z0 * (ax / a).exp(), parity)?.0,
            Family::V5 => odd_sign(x) * j_profile(order, z0 * (-ax / a).exp())?.0,
            Family::V6 => {
                let z = z0 * (-x / a).exp();
                if x < 0.0 {
                    glue_scale * well_standing(nu, z0, z, parity)?.0
                } else {
                    j_profile(nu, z)?.0
                }
            }
            Family::V1 => odd_sign(x) * k_profile(nu, z0 * (ax / a).exp())?.0,
            Family::V2 => odd_sign(x) * valley_standing(nu, z0, z0 * (-ax / a).exp(), parity)?.0,
            Family::V3 => {
                let z = z0 * (-x / a).exp();
                if x < 0.0 {
                    glue_scale * k_profile(nu, z)?.0
                } else {
                    valley_standing(nu, z0, z, parity)?.0
                }
            }
            f => return Err(Error::Incompatible(format!("{f} has no Bessel wavefunction"))),
        })
    };
    let mut psi: Vec<f64> = xs.par_iter().map(|&x| eval(x)).collect::<Result<_>>()?;

    let flip = cosmetic_sign_flip && parity == Parity::Odd && spec.family.is_symmetric();
    if flip {
        for (p, &x) in psi.iter_mut().zip(&xs) {
            if x < 0.0 {
                *p = -*p;
            }
        }
    }
    let mut grid = WavefunctionGrid {
        xs,
        psi,
        parity: Some(parity),
        normalized: false,
        sign_flip_at_origin: flip,
        energy: level.energy,
    };
    grid.normalize()?;
    Ok(grid)
}
