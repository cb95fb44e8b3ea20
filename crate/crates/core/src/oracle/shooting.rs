use rayon::prelude::*;

use super::numerov::{numerov_run, step_count};
use crate::error::{Error, Result};
use crate::potentials::PotentialSpec;
use crate::roots::{bisect, interior_grid, scan_sign_changes};
use crate::spectra::{sort_dedup, Condition, EnergyLevel, WavefunctionGrid};

/// Condition imposed at the matching point after inward integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Matching {
    PsiZeroAtOrigin,
    DpsiZeroAtOrigin,
}

impl Matching {
    pub fn condition(self) -> Condition {
        match self {
            Matching::PsiZeroAtOrigin => Condition::PsiZeroAtOrigin,
            Matching::DpsiZeroAtOrigin => Condition::DpsiZeroAtOrigin,
        }
    }
}

/// Inward integration from `x_start` (decaying side) to the matching point `x_end`.
pub struct ShootingProblem<V> {
    pub potential: V,
    pub matching: Matching,
    pub x_start: f64,
    pub x_end: f64,
    pub grid_step: f64,
    /// length scale for the matching functional psi' * scale
    pub scale: f64,
}

impl ShootingProblem<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    /// Default grid for an exponential family: step 1e-3 a, start at
    /// a ln(40 / qa) + 4a (at least 4a), matching at the origin.
    pub fn for_spec(spec: PotentialSpec, matching: Matching) -> Self {
        let a = spec.a;
        let step = 1e-3 * a;
        let z0 = spec.v0.sqrt() * a;
        let start = (a * (40.0 / z0).ln() + 4.0 * a).max(4.0 * a);
        ShootingProblem {
            potential: Box::new(move |x| spec.evaluate(x)),
            matching,
            x_start: (start / step).ceil() * step,
            x_end: 0.0,
            grid_step: step,
            scale: a,
        }
    }
}

impl<V: Fn(f64) -> f64 + Sync> ShootingProblem<V> {
    fn validate(&self) -> Result<usize> {
        if !(self.scale > 0.0) {
            return Err(Error::Domain("matching scale must be positive".into()));
        }
        let n = step_count(self.x_start, self.x_end, self.grid_step)?;
        if n < 2 {
            return Err(Error::Domain("need at least two steps to the matching point".into()));
        }
        Ok(n)
    }

    /// psi at x_end + k s for k = 0, 1, 2 (s signed towards x_start), from a
    /// WKB-seeded inward run. Index 0 is the matching point.
    fn end_samples(&self, energy: f64) -> Result<([f64; 3], f64)> {
        let n = self.validate()?;
        let h = (self.x_end - self.x_start).signum() * self.grid_step;
        let v = &self.potential;
        let kappa = (v(self.x_start) - energy).max(0.0).sqrt();
        let psi0 = 1.0;
        let psi1 = (kappa * self.grid_step).exp();
        let run = numerov_run(v, energy, self.x_start, h, n, psi0, psi1, true)?;
        Ok(([run[n], run[n - 1], run[n - 2]], -h))
    }

    /// (psi(x_end), psi'(x_end)) up to a common positive factor. The derivative
    /// uses only samples on the integration side: psi'' = (V - E) psi is
    /// integrated against a quadratic fit, which keeps it O(h^4) at a kink.
    pub fn end_values(&self, energy: f64) -> Result<(f64, f64)> {
        let (p, s) = self.end_samples(energy)?;
        let v = &self.potential;
        let g = |k: usize| (v(self.x_end + k as f64 * s) - energy) * p[k];
        let d = (p[1] - p[0] - s * s * (7.0 * g(0) + 6.0 * g(1) - g(2)) / 24.0) / s;
        Ok((p[0], d))
    }

    /// Matching functional in [-1, 1]: psi or scale*psi' divided by their hypot.
    pub fn functional(&self, energy: f64) -> Result<f64> {
        let (p, d) = self.end_values(energy)?;
        let d = d * self.scale;
        let norm = p.hypot(d);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Accuracy(format!(
                "degenerate shooting data at E = {energy}"
            )));
        }
        Ok(match self.matching {
            Matching::PsiZeroAtOrigin => p / norm,
            Matching::DpsiZeroAtOrigin => d / norm,
        })
    }
}

/// Refines the eigenvalue on [e_lo, e_hi] by bisection to relative width 1e-10.
pub fn eigen_shoot<V: Fn(f64) -> f64 + Sync>(
    problem: &ShootingProblem<V>,
    e_lo: f64,
    e_hi: f64,
) -> Result<EnergyLevel> {
    let f_lo = problem.functional(e_lo)?;
    let f_hi = problem.functional(e_hi)?;
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(Error::NoSignChange { lo: e_lo, hi: e_hi });
    }
    let bracket = crate::roots::Bracket {
        lo: e_lo,
        hi: e_hi,
        f_lo,
        f_hi,
    };
    let e = bisect(|x| problem.functional(x), bracket, 1e-10, 1e-3)?;
    let cond = problem.matching.condition();
    Ok(EnergyLevel {
        energy: e,
        parity: cond.parity(),
        condition: cond,
        residual: problem.functional(e)?.abs(),
        bracket: (e_lo.min(e_hi), e_lo.max(e_hi)),
    })
}

/// All eigenvalues of one matching type on (e_lo, e_hi), from a scan of
/// `points` energies followed by `eigen_shoot` on each bracket.
pub fn shoot_levels<V: Fn(f64) -> f64 + Sync>(
    problem: &ShootingProblem<V>,
    e_lo: f64,
    e_hi: f64,
    points: usize,
) -> Result<Vec<EnergyLevel>> {
    let grid = interior_grid(e_lo, e_hi, points);
    let brackets = scan_sign_changes(|e| problem.functional(e), &grid)?;
    let mut levels: Vec<EnergyLevel> = brackets
        .par_iter()
        .map(|b| eigen_shoot(problem, b.lo, b.hi))
        .collect::<Result<_>>()?;
    sort_dedup(&mut levels);
    Ok(levels)
}

/// Profile of the solution that decays beyond `x_start`, integrated from
/// `x_start` to `x_end` (through any matching point) and returned in
/// ascending x, unnormalised.
pub fn decaying_profile<V: Fn(f64) -> f64>(
    potential: V,
    energy: f64,
    x_start: f64,
    x_end: f64,
    step: f64,
) -> Result<WavefunctionGrid> {
    let n = step_count(x_start, x_end, step)?;
    let h = (x_end - x_start).signum() * step;
    let kappa = (potential(x_start) - energy).max(0.0).sqrt();
    let mut psi = numerov_run(&potential, energy, x_start, h, n, 1.0, (kappa * step).exp(), true)?;
    let mut xs: Vec<f64> = (0..=n).map(|k| x_start + k as f64 * h).collect();
    if h < 0.0 {
        psi.reverse();
        xs.reverse();
    }
    Ok(WavefunctionGrid {
        xs,
        psi,
        parity: None,
        normalized: false,
        sign_flip_at_origin: false,
        energy,
    })
}
