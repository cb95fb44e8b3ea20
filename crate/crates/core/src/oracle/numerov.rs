use crate::error::{Error, Result};
use crate::potentials::PotentialSpec;
use crate::spectra::WavefunctionGrid;

const OVERFLOW: f64 = 1e300;
const RESCALE_AT: f64 = 1e100;

/// Number of steps of size `step` from `from` to `to`, if it divides the interval.
pub(crate) fn step_count(from: f64, to: f64, step: f64) -> Result<usize> {
    if !(step > 0.0) || !from.is_finite() || !to.is_finite() || from == to {
        return Err(Error::Domain(format!(
            "need a positive step and a non-empty interval, got step = {step}, [{from}, {to}]"
        )));
    }
    let n = (to - from).abs() / step;
    let r = n.round();
    if (n - r).abs() > 1e-9 * r.max(1.0) {
        return Err(Error::Domain(format!(
            "step {step} does not divide the interval [{from}, {to}]"
        )));
    }
    Ok(r as usize)
}

/// Numerov recursion from (psi0, psi1) at x0, x0 + h over `n` steps (h signed).
/// Returns psi at x0 + k h, k = 0..=n. With `rescale`, the history is scaled
/// down whenever |psi| passes 1e100; otherwise passing 1e300 is an error.
#[allow(clippy::too_many_arguments)]
pub(crate) fn numerov_run<V: Fn(f64) -> f64>(
    v: &V,
    energy: f64,
    x0: f64,
    h: f64,
    n: usize,
    psi0: f64,
    psi1: f64,
    rescale: bool,
) -> Result<Vec<f64>> {
    let h2 = h * h / 12.0;
    let w = |x: f64| 1.0 - h2 * (v(x) - energy);
    let mut psi = Vec::with_capacity(n + 1);
    psi.push(psi0);
    if n == 0 {
        return Ok(psi);
    }
    psi.push(psi1);
    let mut w_prev = w(x0);
    let mut w_cur = w(x0 + h);
    for k in 1..n {
        let w_next = w(x0 + (k + 1) as f64 * h);
        let next = ((12.0 - 10.0 * w_cur) * psi[k] - w_prev * psi[k - 1]) / w_next;
        if !next.is_finite() || next.abs() > OVERFLOW {
            return Err(Error::Overflow(format!(
                "|psi| exceeded 1e300 at x = {}; rescale the start values",
                x0 + (k + 1) as f64 * h
            )));
        }
        psi.push(next);
        if rescale && next.abs() > RESCALE_AT {
            psi.iter_mut().for_each(|p| *p /= RESCALE_AT);
        }
        w_prev = w_cur;
        w_cur = w_next;
    }
    Ok(psi)
}

/// Integrates psi'' = (V - E) psi from `x_from` to `x_to` (either direction)
/// with the first two samples given. The grid is returned in ascending x.
pub fn numerov_integrate_fn<V: Fn(f64) -> f64>(
    v: V,
    energy: f64,
    x_from: f64,
    x_to: f64,
    step: f64,
    psi0: f64,
    psi1: f64,
) -> Result<WavefunctionGrid> {
    let n = step_count(x_from, x_to, step)?;
    let h = (x_to - x_from).signum() * step;
    let mut psi = numerov_run(&v, energy, x_from, h, n, psi0, psi1, false)?;
    let mut xs: Vec<f64> = (0..=n).map(|k| x_from + k as f64 * h).collect();
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

/// `numerov_integrate_fn` for one of the catalogued potentials.
pub fn numerov_integrate(
    spec: &PotentialSpec,
    energy: f64,
    x_from: f64,
    x_to: f64,
    step: f64,
    psi0: f64,
    psi1: f64,
) -> Result<WavefunctionGrid> {
    numerov_integrate_fn(|x| spec.evaluate(x), energy, x_from, x_to, step, psi0, psi1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::Family;

    fn free_error(step: f64) -> f64 {
        let g = numerov_integrate_fn(|_| 0.0, 1.0, 0.0, 10.0, step, 0.0, step.sin()).unwrap();
        g.xs.iter()
            .zip(&g.psi)
            .map(|(x, p)| (p - x.sin()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn free_particle_sine() {
        assert!(free_error(1e-3) < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        let e: Vec<f64> = [0.2, 0.1, 0.05, 0.025].iter().map(|&h| free_error(h)).collect();
        for w in e.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio / 16.0 - 1.0).abs() < 0.2, "ratio {ratio} in {e:?}");
        }
    }

    #[test]
    fn backwards_integration_is_ascending() {
        let g = numerov_integrate_fn(|_| 0.0, 1.0, 1.0, 0.0, 0.01, 1f64.sin(), 0.99f64.sin()).unwrap();
        assert_eq!(g.xs[0], 0.0);
        assert!(g.psi[0].abs() < 1e-9);
    }

    #[test]
    fn overflow_and_step_errors() {
        let spec = PotentialSpec::new(Family::V1, 5.0, 1.0).unwrap();
        let r = numerov_integrate(&spec, 0.0, 0.0, 10.0, 1e-3, 1.0, 1.001);
        assert!(matches!(r, Err(Error::Overflow(_))));
        assert!(numerov_integrate(&spec, 0.0, 0.0, 1.0, 0.3, 1.0, 1.0).is_err());
    }
}
