//! Sign-change scanning and bisection on a scalar function.

use rayon::prelude::*;

use crate::error::Result;

/// A bracket [lo, hi] with the function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Evaluates `f` on `grid` (in parallel, results kept in grid order) and
/// returns every adjacent pair where the sign changes. A grid value that is
/// exactly zero yields one bracket around it.
pub fn scan_sign_changes<F>(f: F, grid: &[f64]) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let values: Vec<f64> = grid.par_iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < values.len() {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 && i == 0 {
            out.push(Bracket {
                lo: grid[0],
                hi: grid[1],
                f_lo: a,
                f_hi: b,
            });
        } else if b == 0.0 {
            let j = (i + 2).min(values.len() - 1);
            out.push(Bracket {
                lo: grid[i],
                hi: grid[j],
                f_lo: a,
                f_hi: values[j],
            });
            i = j;
            continue;
        } else if a.signum() != b.signum() && a != 0.0 {
            out.push(Bracket {
                lo: grid[i],
                hi: grid[i + 1],
                f_lo: a,
                f_hi: b,
            });
        }
        i += 1;
    }
    Ok(out)
}

/// Bisection until the bracket is narrower than `rel_width * max(|lo|, |hi|, abs_floor)`.
/// Returns the midpoint of the final bracket.
pub fn bisect<F>(f: F, bracket: Bracket, rel_width: f64, abs_floor: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        ..
    } = bracket;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(hi);
    }
    for _ in 0..200 {
        let scale = lo.abs().max(hi.abs()).max(abs_floor);
        if (hi - lo).abs() <= rel_width * scale {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `n` points uniformly spaced strictly inside (lo, hi).
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n + 1) as f64;
    (1..=n).map(|i| lo + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_zeros_of_sine() {
        let grid = interior_grid(0.0, 20.0, 400);
        let br = scan_sign_changes(|x| Ok(x.sin()), &grid).unwrap();
        assert_eq!(br.len(), 6);
        for (k, b) in br.iter().enumerate() {
            let r = bisect(|x| Ok(x.sin()), *b, 1e-14, 1.0).unwrap();
            assert!((r - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_zero_on_grid_counted_once() {
        let grid = vec![-1.0, 0.0, 1.0, 2.0];
        let br = scan_sign_changes(Ok, &grid).unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(bisect(Ok, br[0], 1e-12, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn errors_propagate() {
        let grid = interior_grid(0.0, 1.0, 10);
        let r = scan_sign_changes(|_| Err(crate::Error::Domain("x".into())), &grid);
        assert!(r.is_err());
    }
}
