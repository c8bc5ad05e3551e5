use super::quadrature::{adaptive_simpson, DEFAULT_MAX_DEPTH, DEFAULT_TOL};
use super::AllocationFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaReport {
    pub beta: f64,
    pub argmax_z: f64,
    /// max - min of the objective over the grid.
    pub spread: f64,
}

/// Evaluates `g(z) = 1 + f(1-z) + F(1) - F(z)` on a uniform grid with
/// `grid_size` cells and reports its maximum.
///
/// `F` is accumulated cell by cell so every node costs one short adaptive
/// integral.
pub fn beta_of(func: &AllocationFunction, grid_size: usize) -> Result<BetaReport> {
    if grid_size < 100 {
        return Err(Error::Domain(format!("grid size {grid_size} < 100")));
    }
    let g = |t: f64| func.unit_charge(t);
    let cell_tol = DEFAULT_TOL / grid_size as f64;
    let mut cumulative = Vec::with_capacity(grid_size + 1);
    cumulative.push(0.0);
    let mut acc = 0.0;
    for i in 0..grid_size {
        let a = i as f64 / grid_size as f64;
        let b = (i + 1) as f64 / grid_size as f64;
        acc += adaptive_simpson(&g, a, b, cell_tol, DEFAULT_MAX_DEPTH)?;
        cumulative.push(acc);
    }
    let total = acc;

    let mut best = f64::NEG_INFINITY;
    let mut worst = f64::INFINITY;
    let mut argmax = 0.0;
    for (i, &fz) in cumulative.iter().enumerate() {
        let z = i as f64 / grid_size as f64;
        let val = 1.0 + func.value(1.0 - z) + (total - fz);
        if val > best {
            best = val;
            argmax = z;
        }
        worst = worst.min(val);
    }
    Ok(BetaReport {
        beta: best,
        argmax_z: argmax,
        spread: best - worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::ALPHA;

    #[test]
    fn greedy_is_flat_two() {
        let r = beta_of(&AllocationFunction::greedy(), 1000).unwrap();
        assert!((r.beta - 2.0).abs() < 1e-12);
        assert!(r.spread < 1e-9);
    }

    #[test]
    fn family_member_is_flat() {
        let f = AllocationFunction::closed_form(1.1997).unwrap();
        let r = beta_of(&f, 2000).unwrap();
        assert!((r.beta - 1.9006).abs() < 5e-4, "{}", r.beta);
        assert!(r.spread < 1e-6);
    }

    #[test]
    fn linear_alpha_peaks_at_zero() {
        // g(z) = 2 + α - z + F(1) - F(z), decreasing, F(1) = α.
        let r = beta_of(&AllocationFunction::linear_alpha(), 1000).unwrap();
        assert_eq!(r.argmax_z, 0.0);
        assert!((r.beta - (2.0 + 2.0 * ALPHA)).abs() < 1e-9);
    }

    #[test]
    fn small_grid_rejected() {
        assert!(beta_of(&AllocationFunction::greedy(), 10).is_err());
    }
}
