//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: u32 = 40;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Uses the classical Richardson-corrected Simpson recursion; fails with
/// [`Error::Quadrature`] if a subinterval still misses its share of the
/// tolerance at `max_depth`.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::Quadrature { a, b, tol, depth });
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    // Interval too small to split further in floating point: accept.
    if m <= a || m >= b || lm <= a || rm >= b {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature { a, b, tol, depth: DEFAULT_MAX_DEPTH });
    }
    let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok(l + r)
}

/// Uniform-grid table of a cumulative integral `F(x) = ∫_0^x g`.
#[derive(Debug, Clone)]
pub struct QuadratureTable {
    /// Number of cells; the grid has `cells + 1` nodes.
    pub cells: usize,
    pub values: Vec<f64>,
    pub tol: f64,
}

impl QuadratureTable {
    pub fn build<F>(g: &F, cells: usize, tol: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + ?Sized,
    {
        let cell_tol = tol / cells as f64;
        let mut values = Vec::with_capacity(cells + 1);
        values.push(0.0);
        let mut acc = 0.0;
        for i in 0..cells {
            let a = i as f64 / cells as f64;
            let b = (i + 1) as f64 / cells as f64;
            acc += adaptive_simpson(g, a, b, cell_tol, DEFAULT_MAX_DEPTH)?;
            values.push(acc);
        }
        Ok(QuadratureTable { cells, values, tol })
    }

    /// `F(x)` for x in [0, 1]: table value at the node below plus one
    /// adaptive integral over the remainder.
    pub fn eval<F>(&self, g: &F, x: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64 + ?Sized,
    {
        let scaled = x * self.cells as f64;
        let i = (scaled.floor() as usize).min(self.cells);
        let node = i as f64 / self.cells as f64;
        if x == node {
            return Ok(self.values[i]);
        }
        let rest = adaptive_simpson(g, node, x, 0.5 * self.tol, DEFAULT_MAX_DEPTH)?;
        Ok(self.values[i] + rest)
    }
}
