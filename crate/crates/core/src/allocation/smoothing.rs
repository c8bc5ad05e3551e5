//! Fixed-point smoothing toward a constant ratio bracket.
//!
//! For a grid function `r` define
//! `R(p) = r(p) + ∫_{1-p}^1 (1 - x) / r(x) dx`. Starting from `R_1 <= γ`,
//! the iteration `r <- r + γ - R` increases `r` monotonically and drives
//! `R` to the constant `γ`.

use crate::error::{Error, Result};

/// Values on the uniform grid `p_j = j / (len - 1)` over [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn from_fn<F: Fn(f64) -> f64>(nodes: usize, f: F) -> Self {
        assert!(nodes >= 2, "grid needs at least two nodes");
        let last = (nodes - 1) as f64;
        GridFunction {
            values: (0..nodes).map(|j| f(j as f64 / last)).collect(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.values.len()
    }

    /// `R(p_j)` at every node, using the trapezoid rule for the integral.
    pub fn ratio_bracket(&self) -> Result<Vec<f64>> {
        let n = self.values.len();
        let h = 1.0 / (n - 1) as f64;
        let mut q = Vec::with_capacity(n);
        for (j, &r) in self.values.iter().enumerate() {
            let x = j as f64 * h;
            if r > 0.0 && r.is_finite() {
                q.push((1.0 - x) / r);
            } else if j == n - 1 && r == 0.0 && n >= 3 {
                // 0/0 at x = 1: take the linear extrapolation of the limit.
                q.push(2.0 * q[n - 2] - q[n - 3]);
            } else {
                return Err(Error::Precondition(format!(
                    "grid function is not positive at node {j} (value {r})"
                )));
            }
        }
        // tail[j] = ∫_{x_j}^1 q
        let mut tail = vec![0.0; n];
        for j in (0..n - 1).rev() {
            tail[j] = tail[j + 1] + 0.5 * h * (q[j] + q[j + 1]);
        }
        Ok((0..n).map(|j| self.values[j] + tail[n - 1 - j]).collect())
    }
}

#[derive(Debug, Clone)]
pub struct SmoothingOutcome {
    pub function: GridFunction,
    pub iterations: usize,
    /// `max_j |R(p_j) - γ|` for the returned function.
    pub residual: f64,
}

/// Runs `r_{i+1} = r_i + γ - R_i` until `max |γ - R_i| < tol`.
///
/// The starting function must satisfy `R_1 <= γ` at every node (up to
/// `tol`, absorbing trapezoid error); otherwise the iteration is not
/// monotone and [`Error::Precondition`] is returned.
pub fn smooth_to_constant(
    r1: &GridFunction,
    gamma: f64,
    max_iters: usize,
    tol: f64,
) -> Result<SmoothingOutcome> {
    if r1.nodes() < 3 {
        return Err(Error::Precondition("grid needs at least three nodes".into()));
    }
    if !(gamma > 0.0) || !(tol > 0.0) {
        return Err(Error::Precondition(format!(
            "need gamma > 0 and tol > 0, got {gamma} and {tol}"
        )));
    }
    let first = r1.ratio_bracket()?;
    if let Some((j, &v)) = first
        .iter()
        .enumerate()
        .find(|(_, &v)| !(v <= gamma + tol))
    {
        return Err(Error::Precondition(format!(
            "R_1 = {v} exceeds gamma = {gamma} at node {j}"
        )));
    }

    let mut r = r1.clone();
    let mut bracket = first;
    let mut iterations = 0;
    loop {
        let residual = bracket
            .iter()
            .map(|v| (gamma - v).abs())
            .fold(0.0, f64::max);
        if residual < tol {
            return Ok(SmoothingOutcome {
                function: r,
                iterations,
                residual,
            });
        }
        if iterations >= max_iters {
            return Err(Error::Convergence(format!(
                "smoothing residual {residual:e} after {iterations} iterations"
            )));
        }
        for (v, b) in r.values.iter_mut().zip(&bracket) {
            *v += gamma - b;
        }
        bracket = r.ratio_bracket()?;
        iterations += 1;
    }
}
