use super::closed_form_value;
use crate::error::{Error, Result};

/// Inverse golden ratio, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimises a unimodal `h` on `[a, b]` until the bracket is narrower than
/// `tol`; returns the bracket midpoint.
pub fn golden_section_min<H: Fn(f64) -> f64>(h: H, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut hc = h(c);
    let mut hd = h(d);
    while (b - a).abs() > tol {
        if hc < hd {
            b = d;
            d = c;
            hd = hc;
            c = b - INV_PHI * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + INV_PHI * (b - a);
            hd = h(d);
        }
    }
    0.5 * (a + b)
}

/// Real root of `coth(k) = k`, by bisection on [1, 2].
pub fn coth_fixed_point() -> f64 {
    let phi = |k: f64| 1.0 / k.tanh() - k;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalK {
    pub k: f64,
    /// `1 + f_k(0)`, the constant value of the ratio bracket.
    pub beta: f64,
    /// Independent determination from the coth fixed point.
    pub coth_k: f64,
}

/// Ratio-minimising member of the closed-form family.
///
/// Minimises `1 + f_k(0)` over `k ∈ [1, 3]` by golden-section search and
/// confirms the result against the coth fixed point; the two must agree to
/// `10 * tol`.
pub fn optimal_k(tol: f64) -> Result<OptimalK> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let h = |k: f64| 1.0 + closed_form_value(k, 0.0);
    let k = golden_section_min(h, 1.0, 3.0, tol);
    let coth_k = coth_fixed_point();
    if (k - coth_k).abs() > 10.0 * tol {
        return Err(Error::Convergence(format!(
            "golden-section k = {k} disagrees with coth fixed point {coth_k}"
        )));
    }
    Ok(OptimalK {
        k,
        beta: h(k),
        coth_k,
    })
}
