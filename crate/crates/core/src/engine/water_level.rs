use crate::allocation::AllocationFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeighborPotential {
    pub vertex: usize,
    pub potential: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Raise {
    pub vertex: usize,
    pub old: f64,
    pub new: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaterLevelOutcome {
    pub level: f64,
    pub raised: Vec<Raise>,
    /// The budget `w_v f(y)` is used up; false exactly when `level == 1`.
    pub saturated: bool,
}

impl WaterLevelOutcome {
    /// `Σ w_u (y - y_u)` over the raised set.
    pub fn spent(&self, weights: impl Fn(usize) -> f64) -> f64 {
        self.raised
            .iter()
            .map(|r| weights(r.vertex) * (r.new - r.old))
            .sum()
    }
}

const MAX_BISECTIONS: usize = 200;

/// Maximal `y <= 1` with `Σ_u w_u max(y - y_u, 0) <= w_v f(y)`.
///
/// With `H(t) = Σ w_u max(t - y_u, 0) - w_v f(t)`: if `H(1) <= eps` the
/// level is 1. Otherwise the search starts from the largest breakpoint
/// `y_u` with `H <= 0` and bisects `H(lo) <= 0 < H(hi)` until the two ends
/// are adjacent floats (or 200 steps), which certifies the crossing to well
/// within `eps`.
///
/// A zero-weight arrival may not spend anything: the level is the smallest
/// potential among positive-weight neighbours (or 1).
pub fn water_level(
    neighbors: &[NeighborPotential],
    v_weight: f64,
    func: &AllocationFunction,
    eps: f64,
) -> Result<WaterLevelOutcome> {
    if !(v_weight >= 0.0) || !v_weight.is_finite() {
        return Err(Error::Domain(format!("arrival weight {v_weight} must be >= 0")));
    }
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be > 0, got {eps}")));
    }
    for n in neighbors {
        if !(0.0..=1.0).contains(&n.potential) || !(n.weight >= 0.0) {
            return Err(Error::Domain(format!(
                "neighbour {} has potential {} / weight {}",
                n.vertex, n.potential, n.weight
            )));
        }
    }

    if v_weight == 0.0 {
        let level = neighbors
            .iter()
            .filter(|n| n.weight > 0.0)
            .map(|n| n.potential)
            .fold(1.0, f64::min);
        return Ok(finish(neighbors, level, level < 1.0));
    }

    let h = |t: f64| -> f64 {
        let spent: f64 = neighbors
            .iter()
            .map(|n| n.weight * (t - n.potential).max(0.0))
            .sum();
        spent - v_weight * func.value(t)
    };

    if h(1.0) <= eps {
        return Ok(finish(neighbors, 1.0, false));
    }

    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut breakpoints: Vec<f64> = neighbors.iter().map(|n| n.potential).collect();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("potentials are finite"));
    breakpoints.dedup();
    for &b in &breakpoints {
        if b >= 1.0 {
            break;
        }
        if h(b) <= 0.0 {
            lo = lo.max(b);
        }
    }
    if let Some(&next) = breakpoints.iter().find(|&&b| b > lo && b < 1.0) {
        if h(next) > 0.0 {
            hi = next;
        }
    }
    if !(h(lo) <= 0.0) || !(h(hi) > 0.0) {
        return Err(Error::Numeric(format!(
            "water level bracket [{lo}, {hi}] does not straddle the budget"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo > eps {
        return Err(Error::Numeric(format!(
            "water level not certified: bracket width {} > eps {eps}",
            hi - lo
        )));
    }
    Ok(finish(neighbors, lo, true))
}

fn finish(neighbors: &[NeighborPotential], level: f64, saturated: bool) -> WaterLevelOutcome {
    let raised = neighbors
        .iter()
        .filter(|n| n.potential < level)
        .map(|n| Raise {
            vertex: n.vertex,
            old: n.potential,
            new: level,
        })
        .collect();
    WaterLevelOutcome {
        level,
        raised,
        saturated,
    }
}
