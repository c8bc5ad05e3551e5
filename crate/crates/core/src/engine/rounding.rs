//! Threshold rounding of a monotone fractional cover on a bipartite graph.
//!
//! With a single threshold `t` drawn once, a left vertex is in the cover
//! when `y_u >= t` and a right vertex when `y_v >= 1 - t`. Feasibility of
//! `y` makes the set a cover; monotone potentials make it monotone over
//! time; each vertex is included with probability `y_v`.

use crate::error::{Error, Result};
use crate::instance::{InstanceStream, Side};

fn threshold_for(side: Side, t: f64) -> f64 {
    match side {
        Side::Left => t,
        _ => 1.0 - t,
    }
}

fn check_sides(stream: &InstanceStream, upto: usize) -> Result<()> {
    for e in stream.events.iter().take(upto) {
        for &u in &e.neighbors {
            let (su, sv) = (stream.events[u].side, e.side);
            if su == Side::Unlabeled || sv == Side::Unlabeled || su == sv {
                return Err(Error::Side(u, e.id));
            }
        }
    }
    Ok(())
}

/// Integral cover `{u ∈ L : y_u >= t} ∪ {v ∈ R : y_v >= 1 - t}` for the
/// arrived prefix `0..final_y.len()`.
pub fn round_bipartite(final_y: &[f64], stream: &InstanceStream, t: f64) -> Result<Vec<usize>> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("threshold {t} outside [0, 1]")));
    }
    if final_y.len() > stream.len() {
        return Err(Error::Precondition(format!(
            "{} potentials for a {}-vertex stream",
            final_y.len(),
            stream.len()
        )));
    }
    check_sides(stream, final_y.len())?;
    Ok(final_y
        .iter()
        .enumerate()
        .filter(|&(u, &y)| y >= threshold_for(stream.events[u].side, t))
        .map(|(u, _)| u)
        .collect())
}

/// Change points of every vertex potential across a run: `(step, value)`
/// pairs, starting with the arrival step.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PotentialHistory {
    pub changes: Vec<Vec<(usize, f64)>>,
}

impl PotentialHistory {
    pub(crate) fn record(&mut self, step: usize, u: usize, value: f64) {
        if self.changes.len() <= u {
            self.changes.resize_with(u + 1, Vec::new);
        }
        self.changes[u].push((step, value));
    }

    pub fn potential_at(&self, u: usize, step: usize) -> Option<f64> {
        let c = &self.changes[u];
        let idx = c.partition_point(|&(s, _)| s <= step);
        (idx > 0).then(|| c[idx - 1].1)
    }

    /// First step at which `y_u >= threshold`.
    pub fn entry_step(&self, u: usize, threshold: f64) -> Option<usize> {
        let c = &self.changes[u];
        let idx = c.partition_point(|&(_, y)| y < threshold);
        c.get(idx).map(|&(s, _)| s)
    }

    /// Every vertex's recorded potentials are nondecreasing.
    pub fn is_monotone(&self) -> bool {
        self.changes
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].1 <= w[1].1 && w[0].0 <= w[1].0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundedTrace {
    /// Step at which each vertex joins the integral cover, if ever.
    pub entry: Vec<Option<usize>>,
    /// Every edge is covered from the step it is revealed onward.
    pub valid: bool,
    pub final_weight: f64,
}

/// Applies one threshold `t` to a whole run. A vertex joins the cover the
/// first step its potential clears its side's threshold and never leaves,
/// so validity reduces to each edge being covered at the step it appears.
pub fn round_trace(history: &PotentialHistory, stream: &InstanceStream, t: f64) -> Result<RoundedTrace> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("threshold {t} outside [0, 1]")));
    }
    let n = history.changes.len().min(stream.len());
    check_sides(stream, n)?;
    let entry: Vec<Option<usize>> = (0..n)
        .map(|u| history.entry_step(u, threshold_for(stream.events[u].side, t)))
        .collect();
    let covered_by = |u: usize, step: usize| entry[u].is_some_and(|s| s <= step);
    let valid = stream.events[..n].iter().all(|e| {
        e.neighbors
            .iter()
            .all(|&u| covered_by(u, e.id) || covered_by(e.id, e.id))
    });
    let final_weight = entry
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_some())
        .map(|(u, _)| stream.events[u].weight)
        .sum();
    Ok(RoundedTrace {
        entry,
        valid,
        final_weight,
    })
}
