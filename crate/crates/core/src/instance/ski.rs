use super::{InstanceStream, Side, VertexEvent};
use crate::error::{Error, Result};

/// Multiplier applied to the largest finite weight to stand in for the
/// infinite-weight last state.
pub const LARGE_FACTOR: f64 = 1e12;

/// Multislope ski rental: state `i` has buy cost `b_i` and rent rate `r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SkiRentalSpec {
    /// `(buy_cost, rent_rate)` per state, starting state first.
    pub states: Vec<(f64, f64)>,
    pub epsilon: f64,
    pub t_end: f64,
}

impl SkiRentalSpec {
    /// Classical ski rental: rent at rate 1 or buy for `buy_cost`.
    pub fn classical(buy_cost: f64, epsilon: f64, t_end: f64) -> Self {
        SkiRentalSpec {
            states: vec![(0.0, 1.0), (buy_cost, 0.0)],
            epsilon,
            t_end,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        if self.states.is_empty() {
            return bad("ski rental needs at least one state".into());
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return bad(format!("time step must be > 0, got {}", self.epsilon));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("end time must be > 0, got {}", self.t_end));
        }
        if self.states[0].0 != 0.0 {
            return bad(format!("first buy cost must be 0, got {}", self.states[0].0));
        }
        for (i, &(b, r)) in self.states.iter().enumerate() {
            if !b.is_finite() || !r.is_finite() || r < 0.0 {
                return bad(format!("state {} has invalid costs ({b}, {r})", i + 1));
            }
        }
        for (i, w) in self.states.windows(2).enumerate() {
            if w[1].0 < w[0].0 {
                return bad(format!("buy costs decrease at state {}", i + 2));
            }
            if w[1].1 > w[0].1 {
                return bad(format!("rent rates increase at state {}", i + 2));
            }
        }
        Ok(())
    }

    /// Number of discrete time steps, `ceil(t_end / epsilon)`.
    pub fn intervals(&self) -> usize {
        let q = self.t_end / self.epsilon;
        let rounded = q.round();
        if (q - rounded).abs() <= 1e-9 * rounded.max(1.0) {
            rounded as usize
        } else {
            q.ceil() as usize
        }
    }

    fn rent(&self, state: usize) -> f64 {
        self.states.get(state).map_or(0.0, |s| s.1)
    }

    /// Cost of staying in `states_per_interval[q]` (0-based state) during
    /// interval q; buying costs are paid once for the final state.
    pub fn strategy_cost(&self, states_per_interval: &[usize]) -> f64 {
        let rent: f64 = states_per_interval
            .iter()
            .map(|&s| self.rent(s) * self.epsilon)
            .sum();
        let last = states_per_interval.last().copied().unwrap_or(0);
        rent + self.states[last].0
    }
}

/// Reduction to online vertex-weighted bipartite vertex cover.
///
/// Left vertex `i` (0-based) has weight `b_{i+1} - b_i`; the last one gets
/// the LARGE sentinel. Each time step emits n right vertices: the k-th has
/// weight `(r_k - r_{k+1}) * epsilon` and is adjacent to left vertices
/// `0..k`.
pub fn reduce_ski_rental(spec: &SkiRentalSpec) -> Result<InstanceStream> {
    spec.validate()?;
    let n = spec.states.len();
    let q = spec.intervals();

    let mut left: Vec<f64> = (0..n - 1)
        .map(|i| spec.states[i + 1].0 - spec.states[i].0)
        .collect();
    let online: Vec<f64> = (0..n)
        .map(|k| (spec.rent(k) - spec.rent(k + 1)) * spec.epsilon)
        .collect();
    let max_finite = left.iter().chain(online.iter()).copied().fold(0.0, f64::max);
    let large = if max_finite > 0.0 {
        LARGE_FACTOR * max_finite
    } else {
        LARGE_FACTOR
    };
    left.push(large);

    let mut events: Vec<VertexEvent> = left
        .iter()
        .enumerate()
        .map(|(id, &w)| VertexEvent::new(id, w, Side::Left, Vec::new()))
        .collect();
    for _ in 0..q {
        for (k, &w) in online.iter().enumerate() {
            let id = events.len();
            events.push(VertexEvent::new(id, w, Side::Right, (0..=k).collect()));
        }
    }
    let desc = format!(
        "ski-rental states={} eps={} t_end={} large={}",
        n, spec.epsilon, spec.t_end, large
    );
    InstanceStream::new(events, n, desc)
}

/// Offline optimum of the discretised ski-rental game, by dynamic
/// programming over (interval, state) with monotone transitions.
pub fn ski_rental_offline_optimum(spec: &SkiRentalSpec) -> Result<f64> {
    spec.validate()?;
    let n = spec.states.len();
    let q = spec.intervals();
    // best[s]: cheapest rent so far ending in state s.
    let mut best = vec![0.0f64; n];
    for _ in 0..q {
        let mut running = f64::INFINITY;
        for s in 0..n {
            running = running.min(best[s]);
            best[s] = running + spec.rent(s) * spec.epsilon;
        }
    }
    Ok((0..n)
        .map(|s| best[s] + spec.states[s].0)
        .fold(f64::INFINITY, f64::min))
}
