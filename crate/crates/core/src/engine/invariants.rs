use super::state::{CoverState, MatchingState};
use super::steps::{invariant1_bound, relative_gap};
use crate::allocation::AllocationFunction;
use crate::instance::InstanceStream;

/// Worst observed violation of each invariant; 0 means satisfied exactly.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct InvariantReport {
    /// `max_u (x_u - w_u (y_u + f(1-z_u) + F(y_u) - F(z_u))/β)`, clamped at 0.
    pub inv1_slack: f64,
    /// `|Σ w y - β Σ x| / Σ w y`.
    pub inv2_slack: f64,
    /// `max_(u,v) (1 - y_u - y_v)`, clamped at 0.
    pub feasibility_slack: f64,
    /// `max_v (x_v - w_v)`, clamped at 0.
    pub primal_slack: f64,
}

impl InvariantReport {
    pub fn holds(&self, inv_tol: f64, feas_tol: f64) -> bool {
        self.inv1_slack <= inv_tol
            && self.inv2_slack <= inv_tol
            && self.feasibility_slack <= feas_tol
            && self.primal_slack <= feas_tol
    }
}

/// Full (non-incremental) check of both primal-dual invariants plus primal
/// and dual feasibility over every arrived vertex and revealed edge.
///
/// Uses the first `cover.len()` events of `stream` as the revealed graph.
pub fn check_invariants(
    cover: &CoverState,
    matching: &MatchingState,
    func: &AllocationFunction,
    beta: f64,
    stream: &InstanceStream,
) -> InvariantReport {
    let mut report = InvariantReport::default();
    let x_of = |u: usize| matching.x_agg.get(u).copied().unwrap_or(0.0);
    for u in 0..cover.len() {
        let bound = invariant1_bound(cover, u, func, beta, func.big_f(cover.y[u]));
        report.inv1_slack = report.inv1_slack.max(x_of(u) - bound);
        report.primal_slack = report.primal_slack.max(x_of(u) - cover.weights[u]);
    }
    for e in stream.events.iter().take(cover.len()) {
        for &u in &e.neighbors {
            report.feasibility_slack = report
                .feasibility_slack
                .max(1.0 - cover.y[u] - cover.y[e.id]);
        }
    }
    report.inv2_slack = relative_gap(cover.exact_cost(), matching.exact_value(), beta);
    report
}
