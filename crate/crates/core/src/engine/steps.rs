use super::state::{CoverState, MatchingState};
use super::water_level::{water_level, NeighborPotential, WaterLevelOutcome};
use crate::allocation::AllocationFunction;
use crate::error::{Error, Result};
use crate::instance::VertexEvent;

/// Relative slack allowed on the two primal-dual invariants before a step
/// reports a violation.
pub const INVARIANT_TOL: f64 = 1e-8;
/// Slack allowed on `y_u + y_v >= 1` and `x_v <= w_v`.
pub const FEASIBILITY_TOL: f64 = 1e-9;

fn check_arrival(cover: &CoverState, event: &VertexEvent) -> Result<()> {
    if event.id != cover.len() {
        return Err(Error::Precondition(format!(
            "event id {} arrives when {} vertices are known",
            event.id,
            cover.len()
        )));
    }
    if let Some(&u) = event.neighbors.iter().find(|&&u| u >= event.id) {
        return Err(Error::Precondition(format!(
            "vertex {} lists unarrived neighbour {u}",
            event.id
        )));
    }
    Ok(())
}

fn neighbor_potentials(cover: &CoverState, event: &VertexEvent) -> Vec<NeighborPotential> {
    event
        .neighbors
        .iter()
        .map(|&u| NeighborPotential {
            vertex: u,
            potential: cover.y[u],
            weight: cover.weights[u],
        })
        .collect()
}

/// One arrival of GreedyAllocation (water filling on the cover side).
///
/// Raises every lagging neighbour to the water level `y` and gives the
/// arriving vertex potential `1 - y`. Vertex weights enter the budget as
/// `Σ w_u (y - y_u) <= w_v f(y)`; unit weights give the unweighted rule.
pub fn greedy_allocation_step(
    cover: &mut CoverState,
    event: &VertexEvent,
    func: &AllocationFunction,
    eps: f64,
) -> Result<WaterLevelOutcome> {
    check_arrival(cover, event)?;
    let outcome = water_level(&neighbor_potentials(cover, event), event.weight, func, eps)?;
    for r in &outcome.raised {
        cover.raise(r.vertex, r.new);
    }
    cover.arrive(event.weight, 1.0 - outcome.level, f64::NAN);
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimalDualStep {
    pub outcome: WaterLevelOutcome,
    /// Largest `x_u - bound_u` (clamped at 0) over vertices touched by the step.
    pub inv1_slack: f64,
    /// `|Σ w y - β Σ x| / Σ w y` after the step.
    pub inv2_slack: f64,
}

/// Invariant-1 right-hand side for vertex `u`:
/// `w_u (y_u + f(1 - z_u) + F(y_u) - F(z_u)) / β`.
pub fn invariant1_bound(
    cover: &CoverState,
    u: usize,
    func: &AllocationFunction,
    beta: f64,
    f_of_y: f64,
) -> f64 {
    let z = cover.z_arrival[u];
    let f_of_z = if cover.arrival_integral[u].is_nan() {
        func.big_f(z)
    } else {
        cover.arrival_integral[u]
    };
    cover.weights[u] * (cover.y[u] + func.value(1.0 - z) + f_of_y - f_of_z) / beta
}

pub(crate) fn relative_gap(dual: f64, primal: f64, beta: f64) -> f64 {
    let gap = (dual - beta * primal).abs();
    if dual > 0.0 {
        gap / dual
    } else {
        gap
    }
}

/// One arrival of PrimalDual.
///
/// The cover update is identical to [`greedy_allocation_step`]. Each raised
/// neighbour `u` gets `x_uv = w_u (y - y_u) / β · (1 + (1 - y)/f(y))`; the
/// other revealed edges get 0. Afterwards both invariants are checked on the
/// touched vertices and [`Error::InvariantViolation`] is returned if either
/// is off by more than [`INVARIANT_TOL`].
pub fn primal_dual_step(
    cover: &mut CoverState,
    matching: &mut MatchingState,
    event: &VertexEvent,
    func: &AllocationFunction,
    beta: f64,
    eps: f64,
) -> Result<PrimalDualStep> {
    check_arrival(cover, event)?;
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("beta must be > 0, got {beta}")));
    }
    let v = event.id;
    let outcome = water_level(&neighbor_potentials(cover, event), event.weight, func, eps)?;
    let y = outcome.level;
    let unit = func.unit_charge(y);

    matching.ensure_vertex(v);
    let mut raised_iter = outcome.raised.iter().peekable();
    for &u in &event.neighbors {
        let x = match raised_iter.peek() {
            Some(r) if r.vertex == u => {
                let r = raised_iter.next().expect("peeked");
                cover.weights[u] * (r.new - r.old) / beta * (1.0 + unit)
            }
            _ => 0.0,
        };
        matching.set_edge(u, v, x);
    }
    for r in &outcome.raised {
        cover.raise(r.vertex, r.new);
    }
    let z = 1.0 - y;
    cover.arrive(event.weight, z, func.big_f(z));

    // Invariant 1 on v and on every raised neighbour (others are unchanged).
    let mut inv1: f64 = 0.0;
    let mut worst_vertex = v;
    let f_at_level = func.big_f(y);
    let check = |u: usize, f_of_y: f64, inv1: &mut f64, worst: &mut usize| {
        let bound = invariant1_bound(cover, u, func, beta, f_of_y);
        let slack = (matching.x_agg[u] - bound).max(0.0) / bound.abs().max(1.0);
        if slack > *inv1 {
            *inv1 = slack;
            *worst = u;
        }
    };
    check(v, cover.arrival_integral[v], &mut inv1, &mut worst_vertex);
    for r in &outcome.raised {
        check(r.vertex, f_at_level, &mut inv1, &mut worst_vertex);
    }
    if inv1 > INVARIANT_TOL {
        return Err(Error::InvariantViolation {
            invariant: "1",
            vertex: worst_vertex,
            slack: inv1,
        });
    }
    let inv2 = relative_gap(cover.total_cost, matching.total_value, beta);
    if inv2 > INVARIANT_TOL {
        return Err(Error::InvariantViolation {
            invariant: "2",
            vertex: v,
            slack: inv2,
        });
    }
    Ok(PrimalDualStep {
        outcome,
        inv1_slack: inv1,
        inv2_slack: inv2,
    })
}

/// Integral greedy: match the arrival to its lowest-id unmatched neighbour
/// and put both endpoints in the cover.
///
/// Returns the matched neighbour, if any.
pub fn greedy_baseline_step(
    cover: &mut CoverState,
    matching: &mut MatchingState,
    event: &VertexEvent,
) -> Result<Option<usize>> {
    check_arrival(cover, event)?;
    let v = event.id;
    matching.ensure_vertex(v);
    let partner = event
        .neighbors
        .iter()
        .copied()
        .filter(|&u| matching.x_agg[u] < 1.0)
        .min();
    cover.arrive(event.weight, 0.0, f64::NAN);
    for &u in &event.neighbors {
        matching.set_edge(u, v, if Some(u) == partner { 1.0 } else { 0.0 });
    }
    if let Some(u) = partner {
        cover.raise(u, 1.0);
        cover.raise(v, 1.0);
    }
    Ok(partner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{beta_of, ALPHA};
    use crate::instance::Side;

    fn ev(id: usize, nbrs: &[usize]) -> VertexEvent {
        VertexEvent::new(id, 1.0, Side::Unlabeled, nbrs.to_vec())
    }

    #[test]
    fn isolated_arrival() {
        let mut c = CoverState::new();
        let out = greedy_allocation_step(&mut c, &ev(0, &[]), &AllocationFunction::linear_alpha(), 1e-10)
            .unwrap();
        assert_eq!(out.level, 1.0);
        assert_eq!(c.y, vec![0.0]);
        assert_eq!(c.total_cost, 0.0);
    }

    #[test]
    fn complete_bipartite_first_arrival() {
        let f = AllocationFunction::linear_alpha();
        let d = 4;
        let mut c = CoverState::new();
        for i in 0..d {
            greedy_allocation_step(&mut c, &ev(i, &[]), &f, 1e-10).unwrap();
        }
        let nbrs: Vec<usize> = (0..d).collect();
        let out = greedy_allocation_step(&mut c, &ev(d, &nbrs), &f, 1e-10).unwrap();
        let expected = ALPHA / (d as f64 - 1.0);
        assert!((out.level - expected).abs() < 1e-10);
        assert!(c.y[..d].iter().all(|&y| (y - expected).abs() < 1e-10));
        assert!((c.y[d] - (1.0 - expected)).abs() < 1e-10);
    }

    #[test]
    fn out_of_order_event_rejected() {
        let mut c = CoverState::new();
        let f = AllocationFunction::greedy();
        assert!(greedy_allocation_step(&mut c, &ev(1, &[]), &f, 1e-10).is_err());
        assert!(greedy_allocation_step(&mut c, &ev(0, &[0]), &f, 1e-10).is_err());
    }

    #[test]
    fn primal_dual_single_edge() {
        let f = AllocationFunction::closed_form(1.199_678_640_257_734).unwrap();
        let beta = beta_of(&f, 1000).unwrap().beta;
        let (mut c, mut m) = (CoverState::new(), MatchingState::new());
        let s0 = primal_dual_step(&mut c, &mut m, &ev(0, &[]), &f, beta, 1e-10).unwrap();
        assert_eq!(s0.inv1_slack, 0.0);
        assert_eq!(c.y, vec![0.0]);
        let s1 = primal_dual_step(&mut c, &mut m, &ev(1, &[0]), &f, beta, 1e-10).unwrap();
        let y = s1.outcome.level;
        assert!((y - f.value(y)).abs() < 1e-9);
        assert!((m.edges[0].x - 1.0 / beta).abs() < 1e-9);
        assert!((c.y[0] + c.y[1] - 1.0).abs() < 1e-12);
        assert!(s1.inv2_slack < 1e-12);
    }

    #[test]
    fn primal_dual_zero_edges_for_unraised() {
        let f = AllocationFunction::closed_form(1.5).unwrap();
        let (mut c, mut m) = (CoverState::new(), MatchingState::new());
        let arrivals = [vec![], vec![], vec![], vec![0], vec![0, 1, 2]];
        for (i, n) in arrivals.iter().enumerate() {
            primal_dual_step(&mut c, &mut m, &ev(i, n), &f, 2.0, 1e-10).unwrap();
        }
        assert_eq!(m.edges.len(), 4);
        assert!(m.edges.iter().all(|e| e.x >= 0.0));
        // two neighbours at 0 cap the level below the potential of vertex 0
        assert!(c.y[1] < c.y[0]);
        let e12 = m.edges.iter().find(|e| e.u == 0 && e.v == 4).unwrap();
        assert_eq!(e12.x, 0.0);
    }

    #[test]
    fn baseline_traces() {
        // single edge
        let (mut c, mut m) = (CoverState::new(), MatchingState::new());
        greedy_baseline_step(&mut c, &mut m, &ev(0, &[])).unwrap();
        assert_eq!(greedy_baseline_step(&mut c, &mut m, &ev(1, &[0])).unwrap(), Some(0));
        assert_eq!(c.total_cost, 2.0);
        assert_eq!(m.total_value, 1.0);

        // star: center offline, 5 leaves
        let (mut c, mut m) = (CoverState::new(), MatchingState::new());
        greedy_baseline_step(&mut c, &mut m, &ev(0, &[])).unwrap();
        for i in 1..=5 {
            greedy_baseline_step(&mut c, &mut m, &ev(i, &[0])).unwrap();
        }
        assert_eq!(m.total_value, 1.0);
        assert_eq!(c.total_cost, 2.0);

        // triangle
        let (mut c, mut m) = (CoverState::new(), MatchingState::new());
        for (i, n) in [vec![], vec![0], vec![0, 1]].iter().enumerate() {
            greedy_baseline_step(&mut c, &mut m, &ev(i, n)).unwrap();
        }
        assert_eq!(m.total_value, 1.0);
        assert_eq!(c.total_cost, 2.0);
    }
}
