//! White-box alternation adversary on complete bipartite phases.

use super::experiment::evaluate;
use crate::allocation::AllocationFunction;
use crate::engine::{Algorithm, OnlineRunner, RunOptions};
use crate::error::{Error, Result};
use crate::instance::{InstanceStream, Side, VertexEvent};
use crate::oracle::{prefix_optima, Objective};

/// Trial competitive excess used to size the first two phases when three or
/// more phases are available.
pub const TRIAL_EXCESS: f64 = 0.753;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdversaryBudget {
    pub phases: usize,
    pub per_phase_cap: usize,
    /// Size of the offline left set `L_0`.
    pub offline_d: usize,
    /// Potential treated as driven to 1.
    pub convergence_threshold: f64,
}

impl AdversaryBudget {
    pub const DEFAULT_CAP_FACTOR: usize = 20;
    pub const DEFAULT_THRESHOLD: f64 = 0.999;

    pub fn new(phases: usize, offline_d: usize) -> Self {
        AdversaryBudget {
            phases,
            per_phase_cap: Self::DEFAULT_CAP_FACTOR * offline_d,
            offline_d,
            convergence_threshold: Self::DEFAULT_THRESHOLD,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.per_phase_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.phases == 0 || self.per_phase_cap == 0 || self.offline_d == 0 {
            return Err(Error::Usage(format!(
                "budget needs phases, d and cap >= 1, got k={} d={} cap={}",
                self.phases, self.offline_d, self.per_phase_cap
            )));
        }
        if !(self.convergence_threshold > 0.0 && self.convergence_threshold <= 1.0) {
            return Err(Error::Usage(format!(
                "convergence threshold must lie in (0, 1], got {}",
                self.convergence_threshold
            )));
        }
        Ok(())
    }

    /// Planned size of a phase; `None` means drive until convergence or cap.
    /// The cap only bounds driving phases.
    fn planned(&self, phase: usize, sizes: &[usize]) -> Option<usize> {
        let d = self.offline_d as f64;
        let b = TRIAL_EXCESS;
        match (phase, self.phases) {
            (_, k) if phase == k => None,
            (1, 2) => Some((std::f64::consts::SQRT_2 * d).ceil() as usize),
            (1, _) => {
                let a = 1.0 / (2.0 * b * b - 1.0).sqrt();
                Some((b * a * d).ceil() as usize)
            }
            (2, _) => Some((sizes[0] as f64 / b - d).round().max(0.0) as usize),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdversaryReport {
    pub budget: AdversaryBudget,
    /// Worst cover ratio over all prefixes of the transcript.
    pub ratio: f64,
    /// Length of the prefix attaining `ratio`.
    pub worst_prefix: usize,
    pub transcript: InstanceStream,
    pub phase_sizes: Vec<usize>,
    /// A driving phase hit the cap before the threshold.
    pub budget_exhausted: bool,
}

/// Plays the phases against the algorithm, reading its potentials after
/// every arrival. Each online vertex is adjacent to every vertex already on
/// the other side.
pub fn adaptive_adversary_vc(
    budget: &AdversaryBudget,
    algorithm: Algorithm,
    func: Option<&AllocationFunction>,
    eps: f64,
) -> Result<AdversaryReport> {
    budget.validate()?;
    let options = RunOptions {
        eps,
        trace_prefixes: true,
        record_history: false,
    };
    let mut runner = OnlineRunner::new(algorithm, func, options)?;
    let mut events: Vec<VertexEvent> = Vec::new();
    let mut left: Vec<usize> = Vec::new();
    let mut right: Vec<usize> = Vec::new();

    for id in 0..budget.offline_d {
        let e = VertexEvent::new(id, 1.0, Side::Left, Vec::new());
        runner.step(&e)?;
        events.push(e);
        left.push(id);
    }

    let mut sizes = Vec::with_capacity(budget.phases);
    let mut exhausted = false;
    for phase in 1..=budget.phases {
        let side = if phase % 2 == 1 { Side::Right } else { Side::Left };
        let planned = budget.planned(phase, &sizes);
        let mut count = 0;
        loop {
            let opposite = if side == Side::Right { &left } else { &right };
            match planned {
                Some(target) if count >= target => break,
                None => {
                    let y = runner.potentials();
                    let lowest = opposite.iter().map(|&u| y[u]).fold(f64::INFINITY, f64::min);
                    if lowest >= budget.convergence_threshold {
                        break;
                    }
                    if count >= budget.per_phase_cap {
                        exhausted = true;
                        break;
                    }
                }
                _ => {}
            }
            let id = events.len();
            let e = VertexEvent::new(id, 1.0, side, opposite.clone());
            runner.step(&e)?;
            events.push(e);
            if side == Side::Right {
                right.push(id);
            } else {
                left.push(id);
            }
            count += 1;
        }
        sizes.push(count);
    }

    let transcript = InstanceStream::new(
        events,
        budget.offline_d,
        format!(
            "adversary k={} d={} cap={} algo={}",
            budget.phases,
            budget.offline_d,
            budget.per_phase_cap,
            algorithm.name()
        ),
    )?;
    let trace = runner.finish();
    let oracle = prefix_optima(&transcript);
    let (worst_prefix, ratio) = worst_cover_prefix(&trace.rows, &oracle);
    Ok(AdversaryReport {
        budget: *budget,
        ratio,
        worst_prefix,
        transcript,
        phase_sizes: sizes,
        budget_exhausted: exhausted,
    })
}

fn worst_cover_prefix(rows: &[crate::engine::TraceRow], oracle: &[f64]) -> (usize, f64) {
    let mut best = (0, 1.0);
    for (i, (r, &o)) in rows.iter().zip(oracle).enumerate() {
        if o > 0.0 && r.cover_cost / o > best.1 {
            best = (i + 1, r.cover_cost / o);
        }
    }
    best
}

/// Worst-prefix cover ratio of a transcript replayed through a fresh run.
pub fn replay_ratio(
    transcript: &InstanceStream,
    algorithm: Algorithm,
    func: Option<&AllocationFunction>,
    eps: f64,
) -> Result<f64> {
    let (trace, oracle) = evaluate(transcript, algorithm, func, eps, true)?;
    super::experiment::worst_prefix_ratio(&trace, &oracle, Objective::Cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::ALPHA;
    use crate::instance::{parse_instance, serialize_instance};

    #[test]
    fn phase_sizing() {
        let b = AdversaryBudget::new(2, 100);
        assert_eq!(b.planned(1, &[]), Some(142));
        assert_eq!(b.planned(2, &[142]), None);
        let b3 = AdversaryBudget::new(3, 100);
        let first = b3.planned(1, &[]).unwrap();
        assert!((200..=210).contains(&first), "{first}");
        let second = b3.planned(2, &[first]).unwrap();
        assert_eq!(second, (first as f64 / TRIAL_EXCESS - 100.0).round() as usize);
        assert_eq!(b3.planned(3, &[first, second]), None);
    }

    #[test]
    fn one_phase_against_linear_alpha() {
        let f = AllocationFunction::linear_alpha();
        let r = adaptive_adversary_vc(&AdversaryBudget::new(1, 20), Algorithm::WaterFill, Some(&f), 1e-10)
            .unwrap();
        assert!(r.ratio > 1.3 && r.ratio <= 1.0 + ALPHA + 1e-6, "{}", r.ratio);
        assert_eq!(r.phase_sizes.len(), 1);
        assert!(r.transcript.is_labeled_bipartite());
    }

    #[test]
    fn transcript_replays() {
        let f = AllocationFunction::linear_alpha();
        let r = adaptive_adversary_vc(&AdversaryBudget::new(2, 10), Algorithm::WaterFill, Some(&f), 1e-10)
            .unwrap();
        let text = serialize_instance(&r.transcript);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, r.transcript);
        let again = replay_ratio(&back, Algorithm::WaterFill, Some(&f), 1e-10).unwrap();
        assert_eq!(again, r.ratio);
    }

    #[test]
    fn exhausted_cap_is_reported() {
        let f = AllocationFunction::linear_alpha();
        let b = AdversaryBudget::new(1, 50).with_cap(3);
        let r = adaptive_adversary_vc(&b, Algorithm::WaterFill, Some(&f), 1e-10).unwrap();
        assert!(r.budget_exhausted);
        assert_eq!(r.phase_sizes, vec![3]);
        let small = AdversaryBudget::new(2, 10).with_cap(3);
        let r = adaptive_adversary_vc(&small, Algorithm::WaterFill, Some(&f), 1e-10).unwrap();
        assert_eq!(r.phase_sizes[0], 15);
        assert!(r.budget_exhausted);
        assert_eq!(r.phase_sizes[1], 3);
    }

    #[test]
    fn rejects_empty_budget() {
        let b = AdversaryBudget::new(0, 10);
        assert!(adaptive_adversary_vc(&b, Algorithm::GreedyBaseline, None, 1e-10).is_err());
    }
}
