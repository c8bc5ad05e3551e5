use super::invariants::InvariantReport;
use super::rounding::PotentialHistory;
use super::state::{CoverState, MatchingState};
use super::steps::{
    greedy_allocation_step, greedy_baseline_step, primal_dual_step, FEASIBILITY_TOL,
};
use crate::allocation::{beta_of, AllocationFunction};
use crate::error::{Error, Result};
use crate::instance::{InstanceStream, VertexEvent};

/// Grid used to derive β for the primal-dual edge rule.
pub const BETA_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    WaterFill,
    PrimalDual,
    GreedyBaseline,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::WaterFill => "waterfill",
            Algorithm::PrimalDual => "primal-dual",
            Algorithm::GreedyBaseline => "greedy",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "waterfill" | "water-fill" => Some(Algorithm::WaterFill),
            "primal-dual" | "primaldual" => Some(Algorithm::PrimalDual),
            "greedy" | "greedy-baseline" => Some(Algorithm::GreedyBaseline),
            _ => None,
        }
    }
}

/// Totals after one arrival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub vertex: usize,
    pub level: f64,
    pub cover_cost: f64,
    pub matching_value: f64,
    /// NaN for algorithms without the primal-dual invariants.
    pub inv1_slack: f64,
    pub inv2_slack: f64,
}

#[derive(Debug, Clone)]
pub struct RunTrace {
    pub algorithm: Algorithm,
    /// One row per arrival when prefixes are traced, otherwise only the last.
    pub rows: Vec<TraceRow>,
    pub cover: CoverState,
    pub matching: MatchingState,
    pub history: Option<PotentialHistory>,
    /// Worst per-step slacks seen during the run.
    pub max_slacks: InvariantReport,
    pub zero_weight_arrivals: usize,
    pub beta: Option<f64>,
}

impl RunTrace {
    pub fn final_row(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    pub fn final_cover_cost(&self) -> f64 {
        self.cover.total_cost
    }

    pub fn final_matching_value(&self) -> f64 {
        self.matching.total_value
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub eps: f64,
    pub trace_prefixes: bool,
    pub record_history: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            eps: 1e-10,
            trace_prefixes: true,
            record_history: false,
        }
    }
}

/// Step-at-a-time executor. Exposes the live potentials, which is what an
/// adaptive adversary reads between arrivals.
#[derive(Debug, Clone)]
pub struct OnlineRunner {
    algorithm: Algorithm,
    func: Option<AllocationFunction>,
    beta: Option<f64>,
    options: RunOptions,
    trace: RunTrace,
}

impl OnlineRunner {
    pub fn new(
        algorithm: Algorithm,
        func: Option<&AllocationFunction>,
        options: RunOptions,
    ) -> Result<Self> {
        if !(options.eps > 0.0) {
            return Err(Error::Domain(format!("eps must be > 0, got {}", options.eps)));
        }
        let func = match (algorithm, func) {
            (Algorithm::GreedyBaseline, _) => None,
            (_, Some(f)) => Some(f.clone()),
            (_, None) => {
                return Err(Error::Precondition(format!(
                    "{} needs an allocation function",
                    algorithm.name()
                )))
            }
        };
        let beta = match (algorithm, &func) {
            (Algorithm::PrimalDual, Some(f)) => Some(beta_of(f, BETA_GRID)?.beta),
            _ => None,
        };
        Ok(OnlineRunner {
            algorithm,
            func,
            beta,
            options,
            trace: RunTrace {
                algorithm,
                rows: Vec::new(),
                cover: CoverState::new(),
                matching: MatchingState::new(),
                history: options.record_history.then(PotentialHistory::default),
                max_slacks: InvariantReport::default(),
                zero_weight_arrivals: 0,
                beta,
            },
        })
    }

    pub fn cover(&self) -> &CoverState {
        &self.trace.cover
    }

    pub fn matching(&self) -> &MatchingState {
        &self.trace.matching
    }

    pub fn potentials(&self) -> &[f64] {
        &self.trace.cover.y
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn allocation(&self) -> Option<&AllocationFunction> {
        self.func.as_ref()
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn step(&mut self, event: &VertexEvent) -> Result<TraceRow> {
        let step = self.trace.cover.len();
        if event.weight == 0.0 {
            self.trace.zero_weight_arrivals += 1;
        }
        let t = &mut self.trace;
        let (level, raised, inv1, inv2) = match self.algorithm {
            Algorithm::WaterFill => {
                let f = self.func.as_ref().expect("checked at construction");
                let out = greedy_allocation_step(&mut t.cover, event, f, self.options.eps)?;
                (out.level, out.raised, f64::NAN, f64::NAN)
            }
            Algorithm::PrimalDual => {
                let f = self.func.as_ref().expect("checked at construction");
                let beta = self.beta.expect("set for primal-dual");
                let s = primal_dual_step(
                    &mut t.cover,
                    &mut t.matching,
                    event,
                    f,
                    beta,
                    self.options.eps,
                )?;
                (s.outcome.level, s.outcome.raised, s.inv1_slack, s.inv2_slack)
            }
            Algorithm::GreedyBaseline => {
                if event.weight != 1.0 {
                    return Err(Error::Precondition(
                        "greedy baseline runs on unweighted instances only".into(),
                    ));
                }
                let partner = greedy_baseline_step(&mut t.cover, &mut t.matching, event)?;
                let raised = partner
                    .map(|u| super::water_level::Raise {
                        vertex: u,
                        old: 0.0,
                        new: 1.0,
                    })
                    .into_iter()
                    .collect();
                (1.0 - t.cover.y[event.id], raised, f64::NAN, f64::NAN)
            }
        };

        // Dual feasibility on the edges revealed now; older edges only gain.
        let yv = t.cover.y[event.id];
        for &u in &event.neighbors {
            let slack = 1.0 - t.cover.y[u] - yv;
            t.max_slacks.feasibility_slack = t.max_slacks.feasibility_slack.max(slack);
        }
        if let Some(x) = t.matching.x_agg.get(event.id) {
            let mut primal = x - event.weight;
            for &u in &event.neighbors {
                primal = primal.max(t.matching.x_agg[u] - t.cover.weights[u]);
            }
            t.max_slacks.primal_slack = t.max_slacks.primal_slack.max(primal);
        }
        if !inv1.is_nan() {
            t.max_slacks.inv1_slack = t.max_slacks.inv1_slack.max(inv1);
            t.max_slacks.inv2_slack = t.max_slacks.inv2_slack.max(inv2);
        }
        if t.max_slacks.feasibility_slack > FEASIBILITY_TOL {
            return Err(Error::InvariantViolation {
                invariant: "dual feasibility",
                vertex: event.id,
                slack: t.max_slacks.feasibility_slack,
            });
        }
        if let Some(h) = t.history.as_mut() {
            h.record(step, event.id, yv);
            for r in &raised {
                if r.new > r.old {
                    h.record(step, r.vertex, r.new);
                }
            }
        }

        let row = TraceRow {
            step,
            vertex: event.id,
            level,
            cover_cost: t.cover.total_cost,
            matching_value: t.matching.total_value,
            inv1_slack: inv1,
            inv2_slack: inv2,
        };
        if self.options.trace_prefixes || t.rows.is_empty() {
            t.rows.push(row);
        } else {
            *t.rows.last_mut().expect("nonempty") = row;
        }
        Ok(row)
    }

    pub fn finish(self) -> RunTrace {
        self.trace
    }
}

/// Runs every event of `stream` through `algo`.
pub fn run_stream(
    stream: &InstanceStream,
    algo: Algorithm,
    func: Option<&AllocationFunction>,
    eps: f64,
    trace_prefixes: bool,
) -> Result<RunTrace> {
    run_stream_with(
        stream,
        algo,
        func,
        RunOptions {
            eps,
            trace_prefixes,
            record_history: false,
        },
    )
}

pub fn run_stream_with(
    stream: &InstanceStream,
    algo: Algorithm,
    func: Option<&AllocationFunction>,
    options: RunOptions,
) -> Result<RunTrace> {
    let mut runner = OnlineRunner::new(algo, func, options)?;
    for e in &stream.events {
        runner.step(e)?;
    }
    Ok(runner.finish())
}
