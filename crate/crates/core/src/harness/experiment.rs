use super::specs::{FSpec, GenSpec};
use crate::allocation::AllocationFunction;
use crate::engine::{run_stream, write_trace_csv, Algorithm, RunTrace};
use crate::error::{Error, Result};
use crate::instance::{parse_instance, InstanceStream};
use crate::numfmt::g17;
use crate::oracle::{competitive_ratio, final_optimum, prefix_optima, Objective, RatioMode};
use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    File(PathBuf),
    Generator(GenSpec),
}

impl InstanceSource {
    pub fn load(&self, seed: u64) -> Result<InstanceStream> {
        match self {
            InstanceSource::File(path) => parse_instance(&std::fs::read_to_string(path)?),
            InstanceSource::Generator(g) => g.build(seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: InstanceSource,
    pub algorithm: Algorithm,
    pub f_spec: FSpec,
    pub seed: u64,
    pub eps: f64,
    /// Trace and score every prefix, not only the final one.
    pub prefix_mode: bool,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(source: InstanceSource, algorithm: Algorithm, f_spec: FSpec) -> Self {
        ExperimentConfig {
            source,
            algorithm,
            f_spec,
            seed: 0,
            eps: 1e-10,
            prefix_mode: false,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Usage(format!("eps must be > 0, got {}", self.eps)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub instance: InstanceStream,
    pub trace: RunTrace,
    /// Offline optimum per traced row.
    pub oracle: Vec<f64>,
    pub cover_ratio: f64,
    pub matching_ratio: f64,
    /// Present in prefix mode.
    pub worst_cover_ratio: Option<f64>,
    pub worst_matching_ratio: Option<f64>,
    pub summary: Vec<(String, String)>,
    pub csv: String,
}

/// Worst ratio over every traced prefix: the maximum for covers, the
/// minimum for matchings.
pub fn worst_prefix_ratio(trace: &RunTrace, oracle: &[f64], objective: Objective) -> Result<f64> {
    competitive_ratio(&trace.rows, oracle, objective, RatioMode::WorstPrefix)
}

/// Runs an algorithm on a stream and scores it against the offline oracle.
pub fn evaluate(
    stream: &InstanceStream,
    algorithm: Algorithm,
    func: Option<&AllocationFunction>,
    eps: f64,
    prefix_mode: bool,
) -> Result<(RunTrace, Vec<f64>)> {
    let trace = run_stream(stream, algorithm, func, eps, prefix_mode)?;
    let oracle = if prefix_mode {
        prefix_optima(stream)
    } else if stream.is_empty() {
        Vec::new()
    } else {
        vec![final_optimum(stream)]
    };
    Ok((trace, oracle))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let stream = config.source.load(config.seed)?;
    if stream.is_empty() {
        return Err(Error::Precondition("instance has no vertices".into()));
    }
    let func = match config.algorithm {
        Algorithm::GreedyBaseline => None,
        _ => Some(config.f_spec.build()?),
    };
    let (trace, oracle) = evaluate(&stream, config.algorithm, func.as_ref(), config.eps, config.prefix_mode)?;
    let ratio = |o, m| competitive_ratio(&trace.rows, &oracle, o, m);
    let cover_ratio = ratio(Objective::Cover, RatioMode::Final)?;
    let matching_ratio = ratio(Objective::Matching, RatioMode::Final)?;
    let (worst_cover_ratio, worst_matching_ratio) = if config.prefix_mode {
        (
            Some(ratio(Objective::Cover, RatioMode::WorstPrefix)?),
            Some(ratio(Objective::Matching, RatioMode::WorstPrefix)?),
        )
    } else {
        (None, None)
    };

    let mut summary: Vec<(String, String)> = vec![
        ("algo".into(), config.algorithm.name().into()),
        (
            "f".into(),
            func.as_ref().map_or("none".into(), |f| f.kind().label()),
        ),
        ("n".into(), stream.len().to_string()),
        ("edges".into(), stream.edge_count().to_string()),
        ("cover_cost".into(), g17(trace.final_cover_cost())),
        ("matching_value".into(), g17(trace.final_matching_value())),
        ("opt".into(), g17(*oracle.last().unwrap())),
        ("cover_ratio".into(), g17(cover_ratio)),
        ("matching_ratio".into(), g17(matching_ratio)),
    ];
    if let (Some(c), Some(m)) = (worst_cover_ratio, worst_matching_ratio) {
        summary.push(("worst_cover_ratio".into(), g17(c)));
        summary.push(("worst_matching_ratio".into(), g17(m)));
    }
    summary.extend([
        ("max_inv1_slack".into(), g17(trace.max_slacks.inv1_slack)),
        ("max_inv2_slack".into(), g17(trace.max_slacks.inv2_slack)),
        ("max_feasibility_slack".into(), g17(trace.max_slacks.feasibility_slack)),
        ("zero_weight_arrivals".into(), trace.zero_weight_arrivals.to_string()),
    ]);
    if let Some(b) = trace.beta {
        summary.push(("beta".into(), g17(b)));
    }
    let csv = write_trace_csv(&trace.rows, &summary);
    if let Some(path) = &config.output {
        std::fs::write(path, &csv)?;
    }
    Ok(ExperimentReport {
        instance: stream,
        trace,
        oracle,
        cover_ratio,
        matching_ratio,
        worst_cover_ratio,
        worst_matching_ratio,
        summary,
        csv,
    })
}
