//! Command-line front end: `simulate`, `optimize-f`, `verify`, `adversary`
//! and `ski-rental`.
//!
//! Exit codes: 0 on success, 1 when an invariant or numerical check fails,
//! 2 on usage or input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use onlinecover::allocation::{
    beta_of, coth_fixed_point, ode_residual, optimal_k, product_identity_residual,
    AllocationFunction,
};
use onlinecover::engine::{run_stream, write_trace_csv, Algorithm};
use onlinecover::harness::{
    adaptive_adversary_vc, evaluate, parse_budget, run_experiment, worst_prefix_ratio,
    ExperimentConfig, FSpec, GenSpec, InstanceSource,
};
use onlinecover::instance::{
    gen_random, reduce_ski_rental, serialize_instance, ski_rental_offline_optimum, RandomMode,
};
use onlinecover::numfmt::g17;
use onlinecover::oracle::{
    brute_force_half_integral, final_optimum, fractional_optima_general, Objective, StaticGraph,
};
use onlinecover::Error;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "onlinecover", version, about = "Online fractional vertex cover and matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an algorithm on an instance and score it against the offline optimum.
    Simulate(SimulateArgs),
    /// Find the ratio-minimising member of the closed-form family.
    OptimizeF {
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Run a built-in check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Play the alternation adversary against an algorithm.
    Adversary(AdversaryArgs),
    /// Score an algorithm on the reduced ski-rental instance.
    SkiRental(SkiArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Oracle,
    Invariants,
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Waterfill,
    PrimalDual,
    Greedy,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Waterfill => Algorithm::WaterFill,
            AlgoArg::PrimalDual => Algorithm::PrimalDual,
            AlgoArg::Greedy => Algorithm::GreedyBaseline,
        }
    }
}

#[derive(Args, Debug)]
struct AlgoOpts {
    #[arg(long, value_enum, default_value_t = AlgoArg::PrimalDual)]
    algo: AlgoArg,
    /// linear-alpha | family-k:<k> | greedy | optimal
    #[arg(long = "f", default_value = "optimal")]
    f: String,
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,
}

impl AlgoOpts {
    fn function(&self) -> onlinecover::Result<Option<AllocationFunction>> {
        let spec = FSpec::parse(&self.f)?;
        match self.algo {
            AlgoArg::Greedy => Ok(None),
            _ => spec.build().map(Some),
        }
    }
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// triangular:n | two-phase:n | complete:d,m | random:n,p[,seed[,mode]] | ski:B,eps,t_end
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    gen: Option<String>,
    /// Instance file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    algo: AlgoOpts,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trace and score every prefix.
    #[arg(long)]
    prefix: bool,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AdversaryArgs {
    /// k,d[,cap]
    #[arg(long)]
    budget: String,
    #[command(flatten)]
    algo: AlgoOpts,
    /// Trace CSV of the transcript replay.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the transcript as an instance file.
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SkiArgs {
    /// B,eps,t_end for the classical rent-or-buy game.
    #[arg(long, default_value = "100,1,300")]
    spec: String,
    #[arg(long, value_enum, default_value_t = AlgoArg::Waterfill)]
    algo: AlgoArg,
    #[arg(long = "f", default_value = "linear-alpha")]
    f: String,
    #[arg(long, default_value_t = 1e-10)]
    eps: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation { .. }
        | Error::Convergence(_)
        | Error::Numeric(_)
        | Error::Quadrature { .. } => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

struct Outcome {
    code: i32,
}

type CmdResult = onlinecover::Result<Outcome>;

fn ok() -> CmdResult {
    Ok(Outcome { code: EXIT_OK })
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> CmdResult {
    let source = match (&a.gen, &a.input) {
        (Some(g), _) => InstanceSource::Generator(GenSpec::parse(g)?),
        (None, Some(p)) => InstanceSource::File(p.clone()),
        (None, None) => return Err(Error::Usage("one of --gen or --input is required".into())),
    };
    let mut config = ExperimentConfig::new(source, a.algo.algo.into(), FSpec::parse(&a.algo.f)?);
    config.seed = a.seed;
    config.eps = a.algo.eps;
    config.prefix_mode = a.prefix;
    config.output = a.csv.clone();
    let report = run_experiment(&config)?;
    for (k, v) in &report.summary {
        writeln!(out, "{k}: {v}").map_err(io)?;
    }
    ok()
}

fn optimize_f(tol: f64, out: &mut dyn Write) -> CmdResult {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Usage(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let r = optimal_k(tol)?;
    writeln!(out, "k: {}", g17(r.k)).map_err(io)?;
    writeln!(out, "beta: {}", g17(r.beta)).map_err(io)?;
    writeln!(out, "coth_fixed_point: {}", g17(r.coth_k)).map_err(io)?;
    ok()
}

fn check_line(out: &mut dyn Write, name: &str, value: f64, limit: f64) -> onlinecover::Result<bool> {
    let pass = value < limit;
    writeln!(
        out,
        "{name}: {} (limit {}) {}",
        g17(value),
        g17(limit),
        if pass { "ok" } else { "FAIL" }
    )
    .map_err(io)?;
    Ok(pass)
}

fn verify_identities(out: &mut dyn Write) -> onlinecover::Result<bool> {
    let mut pass = true;
    let k_star = coth_fixed_point();
    for k in [1.0, k_star, 2.0] {
        let f = AllocationFunction::closed_form(k)?;
        let beta = beta_of(&f, 10_000)?;
        pass &= check_line(out, &format!("ode_residual[k={k:.7}]"), ode_residual(k, 10_000, 1e-5), 1e-5)?;
        pass &= check_line(
            out,
            &format!("product_residual[k={k:.7}]"),
            product_identity_residual(k, 10_000),
            1e-9,
        )?;
        pass &= check_line(out, &format!("beta_spread[k={k:.7}]"), beta.spread, 1e-6)?;
        if k == 1.0 {
            pass &= check_line(out, "beta_greedy_minus_2", (beta.beta - 2.0).abs(), 1e-9)?;
        }
    }
    Ok(pass)
}

fn verify_oracle(out: &mut dyn Write) -> onlinecover::Result<bool> {
    let mut worst: f64 = 0.0;
    for i in 0..200u64 {
        let n = 1 + (i as usize % 10);
        let p = [0.2, 0.5, 0.8][(i / 10) as usize % 3];
        let g = StaticGraph::from_stream(&gen_random(n, p, 7000 + i, RandomMode::General)?);
        let frac = fractional_optima_general(&g).min_cover_value;
        worst = worst.max((frac - brute_force_half_integral(&g)?).abs());
    }
    check_line(out, "double_cover_vs_brute_force", worst, 1e-12)
}

fn verify_invariants(out: &mut dyn Write) -> onlinecover::Result<bool> {
    let f = AllocationFunction::optimal()?;
    let (mut i1, mut i2, mut feas): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for seed in 0..10 {
        let s = gen_random(200, [0.05, 0.1, 0.3][seed as usize % 3], seed, RandomMode::General)?;
        let t = run_stream(&s, Algorithm::PrimalDual, Some(&f), 1e-10, false)?;
        i1 = i1.max(t.max_slacks.inv1_slack);
        i2 = i2.max(t.max_slacks.inv2_slack);
        feas = feas.max(t.max_slacks.feasibility_slack);
    }
    let mut pass = check_line(out, "max_inv1_slack", i1, 1e-8)?;
    pass &= check_line(out, "max_inv2_slack", i2, 1e-8)?;
    pass &= check_line(out, "max_feasibility_slack", feas, 1e-9)?;
    Ok(pass)
}

fn verify(suite: Suite, out: &mut dyn Write) -> CmdResult {
    let mut pass = true;
    if matches!(suite, Suite::Identities | Suite::All) {
        pass &= verify_identities(out)?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        pass &= verify_oracle(out)?;
    }
    if matches!(suite, Suite::Invariants | Suite::All) {
        pass &= verify_invariants(out)?;
    }
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_INVARIANT },
    })
}

fn adversary(a: &AdversaryArgs, out: &mut dyn Write) -> CmdResult {
    let budget = parse_budget(&a.budget)?;
    if !(a.algo.eps > 0.0) {
        return Err(Error::Usage(format!("--eps must be > 0, got {}", a.algo.eps)));
    }
    let func = a.algo.function()?;
    let algo: Algorithm = a.algo.algo.into();
    let r = adaptive_adversary_vc(&budget, algo, func.as_ref(), a.algo.eps)?;
    let sizes: Vec<String> = r.phase_sizes.iter().map(ToString::to_string).collect();
    writeln!(out, "phases: {}", budget.phases).map_err(io)?;
    writeln!(out, "offline_d: {}", budget.offline_d).map_err(io)?;
    writeln!(out, "per_phase_cap: {}", budget.per_phase_cap).map_err(io)?;
    writeln!(out, "convergence_threshold: {}", g17(budget.convergence_threshold)).map_err(io)?;
    writeln!(out, "phase_sizes: {}", sizes.join(",")).map_err(io)?;
    writeln!(out, "budget_exhausted: {}", r.budget_exhausted).map_err(io)?;
    writeln!(out, "worst_prefix: {}", r.worst_prefix).map_err(io)?;
    writeln!(out, "worst_cover_ratio: {}", g17(r.ratio)).map_err(io)?;
    if let Some(path) = &a.transcript {
        std::fs::write(path, serialize_instance(&r.transcript))?;
    }
    if let Some(path) = &a.csv {
        let (trace, oracle) = evaluate(&r.transcript, algo, func.as_ref(), a.algo.eps, true)?;
        let worst = worst_prefix_ratio(&trace, &oracle, Objective::Cover)?;
        let summary = vec![
            ("algo".to_string(), algo.name().to_string()),
            ("phases".to_string(), budget.phases.to_string()),
            ("offline_d".to_string(), budget.offline_d.to_string()),
            ("per_phase_cap".to_string(), budget.per_phase_cap.to_string()),
            ("worst_cover_ratio".to_string(), g17(worst)),
            ("budget_exhausted".to_string(), r.budget_exhausted.to_string()),
        ];
        std::fs::write(path, write_trace_csv(&trace.rows, &summary))?;
    }
    ok()
}

fn ski_rental(a: &SkiArgs, out: &mut dyn Write) -> CmdResult {
    let GenSpec::Ski(spec) = GenSpec::parse(&format!("ski:{}", a.spec))? else {
        unreachable!("ski prefix always parses to a ski spec")
    };
    let mut config = ExperimentConfig::new(
        InstanceSource::Generator(GenSpec::Ski(spec.clone())),
        a.algo.into(),
        FSpec::parse(&a.f)?,
    );
    config.eps = a.eps;
    config.prefix_mode = true;
    config.output = a.csv.clone();
    let report = run_experiment(&config)?;
    let reduced_opt = final_optimum(&reduce_ski_rental(&spec)?);
    let direct_opt = ski_rental_offline_optimum(&spec)?;
    writeln!(out, "intervals: {}", spec.intervals()).map_err(io)?;
    writeln!(out, "offline_optimum_reduction: {}", g17(reduced_opt)).map_err(io)?;
    writeln!(out, "offline_optimum_direct: {}", g17(direct_opt)).map_err(io)?;
    writeln!(out, "online_cost: {}", g17(report.trace.final_cover_cost())).map_err(io)?;
    writeln!(out, "final_ratio: {}", g17(report.cover_ratio)).map_err(io)?;
    writeln!(out, "worst_prefix_ratio: {}", g17(report.worst_cover_ratio.unwrap_or(f64::NAN)))
        .map_err(io)?;
    ok()
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`.
pub fn cli_main_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::OptimizeF { tol } => optimize_f(*tol, out),
        Command::Verify { suite } => verify(*suite, out),
        Command::Adversary(a) => adversary(a, out),
        Command::SkiRental(a) => ski_rental(a, out),
    };
    match result {
        Ok(o) => o.code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cli_main<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    cli_main_with(args, &mut stdout.lock(), &mut stderr.lock())
}
