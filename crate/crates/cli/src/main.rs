//! Command-line front end: configure, run, and export solves and sweeps, and
//! run the verification suite.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage/config error, 3 numerical
//! failure.

mod check;
mod config;
mod expr;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nlspectral::{
    max_error, solve_problem_detailed, sweep_delta, sweep_n, AnalysisError, AssembleError,
    CollocationSystem, ErrorRecord, GaussRuleKind, LegendreError, LinsolveError, MPolicy,
    NonlocalProblem, SolveConfig, SpectralSolution,
};
use output::{float17, record_json, records_csv, str_json, Json, GIT_HASH};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nlspectral",
    version,
    about = "Legendre spectral collocation for 1-D steady nonlocal diffusion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump quadrature nodes and weights at full precision
    Nodes(NodesArgs),
    /// Solve a problem and export the solution
    Solve(SolveArgs),
    /// Convergence sweep over N or over the horizon
    Sweep(SweepArgs),
    /// Run the built-in verification suite
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Lg,
    Lgr,
    Lgl,
}

impl From<RuleArg> for GaussRuleKind {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Lg => GaussRuleKind::Gauss,
            RuleArg::Lgr => GaussRuleKind::Radau,
            RuleArg::Lgl => GaussRuleKind::Lobatto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    N,
    Delta,
}

#[derive(Args)]
struct NodesArgs {
    /// Rule family
    #[arg(long, value_enum)]
    kind: RuleArg,
    /// Rule order (n+1 nodes)
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Built-in problem name (example1, local-limit) or `custom`
    #[arg(long)]
    problem: String,
    /// Problem definition file (required with --problem custom)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Collocation degree N (at least 2)
    #[arg(long)]
    n: usize,
    /// Horizon (required for built-in problems; overrides the config value)
    #[arg(long)]
    delta: Option<f64>,
    /// Operator quadrature order: `auto` (= N+8) or an integer >= N
    #[arg(long, default_value = "auto")]
    m: String,
    #[arg(long, value_enum, default_value_t = RuleArg::Lgl)]
    colloc_rule: RuleArg,
    #[arg(long, value_enum, default_value_t = RuleArg::Lgl)]
    quad_rule: RuleArg,
    /// Evaluation grid for solution samples and error measurement
    #[arg(long, default_value_t = nlspectral::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (stdout when omitted); CSV also writes `<stem>.nodal.csv`
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the assembled matrix (row-major CSV) and right-hand side
    #[arg(long)]
    dump_system: Option<PathBuf>,
    /// Accept horizons above 1 (rows truncated at both boundaries)
    #[arg(long)]
    allow_case_iv: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    problem: String,
    #[arg(long)]
    config: Option<PathBuf>,
    /// N range `start:end:step` (mode n)
    #[arg(long)]
    n_list: Option<String>,
    /// Fixed horizon (mode n)
    #[arg(long)]
    delta: Option<f64>,
    /// Comma-separated horizons (mode delta)
    #[arg(long)]
    delta_list: Option<String>,
    /// Fixed collocation degree (mode delta)
    #[arg(long)]
    n: Option<usize>,
    /// Operator quadrature order: `auto` (= N+8) or an integer
    #[arg(long, default_value = "auto")]
    m: String,
    #[arg(long, value_enum, default_value_t = RuleArg::Lgl)]
    colloc_rule: RuleArg,
    #[arg(long, value_enum, default_value_t = RuleArg::Lgl)]
    quad_rule: RuleArg,
    #[arg(long, default_value_t = nlspectral::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads (default: NLSPECTRAL_JOBS or all processors)
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    allow_case_iv: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Seed for the randomized property checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn map_analysis(e: AnalysisError) -> CliError {
    match &e {
        AnalysisError::Model(_) | AnalysisError::InvalidSweep(_) => usage(e.to_string()),
        AnalysisError::Assemble(
            AssembleError::HorizonRequiresCaseIv { .. }
            | AssembleError::QuadratureOrderTooLow { .. },
        ) => usage(e.to_string()),
        AnalysisError::Rule(LegendreError::InvalidOrder { .. }) => usage(e.to_string()),
        AnalysisError::Solve(LinsolveError::SingularMatrix { .. }) => {
            CliError::Numerical(format!("{e} (degenerate discretization)"))
        }
        _ => CliError::Numerical(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Nodes(args) => cmd_nodes(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Check(args) => cmd_check(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn write_or_stdout(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_m(src: &str, n: usize) -> Result<MPolicy, CliError> {
    if src == "auto" {
        return Ok(MPolicy::Auto);
    }
    let m: usize = src
        .parse()
        .map_err(|_| usage(format!("--m must be `auto` or an integer, got `{src}`")))?;
    if m < n {
        return Err(usage(format!(
            "quadrature order {m} must be at least N = {n}"
        )));
    }
    Ok(MPolicy::Fixed(m))
}

fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if let Some(j) = flag {
        return Ok(Some(j));
    }
    match std::env::var("NLSPECTRAL_JOBS") {
        Ok(v) => {
            let j: usize = v
                .parse()
                .map_err(|_| usage(format!("NLSPECTRAL_JOBS must be an integer, got `{v}`")))?;
            Ok(Some(j))
        }
        Err(_) => Ok(None),
    }
}

fn install_pool<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(j) => {
            if j == 0 {
                return Err(usage("--jobs must be positive"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| usage(format!("cannot build worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Built-in problems plus `custom` via a config file. Returns the problem,
/// its horizon, and a label for the output metadata.
fn build_problem(
    name: &str,
    config: Option<&Path>,
    delta: Option<f64>,
) -> Result<(NonlocalProblem, f64, String), CliError> {
    match name {
        "example1" => {
            let d = delta.ok_or_else(|| usage("--delta is required for --problem example1"))?;
            let p = nlspectral::example1_problem(d).map_err(|e| usage(e.to_string()))?;
            Ok((p, d, "example1".into()))
        }
        "local-limit" | "local_limit" => {
            let d = delta.ok_or_else(|| usage("--delta is required for --problem local-limit"))?;
            let p = nlspectral::local_limit_problem(d).map_err(|e| usage(e.to_string()))?;
            Ok((p, d, "local-limit".into()))
        }
        "custom" => {
            let path = config.ok_or_else(|| usage("--config is required for --problem custom"))?;
            let custom = config::load_problem(path, delta).map_err(usage)?;
            Ok((
                custom.problem,
                custom.delta,
                format!("custom:{}", path.display()),
            ))
        }
        other => Err(usage(format!(
            "unknown problem `{other}` (expected example1, local-limit, or custom)"
        ))),
    }
}

fn cmd_nodes(args: NodesArgs) -> Result<u8, CliError> {
    let kind: GaussRuleKind = args.kind.into();
    let rule = nlspectral::gauss_nodes(kind, args.n).map_err(|e| match e {
        LegendreError::InvalidOrder { .. } => usage(e.to_string()),
        other => CliError::Numerical(other.to_string()),
    })?;
    let content = match args.format {
        FormatArg::Csv => {
            let mut out = String::from("j,node,weight\n");
            for (j, (&x, &w)) in rule.nodes.iter().zip(&rule.weights).enumerate() {
                out.push_str(&format!("{j},{},{}\n", float17(x), float17(w)));
            }
            out
        }
        FormatArg::Json => Json::object()
            .field(
                "meta",
                Json::object()
                    .field("kind", str_json(kind.to_string()))
                    .field("n", Json::Int(args.n as i64))
                    .field("exact_degree", Json::Int(rule.exact_degree as i64))
                    .field("git", str_json(GIT_HASH)),
            )
            .field(
                "nodes",
                Json::Array(rule.nodes.iter().map(|&x| Json::Float(x)).collect()),
            )
            .field(
                "weights",
                Json::Array(rule.weights.iter().map(|&w| Json::Float(w)).collect()),
            )
            .to_string_pretty_enough(),
    };
    write_or_stdout(args.output.as_deref(), &content)?;
    Ok(0)
}

struct SolveOutput {
    solution: SpectralSolution,
    error: Option<ErrorRecord>,
    sample_xs: Vec<f64>,
    sample_u: Vec<f64>,
    sample_exact: Option<Vec<f64>>,
}

fn cmd_solve(args: SolveArgs) -> Result<u8, CliError> {
    if args.n < 2 {
        return Err(usage(format!(
            "collocation degree {} below minimum 2",
            args.n
        )));
    }
    if args.grid < 2 {
        return Err(usage("--grid must be at least 2"));
    }
    let (problem, delta, label) = build_problem(&args.problem, args.config.as_deref(), args.delta)?;
    if delta > 1.0 && !args.allow_case_iv {
        return Err(usage(format!(
            "horizon {delta} > 1 requires --allow-case-iv"
        )));
    }
    let cfg = SolveConfig {
        n: args.n,
        m: parse_m(&args.m, args.n)?,
        colloc_kind: args.colloc_rule.into(),
        quad_kind: args.quad_rule.into(),
        allow_case_iv: args.allow_case_iv,
        grid_size: args.grid,
    };
    let (solution, system) = solve_problem_detailed(&problem, &cfg).map_err(map_analysis)?;
    if let Some(path) = &args.dump_system {
        dump_system(path, &system)?;
    }

    let exact = problem.exact();
    let error = exact
        .as_ref()
        .map(|e| max_error(&solution, |x| e(x), args.grid));
    let sample_xs: Vec<f64> = (0..args.grid)
        .map(|i| (-1.0 + 2.0 * i as f64 / (args.grid - 1) as f64).min(1.0))
        .collect();
    let sample_u: Vec<f64> = sample_xs.iter().map(|&x| solution.eval(x)).collect();
    let sample_exact = exact.map(|e| sample_xs.iter().map(|&x| e(x)).collect());
    let out = SolveOutput {
        solution,
        error,
        sample_xs,
        sample_u,
        sample_exact,
    };

    print_solve_report(&label, &cfg, &out);
    match args.format {
        FormatArg::Csv => {
            let samples = solve_samples_csv(&out);
            write_or_stdout(args.output.as_deref(), &samples)?;
            if let Some(path) = &args.output {
                let nodal = solve_nodal_csv(&out.solution);
                std::fs::write(path.with_extension("nodal.csv"), nodal)
                    .map_err(|e| usage(format!("cannot write nodal values: {e}")))?;
            }
        }
        FormatArg::Json => {
            let doc = solve_json(&label, &out);
            write_or_stdout(args.output.as_deref(), &doc)?;
        }
    }
    Ok(0)
}

fn print_solve_report(label: &str, cfg: &SolveConfig, out: &SolveOutput) {
    let meta = out.solution.meta();
    println!("problem={label}");
    println!("n={}", meta.n);
    println!("m={}", meta.m);
    println!("delta={}", float17(meta.delta));
    println!("colloc_rule={}", meta.colloc_kind);
    println!("quad_rule={}", meta.quad_kind);
    println!("grid={}", cfg.grid_size);
    println!("residual_inf={}", float17(out.solution.residual_inf()));
    println!("pivot_growth={}", float17(out.solution.pivot_growth()));
    match out.solution.condition_estimate() {
        Some(c) => println!("condition_estimate={}", float17(c)),
        None => println!("condition_estimate=none"),
    }
    if let Some(err) = &out.error {
        println!("max_error={}", float17(err.max_error));
        println!("argmax_x={}", float17(err.argmax_x));
    }
    println!("wall_ms={}", float17(out.solution.wall_ms()));
}

fn solve_samples_csv(out: &SolveOutput) -> String {
    let mut s = String::new();
    match &out.sample_exact {
        Some(exact) => {
            s.push_str("x,u_num,u_exact,abs_error\n");
            for ((&x, &u), &e) in out.sample_xs.iter().zip(&out.sample_u).zip(exact) {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    float17(x),
                    float17(u),
                    float17(e),
                    float17((u - e).abs())
                ));
            }
        }
        None => {
            s.push_str("x,u_num\n");
            for (&x, &u) in out.sample_xs.iter().zip(&out.sample_u) {
                s.push_str(&format!("{},{}\n", float17(x), float17(u)));
            }
        }
    }
    s
}

fn solve_nodal_csv(solution: &SpectralSolution) -> String {
    let mut s = String::from("k,x_k,u_k\n");
    for (k, (&x, &u)) in solution
        .basis()
        .nodes()
        .iter()
        .zip(solution.nodal())
        .enumerate()
    {
        s.push_str(&format!("{k},{},{}\n", float17(x), float17(u)));
    }
    s
}

fn solve_json(label: &str, out: &SolveOutput) -> String {
    let meta = out.solution.meta();
    let mut doc = Json::object()
        .field(
            "meta",
            Json::object()
                .field("problem", str_json(label))
                .field("n", Json::Int(meta.n as i64))
                .field("m", Json::Int(meta.m as i64))
                .field("delta", Json::Float(meta.delta))
                .field("colloc_rule", str_json(meta.colloc_kind.to_string()))
                .field("quad_rule", str_json(meta.quad_kind.to_string()))
                .field("git", str_json(GIT_HASH)),
        )
        .field("report", {
            let mut r = Json::object()
                .field("residual_inf", Json::Float(out.solution.residual_inf()))
                .field("pivot_growth", Json::Float(out.solution.pivot_growth()));
            if let Some(c) = out.solution.condition_estimate() {
                r = r.field("condition_estimate", Json::Float(c));
            }
            r
        });
    if let Some(err) = &out.error {
        doc = doc
            .field("max_error", Json::Float(err.max_error))
            .field("argmax_x", Json::Float(err.argmax_x));
    }
    doc = doc.field(
        "nodal",
        Json::object()
            .field(
                "x",
                Json::Array(
                    out.solution
                        .basis()
                        .nodes()
                        .iter()
                        .map(|&v| Json::Float(v))
                        .collect(),
                ),
            )
            .field(
                "u",
                Json::Array(
                    out.solution
                        .nodal()
                        .iter()
                        .map(|&v| Json::Float(v))
                        .collect(),
                ),
            ),
    );
    let mut samples = Json::object()
        .field(
            "x",
            Json::Array(out.sample_xs.iter().map(|&v| Json::Float(v)).collect()),
        )
        .field(
            "u",
            Json::Array(out.sample_u.iter().map(|&v| Json::Float(v)).collect()),
        );
    if let Some(exact) = &out.sample_exact {
        samples = samples.field(
            "u_exact",
            Json::Array(exact.iter().map(|&v| Json::Float(v)).collect()),
        );
    }
    doc.field("samples", samples).to_string_pretty_enough()
}

fn dump_system(path: &Path, system: &CollocationSystem) -> Result<(), CliError> {
    let n = system.matrix.size();
    let mut a = String::new();
    for i in 0..n {
        let row: Vec<String> = system.matrix.row(i).iter().map(|&v| float17(v)).collect();
        a.push_str(&row.join(","));
        a.push('\n');
    }
    std::fs::write(path, a).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    let mut b = String::new();
    for &v in &system.rhs {
        b.push_str(&float17(v));
        b.push('\n');
    }
    let b_path = path.with_extension("rhs.csv");
    std::fs::write(&b_path, b)
        .map_err(|e| usage(format!("cannot write {}: {e}", b_path.display())))?;
    Ok(())
}

fn parse_n_range(src: &str) -> Result<Vec<usize>, CliError> {
    let parts: Vec<&str> = src.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!(
            "--n-list must be start:end:step, got `{src}`"
        )));
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| usage(format!("bad integer `{p}` in --n-list")))
        })
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step == 0 || end < start {
        return Err(usage(format!("empty N range `{src}`")));
    }
    Ok((start..=end).step_by(step).collect())
}

fn parse_delta_list(src: &str) -> Result<Vec<f64>, CliError> {
    let list: Vec<f64> = src
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad float `{s}` in --delta-list")))
        })
        .collect::<Result<_, _>>()?;
    if list.is_empty() {
        return Err(usage("--delta-list is empty"));
    }
    Ok(list)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, CliError> {
    if args.grid < 1000 {
        return Err(usage("--grid must be at least 1000 for sweeps"));
    }
    let jobs = resolve_jobs(args.jobs)?;
    let base = SolveConfig {
        n: 2,
        m: MPolicy::Auto,
        colloc_kind: args.colloc_rule.into(),
        quad_kind: args.quad_rule.into(),
        allow_case_iv: args.allow_case_iv,
        grid_size: args.grid,
    };
    match args.mode {
        ModeArg::N => {
            let list_src = args
                .n_list
                .as_deref()
                .ok_or_else(|| usage("--n-list is required in mode n"))?;
            let n_list = parse_n_range(list_src)?;
            if n_list.iter().any(|&n| n < 2) {
                return Err(usage("every N in the sweep must be at least 2"));
            }
            let (problem, delta, label) =
                build_problem(&args.problem, args.config.as_deref(), args.delta)?;
            if delta > 1.0 && !args.allow_case_iv {
                return Err(usage(format!(
                    "horizon {delta} > 1 requires --allow-case-iv"
                )));
            }
            let m_policy = parse_m(&args.m, *n_list.last().unwrap())?;
            let records = install_pool(jobs, || sweep_n(&problem, &n_list, m_policy, &base))?
                .map_err(map_analysis)?;
            let content = match args.format {
                FormatArg::Csv => records_csv(&records, None),
                FormatArg::Json => sweep_json(&label, "n", &base, &records, None, None),
            };
            write_or_stdout(args.output.as_deref(), &content)?;
        }
        ModeArg::Delta => {
            let list_src = args
                .delta_list
                .as_deref()
                .ok_or_else(|| usage("--delta-list is required in mode delta"))?;
            let delta_list = parse_delta_list(list_src)?;
            let n = args
                .n
                .ok_or_else(|| usage("--n is required in mode delta"))?;
            if n < 2 {
                return Err(usage(format!("collocation degree {n} below minimum 2")));
            }
            if delta_list.iter().any(|&d| d > 1.0) && !args.allow_case_iv {
                return Err(usage("horizons above 1 require --allow-case-iv"));
            }
            let m_policy = parse_m(&args.m, n)?;
            // build every problem up front so config errors surface as
            // usage errors before any solving starts
            let mut prebuilt: Vec<(u64, NonlocalProblem)> = Vec::with_capacity(delta_list.len());
            for &d in &delta_list {
                let (p, _, _) = build_problem(&args.problem, args.config.as_deref(), Some(d))?;
                prebuilt.push((d.to_bits(), p));
            }
            let sweep = install_pool(jobs, || {
                sweep_delta(
                    |d| {
                        prebuilt
                            .iter()
                            .find(|(bits, _)| *bits == d.to_bits())
                            .map(|(_, p)| p.clone())
                            .ok_or(nlspectral::ModelError::InvalidHorizon { delta: d, max: 1.0 })
                    },
                    &delta_list,
                    n,
                    m_policy,
                    &base,
                )
            })?
            .map_err(map_analysis)?;
            let label = args.problem;
            let trailer = format!(
                "# slope,{}\n# floor_dominated,{}",
                float17(sweep.slope),
                sweep.floor_dominated
            );
            let content = match args.format {
                FormatArg::Csv => records_csv(&sweep.records, Some(&trailer)),
                FormatArg::Json => sweep_json(
                    &label,
                    "delta",
                    &base,
                    &sweep.records,
                    Some(sweep.slope),
                    Some(sweep.floor_dominated),
                ),
            };
            write_or_stdout(args.output.as_deref(), &content)?;
        }
    }
    Ok(0)
}

fn sweep_json(
    label: &str,
    mode: &str,
    base: &SolveConfig,
    records: &[ErrorRecord],
    slope: Option<f64>,
    floor_dominated: Option<bool>,
) -> String {
    let mut doc = Json::object().field(
        "meta",
        Json::object()
            .field("problem", str_json(label))
            .field("mode", str_json(mode))
            .field("colloc_rule", str_json(base.colloc_kind.to_string()))
            .field("quad_rule", str_json(base.quad_kind.to_string()))
            .field("grid", Json::Int(base.grid_size as i64))
            .field("git", str_json(GIT_HASH)),
    );
    doc = doc.field(
        "records",
        Json::Array(records.iter().map(record_json).collect()),
    );
    if let Some(s) = slope {
        doc = doc.field("slope", Json::Float(s));
    }
    if let Some(f) = floor_dominated {
        doc = doc.field("floor_dominated", Json::Bool(f));
    }
    doc.to_string_pretty_enough()
}

fn cmd_check(args: CheckArgs) -> Result<u8, CliError> {
    let jobs = resolve_jobs(args.jobs)?;
    let outcomes = install_pool(jobs, || check::run_all(args.seed))?;
    let mut passed = 0;
    let mut skipped = 0;
    let mut failed = 0;
    for outcome in &outcomes {
        let tag = match outcome.status {
            check::Status::Pass => {
                passed += 1;
                "PASS"
            }
            check::Status::Skip => {
                skipped += 1;
                "SKIP"
            }
            check::Status::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!("{tag} {}: {}", outcome.name, outcome.detail);
    }
    println!(
        "checks: {passed} passed, {skipped} skipped, {failed} failed (seed {})",
        args.seed
    );
    Ok(if failed > 0 { 1 } else { 0 })
}
