use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cdo_core::domains::{encode_budget, encode_spanning_tree, BudgetSpec};
use cdo_core::harness::{
    gen_base_profile, gen_connected_graph, run_benchmark, summarize, summary_svg,
    threshold_profile, write_records_csv, write_summary_csv, BenchConfig,
};
use cdo_core::model::{bits_to_01, format_bits};
use cdo_core::rules::{solve, Backend, Mode, Operator, RuleOptions};
use cdo_core::solver::{encode_cc, encode_egal, encode_sum, export_lp};
use cdo_core::translate::{check_equivalence, Agreement};
use cdo_core::{io, CdoError, CdoInstance, Graph, Profile, RuleSpec, SetScoring};

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "cdo", version, about = "Collective decisions over constrained binary agendas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a rule to an instance file and print the winning outcomes.
    Solve(SolveArgs),
    /// Build an instance file from a budget, graph or schedule description.
    #[command(subcommand)]
    Encode(EncodeCommand),
    /// Write the optimisation model of a rule in LP format.
    ExportIlp(ExportArgs),
    /// Generate a random connected graph with unit edge costs.
    GenGraph(GenGraphArgs),
    /// Generate a random base profile, or a thresholded approval profile.
    GenProfile(GenProfileArgs),
    /// Time rules on random spanning-tree instances.
    Bench(BenchArgs),
    /// Check rule agreements on seeded random instances.
    CheckEquiv(CheckArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file (JSON, format cdo/1).
    #[arg(long)]
    instance: PathBuf,
    /// Add a budget limit over item weights to the feasibility constraints.
    #[arg(long)]
    budget: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    /// Branch and bound.
    Bb,
    /// Score every feasible outcome.
    Enumerate,
}

#[derive(Args)]
struct SolveArgs {
    /// Rule as operator:scoring, e.g. sum:simple, egal:cc, rank:weight.
    #[arg(long)]
    rule: RuleSpec,
    #[command(flatten)]
    input: InstanceArgs,
    /// Report every co-winning outcome (default).
    #[arg(long, conflicts_with = "one")]
    all: bool,
    /// Report a single winning outcome.
    #[arg(long)]
    one: bool,
    /// Maximum number of co-winners to report.
    #[arg(long, default_value_t = 1000)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = BackendArg::Bb)]
    backend: BackendArg,
    /// Give up after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Also write the result as an outcome file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EncodeCommand {
    /// Participatory budget: add a budget limit to an instance.
    Pb {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        budget: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spanning trees of a graph, with a given or random profile.
    Tree(TreeArgs),
    /// Job ordering from a schedule file with per-voter partial orders.
    Schedule {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TreeArgs {
    /// Edge-list file: node count, then `i j cost` lines.
    #[arg(long)]
    graph: PathBuf,
    /// JSON list of 0/1 ballots over the edges in canonical order.
    #[arg(long, conflicts_with_all = ["voters", "p"])]
    profile: Option<PathBuf>,
    /// Number of random voters.
    #[arg(long, requires = "p")]
    voters: Option<usize>,
    /// Acceptance level of the random voters.
    #[arg(long, requires = "voters")]
    p: Option<f64>,
    #[arg(long, env = "CDO_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    rule: RuleSpec,
    #[command(flatten)]
    input: InstanceArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenGraphArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    edges: usize,
    #[arg(long, env = "CDO_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenProfileArgs {
    #[arg(long)]
    voters: usize,
    #[arg(long)]
    items: usize,
    /// Threshold the base profile at this level and emit 0/1 ballots.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, env = "CDO_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 6)]
    min_nodes: usize,
    #[arg(long, default_value_t = 8)]
    max_nodes: usize,
    #[arg(long, default_value_t = 100)]
    voters: usize,
    /// Base profiles per graph.
    #[arg(long, default_value_t = 10)]
    profiles: usize,
    /// Acceptance levels, comma separated, in steps of 0.1.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    p: Vec<f64>,
    /// Rules, comma separated. Defaults to sum:simple, sum:cc, egal:simple.
    #[arg(long, value_delimiter = ',')]
    rules: Vec<RuleSpec>,
    /// Also run rank:simple and rank:cc.
    #[arg(long)]
    include_rank: bool,
    /// Collect every co-winner instead of one.
    #[arg(long)]
    all: bool,
    /// Per-instance time limit in seconds.
    #[arg(long, default_value_t = 1200.0)]
    timeout: f64,
    #[arg(long, env = "CDO_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Per-run records.
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
    /// Mean time per node count, p and rule.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Chart of the summary.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// simple-swap, weight-wswap or ranked-agenda (also lemma1i, lemma1ii, lemma1iii).
    #[arg(long)]
    which: Agreement,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, env = "CDO_SEED", default_value_t = 0)]
    seed: u64,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn with_budget(instance: CdoInstance, budget: i64) -> anyhow::Result<CdoInstance> {
    let mut feasibility =
        encode_budget(instance.agenda(), BudgetSpec::new(budget)?, Vec::new())?;
    feasibility.extend(instance.feasibility().clone())?;
    Ok(CdoInstance::new(
        instance.agenda().clone(),
        instance.rationality().clone(),
        feasibility,
        instance.profile().clone(),
    )?)
}

fn load(input: &InstanceArgs) -> anyhow::Result<CdoInstance> {
    let instance = io::instance_from_json(&read(&input.instance)?)?;
    match input.budget {
        Some(b) => with_budget(instance, b),
        None => Ok(instance),
    }
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<()> {
    let instance = load(&args.input)?;
    let opts = RuleOptions {
        mode: if args.one { Mode::OneWitness } else { Mode::EnumerateAll },
        backend: match args.backend {
            BackendArg::Bb => Backend::BranchAndBound,
            BackendArg::Enumerate => Backend::Enumerate,
        },
        optima_cap: args.cap,
        deadline: args.timeout.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        ..RuleOptions::default()
    };
    let result = solve(args.rule, &instance, &opts)?;
    let ids = instance.agenda().ids();
    println!("rule: {}", args.rule);
    println!("optimum: {}", result.optimum);
    println!("outcomes: {}", result.outcomes.len());
    for o in &result.outcomes {
        let accepted: Vec<&str> = o.accepted().map(|k| ids[k].as_str()).collect();
        println!("  {}  {{{}}}", format_bits(&o.bits), accepted.join(", "));
    }
    if result.truncated {
        println!("(stopped at {} co-winners)", args.cap);
    }
    if !result.trace.is_empty() {
        println!("trace:");
        for d in &result.trace {
            println!("  {} {}", d.id, if d.accepted { "accept" } else { "reject" });
        }
    }
    if let Some(path) = &args.output {
        emit(Some(path), &io::result_to_json(args.rule, &result)?)?;
    }
    Ok(())
}

fn cmd_encode(command: EncodeCommand) -> anyhow::Result<()> {
    match command {
        EncodeCommand::Pb {
            instance,
            budget,
            output,
        } => {
            let instance = with_budget(io::instance_from_json(&read(&instance)?)?, budget)?;
            emit(output.as_deref(), &io::instance_to_json(&instance)?)
        }
        EncodeCommand::Tree(args) => {
            let graph = Graph::parse_text(&read(&args.graph)?)?;
            let (agenda, feasibility) = encode_spanning_tree(&graph)?;
            let profile = match (&args.profile, args.voters, args.p) {
                (Some(path), _, _) => {
                    let rows: Vec<Vec<u8>> = serde_json::from_str(&read(path)?)?;
                    Profile::from_01(&rows)?
                }
                (None, Some(n), Some(p)) => {
                    threshold_profile(&gen_base_profile(n, graph.num_edges(), args.seed), p)?
                }
                _ => bail!("give either --profile or both --voters and --p"),
            };
            let instance = CdoInstance::unconstrained_ballots(agenda, feasibility, profile)?;
            emit(args.output.as_deref(), &io::instance_to_json(&instance)?)
        }
        EncodeCommand::Schedule { input, output } => {
            let (_, instance) = io::schedule_from_json::<i64>(&read(&input)?)?;
            emit(output.as_deref(), &io::instance_to_json(&instance)?)
        }
    }
}

fn cmd_export(args: ExportArgs) -> anyhow::Result<()> {
    let instance = load(&args.input)?;
    let rule = args.rule;
    let model = match (rule.operator, rule.scoring) {
        (Operator::Rank, _) => bail!("ranked rules are greedy and have no optimisation model"),
        (op, SetScoring::Cc) => encode_cc(op, &instance)?,
        (Operator::Sum, s) => encode_sum(s, &instance)?,
        (Operator::Egal, s) => encode_egal(s, &instance)?,
    };
    emit(args.output.as_deref(), &export_lp(&model))
}

fn cmd_gen_graph(args: GenGraphArgs) -> anyhow::Result<()> {
    let graph = gen_connected_graph::<i64>(args.nodes, args.edges, args.seed)?;
    emit(args.output.as_deref(), &graph.to_text())
}

fn cmd_gen_profile(args: GenProfileArgs) -> anyhow::Result<()> {
    let base = gen_base_profile(args.voters, args.items, args.seed);
    let text = match args.p {
        Some(p) => {
            let profile = threshold_profile(&base, p)?;
            let rows: Vec<Vec<u8>> = profile.ballots().iter().map(|b| bits_to_01(b.bits())).collect();
            serde_json::to_string(&rows)?
        }
        None => base
            .entries()
            .iter()
            .map(|row| row.iter().map(f64::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    emit(args.output.as_deref(), &text)
}

fn cmd_bench(args: BenchArgs) -> anyhow::Result<u8> {
    let mut rules = if args.rules.is_empty() {
        BenchConfig::default_rules()
    } else {
        args.rules.clone()
    };
    if args.include_rank {
        rules.extend(BenchConfig::rank_rules());
    }
    let p_tenths = args
        .p
        .iter()
        .map(|&p| {
            let t = (p * 10.0).round();
            if (p * 10.0 - t).abs() > 1e-9 {
                bail!("acceptance level {p} is not a multiple of 0.1");
            }
            Ok(t as u32)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if args.timeout.is_nan() || args.timeout <= 0.0 {
        bail!("timeout must be positive");
    }
    let config = BenchConfig {
        min_nodes: args.min_nodes,
        max_nodes: args.max_nodes,
        voters: args.voters,
        profiles_per_graph: args.profiles,
        p_tenths,
        rules,
        timeout: Duration::from_secs_f64(args.timeout),
        seed: args.seed,
        workers: args.workers,
        mode: if args.all { Mode::EnumerateAll } else { Mode::OneWitness },
    };
    config.validate()?;
    log::info!("running {} solves", config.grid_size());
    let records = run_benchmark(&config)?;
    let file = fs::File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_records_csv(&records, file)?;
    let summary = summarize(&records);
    if let Some(path) = &args.summary {
        write_summary_csv(&summary, fs::File::create(path)?)?;
    }
    if let Some(path) = &args.svg {
        fs::write(path, summary_svg(&summary))?;
    }
    let timeouts = records.iter().filter(|r| r.timed_out).count();
    let mut out = std::io::stdout().lock();
    writeln!(out, "{} runs, {} timed out", records.len(), timeouts)?;
    for row in &summary {
        writeln!(
            out,
            "{:<12} |V|={} p={:.1} mean {:>10.3} ms",
            row.rule, row.num_nodes, row.p, row.mean_time_ms
        )?;
    }
    Ok(if !records.is_empty() && timeouts == records.len() {
        EXIT_TIMEOUT
    } else {
        0
    })
}

fn cmd_check(args: CheckArgs) -> anyhow::Result<u8> {
    let report = check_equivalence(args.which, args.trials, args.seed)?;
    if report.passed() {
        println!("{}: pass ({} trials)", report.check, report.trials);
        Ok(0)
    } else {
        println!(
            "{}: FAIL ({} of {} trials disagree)",
            report.check,
            report.failures.len(),
            report.trials
        );
        for f in &report.failures {
            println!("{f}");
        }
        Ok(EXIT_USAGE)
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a).map(|_| 0),
        Command::Encode(c) => cmd_encode(c).map(|_| 0),
        Command::ExportIlp(a) => cmd_export(a).map(|_| 0),
        Command::GenGraph(a) => cmd_gen_graph(a).map(|_| 0),
        Command::GenProfile(a) => cmd_gen_profile(a).map(|_| 0),
        Command::Bench(a) => cmd_bench(a),
        Command::CheckEquiv(a) => cmd_check(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<CdoError>() {
                Some(CdoError::Infeasible) => EXIT_INFEASIBLE,
                Some(CdoError::Timeout) => EXIT_TIMEOUT,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}
