use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vck::bench::{
    apply_variant, format_ratio, run_bench, run_dp, run_hsk, run_sck, run_vck_approx, run_vck_oracle, write_csv,
    Algorithm, BenchConfig, BenchRecord, Decision, SolveReport,
};
use vck::io::{
    detect_format, parse_hsk_file, parse_sck_file, parse_td, parse_vck_file, serialize_hsk, serialize_sck,
    serialize_td, serialize_vck, FileKind, HskFile, SckFile,
};
use vck::oracle::{oracle_hsk_with, oracle_sck_with, Objective};
use vck::parallel::Execution;
use vck::reductions::{
    gen_budget_from_vc, gen_minimal_tree_from_knapsack, gen_vck_from_vc, random_graph, random_hitting_set,
    random_ktree, random_set_system, random_tree,
};
use vck::treewidth::{build_decomposition, validate_decomposition, Heuristic};
use vck::{KnapsackBound, Result, Variant, VariantKind, VckError, VckInstance};

#[derive(Parser)]
#[command(name = "vck", version, about = "Vertex cover knapsack solvers, approximations and generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact treewidth dynamic program on a graph instance.
    Solve(SolveArgs),
    /// Approximation for the target objective (graph, set or hitting-set instance).
    Approx(ApproxArgs),
    /// Exhaustive search on a small instance of any kind.
    Oracle(OracleArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Parse a file and check its consistency.
    Validate(ValidateArgs),
    /// Compute a tree decomposition of a graph instance.
    Decomp(DecompArgs),
    /// Run solvers over every instance in a directory and write CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value = "any")]
    variant: VariantKind,
    /// Use this decomposition instead of computing one.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long, default_value_t = Heuristic::MinDegree)]
    heuristic: Heuristic,
    /// Include a solution reaching the target as `cover`.
    #[arg(long)]
    witness: bool,
    /// Exit with status 1 when the decision is `no`.
    #[arg(long)]
    exit_status: bool,
}

#[derive(Args)]
struct ApproxArgs {
    file: PathBuf,
    /// `primal-dual` or, for set systems, `greedy`.
    #[arg(long, default_value = "primal-dual")]
    algorithm: Algorithm,
    /// Also run the oracle and fill in the ratio column.
    #[arg(long)]
    compare: bool,
    #[arg(long)]
    witness: bool,
    /// Print the dual certificate as a second JSON line.
    #[arg(long)]
    duals: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ObjectiveKind {
    Target,
    Budget,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long, default_value = "any")]
    variant: VariantKind,
    /// For set and hitting-set files: minimise weight reaching `d`, or
    /// maximise value within `s`.
    #[arg(long, value_enum, default_value = "target")]
    objective: ObjectiveKind,
    #[arg(long)]
    witness: bool,
    #[arg(long)]
    exit_status: bool,
    /// Run sequentially.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Output file (stdout when absent).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Labels {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    wmin: u64,
    #[arg(long, default_value_t = 10)]
    wmax: u64,
    #[arg(long, default_value_t = 1)]
    vmin: u64,
    #[arg(long, default_value_t = 10)]
    vmax: u64,
}

#[derive(Args, Clone)]
struct GraphBounds {
    #[arg(long)]
    s: u64,
    #[arg(long)]
    d: u64,
    /// Cardinality budget written as the third field of the `k` line.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum GenKind {
    /// G(n, p) random graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        bounds: GraphBounds,
    },
    /// Uniform random labelled tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        bounds: GraphBounds,
    },
    /// Random k-tree; its decomposition can be written alongside.
    Ktree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        td_out: Option<PathBuf>,
        #[command(flatten)]
        labels: Labels,
        #[command(flatten)]
        bounds: GraphBounds,
    },
    /// Random coverable set system.
    Sck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        s: Option<u64>,
        /// Defaults to half the total value.
        #[arg(long)]
        d: Option<u64>,
        #[command(flatten)]
        labels: Labels,
    },
    /// Random hitting-set system with bounded arity.
    Hsk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long)]
        s: Option<u64>,
        /// Defaults to half the total value.
        #[arg(long)]
        d: Option<u64>,
        #[command(flatten)]
        labels: Labels,
    },
    /// Vertex cover of size k on a random graph as a unit knapsack instance.
    Vc {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write k as the cardinality budget.
        #[arg(long)]
        with_budget: bool,
    },
    /// 0/1 knapsack as a minimal vertex cover instance on a binary tree.
    Knapsack {
        /// Items as `weight:profit` pairs separated by commas.
        #[arg(long)]
        items: String,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Args)]
struct ValidateArgs {
    file: PathBuf,
    /// Graph instance to check a decomposition against.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct DecompArgs {
    file: PathBuf,
    #[arg(long, default_value_t = Heuristic::MinDegree)]
    heuristic: Heuristic,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    dir: PathBuf,
    /// Comma-separated subset of dp, oracle, primal-dual, greedy.
    #[arg(long, value_delimiter = ',', default_value = "dp,oracle,primal-dual,greedy")]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 20)]
    oracle_cutoff: usize,
    #[arg(long, default_value = "any")]
    variant: VariantKind,
    #[arg(long, default_value_t = Heuristic::MinDegree)]
    heuristic: Heuristic,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct JsonLine<'a> {
    #[serde(flatten)]
    record: &'a BenchRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<Vec<usize>>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| VckError::input(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| VckError::input(format!("cannot write {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| VckError::input(format!("cannot write output: {e}"))),
    }
}

fn instance_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Prints one JSON line; the cover is 1-indexed like the file ids.
fn emit(report: &SolveReport, witness: bool) -> Result<()> {
    let cover = witness.then(|| report.cover.clone().unwrap_or_default().iter().map(|v| v + 1).collect());
    let line = serde_json::to_string(&JsonLine { record: &report.record, cover })
        .map_err(|e| VckError::input(format!("cannot encode result: {e}")))?;
    println!("{line}");
    Ok(())
}

fn decision_code(report: &SolveReport, exit_status: bool) -> u8 {
    match report.record.decision {
        Decision::Known(false) if exit_status => 1,
        _ => 0,
    }
}

fn load_vck(path: &Path, variant: VariantKind) -> Result<VckInstance> {
    apply_variant(parse_vck_file(&read(path)?)?, variant)
}

fn solve(args: SolveArgs) -> Result<u8> {
    let inst = load_vck(&args.file, args.variant)?;
    let td = match &args.td {
        Some(p) => {
            let (td, n) = parse_td(&read(p)?)?;
            if n != inst.graph.n() {
                return Err(VckError::structural(format!(
                    "decomposition is for {n} vertices, graph has {}",
                    inst.graph.n()
                )));
            }
            Some(td)
        }
        None => None,
    };
    let report = run_dp(&instance_name(&args.file), &inst, td.as_ref(), args.heuristic, args.witness)?;
    emit(&report, args.witness)?;
    Ok(decision_code(&report, args.exit_status))
}

enum Loaded {
    Vck(VckInstance),
    Sck(SckFile),
    Hsk(HskFile),
}

fn load_any(path: &Path, variant: VariantKind) -> Result<Loaded> {
    let text = read(path)?;
    match detect_format(&text)? {
        FileKind::Vck => Ok(Loaded::Vck(apply_variant(parse_vck_file(&text)?, variant)?)),
        FileKind::Sck => Ok(Loaded::Sck(parse_sck_file(&text)?)),
        FileKind::Hsk => Ok(Loaded::Hsk(parse_hsk_file(&text)?)),
        FileKind::Td => Err(VckError::input("expected an instance, found a decomposition")),
    }
}

fn approx(args: ApproxArgs) -> Result<u8> {
    let name = instance_name(&args.file);
    let exec = Execution::default();
    let loaded = load_any(&args.file, VariantKind::Any)?;
    let (mut report, optimum, summary) = match &loaded {
        Loaded::Vck(inst) => {
            if args.algorithm != Algorithm::PrimalDual {
                return Err(VckError::input("graph instances support only primal-dual"));
            }
            let report = run_vck_approx(&name, inst)?;
            let opt = if args.compare {
                let edges = vck::approx::edge_set_system(&inst.graph);
                oracle_sck_with(&edges, Objective::TargetValue(inst.bound.d), exec)?.map(|s| s.total_weight)
            } else {
                None
            };
            let summary = args
                .duals
                .then(|| vck::approx::vck_target_2approx(&inst.graph, inst.bound.d))
                .transpose()?;
            (report, opt, summary)
        }
        Loaded::Sck(file) => {
            let report = run_sck(&name, file, args.algorithm, exec)?;
            let d = file.d.unwrap_or_default();
            let opt = if args.compare {
                oracle_sck_with(&file.system, Objective::TargetValue(d), exec)?.map(|s| s.total_weight)
            } else {
                None
            };
            let summary = match (args.duals, args.algorithm) {
                (false, _) => None,
                (true, Algorithm::Greedy) => Some(vck::approx::greedy_sck_target(&file.system, d)?),
                (true, _) => Some(vck::approx::primal_dual_sck_target(&file.system, d)?),
            };
            (report, opt, summary)
        }
        Loaded::Hsk(file) => {
            if args.algorithm != Algorithm::PrimalDual {
                return Err(VckError::input("hitting-set instances support only primal-dual"));
            }
            let report = run_hsk(&name, file, args.algorithm, exec)?;
            let d = file.d.unwrap_or_default();
            let opt = if args.compare {
                oracle_hsk_with(&file.system, Objective::TargetValue(d), exec)?.map(|s| s.total_weight)
            } else {
                None
            };
            let summary = args
                .duals
                .then(|| vck::approx::hsk_target_dapprox(&file.system, d))
                .transpose()?;
            (report, opt, summary)
        }
    };
    if let (Some(w), Some(opt)) = (report.record.weight, optimum) {
        report.record.ratio = Some(format_ratio(w, opt));
    }
    emit(&report, args.witness)?;
    if let Some(result) = summary {
        let line = serde_json::to_string(&result.summary())
            .map_err(|e| VckError::input(format!("cannot encode duals: {e}")))?;
        println!("{line}");
    }
    Ok(0)
}

fn oracle(args: OracleArgs) -> Result<u8> {
    let name = instance_name(&args.file);
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let objective = |s: Option<u64>, d: Option<u64>| -> Result<Objective> {
        match args.objective {
            ObjectiveKind::Target => d
                .map(Objective::TargetValue)
                .ok_or_else(|| VckError::input("the target objective needs d on the 'k' line")),
            ObjectiveKind::Budget => s
                .map(Objective::BudgetWeight)
                .ok_or_else(|| VckError::input("the budget objective needs s on the 'k' line")),
        }
    };
    let report = match load_any(&args.file, args.variant)? {
        Loaded::Vck(inst) => run_vck_oracle(&name, &inst, exec)?,
        Loaded::Sck(file) => match args.objective {
            ObjectiveKind::Target => run_sck(&name, &file, Algorithm::Oracle, exec)?,
            ObjectiveKind::Budget => {
                let sol = oracle_sck_with(&file.system, objective(file.s, file.d)?, exec)?;
                budget_report(&name, sol, file.d)
            }
        },
        Loaded::Hsk(file) => match args.objective {
            ObjectiveKind::Target => run_hsk(&name, &file, Algorithm::Oracle, exec)?,
            ObjectiveKind::Budget => {
                let sol = oracle_hsk_with(&file.system, objective(file.s, file.d)?, exec)?;
                budget_report(&name, sol, file.d)
            }
        },
    };
    emit(&report, args.witness)?;
    Ok(decision_code(&report, args.exit_status))
}

/// Budget objective: the most valuable solution within `s`; the decision
/// compares it against `d` when the file gives one.
fn budget_report(name: &str, sol: Option<vck::Solution>, d: Option<u64>) -> SolveReport {
    let mut record = BenchRecord {
        instance: name.to_string(),
        variant: "budget".into(),
        algorithm: Algorithm::Oracle.to_string(),
        decision: Decision::Known(false),
        weight: None,
        value: None,
        cover_size: None,
        width: None,
        time_ms: String::new(),
        ratio: None,
        error: None,
    };
    let cover = sol.map(|sol| {
        record.decision = Decision::Known(d.is_none_or(|d| sol.total_value >= d));
        record.weight = Some(sol.total_weight);
        record.value = Some(sol.total_value);
        record.cover_size = Some(sol.cardinality());
        sol.members
    });
    SolveReport { record, cover }
}

fn graph_instance(g: vck::VertexGraph, bounds: &GraphBounds) -> Result<VckInstance> {
    let variant = bounds.budget.map_or(Variant::Any, Variant::Budget);
    VckInstance::new(g, KnapsackBound::new(bounds.s, bounds.d), variant)
}

fn parse_items(text: &str) -> Result<Vec<(u64, u64)>> {
    text.split(',')
        .map(|item| {
            let (w, p) = item
                .split_once(':')
                .ok_or_else(|| VckError::input(format!("item '{item}' is not weight:profit")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| VckError::input(format!("item '{item}' is not weight:profit")))
            };
            Ok((num(w)?, num(p)?))
        })
        .collect()
}

fn gen(args: GenArgs) -> Result<u8> {
    let out = args.output.as_deref();
    let text = match args.kind {
        GenKind::Graph { n, p, labels: l, bounds } => {
            let g = random_graph(n, p, l.wmin..=l.wmax, l.vmin..=l.vmax, l.seed)?;
            serialize_vck(&graph_instance(g, &bounds)?)
        }
        GenKind::Tree { n, labels: l, bounds } => {
            let g = random_tree(n, l.wmin..=l.wmax, l.vmin..=l.vmax, l.seed)?;
            serialize_vck(&graph_instance(g, &bounds)?)
        }
        GenKind::Ktree { n, k, td_out, labels: l, bounds } => {
            let (g, td) = random_ktree(n, k, l.wmin..=l.wmax, l.vmin..=l.vmax, l.seed)?;
            if let Some(p) = td_out {
                write_out(Some(&p), &serialize_td(&td, n))?;
            }
            serialize_vck(&graph_instance(g, &bounds)?)
        }
        GenKind::Sck { n, m, max_size, s, d, labels: l } => {
            let system = random_set_system(n, m, max_size, l.wmin..=l.wmax, l.vmin..=l.vmax, l.seed)?;
            let d = Some(d.unwrap_or(system.total_value() / 2));
            serialize_sck(&SckFile { system, s, d })
        }
        GenKind::Hsk { n, m, arity, s, d, labels: l } => {
            let system = random_hitting_set(n, m, arity, l.wmin..=l.wmax, l.vmin..=l.vmax, l.seed)?;
            let d = Some(d.unwrap_or(system.element_values().iter().sum::<u64>() / 2));
            serialize_hsk(&HskFile { system, s, d })
        }
        GenKind::Vc { n, p, k, seed, with_budget } => {
            let g = random_graph(n, p, 1..=1, 1..=1, seed)?;
            let inst = if with_budget {
                gen_budget_from_vc(&g, k)?
            } else {
                gen_vck_from_vc(&g, k)?
            };
            serialize_vck(&inst)
        }
        GenKind::Knapsack { items, b, q } => serialize_vck(&gen_minimal_tree_from_knapsack(&parse_items(&items)?, b, q)?),
    };
    write_out(out, &text)?;
    Ok(0)
}

fn validate(args: ValidateArgs) -> Result<u8> {
    let text = read(&args.file)?;
    let summary = match detect_format(&text)? {
        FileKind::Vck => {
            let inst = parse_vck_file(&text)?;
            format!("vck n={} m={}", inst.graph.n(), inst.graph.edge_count())
        }
        FileKind::Sck => {
            let f = parse_sck_file(&text)?;
            format!("sck n={} m={}", f.system.n_elements(), f.system.m())
        }
        FileKind::Hsk => {
            let f = parse_hsk_file(&text)?;
            format!("hsk n={} m={}", f.system.n_elements(), f.system.m())
        }
        FileKind::Td => {
            let (td, n) = parse_td(&text)?;
            if let Some(gp) = &args.graph {
                let inst = parse_vck_file(&read(gp)?)?;
                if inst.graph.n() != n {
                    return Err(VckError::structural(format!(
                        "decomposition is for {n} vertices, graph has {}",
                        inst.graph.n()
                    )));
                }
                let report = validate_decomposition(&inst.graph, &td);
                if !report.is_valid() {
                    return Err(VckError::structural(report.failures().join("; ")));
                }
            }
            format!("td bags={} width={}", td.node_count(), td.width())
        }
    };
    println!("ok {summary}");
    Ok(0)
}

fn decomp(args: DecompArgs) -> Result<u8> {
    let inst = parse_vck_file(&read(&args.file)?)?;
    let td = build_decomposition(&inst.graph, args.heuristic);
    write_out(args.output.as_deref(), &serialize_td(&td, inst.graph.n()))?;
    Ok(0)
}

fn bench(args: BenchArgs) -> Result<u8> {
    let config = BenchConfig {
        algorithms: args.algorithms,
        oracle_cutoff: args.oracle_cutoff,
        variant: args.variant,
        heuristic: args.heuristic,
        jobs: args.jobs.max(1),
    };
    let records = run_bench(&args.dir, &config)?;
    for r in &records {
        if let Some(e) = &r.error {
            eprintln!("{} ({}): {e}", r.instance, r.algorithm);
        }
    }
    match &args.output {
        Some(p) => {
            let file = fs::File::create(p).map_err(|e| VckError::input(format!("cannot write {}: {e}", p.display())))?;
            write_csv(&records, io::BufWriter::new(file))?;
        }
        None => write_csv(&records, io::stdout().lock())?,
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Approx(a) => approx(a),
        Command::Oracle(a) => oracle(a),
        Command::Gen(a) => gen(a),
        Command::Validate(a) => validate(a),
        Command::Decomp(a) => decomp(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("vck: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
