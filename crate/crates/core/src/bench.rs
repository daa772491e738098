//! Per-algorithm runners producing [`BenchRecord`]s, and the directory
//! benchmark that writes them as CSV.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::approx::{edge_set_system, greedy_sck_target, hsk_target_dapprox, primal_dual_sck_target, vck_target_2approx};
use crate::dp::{build_table, reconstruct_witness, solve};
use crate::error::{Result, VckError};
use crate::front::ParetoFront;
use crate::instance::{Variant, VariantKind, VckInstance};
use crate::io::{detect_format, parse_hsk_file, parse_sck_file, parse_vck_file, FileKind, HskFile, SckFile};
use crate::oracle::{
    oracle_hsk_with, oracle_sck_with, oracle_vck_with, Objective, MAX_ORACLE_ELEMENTS, MAX_ORACLE_SETS,
    MAX_ORACLE_VERTICES,
};
use crate::parallel::{map_collect, Execution};
use crate::treewidth::{build_decomposition, to_nice, Heuristic, TreeDecomposition};

pub const CSV_HEADER: [&str; 10] = [
    "instance",
    "variant",
    "algorithm",
    "decision",
    "weight",
    "value",
    "cover_size",
    "width",
    "time_ms",
    "ratio",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Dp,
    Oracle,
    PrimalDual,
    Greedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Dp, Algorithm::Oracle, Algorithm::PrimalDual, Algorithm::Greedy];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Dp => "dp",
            Algorithm::Oracle => "oracle",
            Algorithm::PrimalDual => "primal-dual",
            Algorithm::Greedy => "greedy",
        }
    }

    fn applies_to(self, kind: FileKind) -> bool {
        match kind {
            FileKind::Vck => self != Algorithm::Greedy,
            FileKind::Sck => self != Algorithm::Dp,
            FileKind::Hsk => matches!(self, Algorithm::Oracle | Algorithm::PrimalDual),
            FileKind::Td => false,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = VckError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| VckError::input(format!("unknown algorithm '{s}'")))
    }
}

/// `true`/`false`, or `"error"` when the run failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Decision {
    Known(bool),
    Failed(&'static str),
}

/// One algorithm run on one instance.
///
/// For the exact solvers on graph instances `weight`/`value` is the lightest
/// front pair reaching the target, or the most valuable pair when none does,
/// with values clamped at the target. Approximations report their actual
/// totals. `ratio` is `weight / optimum` with six decimals, present only
/// when the oracle ran and found a feasible optimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub variant: String,
    pub algorithm: String,
    pub decision: Decision,
    pub weight: Option<u64>,
    pub value: Option<u64>,
    pub cover_size: Option<usize>,
    pub width: Option<usize>,
    pub time_ms: String,
    pub ratio: Option<String>,
    #[serde(skip)]
    pub error: Option<String>,
}

impl BenchRecord {
    fn new(instance: &str, variant: &str, algorithm: Algorithm) -> Self {
        BenchRecord {
            instance: instance.to_string(),
            variant: variant.to_string(),
            algorithm: algorithm.to_string(),
            decision: Decision::Known(false),
            weight: None,
            value: None,
            cover_size: None,
            width: None,
            time_ms: String::new(),
            ratio: None,
            error: None,
        }
    }

    fn failed(instance: &str, variant: &str, algorithm: Algorithm, err: &VckError) -> Self {
        BenchRecord {
            decision: Decision::Failed("error"),
            error: Some(err.to_string()),
            ..BenchRecord::new(instance, variant, algorithm)
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.time_ms = format!("{:.3}", start.elapsed().as_secs_f64() * 1e3);
        self
    }
}

/// Formats `weight / optimum` with six decimals.
pub fn format_ratio(weight: u64, optimum: u64) -> String {
    if optimum == 0 {
        return if weight == 0 { "1.000000".into() } else { "inf".into() };
    }
    // exact rounding: scale by 10^6 in integers
    let scaled = (weight as u128 * 2_000_000 + optimum as u128) / (2 * optimum as u128);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

/// A record plus the chosen members (sorted, 0-indexed) when requested.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub record: BenchRecord,
    pub cover: Option<Vec<usize>>,
}

fn report_pair(front: &ParetoFront, d: u64) -> Option<(u64, u64)> {
    front.lightest_reaching(d).or_else(|| front.pairs().last().copied())
}

/// Exact treewidth DP on a graph instance.
pub fn run_dp(
    name: &str,
    inst: &VckInstance,
    td: Option<&TreeDecomposition>,
    heuristic: Heuristic,
    witness: bool,
) -> Result<SolveReport> {
    let start = Instant::now();
    let built;
    let td = match td {
        Some(td) => td,
        None => {
            built = build_decomposition(&inst.graph, heuristic);
            &built
        }
    };
    let ntd = to_nice(&inst.graph, td)?;
    let d = inst.bound.d;
    let mut record = BenchRecord::new(name, inst.variant.kind().as_str(), Algorithm::Dp);
    record.width = Some(td.width());
    let mut cover = None;
    let outcome = if witness {
        let table = build_table(inst, &ntd)?;
        if let Some(pair) = table.front().lightest_reaching(d) {
            let sol = reconstruct_witness(&table, pair)?;
            record.cover_size = Some(sol.cardinality());
            cover = Some(sol.members);
        }
        table.outcome()
    } else {
        solve(inst, &ntd)?
    };
    record.decision = Decision::Known(outcome.decision);
    if let Some((w, v)) = report_pair(&outcome.front, d) {
        record.weight = Some(w);
        record.value = Some(v);
    }
    Ok(SolveReport {
        record: record.timed(start),
        cover,
    })
}

/// Exhaustive oracle on a graph instance.
pub fn run_vck_oracle(name: &str, inst: &VckInstance, exec: Execution) -> Result<SolveReport> {
    let start = Instant::now();
    let out = oracle_vck_with(inst, exec)?;
    let mut record = BenchRecord::new(name, inst.variant.kind().as_str(), Algorithm::Oracle);
    record.decision = Decision::Known(out.decision);
    if let Some((w, v)) = report_pair(&out.front, inst.bound.d) {
        record.weight = Some(w);
        record.value = Some(v);
    }
    record.cover_size = out.witness.as_ref().map(|s| s.cardinality());
    Ok(SolveReport {
        record: record.timed(start),
        cover: out.witness.map(|s| s.members),
    })
}

fn approx_record(
    name: &str,
    algorithm: Algorithm,
    start: Instant,
    members: Vec<usize>,
    weight: u64,
    value: u64,
    s: Option<u64>,
) -> SolveReport {
    let mut record = BenchRecord::new(name, "target", algorithm);
    record.decision = Decision::Known(s.is_none_or(|s| weight <= s));
    record.weight = Some(weight);
    record.value = Some(value);
    record.cover_size = Some(members.len());
    SolveReport {
        record: record.timed(start),
        cover: Some(members),
    }
}

/// Primal-dual 2-approximation of the lightest vertex cover reaching the
/// target; the decision also checks the capacity.
pub fn run_vck_approx(name: &str, inst: &VckInstance) -> Result<SolveReport> {
    let start = Instant::now();
    let r = vck_target_2approx(&inst.graph, inst.bound.d)?;
    let sol = r.solution;
    Ok(approx_record(
        name,
        Algorithm::PrimalDual,
        start,
        sol.members,
        sol.total_weight,
        sol.total_value,
        Some(inst.bound.s),
    ))
}

fn need_target(d: Option<u64>) -> Result<u64> {
    d.ok_or_else(|| VckError::input("the file gives no target value and none was supplied"))
}

pub fn run_sck(name: &str, file: &SckFile, algorithm: Algorithm, exec: Execution) -> Result<SolveReport> {
    let start = Instant::now();
    let d = need_target(file.d)?;
    let sol = match algorithm {
        Algorithm::PrimalDual => primal_dual_sck_target(&file.system, d)?.solution,
        Algorithm::Greedy => greedy_sck_target(&file.system, d)?.solution,
        Algorithm::Oracle => match oracle_sck_with(&file.system, Objective::TargetValue(d), exec)? {
            Some(sol) => sol,
            None => {
                let record = BenchRecord::new(name, "target", algorithm);
                return Ok(SolveReport {
                    record: record.timed(start),
                    cover: None,
                });
            }
        },
        Algorithm::Dp => return Err(VckError::input("dp applies to graph instances only")),
    };
    Ok(approx_record(name, algorithm, start, sol.members, sol.total_weight, sol.total_value, file.s))
}

pub fn run_hsk(name: &str, file: &HskFile, algorithm: Algorithm, exec: Execution) -> Result<SolveReport> {
    let start = Instant::now();
    let d = need_target(file.d)?;
    let sol = match algorithm {
        Algorithm::PrimalDual => hsk_target_dapprox(&file.system, d)?.solution,
        Algorithm::Oracle => match oracle_hsk_with(&file.system, Objective::TargetValue(d), exec)? {
            Some(sol) => sol,
            None => {
                let record = BenchRecord::new(name, "target", algorithm);
                return Ok(SolveReport {
                    record: record.timed(start),
                    cover: None,
                });
            }
        },
        other => return Err(VckError::input(format!("{other} does not apply to hitting-set instances"))),
    };
    Ok(approx_record(name, algorithm, start, sol.members, sol.total_weight, sol.total_value, file.s))
}

/// Settings for [`run_bench`].
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    /// The oracle runs only on instances with at most this many vertices,
    /// sets or elements (and never beyond its own hard limits).
    pub oracle_cutoff: usize,
    pub variant: VariantKind,
    pub heuristic: Heuristic,
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algorithms: Algorithm::ALL.to_vec(),
            oracle_cutoff: 20,
            variant: VariantKind::Any,
            heuristic: Heuristic::MinDegree,
            jobs: 1,
        }
    }
}

enum Loaded {
    Vck(VckInstance),
    Sck(SckFile),
    Hsk(HskFile),
}

fn load(path: &Path, variant: VariantKind) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| VckError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(match detect_format(&text)? {
        FileKind::Vck => {
            let inst = parse_vck_file(&text)?;
            Loaded::Vck(apply_variant(inst, variant)?)
        }
        FileKind::Sck => Loaded::Sck(parse_sck_file(&text)?),
        FileKind::Hsk => Loaded::Hsk(parse_hsk_file(&text)?),
        FileKind::Td => return Err(VckError::input("decomposition files are not instances")),
    })
}

/// Replaces the file's variant with the requested kind; `budget` needs the
/// budget field from the file.
pub fn apply_variant(inst: VckInstance, kind: VariantKind) -> Result<VckInstance> {
    let variant = match (kind, inst.variant) {
        (VariantKind::Budget, Variant::Budget(k)) => Variant::Budget(k),
        (VariantKind::Budget, _) => {
            return Err(VckError::input("variant 'budget' needs a budget on the 'k' line"))
        }
        (VariantKind::Any, _) => Variant::Any,
        (VariantKind::Minimum, _) => Variant::Minimum,
        (VariantKind::Minimal, _) => Variant::Minimal,
    };
    inst.with_variant(variant)
}

fn kind_of(name: &str) -> Option<FileKind> {
    match Path::new(name).extension()?.to_str()? {
        "vck" => Some(FileKind::Vck),
        "sck" => Some(FileKind::Sck),
        "hsk" => Some(FileKind::Hsk),
        _ => None,
    }
}

fn with_ratio(mut record: BenchRecord, optimum: Option<u64>) -> BenchRecord {
    if let (Some(w), Some(opt), Decision::Known(_)) = (record.weight, optimum, record.decision) {
        record.ratio = Some(format_ratio(w, opt));
    }
    record
}

fn bench_file(path: &Path, name: &str, config: &BenchConfig) -> Vec<BenchRecord> {
    let kind = kind_of(name).expect("filtered by extension");
    let variant_label = if kind == FileKind::Vck { config.variant.as_str() } else { "target" };
    let wanted: Vec<Algorithm> = config
        .algorithms
        .iter()
        .copied()
        .filter(|a| a.applies_to(kind))
        .collect();
    let loaded = match load(path, config.variant) {
        Ok(l) => l,
        Err(e) => {
            return wanted
                .iter()
                .map(|&a| BenchRecord::failed(name, variant_label, a, &e))
                .collect()
        }
    };
    // oracle results feed the ratio column; instances stay sequential
    // inside so that --jobs is the only source of parallelism
    let exec = Execution::Sequential;
    let run = |a: Algorithm| -> Result<SolveReport> {
        match (&loaded, a) {
            (Loaded::Vck(i), Algorithm::Dp) => run_dp(name, i, None, config.heuristic, false),
            (Loaded::Vck(i), Algorithm::Oracle) => run_vck_oracle(name, i, exec),
            (Loaded::Vck(i), _) => run_vck_approx(name, i),
            (Loaded::Sck(f), a) => run_sck(name, f, a, exec),
            (Loaded::Hsk(f), a) => run_hsk(name, f, a, exec),
        }
    };
    let cutoff = config.oracle_cutoff;
    let oracle_ok = match &loaded {
        Loaded::Vck(i) => i.graph.n() <= cutoff.min(MAX_ORACLE_VERTICES),
        Loaded::Sck(f) => f.system.m() <= cutoff.min(MAX_ORACLE_SETS),
        Loaded::Hsk(f) => f.system.n_elements() <= cutoff.min(MAX_ORACLE_ELEMENTS),
    };
    // optimum for exact rows (same variant and capacity) and for
    // approximation rows (target only, no capacity)
    let weight_of = |s: Option<crate::instance::Solution>| s.map(|s| s.total_weight);
    let (exact_opt, target_opt) = match &loaded {
        _ if !oracle_ok => (None, None),
        Loaded::Vck(i) => {
            let exact = oracle_vck_with(i, exec)
                .ok()
                .filter(|o| o.decision)
                .and_then(|o| o.front.lightest_reaching(i.bound.d))
                .map(|(w, _)| w);
            let edges = edge_set_system(&i.graph);
            let target = if edges.m() <= MAX_ORACLE_SETS {
                oracle_sck_with(&edges, Objective::TargetValue(i.bound.d), exec)
                    .ok()
                    .and_then(weight_of)
            } else {
                None
            };
            (exact, target)
        }
        Loaded::Sck(f) => {
            let opt = f.d.and_then(|d| {
                oracle_sck_with(&f.system, Objective::TargetValue(d), exec)
                    .ok()
                    .and_then(weight_of)
            });
            (opt, opt)
        }
        Loaded::Hsk(f) => {
            let opt = f.d.and_then(|d| {
                oracle_hsk_with(&f.system, Objective::TargetValue(d), exec)
                    .ok()
                    .and_then(weight_of)
            });
            (opt, opt)
        }
    };
    wanted
        .into_iter()
        .filter(|&a| a != Algorithm::Oracle || oracle_ok)
        .map(|a| match run(a) {
            Ok(r) => {
                let opt = match a {
                    Algorithm::Dp | Algorithm::Oracle => exact_opt,
                    _ => target_opt,
                };
                with_ratio(r.record, opt)
            }
            Err(e) => BenchRecord::failed(name, variant_label, a, &e),
        })
        .collect()
}

/// Runs every applicable algorithm on every `.vck`, `.sck` and `.hsk` file
/// in `dir` (other files are ignored). Records are sorted by instance name
/// and then algorithm, so the output does not depend on `jobs`.
pub fn run_bench(dir: &Path, config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| VckError::input(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<(String, std::path::PathBuf)> = entries
        .filter_map(|e| e.ok())
        .map(|e| (e.file_name().to_string_lossy().into_owned(), e.path()))
        .filter(|(name, path)| path.is_file() && kind_of(name).is_some())
        .collect();
    files.sort();

    let work = |(name, path): &(String, std::path::PathBuf)| bench_file(path, name, config);
    let nested: Vec<Vec<BenchRecord>> = if config.jobs > 1 {
        in_pool(config.jobs, || map_collect(Execution::Parallel, &files, work))
    } else {
        map_collect(Execution::Sequential, &files, work)
    };
    let mut records: Vec<BenchRecord> = nested.into_iter().flatten().collect();
    let rank = |r: &BenchRecord| Algorithm::ALL.iter().position(|a| a.as_str() == r.algorithm);
    records.sort_by(|a, b| (&a.instance, rank(a)).cmp(&(&b.instance, rank(b))));
    Ok(records)
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R: Send>(_jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Writes the CSV header and one row per record.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let io_err = |e: csv::Error| VckError::input(format!("cannot write CSV: {e}"));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for r in records {
        w.serialize(r).map_err(io_err)?;
    }
    w.flush().map_err(|e| VckError::input(format!("cannot write CSV: {e}")))
}
