//! Instance generators: polynomial reductions into the knapsack variants and
//! seed-deterministic random graphs, trees, k-trees and set systems.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::edge_set_system;
use crate::error::{Result, VckError};
use crate::graph::VertexGraph;
use crate::instance::{KnapsackBound, Variant, VckInstance};
use crate::oracle::Objective;
use crate::setsys::{HittingSetSystem, SetSystem, WeightedSet};
use crate::treewidth::TreeDecomposition;

fn unit_labels(g: &VertexGraph) -> Result<VertexGraph> {
    g.with_labels(vec![1; g.n()], vec![1; g.n()])
}

fn check_k(g: &VertexGraph, k: usize) -> Result<()> {
    if k == 0 || k > g.n() {
        return Err(VckError::input(format!("k = {k} outside 1..={}", g.n())));
    }
    Ok(())
}

/// Vertex cover of size `k` as a knapsack instance: unit weights and values,
/// `s = d = k`.
pub fn gen_vck_from_vc(g: &VertexGraph, k: usize) -> Result<VckInstance> {
    check_k(g, k)?;
    let bound = KnapsackBound::new(k as u64, k as u64);
    VckInstance::new(unit_labels(g)?, bound, Variant::Any)
}

/// As [`gen_vck_from_vc`], with the cardinality budget `k` as well.
pub fn gen_budget_from_vc(g: &VertexGraph, k: usize) -> Result<VckInstance> {
    check_k(g, k)?;
    let bound = KnapsackBound::new(k as u64, k as u64);
    VckInstance::new(unit_labels(g)?, bound, Variant::Budget(k))
}

/// 0/1 knapsack `(θ_i, p_i)`, capacity `b`, target `q`, as a minimal vertex
/// cover instance on a complete binary tree.
///
/// Items are padded with `(0, 0)` to a power of two `n'`. The tree is stored
/// in heap order (children of `i` are `2i+1`, `2i+2`); its penultimate level
/// holds the `n'` item vertices `n'-1 .. 2n'-1`, each with two zero-labelled
/// leaf children. Every other vertex is labelled `(0, 0)`.
pub fn gen_minimal_tree_from_knapsack(items: &[(u64, u64)], b: u64, q: u64) -> Result<VckInstance> {
    if items.is_empty() {
        return Err(VckError::input("knapsack needs at least one item"));
    }
    let padded = items.len().next_power_of_two();
    let n = 4 * padded - 1;
    let edges: Vec<(usize, usize)> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    let mut weight = vec![0; n];
    let mut value = vec![0; n];
    for (i, &(theta, p)) in items.iter().enumerate() {
        weight[padded - 1 + i] = theta;
        value[padded - 1 + i] = p;
    }
    let g = VertexGraph::new(n, &edges, weight, value)?;
    VckInstance::new(g, KnapsackBound::new(b, q), Variant::Minimal)
}

/// Vertex cover as budgeted set cover: one unit set per vertex over the
/// edge universe, budget `k`.
pub fn gen_sck_budget_from_vc(g: &VertexGraph, k: u64) -> Result<(SetSystem, Objective)> {
    if g.edge_count() == 0 {
        return Err(VckError::input("graph has no edges"));
    }
    Ok((edge_set_system(&unit_labels(g)?), Objective::BudgetWeight(k)))
}

fn check_range(name: &str, r: &RangeInclusive<u64>) -> Result<()> {
    if r.is_empty() {
        return Err(VckError::input(format!("{name} range {r:?} is empty")));
    }
    Ok(())
}

fn labels(
    rng: &mut ChaCha8Rng,
    n: usize,
    weight_range: &RangeInclusive<u64>,
    value_range: &RangeInclusive<u64>,
) -> Result<(Vec<u64>, Vec<u64>)> {
    check_range("weight", weight_range)?;
    check_range("value", value_range)?;
    let w = (0..n).map(|_| rng.gen_range(weight_range.clone())).collect();
    let a = (0..n).map(|_| rng.gen_range(value_range.clone())).collect();
    Ok((w, a))
}

/// Erdős–Rényi graph: each pair is an edge with probability `p`.
pub fn random_graph(
    n: usize,
    p: f64,
    weight_range: RangeInclusive<u64>,
    value_range: RangeInclusive<u64>,
    seed: u64,
) -> Result<VertexGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(VckError::input(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let (w, a) = labels(&mut rng, n, &weight_range, &value_range)?;
    VertexGraph::new(n, &edges, w, a)
}

/// Uniformly random labelled tree, decoded from a random Prüfer sequence.
pub fn random_tree(
    n: usize,
    weight_range: RangeInclusive<u64>,
    value_range: RangeInclusive<u64>,
    seed: u64,
) -> Result<VertexGraph> {
    if n == 0 {
        return Err(VckError::input("a tree needs at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n - 1);
    if n == 2 {
        edges.push((0, 1));
    } else if n > 2 {
        let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &c in &code {
            degree[c] += 1;
        }
        // linear-time decoding: `leaf` walks up, `ptr` remembers the scan
        let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
        let mut leaf = ptr;
        for &c in &code {
            edges.push((leaf.min(c), leaf.max(c)));
            degree[c] -= 1;
            if degree[c] == 1 && c < ptr {
                leaf = c;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges.push((leaf.min(n - 1), leaf.max(n - 1)));
    }
    let (w, a) = labels(&mut rng, n, &weight_range, &value_range)?;
    VertexGraph::new(n, &edges, w, a)
}

/// Random `k`-tree on `n ≥ k + 1` vertices with a width-`k` decomposition:
/// start from a `(k+1)`-clique, then attach each new vertex to a random
/// `k`-subset of a random existing bag.
pub fn random_ktree(
    n: usize,
    k: usize,
    weight_range: RangeInclusive<u64>,
    value_range: RangeInclusive<u64>,
    seed: u64,
) -> Result<(VertexGraph, TreeDecomposition)> {
    if n < k + 1 {
        return Err(VckError::input(format!("a {k}-tree needs at least {} vertices", k + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..=k {
        for v in u + 1..=k {
            edges.push((u, v));
        }
    }
    let mut bags: Vec<Vec<usize>> = vec![(0..=k).collect()];
    let mut tree_edges = Vec::new();
    for v in k + 1..n {
        let parent = rng.gen_range(0..bags.len());
        let mut clique = bags[parent].clone();
        clique.remove(rng.gen_range(0..clique.len()));
        for &u in &clique {
            edges.push((u, v));
        }
        clique.push(v);
        bags.push(clique);
        tree_edges.push((parent, bags.len() - 1));
    }
    let (w, a) = labels(&mut rng, n, &weight_range, &value_range)?;
    let g = VertexGraph::new(n, &edges, w, a)?;
    Ok((g, TreeDecomposition::new(bags, tree_edges)))
}

/// Random set system over `n` elements with `m` non-empty sets of size at
/// most `max_set_size`, in which every element is covered.
pub fn random_set_system(
    n: usize,
    m: usize,
    max_set_size: usize,
    weight_range: RangeInclusive<u64>,
    value_range: RangeInclusive<u64>,
    seed: u64,
) -> Result<SetSystem> {
    if m == 0 || max_set_size == 0 || n == 0 {
        return Err(VckError::input("need n, m and max_set_size all positive"));
    }
    if n > m * max_set_size {
        return Err(VckError::input(format!(
            "{m} sets of size {max_set_size} cannot cover {n} elements"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &e) in order.iter().enumerate() {
        members[i % m].push(e);
    }
    let cap = max_set_size.min(n);
    for set in members.iter_mut() {
        let target = rng.gen_range(set.len().max(1)..=cap);
        while set.len() < target {
            let e = rng.gen_range(0..n);
            if !set.contains(&e) {
                set.push(e);
            }
        }
    }
    let (w, a) = labels(&mut rng, m, &weight_range, &value_range)?;
    let sets = members
        .into_iter()
        .zip(w.into_iter().zip(a))
        .map(|(elements, (weight, value))| WeightedSet {
            elements,
            weight,
            value,
        })
        .collect();
    SetSystem::new(n, sets)
}

/// Random hitting-set system: `m` non-empty sets over `n` elements, each of
/// size at most `arity`.
pub fn random_hitting_set(
    n: usize,
    m: usize,
    arity: usize,
    weight_range: RangeInclusive<u64>,
    value_range: RangeInclusive<u64>,
    seed: u64,
) -> Result<HittingSetSystem> {
    if n == 0 || arity == 0 {
        return Err(VckError::input("need n and arity positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<usize> = (0..n).collect();
    let sets = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=arity.min(n));
            elements.choose_multiple(&mut rng, size).copied().collect()
        })
        .collect();
    let (w, a) = labels(&mut rng, n, &weight_range, &value_range)?;
    HittingSetSystem::new(w, a, sets)
}
