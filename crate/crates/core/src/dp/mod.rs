//! Dynamic programs over nice tree decompositions that compute the Pareto
//! front of `(weight, clamped value)` pairs over every qualifying vertex
//! cover, plus witness reconstruction.
//!
//! Nodes are processed in the decomposition's post-order. Each node's table
//! maps a state key (see [`spaces`]) to the front of its feasible partial
//! solutions in the subgraph below the node:
//!
//! * leaf: the single state of the empty bag holds `{(0, 0)}`;
//! * introduce `v`: each child state either keeps `v` out (allowed only if
//!   every edge assigned to this node has its other endpoint in the cover)
//!   or adds it, shifting the front by `(w(v), α(v))`;
//! * forget `v`: child states that collapse to the same key are merged;
//! * join: fronts of child states with equal bag cover `S` are combined
//!   by [`pareto_join`] with overlap `(w(S), min(α(S), d))`, since `S` is
//!   counted in both branches.
//!
//! Values are clamped at `d` everywhere. Clamping the overlap value as well
//! keeps the join exact: if either branch was clamped its true value, and
//! so the combined one, already reaches `d`.

pub mod spaces;

use std::collections::BTreeMap;

use crate::error::{Result, VckError};
use crate::front::{decide, pareto_join, pareto_merge, pareto_shift, Pair, ParetoFront};
use crate::graph::VertexGraph;
use crate::instance::{KnapsackBound, Solution, Variant, VckInstance};
use crate::treewidth::{NiceKind, NiceTreeDecomposition};

pub use spaces::{AnySpace, MinimalSpace, SizedSpace, StateSpace};

/// Bags are encoded as `u64` masks with one spare bit.
pub const MAX_BAG_SIZE: usize = 63;

type StateTable<K> = BTreeMap<K, ParetoFront>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpOutcome {
    pub front: ParetoFront,
    pub decision: bool,
}

struct Labels<'a> {
    weight: &'a [u64],
    value: &'a [u64],
    s: u64,
    d: u64,
}

fn merge_into<K: Ord>(table: &mut StateTable<K>, key: K, front: ParetoFront, s: u64, d: u64) {
    if front.is_empty() {
        return;
    }
    match table.get_mut(&key) {
        Some(existing) => *existing = pareto_merge(existing, &front, s, d),
        None => {
            table.insert(key, front);
        }
    }
}

fn bag_position(bag: &[usize], v: usize) -> u32 {
    bag.binary_search(&v).expect("vertex is in the bag") as u32
}

fn neighbor_mask(bag: &[usize], nbrs: &[usize]) -> u64 {
    nbrs.iter().fold(0, |m, &u| m | 1 << bag_position(bag, u))
}

fn overlap(bag: &[usize], support: u64, labels: &Labels) -> Pair {
    let (mut w, mut a) = (0u64, 0u64);
    let mut rest = support;
    while rest != 0 {
        let v = bag[rest.trailing_zeros() as usize];
        w += labels.weight[v];
        a = a.saturating_add(labels.value[v]);
        rest &= rest - 1;
    }
    (w, a.min(labels.d))
}

fn compute_node<S: StateSpace>(
    space: &S,
    ntd: &NiceTreeDecomposition,
    t: usize,
    children: &[&StateTable<S::Key>],
    labels: &Labels,
) -> StateTable<S::Key> {
    let node = ntd.node(t);
    let (s, d) = (labels.s, labels.d);
    let mut table = StateTable::new();
    match node.kind {
        NiceKind::Leaf => {
            table.insert(space.leaf(), ParetoFront::origin());
        }
        NiceKind::Introduce(v) => {
            let pos = bag_position(&node.bag, v);
            let nbrs = neighbor_mask(&node.bag, &node.introduced_edges);
            let delta = (labels.weight[v], labels.value[v]);
            let mut out = Vec::with_capacity(2);
            for (&key, front) in children[0] {
                out.clear();
                space.introduce(key, pos, nbrs, &mut out);
                for &(parent, included) in &out {
                    let moved = if included {
                        pareto_shift(front, delta, s, d)
                    } else {
                        front.clone()
                    };
                    merge_into(&mut table, parent, moved, s, d);
                }
            }
        }
        NiceKind::Forget(v) => {
            let child_bag = &ntd.node(node.children[0]).bag;
            let pos = bag_position(child_bag, v);
            for (&key, front) in children[0] {
                if let Some(parent) = space.forget(key, pos) {
                    merge_into(&mut table, parent, front.clone(), s, d);
                }
            }
        }
        NiceKind::Join => {
            let mut by_support: BTreeMap<u64, Vec<(S::Key, &ParetoFront)>> = BTreeMap::new();
            for (&key, front) in children[1] {
                by_support.entry(space.support(key)).or_default().push((key, front));
            }
            for (&ka, fa) in children[0] {
                let support = space.support(ka);
                let Some(partners) = by_support.get(&support) else {
                    continue;
                };
                let shared = overlap(&node.bag, support, labels);
                for &(kb, fb) in partners {
                    if let Some(parent) = space.join(ka, kb) {
                        merge_into(&mut table, parent, pareto_join(fa, fb, shared, s, d), s, d);
                    }
                }
            }
        }
    }
    table
}

fn check_inputs(g: &VertexGraph, ntd: &NiceTreeDecomposition) -> Result<()> {
    ntd.check(g)?;
    let bag = ntd.width() + 1;
    if bag > MAX_BAG_SIZE {
        return Err(VckError::SizeLimit {
            what: "bag size",
            actual: bag,
            limit: MAX_BAG_SIZE,
        });
    }
    Ok(())
}

/// Runs the program, keeping only the root table.
fn run_root<S: StateSpace>(
    space: &S,
    ntd: &NiceTreeDecomposition,
    labels: &Labels,
) -> StateTable<S::Key> {
    let mut tables: Vec<Option<StateTable<S::Key>>> = Vec::with_capacity(ntd.len());
    for t in 0..ntd.len() {
        let owned: Vec<StateTable<S::Key>> = ntd
            .node(t)
            .children
            .iter()
            .map(|&c| tables[c].take().expect("child computed once"))
            .collect();
        let refs: Vec<&StateTable<S::Key>> = owned.iter().collect();
        tables.push(Some(compute_node(space, ntd, t, &refs, labels)));
    }
    tables.pop().flatten().unwrap_or_default()
}

/// Runs the program, keeping every table for witness reconstruction.
fn run_all<S: StateSpace>(
    space: &S,
    ntd: &NiceTreeDecomposition,
    labels: &Labels,
) -> Vec<StateTable<S::Key>> {
    let mut tables: Vec<StateTable<S::Key>> = Vec::with_capacity(ntd.len());
    for t in 0..ntd.len() {
        let refs: Vec<&StateTable<S::Key>> =
            ntd.node(t).children.iter().map(|&c| &tables[c]).collect();
        let table = compute_node(space, ntd, t, &refs, labels);
        tables.push(table);
    }
    tables
}

fn merged_front<K: Ord>(root: &StateTable<K>, keys: &[K], s: u64, d: u64) -> ParetoFront {
    keys.iter()
        .filter_map(|k| root.get(k))
        .fold(ParetoFront::empty(), |acc, f| pareto_merge(&acc, f, s, d))
}

fn labels_of<'a>(g: &'a VertexGraph, bound: KnapsackBound) -> Labels<'a> {
    Labels {
        weight: g.weights(),
        value: g.values(),
        s: bound.s,
        d: bound.d,
    }
}

fn outcome(front: ParetoFront, bound: KnapsackBound) -> DpOutcome {
    let decision = decide(&front, bound);
    DpOutcome { front, decision }
}

/// Minimum vertex-cover cardinality, computed on the decomposition with unit
/// weights, zero values and an unbounded capacity.
pub fn min_cover_size(g: &VertexGraph, ntd: &NiceTreeDecomposition) -> Result<usize> {
    check_inputs(g, ntd)?;
    let ones = vec![1u64; g.n()];
    let zeros = vec![0u64; g.n()];
    let labels = Labels {
        weight: &ones,
        value: &zeros,
        s: g.n() as u64,
        d: 0,
    };
    let root = run_root(&AnySpace, ntd, &labels);
    let front = root.get(&0).cloned().unwrap_or_default();
    Ok(front.pairs().first().map_or(g.n(), |p| p.0 as usize))
}

fn sized_plan(inst: &VckInstance, ntd: &NiceTreeDecomposition) -> Result<(SizedSpace, Vec<(u64, usize)>)> {
    match inst.variant {
        Variant::Budget(k) => Ok((SizedSpace { cap: k }, (0..=k).map(|c| (0, c)).collect())),
        Variant::Minimum => {
            let k_star = min_cover_size(&inst.graph, ntd)?;
            Ok((SizedSpace { cap: k_star }, vec![(0, k_star)]))
        }
        other => Err(VckError::input(format!(
            "cardinality-indexed program needs Budget or Minimum, got {other:?}"
        ))),
    }
}

fn expect_variant(inst: &VckInstance, want: Variant) -> Result<()> {
    if inst.variant == want {
        Ok(())
    } else {
        Err(VckError::input(format!(
            "expected variant {want:?}, got {:?}",
            inst.variant
        )))
    }
}

/// Front over all vertex covers of weight at most `s`.
pub fn solve_vck(inst: &VckInstance, ntd: &NiceTreeDecomposition) -> Result<DpOutcome> {
    expect_variant(inst, Variant::Any)?;
    check_inputs(&inst.graph, ntd)?;
    let labels = labels_of(&inst.graph, inst.bound);
    let root = run_root(&AnySpace, ntd, &labels);
    Ok(outcome(
        merged_front(&root, &[0], inst.bound.s, inst.bound.d),
        inst.bound,
    ))
}

/// Front over covers of cardinality at most `k` (Budget) or exactly the
/// minimum cover size (Minimum). The minimum is a property of the graph
/// alone; the capacity filter applies only to the returned front.
pub fn solve_vck_sized(inst: &VckInstance, ntd: &NiceTreeDecomposition) -> Result<DpOutcome> {
    check_inputs(&inst.graph, ntd)?;
    let (space, answer) = sized_plan(inst, ntd)?;
    let labels = labels_of(&inst.graph, inst.bound);
    let root = run_root(&space, ntd, &labels);
    Ok(outcome(
        merged_front(&root, &answer, inst.bound.s, inst.bound.d),
        inst.bound,
    ))
}

/// Front over inclusion-minimal vertex covers.
pub fn solve_minimal_vck(inst: &VckInstance, ntd: &NiceTreeDecomposition) -> Result<DpOutcome> {
    expect_variant(inst, Variant::Minimal)?;
    check_inputs(&inst.graph, ntd)?;
    let labels = labels_of(&inst.graph, inst.bound);
    let root = run_root(&MinimalSpace, ntd, &labels);
    Ok(outcome(
        merged_front(&root, &[(0, 0)], inst.bound.s, inst.bound.d),
        inst.bound,
    ))
}

/// Dispatches on the instance's variant.
pub fn solve(inst: &VckInstance, ntd: &NiceTreeDecomposition) -> Result<DpOutcome> {
    match inst.variant {
        Variant::Any => solve_vck(inst, ntd),
        Variant::Budget(_) | Variant::Minimum => solve_vck_sized(inst, ntd),
        Variant::Minimal => solve_minimal_vck(inst, ntd),
    }
}

/// Every node's table of one run, retained for witness reconstruction.
pub struct DpTable<'a, S: StateSpace> {
    graph: &'a VertexGraph,
    ntd: &'a NiceTreeDecomposition,
    space: S,
    bound: KnapsackBound,
    tables: Vec<StateTable<S::Key>>,
    answer: Vec<S::Key>,
    front: ParetoFront,
}

pub type DpTableAny<'a> = DpTable<'a, AnySpace>;
pub type DpTableSized<'a> = DpTable<'a, SizedSpace>;
pub type DpTableMinimal<'a> = DpTable<'a, MinimalSpace>;

impl<'a, S: StateSpace> DpTable<'a, S> {
    fn build(
        inst: &'a VckInstance,
        ntd: &'a NiceTreeDecomposition,
        space: S,
        answer: Vec<S::Key>,
    ) -> Self {
        let labels = labels_of(&inst.graph, inst.bound);
        let tables = run_all(&space, ntd, &labels);
        let front = merged_front(
            tables.last().expect("at least one node"),
            &answer,
            inst.bound.s,
            inst.bound.d,
        );
        DpTable {
            graph: &inst.graph,
            ntd,
            space,
            bound: inst.bound,
            tables,
            answer,
            front,
        }
    }

    pub fn front(&self) -> &ParetoFront {
        &self.front
    }

    pub fn outcome(&self) -> DpOutcome {
        outcome(self.front.clone(), self.bound)
    }

    /// Number of stored states at a node.
    pub fn states_at(&self, t: usize) -> usize {
        self.tables[t].len()
    }

    /// Longest front stored anywhere in the table.
    pub fn max_front_len(&self) -> usize {
        self.tables
            .iter()
            .flat_map(|t| t.values().map(ParetoFront::len))
            .max()
            .unwrap_or(0)
    }

    /// A vertex set realizing `pair`, which must be on the answer front.
    pub fn reconstruct(&self, pair: Pair) -> Result<Solution> {
        let root = self.tables.len() - 1;
        let start = self
            .answer
            .iter()
            .copied()
            .find(|k| self.tables[root].get(k).is_some_and(|f| f.contains(pair)))
            .ok_or_else(|| {
                VckError::input(format!("pair {pair:?} is not on the root front"))
            })?;
        let (s, d) = (self.bound.s, self.bound.d);
        let labels = labels_of(self.graph, self.bound);
        let mut chosen = Vec::new();
        let mut stack = vec![(root, start, pair)];
        let mut out = Vec::with_capacity(2);

        while let Some((t, key, target)) = stack.pop() {
            let node = self.ntd.node(t);
            let found = match node.kind {
                NiceKind::Leaf => target == (0, 0),
                NiceKind::Introduce(v) => {
                    let child = node.children[0];
                    let pos = bag_position(&node.bag, v);
                    let nbrs = neighbor_mask(&node.bag, &node.introduced_edges);
                    let (dw, dv) = (self.graph.weight(v), self.graph.value(v));
                    let mut hit = None;
                    'search: for (&ck, front) in &self.tables[child] {
                        out.clear();
                        self.space.introduce(ck, pos, nbrs, &mut out);
                        for &(pk, included) in &out {
                            if pk != key {
                                continue;
                            }
                            let source = if included {
                                front.pairs().iter().copied().find(|p| {
                                    p.0 + dw == target.0 && p.1.saturating_add(dv).min(d) == target.1
                                })
                            } else {
                                front.contains(target).then_some(target)
                            };
                            if let Some(p) = source {
                                hit = Some((ck, p, included));
                                break 'search;
                            }
                        }
                    }
                    hit.map(|(ck, p, included)| {
                        if included {
                            chosen.push(v);
                        }
                        stack.push((child, ck, p));
                    })
                    .is_some()
                }
                NiceKind::Forget(v) => {
                    let child = node.children[0];
                    let pos = bag_position(&self.ntd.node(child).bag, v);
                    self.tables[child]
                        .iter()
                        .find(|(&ck, front)| {
                            self.space.forget(ck, pos) == Some(key) && front.contains(target)
                        })
                        .map(|(&ck, _)| stack.push((child, ck, target)))
                        .is_some()
                }
                NiceKind::Join => {
                    let (left, right) = (node.children[0], node.children[1]);
                    let mut hit = None;
                    'pairs: for (&ka, fa) in &self.tables[left] {
                        for (&kb, fb) in &self.tables[right] {
                            if self.space.support(ka) != self.space.support(kb)
                                || self.space.join(ka, kb) != Some(key)
                            {
                                continue;
                            }
                            let shared = overlap(&node.bag, self.space.support(ka), &labels);
                            for &p in fa.pairs() {
                                for &q in fb.pairs() {
                                    let w = (p.0 + q.0).saturating_sub(shared.0);
                                    let v = p.1.saturating_add(q.1).saturating_sub(shared.1).min(d);
                                    if (w, v) == target && w <= s {
                                        hit = Some((ka, p, kb, q));
                                        break 'pairs;
                                    }
                                }
                            }
                        }
                    }
                    hit.map(|(ka, p, kb, q)| {
                        stack.push((left, ka, p));
                        stack.push((right, kb, q));
                    })
                    .is_some()
                }
            };
            if !found {
                return Err(VckError::structural(format!(
                    "witness trace lost at node {t} for pair {target:?}"
                )));
            }
        }
        Ok(Solution::of_vertices(self.graph, chosen))
    }
}

pub fn vck_table<'a>(inst: &'a VckInstance, ntd: &'a NiceTreeDecomposition) -> Result<DpTableAny<'a>> {
    expect_variant(inst, Variant::Any)?;
    check_inputs(&inst.graph, ntd)?;
    Ok(DpTable::build(inst, ntd, AnySpace, vec![0]))
}

pub fn sized_table<'a>(inst: &'a VckInstance, ntd: &'a NiceTreeDecomposition) -> Result<DpTableSized<'a>> {
    check_inputs(&inst.graph, ntd)?;
    let (space, answer) = sized_plan(inst, ntd)?;
    Ok(DpTable::build(inst, ntd, space, answer))
}

pub fn minimal_table<'a>(inst: &'a VckInstance, ntd: &'a NiceTreeDecomposition) -> Result<DpTableMinimal<'a>> {
    expect_variant(inst, Variant::Minimal)?;
    check_inputs(&inst.graph, ntd)?;
    Ok(DpTable::build(inst, ntd, MinimalSpace, vec![(0, 0)]))
}

/// A retained table of whichever program matches the instance's variant.
pub enum AnyDpTable<'a> {
    Any(DpTableAny<'a>),
    Sized(DpTableSized<'a>),
    Minimal(DpTableMinimal<'a>),
}

impl AnyDpTable<'_> {
    pub fn front(&self) -> &ParetoFront {
        match self {
            AnyDpTable::Any(t) => t.front(),
            AnyDpTable::Sized(t) => t.front(),
            AnyDpTable::Minimal(t) => t.front(),
        }
    }

    pub fn outcome(&self) -> DpOutcome {
        match self {
            AnyDpTable::Any(t) => t.outcome(),
            AnyDpTable::Sized(t) => t.outcome(),
            AnyDpTable::Minimal(t) => t.outcome(),
        }
    }
}

pub fn build_table<'a>(inst: &'a VckInstance, ntd: &'a NiceTreeDecomposition) -> Result<AnyDpTable<'a>> {
    Ok(match inst.variant {
        Variant::Any => AnyDpTable::Any(vck_table(inst, ntd)?),
        Variant::Budget(_) | Variant::Minimum => AnyDpTable::Sized(sized_table(inst, ntd)?),
        Variant::Minimal => AnyDpTable::Minimal(minimal_table(inst, ntd)?),
    })
}

/// A vertex set whose `(weight, clamped value)` equals `pair` and which
/// satisfies the table's variant predicate.
pub fn reconstruct_witness(table: &AnyDpTable, pair: Pair) -> Result<Solution> {
    match table {
        AnyDpTable::Any(t) => t.reconstruct(pair),
        AnyDpTable::Sized(t) => t.reconstruct(pair),
        AnyDpTable::Minimal(t) => t.reconstruct(pair),
    }
}
