//! Exhaustive-enumeration solvers used as ground truth for everything else.
//!
//! Subsets are encoded as bitmasks and visited in increasing integer order.
//! When several subsets tie for the best witness, the smallest encoding
//! wins, so results are identical for sequential and parallel execution.

use std::cmp::Reverse;

use crate::error::{Result, VckError};
use crate::front::{decide, Pair, ParetoFront};
use crate::graph::VertexGraph;
use crate::instance::{Solution, Variant, VckInstance};
use crate::parallel::{chunked_reduce, Execution};
use crate::setsys::{HittingSetSystem, SetSystem};

pub const MAX_ORACLE_VERTICES: usize = 30;
pub const MAX_ORACLE_SETS: usize = 25;
pub const MAX_ORACLE_ELEMENTS: usize = 25;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub front: ParetoFront,
    pub decision: bool,
    pub witness: Option<Solution>,
}

/// Knapsack objective for the set-system oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimize weight subject to value at least `d`.
    TargetValue(u64),
    /// Maximize value subject to weight at most `s`.
    BudgetWeight(u64),
}

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(VckError::SizeLimit {
            what,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}

fn mask_sum(mask: u64, xs: &[u64]) -> u64 {
    let mut total = 0;
    let mut rest = mask;
    while rest != 0 {
        total += xs[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    total
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn covers_edges(mask: u64, nbr: &[u64]) -> bool {
    nbr.iter()
        .enumerate()
        .all(|(u, &nu)| mask >> u & 1 == 1 || nu & !mask == 0)
}

fn is_minimal_cover_mask(mask: u64, nbr: &[u64]) -> bool {
    if !covers_edges(mask, nbr) {
        return false;
    }
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if nbr[v] & !mask == 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

pub fn oracle_vck(inst: &VckInstance) -> Result<OracleOutcome> {
    oracle_vck_with(inst, Execution::default())
}

pub fn oracle_vck_with(inst: &VckInstance, exec: Execution) -> Result<OracleOutcome> {
    let g = &inst.graph;
    guard("vertex count", g.n(), MAX_ORACLE_VERTICES)?;
    let (s, d) = (inst.bound.s, inst.bound.d);
    let nbr = g.neighbor_masks();
    let min_size = match inst.variant {
        Variant::Minimum => Some(min_vc_size_with(g, exec)?),
        _ => None,
    };
    let admissible = |mask: u64| -> bool {
        match inst.variant {
            Variant::Any => covers_edges(mask, &nbr),
            Variant::Budget(k) => mask.count_ones() as usize <= k && covers_edges(mask, &nbr),
            Variant::Minimum => {
                Some(mask.count_ones() as usize) == min_size && covers_edges(mask, &nbr)
            }
            Variant::Minimal => is_minimal_cover_mask(mask, &nbr),
        }
    };

    // Witness key: lightest, then most valuable, then smallest encoding.
    type Best = Option<(u64, Reverse<u64>, u64)>;
    let scan = |range: std::ops::Range<u64>| -> (Vec<Pair>, Best) {
        let mut pairs = Vec::new();
        let mut best: Best = None;
        for mask in range {
            if !admissible(mask) {
                continue;
            }
            let w = mask_sum(mask, g.weights());
            if w > s {
                continue;
            }
            let v = mask_sum(mask, g.values());
            pairs.push((w, v));
            if v >= d {
                let key = (w, Reverse(v), mask);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        (ParetoFront::from_pairs(pairs, s, d).pairs().to_vec(), best)
    };
    let (pairs, best) = chunked_reduce(exec, 1u64 << g.n(), CHUNK, scan, |mut a, b| {
        a.0.extend(b.0);
        let best = match (a.1, b.1) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        (a.0, best)
    })
    .unwrap_or_default();

    let front = ParetoFront::from_pairs(pairs, s, d);
    let decision = decide(&front, inst.bound);
    let witness = best.map(|(_, _, mask)| Solution::of_vertices(g, mask_members(mask)));
    debug_assert_eq!(decision, witness.is_some());
    Ok(OracleOutcome {
        front,
        decision,
        witness,
    })
}

/// Minimum cardinality of a vertex cover.
pub fn min_vc_size(g: &VertexGraph) -> Result<usize> {
    min_vc_size_with(g, Execution::default())
}

pub fn min_vc_size_with(g: &VertexGraph, exec: Execution) -> Result<usize> {
    guard("vertex count", g.n(), MAX_ORACLE_VERTICES)?;
    let nbr = g.neighbor_masks();
    let scan = |range: std::ops::Range<u64>| {
        range
            .filter(|&m| covers_edges(m, &nbr))
            .map(|m| m.count_ones() as usize)
            .min()
    };
    let best = chunked_reduce(exec, 1u64 << g.n(), CHUNK, scan, |a, b| match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    });
    // the full vertex set is always a cover
    Ok(best.flatten().unwrap_or(g.n()))
}

/// Exhaustive search over index subsets `I` with a feasibility test, keeping
/// the best solution under `objective`.
fn best_subset<F>(
    count: usize,
    weight: &[u64],
    value: &[u64],
    objective: Objective,
    exec: Execution,
    feasible: F,
) -> Option<Solution>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    // Smaller key is better.
    let key = |mask: u64| -> Option<(u64, u64, u64)> {
        let w = mask_sum(mask, weight);
        let v = mask_sum(mask, value);
        match objective {
            Objective::TargetValue(d) if v >= d => Some((w, u64::MAX - v, mask)),
            Objective::BudgetWeight(s) if w <= s => Some((u64::MAX - v, w, mask)),
            _ => None,
        }
    };
    let scan = |range: std::ops::Range<u64>| {
        range
            .filter(|&m| feasible(m))
            .filter_map(key)
            .min()
    };
    let best = chunked_reduce(exec, 1u64 << count, CHUNK, scan, |a, b| match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    })
    .flatten()?;
    Some(Solution::from_members(mask_members(best.2), weight, value))
}

/// Best set cover under a knapsack objective; `None` if no cover qualifies.
pub fn oracle_sck(sys: &SetSystem, objective: Objective) -> Result<Option<Solution>> {
    oracle_sck_with(sys, objective, Execution::default())
}

pub fn oracle_sck_with(
    sys: &SetSystem,
    objective: Objective,
    exec: Execution,
) -> Result<Option<Solution>> {
    guard("set count", sys.m(), MAX_ORACLE_SETS)?;
    let words = sys.n_elements().div_ceil(64);
    let bits: Vec<Vec<u64>> = sys
        .sets()
        .iter()
        .map(|set| {
            let mut b = vec![0u64; words];
            for &e in &set.elements {
                b[e / 64] |= 1 << (e % 64);
            }
            b
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let hi = (sys.n_elements() - w * 64).min(64);
            if hi == 64 {
                u64::MAX
            } else {
                (1u64 << hi) - 1
            }
        })
        .collect();
    let covers = |mask: u64| -> bool {
        let mut acc = vec![0u64; words];
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            for (a, b) in acc.iter_mut().zip(&bits[i]) {
                *a |= b;
            }
            rest &= rest - 1;
        }
        acc == full
    };
    Ok(best_subset(
        sys.m(),
        &sys.weights(),
        &sys.values(),
        objective,
        exec,
        covers,
    ))
}

/// Best hitting set under a knapsack objective; `None` if none qualifies.
pub fn oracle_hsk(sys: &HittingSetSystem, objective: Objective) -> Result<Option<Solution>> {
    oracle_hsk_with(sys, objective, Execution::default())
}

pub fn oracle_hsk_with(
    sys: &HittingSetSystem,
    objective: Objective,
    exec: Execution,
) -> Result<Option<Solution>> {
    guard("element count", sys.n_elements(), MAX_ORACLE_ELEMENTS)?;
    let set_masks: Vec<u64> = sys
        .sets()
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &j| m | 1 << j))
        .collect();
    let hits = |mask: u64| set_masks.iter().all(|&s| s & mask != 0);
    Ok(best_subset(
        sys.n_elements(),
        sys.element_weights(),
        sys.element_values(),
        objective,
        exec,
        hits,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_minimal_vertex_cover, is_vertex_cover};
    use crate::instance::KnapsackBound;
    use crate::setsys::WeightedSet;

    fn inst(n: usize, edges: &[(usize, usize)], s: u64, d: u64, v: Variant) -> VckInstance {
        VckInstance::new(
            VertexGraph::unweighted(n, edges).unwrap(),
            KnapsackBound::new(s, d),
            v,
        )
        .unwrap()
    }

    const TRIANGLE: &[(usize, usize)] = &[(0, 1), (1, 2), (0, 2)];
    const PATH3: &[(usize, usize)] = &[(0, 1), (1, 2)];

    #[test]
    fn vck_examples() {
        let out = oracle_vck(&inst(2, &[(0, 1)], 1, 1, Variant::Any)).unwrap();
        assert_eq!(out.front.pairs(), &[(1, 1)]);
        assert!(out.decision);
        assert_eq!(out.witness.unwrap().members, vec![0]);

        let out = oracle_vck(&inst(3, TRIANGLE, 1, 1, Variant::Any)).unwrap();
        assert!(!out.decision);
        assert!(out.front.is_empty());
        assert!(out.witness.is_none());

        let out = oracle_vck(&inst(3, PATH3, 2, 2, Variant::Minimal)).unwrap();
        assert_eq!(out.front.pairs(), &[(1, 1), (2, 2)]);
        assert!(out.decision);
        assert_eq!(out.witness.unwrap().members, vec![0, 2]);
    }

    #[test]
    fn minimum_and_budget_variants() {
        let out = oracle_vck(&inst(3, PATH3, 2, 2, Variant::Minimum)).unwrap();
        assert_eq!(out.front.pairs(), &[(1, 1)]);
        assert!(!out.decision);

        let out = oracle_vck(&inst(3, PATH3, 2, 1, Variant::Budget(1))).unwrap();
        assert_eq!(out.front.pairs(), &[(1, 1)]);
        assert!(out.decision);
    }

    #[test]
    fn min_vc_size_examples() {
        assert_eq!(min_vc_size(&VertexGraph::unweighted(3, TRIANGLE).unwrap()).unwrap(), 2);
        let star: Vec<_> = (1..6).map(|v| (0, v)).collect();
        assert_eq!(min_vc_size(&VertexGraph::unweighted(6, &star).unwrap()).unwrap(), 1);
        assert_eq!(min_vc_size(&VertexGraph::unweighted(4, &[]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn size_guards() {
        let big = inst(31, &[], 1, 1, Variant::Any);
        assert!(matches!(oracle_vck(&big), Err(VckError::SizeLimit { .. })));
        let sets = (0..26)
            .map(|_| WeightedSet {
                elements: vec![0],
                weight: 1,
                value: 1,
            })
            .collect();
        let sys = SetSystem::new(1, sets).unwrap();
        assert!(oracle_sck(&sys, Objective::TargetValue(1)).is_err());
    }

    fn ws(elements: &[usize], weight: u64, value: u64) -> WeightedSet {
        WeightedSet {
            elements: elements.to_vec(),
            weight,
            value,
        }
    }

    #[test]
    fn sck_examples() {
        let sys = SetSystem::new(1, vec![ws(&[0], 2, 5)]).unwrap();
        let sol = oracle_sck(&sys, Objective::TargetValue(5)).unwrap().unwrap();
        assert_eq!((sol.members.clone(), sol.total_weight), (vec![0], 2));

        // index sets {0,1} (w 2, a 2) and {2,..} (w >= 3): the pair wins.
        let sys =
            SetSystem::new(2, vec![ws(&[0], 1, 1), ws(&[1], 1, 1), ws(&[0, 1], 3, 1)]).unwrap();
        let sol = oracle_sck(&sys, Objective::TargetValue(2)).unwrap().unwrap();
        assert_eq!((sol.members.clone(), sol.total_weight), (vec![0, 1], 2));

        let sys = SetSystem::new(1, vec![ws(&[0], 5, 1)]).unwrap();
        assert_eq!(oracle_sck(&sys, Objective::BudgetWeight(4)).unwrap(), None);
    }

    #[test]
    fn hsk_examples() {
        let h = HittingSetSystem::new(vec![1, 2], vec![1, 1], vec![vec![0, 1]]).unwrap();
        let sol = oracle_hsk(&h, Objective::TargetValue(1)).unwrap().unwrap();
        assert_eq!((sol.members.clone(), sol.total_weight), (vec![0], 1));

        let h = HittingSetSystem::new(vec![1, 1], vec![3, 3], vec![vec![0], vec![1]]).unwrap();
        let sol = oracle_hsk(&h, Objective::TargetValue(6)).unwrap().unwrap();
        assert_eq!((sol.members.clone(), sol.total_weight), (vec![0, 1], 2));
    }

    #[test]
    fn witnesses_satisfy_their_variant() {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (3, 4)];
        let g = VertexGraph::new(5, &edges, vec![3, 1, 4, 1, 5], vec![2, 7, 1, 8, 2]).unwrap();
        for variant in [Variant::Any, Variant::Budget(3), Variant::Minimum, Variant::Minimal] {
            let inst = VckInstance::new(g.clone(), KnapsackBound::new(9, 8), variant).unwrap();
            let out = oracle_vck(&inst).unwrap();
            let w = out.witness.expect("instance is feasible for every variant");
            assert!(is_vertex_cover(&g, &w.members).unwrap());
            assert!(out.front.contains(w.clamped_pair(8)));
            if variant == Variant::Minimal {
                assert!(is_minimal_vertex_cover(&g, &w.members).unwrap());
            }
            if variant == Variant::Minimum {
                assert_eq!(w.cardinality(), min_vc_size(&g).unwrap());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let edges: Vec<_> = (0..13).map(|i| (i, (i * 5 + 3) % 14)).filter(|e| e.0 != e.1).collect();
        let mut uniq: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        uniq.sort();
        uniq.dedup();
        let g = VertexGraph::new(14, &uniq, (0..14).map(|i| i % 5).collect(), (0..14).map(|i| i % 7).collect()).unwrap();
        let inst = VckInstance::new(g, KnapsackBound::new(20, 25), Variant::Minimal).unwrap();
        assert_eq!(
            oracle_vck_with(&inst, Execution::Sequential).unwrap(),
            oracle_vck_with(&inst, Execution::Parallel).unwrap()
        );
    }
}
