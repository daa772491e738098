use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::VckError;
use crate::graph::VertexGraph;

use super::TreeDecomposition;

/// Greedy elimination-ordering rule. Ties go to the smallest vertex id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    #[default]
    MinDegree,
    MinFill,
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::MinDegree => "min-degree",
            Heuristic::MinFill => "min-fill",
        })
    }
}

impl FromStr for Heuristic {
    type Err = VckError;

    fn from_str(s: &str) -> Result<Self, VckError> {
        match s {
            "min-degree" => Ok(Heuristic::MinDegree),
            "min-fill" => Ok(Heuristic::MinFill),
            other => Err(VckError::input(format!("unknown heuristic '{other}'"))),
        }
    }
}

struct EliminationGraph {
    adj: Vec<HashSet<usize>>,
}

impl EliminationGraph {
    fn fill_in(&self, v: usize) -> usize {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !self.adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    }

    fn score(&self, v: usize, h: Heuristic) -> usize {
        match h {
            Heuristic::MinDegree => self.adj[v].len(),
            Heuristic::MinFill => self.fill_in(v),
        }
    }
}

/// Tree decomposition from a greedy elimination ordering.
///
/// Eliminating `v` creates the bag `{v} ∪ N(v)` and turns `N(v)` into a
/// clique. Each bag hangs below the bag of its earliest-eliminated
/// remaining neighbour; bags of distinct components are chained together.
pub fn build_decomposition(g: &VertexGraph, heuristic: Heuristic) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut eg = EliminationGraph {
        adj: (0..n).map(|u| g.neighbors(u).iter().copied().collect()).collect(),
    };
    let mut score: Vec<usize> = (0..n).map(|v| eg.score(v, heuristic)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (score[v], v)).collect();
    let mut position = vec![usize::MAX; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut later: Vec<Vec<usize>> = Vec::with_capacity(n);

    while let Some((_, v)) = queue.pop_first() {
        position[v] = bags.len();
        let nbrs: Vec<usize> = eg.adj[v].iter().copied().collect();
        let mut bag = nbrs.clone();
        bag.push(v);
        bags.push(bag);
        later.push(nbrs.clone());

        for &a in &nbrs {
            eg.adj[a].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if eg.adj[a].insert(b) {
                    eg.adj[b].insert(a);
                }
            }
        }
        eg.adj[v].clear();

        let mut touched: BTreeSet<usize> = nbrs.iter().copied().collect();
        if heuristic == Heuristic::MinFill {
            for &a in &nbrs {
                touched.extend(eg.adj[a].iter().copied());
            }
        }
        for u in touched {
            if position[u] != usize::MAX {
                continue;
            }
            let fresh = eg.score(u, heuristic);
            if fresh != score[u] {
                queue.remove(&(score[u], u));
                score[u] = fresh;
                queue.insert((fresh, u));
            }
        }
    }

    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    let mut last_root: Option<usize> = None;
    for (i, nbrs) in later.iter().enumerate() {
        match nbrs.iter().map(|&u| position[u]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => {
                if let Some(r) = last_root {
                    tree_edges.push((r, i));
                }
                last_root = Some(i);
            }
        }
    }
    TreeDecomposition::new(bags, tree_edges)
}
