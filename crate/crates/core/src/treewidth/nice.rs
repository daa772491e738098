use std::collections::HashSet;

use crate::error::{Result, VckError};
use crate::graph::VertexGraph;

use super::{validate_decomposition, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    /// Sorted bag contents.
    pub bag: Vec<usize>,
    pub kind: NiceKind,
    pub children: Vec<usize>,
    /// For an introduce node of `v`: the other endpoints of the graph edges
    /// assigned to this node. Empty for every other kind.
    pub introduced_edges: Vec<usize>,
}

/// Rooted nice decomposition with empty root and leaf bags.
///
/// Nodes are stored in post-order: every child index is smaller than its
/// parent's and the root is the last node. Each graph edge is assigned to
/// exactly one introduce node, the one of whichever endpoint appears second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    n_vertices: usize,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, t: usize) -> &NiceNode {
        &self.nodes[t]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|t| t.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Every graph edge `(u, v)` with `u < v` paired with its assigned node.
    pub fn edge_intro(&self) -> Vec<((usize, usize), usize)> {
        let mut out = Vec::new();
        for (t, node) in self.nodes.iter().enumerate() {
            if let NiceKind::Introduce(v) = node.kind {
                for &u in &node.introduced_edges {
                    out.push(((u.min(v), u.max(v)), t));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks every structural invariant of the nice form against `g`.
    pub fn check(&self, g: &VertexGraph) -> Result<()> {
        let bad = |t: usize, msg: &str| {
            Err(VckError::input(format!("nice decomposition node {t}: {msg}")))
        };
        if self.nodes.is_empty() {
            return Err(VckError::input("nice decomposition has no nodes"));
        }
        if self.n_vertices != g.n() {
            return Err(VckError::input(format!(
                "decomposition is for {} vertices, graph has {}",
                self.n_vertices,
                g.n()
            )));
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return bad(self.root(), "root bag is not empty");
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for (t, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) || node.bag.iter().any(|&v| v >= g.n()) {
                return bad(t, "bag is not a sorted list of graph vertices");
            }
            for &c in &node.children {
                if c >= t || has_parent[c] {
                    return bad(t, "children must precede their parent and have one parent");
                }
                has_parent[c] = true;
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let ok = match node.kind {
                NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    node.children.len() == 1
                        && child_bag(0).binary_search(&v).is_err()
                        && with_vertex(child_bag(0), v) == node.bag
                }
                NiceKind::Forget(v) => {
                    node.children.len() == 1
                        && node.bag.binary_search(&v).is_err()
                        && with_vertex(&node.bag, v) == *child_bag(0)
                }
                NiceKind::Join => {
                    node.children.len() == 2
                        && *child_bag(0) == node.bag
                        && *child_bag(1) == node.bag
                }
            };
            if !ok {
                return bad(t, "kind does not match its bag and children");
            }
            if !matches!(node.kind, NiceKind::Introduce(_)) && !node.introduced_edges.is_empty() {
                return bad(t, "only introduce nodes may carry edges");
            }
            if let NiceKind::Introduce(v) = node.kind {
                for &u in &node.introduced_edges {
                    if !g.has_edge(u, v) || node.bag.binary_search(&u).is_err() {
                        return bad(t, "introduced edge is not a graph edge inside the bag");
                    }
                }
            }
        }
        if has_parent.iter().filter(|&&p| !p).count() != 1 {
            return Err(VckError::input("nice decomposition is not a single rooted tree"));
        }
        let assigned: Vec<(usize, usize)> = self.edge_intro().into_iter().map(|(e, _)| e).collect();
        if assigned != g.edge_list() {
            return Err(VckError::input(
                "edge assignment does not cover every graph edge exactly once",
            ));
        }
        Ok(())
    }
}

fn with_vertex(bag: &[usize], v: usize) -> Vec<usize> {
    let mut out = bag.to_vec();
    let pos = out.binary_search(&v).unwrap_or_else(|p| p);
    out.insert(pos, v);
    out
}

struct Builder<'g> {
    g: &'g VertexGraph,
    nodes: Vec<NiceNode>,
    assigned: HashSet<(usize, usize)>,
}

impl Builder<'_> {
    fn push(&mut self, bag: Vec<usize>, kind: NiceKind, children: Vec<usize>) -> usize {
        let mut introduced_edges = Vec::new();
        if let NiceKind::Introduce(v) = kind {
            for &u in &bag {
                if u != v && self.g.has_edge(u, v) && self.assigned.insert((u.min(v), u.max(v))) {
                    introduced_edges.push(u);
                }
            }
        }
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
            introduced_edges,
        });
        self.nodes.len() - 1
    }

    /// Forgets `from \ to`, then introduces `to \ from`, on top of `top`.
    fn transition(&mut self, mut top: usize, to: &[usize]) -> usize {
        let from = self.nodes[top].bag.clone();
        let mut bag = from.clone();
        for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
            bag.retain(|&x| x != v);
            top = self.push(bag.clone(), NiceKind::Forget(v), vec![top]);
        }
        for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
            bag = with_vertex(&bag, v);
            top = self.push(bag.clone(), NiceKind::Introduce(v), vec![top]);
        }
        top
    }
}

/// Nice form rooted at bag 0.
pub fn to_nice(g: &VertexGraph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    to_nice_rooted(g, td, 0)
}

/// Nice form rooted at the given bag. Width is preserved.
pub fn to_nice_rooted(
    g: &VertexGraph,
    td: &TreeDecomposition,
    root_bag: usize,
) -> Result<NiceTreeDecomposition> {
    let report = validate_decomposition(g, td);
    if !report.is_valid() {
        return Err(VckError::input(format!(
            "invalid tree decomposition: {}",
            report.failures().join("; ")
        )));
    }
    if root_bag >= td.node_count() {
        return Err(VckError::input(format!("root bag {root_bag} does not exist")));
    }

    let k = td.node_count();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in td.tree_edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }
    // Iterative DFS yielding a pre-order; reversed it visits children first.
    let mut parent = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![root_bag];
    parent[root_bag] = root_bag;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in adj[t].iter().rev() {
            if parent[c] == usize::MAX {
                parent[c] = t;
                stack.push(c);
            }
        }
    }

    let mut b = Builder {
        g,
        nodes: Vec::new(),
        assigned: HashSet::new(),
    };
    let mut top_of = vec![usize::MAX; k];
    let mut pending: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &t in order.iter().rev() {
        let bag = &td.bags()[t];
        let mut branches = std::mem::take(&mut pending[t]);
        branches.sort_unstable();
        let top = if branches.is_empty() {
            let leaf = b.push(Vec::new(), NiceKind::Leaf, Vec::new());
            b.transition(leaf, bag)
        } else {
            let tops: Vec<usize> = branches
                .into_iter()
                .map(|c| b.transition(top_of[c], bag))
                .collect();
            tops.into_iter()
                .reduce(|left, right| b.push(bag.clone(), NiceKind::Join, vec![left, right]))
                .expect("non-empty")
        };
        top_of[t] = top;
        if t != root_bag {
            pending[parent[t]].push(t);
        }
    }
    b.transition(top_of[root_bag], &[]);

    let nice = NiceTreeDecomposition {
        nodes: b.nodes,
        n_vertices: g.n(),
    };
    debug_assert!(nice.check(g).is_ok());
    Ok(nice)
}
