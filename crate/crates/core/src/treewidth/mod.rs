//! Tree decompositions: construction, validation and the nice rooted form
//! consumed by the dynamic programs.

mod elimination;
mod nice;

pub use elimination::{build_decomposition, Heuristic};
pub use nice::{to_nice, to_nice_rooted, NiceKind, NiceNode, NiceTreeDecomposition};

use crate::error::{Result, VckError};
use crate::graph::VertexGraph;

/// Bags `X_t` (sorted vertex lists) joined by undirected tree edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Sorts and dedups each bag. Structural checks live in
    /// [`validate_decomposition`].
    pub fn new(mut bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        for bag in bags.iter_mut() {
            bag.sort_unstable();
            bag.dedup();
        }
        TreeDecomposition { bags, tree_edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (zero for empty bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

/// Outcome of checking a decomposition against a graph, one field per
/// defining property plus the tree shape itself. `None` means the property
/// holds; otherwise the field names a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Why the bag graph is not a tree, if it is not.
    pub not_a_tree: Option<String>,
    /// A bag entry that is not a vertex of the graph.
    pub foreign_vertex: Option<usize>,
    /// A graph vertex contained in no bag.
    pub missing_vertex: Option<usize>,
    /// A graph edge whose endpoints share no bag.
    pub uncovered_edge: Option<(usize, usize)>,
    /// A vertex whose bags do not induce a connected subtree.
    pub disconnected_vertex: Option<usize>,
}

impl ValidationReport {
    pub fn vertices_covered(&self) -> bool {
        self.missing_vertex.is_none() && self.foreign_vertex.is_none()
    }

    pub fn edges_covered(&self) -> bool {
        self.uncovered_edge.is_none()
    }

    pub fn subtrees_connected(&self) -> bool {
        self.disconnected_vertex.is_none()
    }

    pub fn is_valid(&self) -> bool {
        self.not_a_tree.is_none()
            && self.vertices_covered()
            && self.edges_covered()
            && self.subtrees_connected()
    }

    /// Human-readable failures, empty when valid.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(why) = &self.not_a_tree {
            out.push(format!("bag graph is not a tree: {why}"));
        }
        if let Some(v) = self.foreign_vertex {
            out.push(format!("bag contains vertex {} which is not in the graph", v + 1));
        }
        if let Some(v) = self.missing_vertex {
            out.push(format!("vertex {} is in no bag", v + 1));
        }
        if let Some((u, v)) = self.uncovered_edge {
            out.push(format!("edge ({}, {}) is in no bag", u + 1, v + 1));
        }
        if let Some(v) = self.disconnected_vertex {
            out.push(format!("bags containing vertex {} are not connected", v + 1));
        }
        out
    }
}

fn tree_shape_error(node_count: usize, edges: &[(usize, usize)]) -> Option<String> {
    if node_count == 0 {
        return Some("no bags".into());
    }
    if edges.len() + 1 != node_count {
        return Some(format!(
            "{} bags need {} tree edges, found {}",
            node_count,
            node_count - 1,
            edges.len()
        ));
    }
    let mut parent: Vec<usize> = (0..node_count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        if a >= node_count || b >= node_count {
            return Some(format!("tree edge ({a}, {b}) references a missing bag"));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Some(format!("tree edge ({a}, {b}) closes a cycle"));
        }
        parent[ra] = rb;
    }
    None
}

pub fn validate_decomposition(g: &VertexGraph, td: &TreeDecomposition) -> ValidationReport {
    let n = g.n();
    let mut report = ValidationReport {
        not_a_tree: tree_shape_error(td.node_count(), td.tree_edges()),
        ..Default::default()
    };

    let mut occurrences = vec![0usize; n];
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, bag) in td.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                report.foreign_vertex.get_or_insert(v);
                continue;
            }
            occurrences[v] += 1;
            holders[v].push(t);
        }
    }
    report.missing_vertex = occurrences.iter().position(|&c| c == 0);

    // Edge coverage: some bag holding u also holds v.
    report.uncovered_edge = g.edges().find(|&(u, v)| {
        !holders[u]
            .iter()
            .any(|&t| td.bags()[t].binary_search(&v).is_ok())
    });

    // In a forest, the bags holding v are connected iff they span exactly
    // occurrences[v] - 1 tree edges.
    if report.not_a_tree.is_none() {
        let mut inner_edges = vec![0usize; n];
        for &(a, b) in td.tree_edges() {
            let (x, y) = (&td.bags()[a], &td.bags()[b]);
            let (mut i, mut j) = (0, 0);
            while i < x.len() && j < y.len() {
                match x[i].cmp(&y[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if x[i] < n {
                            inner_edges[x[i]] += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        report.disconnected_vertex =
            (0..n).find(|&v| occurrences[v] > 0 && inner_edges[v] + 1 != occurrences[v]);
    }
    report
}

/// Width-one decomposition of a forest: one bag per edge, chained along the
/// rooted tree structure; isolated vertices get singleton bags.
pub fn decomposition_of_tree(g: &VertexGraph) -> Result<TreeDecomposition> {
    if !g.is_forest() {
        return Err(VckError::input("graph contains a cycle"));
    }
    let n = g.n();
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree_edges = Vec::new();
    // bag whose top vertex is v, i.e. the bag of the edge (parent(v), v)
    let mut bag_of = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut previous_anchor: Option<usize> = None;
    let mut queue = std::collections::VecDeque::new();

    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut anchor: Option<usize> = None;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if visited[v] {
                    continue;
                }
                visited[v] = true;
                let id = bags.len();
                bags.push(vec![u.min(v), u.max(v)]);
                bag_of[v] = id;
                if u == root {
                    match anchor {
                        Some(a) => tree_edges.push((a, id)),
                        None => anchor = Some(id),
                    }
                } else {
                    tree_edges.push((bag_of[u], id));
                }
                queue.push_back(v);
            }
        }
        let anchor = anchor.unwrap_or_else(|| {
            bags.push(vec![root]);
            bags.len() - 1
        });
        if let Some(prev) = previous_anchor {
            tree_edges.push((prev, anchor));
        }
        previous_anchor = Some(anchor);
    }
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    Ok(TreeDecomposition::new(bags, tree_edges))
}
