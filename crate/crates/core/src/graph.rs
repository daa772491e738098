//! Undirected simple graphs carrying a knapsack weight and value per vertex.
//!
//! Vertices are `0..n` internally. Files and the command line use `1..=n`.

use crate::error::{Result, VckError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGraph {
    adjacency: Vec<Vec<usize>>,
    weight: Vec<u64>,
    value: Vec<u64>,
    edge_count: usize,
}

impl VertexGraph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range endpoints are rejected, as are weight or value totals
    /// that would overflow `u64`.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        weight: Vec<u64>,
        value: Vec<u64>,
    ) -> Result<Self> {
        if weight.len() != n || value.len() != n {
            return Err(VckError::input(format!(
                "expected {n} weights and values, got {} and {}",
                weight.len(),
                value.len()
            )));
        }
        checked_total(&weight).ok_or_else(|| VckError::input("total weight overflows u64"))?;
        checked_total(&value).ok_or_else(|| VckError::input("total value overflows u64"))?;

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(VckError::input(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(VckError::input(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(VckError::input(format!(
                    "duplicate edge ({}, {})",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
        }
        Ok(VertexGraph {
            adjacency,
            weight,
            value,
            edge_count: edges.len(),
        })
    }

    /// Graph with unit weights and values.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, vec![1; n], vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn weight(&self, u: usize) -> u64 {
        self.weight[u]
    }

    pub fn value(&self, u: usize) -> u64 {
        self.value[u]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weight
    }

    pub fn values(&self) -> &[u64] {
        &self.value
    }

    pub fn total_weight(&self) -> u64 {
        self.weight.iter().sum()
    }

    pub fn total_value(&self) -> u64 {
        self.value.iter().sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Same topology, new weights and values.
    pub fn with_labels(&self, weight: Vec<u64>, value: Vec<u64>) -> Result<Self> {
        Self::new(self.n(), &self.edge_list(), weight, value)
    }

    /// Component id per vertex plus the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// A forest has exactly `n - components` edges.
    pub fn is_forest(&self) -> bool {
        let (_, c) = self.components();
        self.edge_count + c == self.n()
    }

    /// Neighbourhood bitmasks, available when `n <= 64`.
    pub(crate) fn neighbor_masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adjacency
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u64, |m, &v| m | (1u64 << v)))
            .collect()
    }

    fn check_ids(&self, u: &[usize]) -> Result<()> {
        match u.iter().find(|&&v| v >= self.n()) {
            Some(v) => Err(VckError::input(format!(
                "vertex {v} is not in 0..{}",
                self.n()
            ))),
            None => Ok(()),
        }
    }

    fn membership(&self, u: &[usize]) -> Result<Vec<bool>> {
        self.check_ids(u)?;
        let mut inside = vec![false; self.n()];
        for &v in u {
            inside[v] = true;
        }
        Ok(inside)
    }
}

fn checked_total(xs: &[u64]) -> Option<u64> {
    xs.iter().try_fold(0u64, |acc, &x| acc.checked_add(x))
}

/// True iff every edge has at least one endpoint in `u`.
pub fn is_vertex_cover(g: &VertexGraph, u: &[usize]) -> Result<bool> {
    let inside = g.membership(u)?;
    Ok(g.edges().all(|(a, b)| inside[a] || inside[b]))
}

/// True iff `u` is a vertex cover and no vertex of `u` can be dropped.
///
/// A vertex of a cover is removable exactly when all of its neighbours are
/// also in the cover, so minimality reduces to a private-neighbour check.
pub fn is_minimal_vertex_cover(g: &VertexGraph, u: &[usize]) -> Result<bool> {
    let inside = g.membership(u)?;
    if !g.edges().all(|(a, b)| inside[a] || inside[b]) {
        return Ok(false);
    }
    Ok(u
        .iter()
        .all(|&v| g.neighbors(v).iter().any(|&x| !inside[x])))
}

/// True iff no edge has both endpoints in `u`.
pub fn is_independent_set(g: &VertexGraph, u: &[usize]) -> Result<bool> {
    let inside = g.membership(u)?;
    Ok(g.edges().all(|(a, b)| !(inside[a] && inside[b])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> VertexGraph {
        VertexGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn path3() -> VertexGraph {
        VertexGraph::unweighted(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn cover_examples() {
        assert!(is_vertex_cover(&triangle(), &[0, 1]).unwrap());
        let edge = VertexGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert!(!is_vertex_cover(&edge, &[]).unwrap());
        let empty = VertexGraph::unweighted(3, &[]).unwrap();
        assert!(is_vertex_cover(&empty, &[]).unwrap());
    }

    #[test]
    fn minimal_cover_examples() {
        assert!(is_minimal_vertex_cover(&path3(), &[1]).unwrap());
        assert!(!is_minimal_vertex_cover(&path3(), &[0, 1]).unwrap());
        let edge = VertexGraph::unweighted(2, &[(0, 1)]).unwrap();
        assert!(!is_minimal_vertex_cover(&edge, &[0, 1]).unwrap());
        assert!(is_minimal_vertex_cover(&path3(), &[0, 2]).unwrap());
    }

    #[test]
    fn invalid_ids_are_input_errors() {
        assert!(matches!(
            is_vertex_cover(&triangle(), &[3]),
            Err(VckError::Input(_))
        ));
        assert!(is_minimal_vertex_cover(&triangle(), &[7]).is_err());
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(VertexGraph::unweighted(2, &[(0, 0)]).is_err());
        assert!(VertexGraph::unweighted(2, &[(0, 1), (1, 0)]).is_err());
        assert!(VertexGraph::unweighted(2, &[(0, 2)]).is_err());
        assert!(VertexGraph::new(2, &[], vec![u64::MAX, 1], vec![0, 0]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let g = VertexGraph::unweighted(4, &[(3, 0), (2, 0), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
        assert_eq!(g.edge_list(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn forest_detection() {
        assert!(path3().is_forest());
        assert!(!triangle().is_forest());
        let two_edges = VertexGraph::unweighted(5, &[(0, 1), (3, 4)]).unwrap();
        assert!(two_edges.is_forest());
        assert_eq!(two_edges.components().1, 3);
    }
}
