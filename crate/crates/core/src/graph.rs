//! Finite simple undirected graphs with a canonical sorted edge list.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub type Vertex = usize;

/// An unordered edge stored as `(u, v)` with `u < v`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(&'static str),
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Two graphs are equal iff they have the same order and the same edge list.
/// Values are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub max_degree: usize,
    pub min_degree: usize,
    pub component_count: usize,
    pub is_tree: bool,
    pub is_bipartite: bool,
    pub edge_count: usize,
}

impl Graph {
    /// Builds a graph, normalising every pair to `(min, max)` and sorting.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in the sorted edge list.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Component id per vertex, numbered in order of smallest vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.edges.len() == self.n - 1
    }

    /// Two-colouring of the vertices if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats {
            max_degree: self.max_degree(),
            min_degree: self.min_degree(),
            component_count: self.components().0,
            is_tree: self.is_tree(),
            is_bipartite: self.is_bipartite(),
            edge_count: self.edges.len(),
        }
    }

    /// BFS distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Spanning subgraph keeping only the edges for which `keep` holds.
    pub fn edge_subgraph<F>(&self, mut keep: F) -> Graph
    where
        F: FnMut(usize, Edge) -> bool,
    {
        let edges = self.edges.iter().enumerate().filter(|&(i, &e)| keep(i, e)).map(|(_, &e)| e);
        Graph::new(self.n, edges).expect("subset of a simple graph is simple")
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph is simple")
    }

    /// Edge order used by the searches: breadth-first from the vertex of
    /// largest degree in each component, so consecutive edges tend to share
    /// endpoints and conflicts surface early.
    pub fn bfs_edge_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.edges.len());
        let mut taken = vec![false; self.edges.len()];
        let mut seen = vec![false; self.n];
        let mut roots: Vec<Vertex> = (0..self.n).collect();
        roots.sort_by_key(|&v| (core::cmp::Reverse(self.degree(v)), v));
        let mut queue = VecDeque::new();
        for r in roots {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            queue.push_back(r);
            while let Some(u) = queue.pop_front() {
                let mut nb: Vec<Vertex> = self.adj[u].clone();
                nb.sort_by_key(|&w| (core::cmp::Reverse(self.degree(w)), w));
                for w in nb {
                    let ei = self.edge_index(u, w).unwrap();
                    if !taken[ei] {
                        taken[ei] = true;
                        order.push(ei);
                    }
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn canonical_edge_order() {
        let a = Graph::new(4, [(3, 2), (1, 0), (2, 0)]).unwrap();
        let b = Graph::new(4, [(0, 2), (0, 1), (2, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges(), &[(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn stats_of_small_graphs() {
        let p1 = Graph::empty(1);
        let s = p1.stats();
        assert!(s.is_tree);
        assert_eq!(s.edge_count, 0);

        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let s = c5.stats();
        assert!(!s.is_bipartite);
        assert!(!s.is_tree);
        assert_eq!((s.min_degree, s.max_degree), (2, 2));

        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.stats().component_count, 2);
    }

    #[test]
    fn bfs_edge_order_covers_every_edge_once() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        let mut order = g.bfs_edge_order();
        order.sort_unstable();
        assert_eq!(order, (0..g.edge_count()).collect::<Vec<_>>());
    }
}
