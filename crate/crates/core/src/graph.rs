//! Undirected simple graphs over dense vertex ids.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Unordered edge, always stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

pub fn edge(a: Vertex, b: Vertex) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Immutable simple graph. Neighbor lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = edge(v, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Like `from_edges`, but silently merges duplicates and drops loops.
    pub fn from_edges_lossy<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n() && b < self.n() && self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn with_edge(&self, a: Vertex, b: Vertex) -> Result<Self> {
        if a >= self.n() {
            return Err(Error::VertexOutOfRange(a));
        }
        if b >= self.n() {
            return Err(Error::VertexOutOfRange(b));
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if self.has_edge(a, b) {
            let (a, b) = edge(a, b);
            return Err(Error::DuplicateEdge(a, b));
        }
        let mut g = self.clone();
        let pa = g.adj[a].binary_search(&b).unwrap_err();
        g.adj[a].insert(pa, b);
        let pb = g.adj[b].binary_search(&a).unwrap_err();
        g.adj[b].insert(pb, a);
        g.m += 1;
        Ok(g)
    }

    /// Subgraph induced by `keep`, relabelled so that `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        let edges = keep.iter().flat_map(|&v| {
            let local = &local;
            self.adj[v]
                .iter()
                .filter(move |&&w| local[w] != usize::MAX && v < w)
                .map(move |&w| (local[v], local[w]))
        });
        Graph::from_edges_lossy(keep.len(), edges)
    }

    /// Deletes `removed` and returns the remaining graph with its map back to old ids.
    pub fn without_vertices(&self, removed: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        (self.induced(&keep), keep)
    }

    /// True when every vertex is reachable from vertex 0. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n()
    }

    pub fn complete(k: usize) -> Graph {
        let edges = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b)));
        Graph::from_edges_lossy(k, edges)
    }

    /// K_{a,b} with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
        Graph::from_edges_lossy(a + b, edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n).map(|i| edge(i, (i + 1) % n));
        Graph::from_edges_lossy(n, edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges = (1..n).map(|i| (i - 1, i));
        Graph::from_edges_lossy(n, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edge_list())
    }
}

pub fn is_triangle_free(g: &Graph) -> bool {
    for (a, b) in g.edges() {
        let (na, nb) = (g.neighbors(a), g.neighbors(b));
        let (mut i, mut j) = (0, 0);
        while i < na.len() && j < nb.len() {
            match na[i].cmp(&nb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
    }
    true
}

/// Identifies the endpoints of `e`. The survivor keeps the smaller id and
/// every id above the removed endpoint shifts down by one.
pub fn contract_edge(g: &Graph, e: Edge) -> Result<Graph> {
    let (keep, gone) = edge(e.0, e.1);
    if !g.has_edge(keep, gone) {
        return Err(Error::NoSuchEdge(keep, gone));
    }
    let relabel = |v: Vertex| -> Vertex {
        if v == gone {
            keep
        } else if v > gone {
            v - 1
        } else {
            v
        }
    };
    let edges = g.edges().map(|(a, b)| (relabel(a), relabel(b)));
    Ok(Graph::from_edges_lossy(g.n() - 1, edges))
}
