//! Exhaustive minor search for small host graphs.
//!
//! A target `H` is a minor of `G` iff `H` is a subgraph of some graph obtained
//! from `G` by contracting a set of edges. The search walks contractions one
//! edge at a time, memoizing on the partition of host vertices into blocks.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

pub const DEFAULT_MAX_HOST_VERTICES: usize = 14;

/// Hard ceiling imposed by the bitset representation.
const MAX_SUPPORTED: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    /// `branch_sets[t]` is the host vertex set standing for target vertex `t`.
    pub branch_sets: Vec<Vec<Vertex>>,
    /// One host edge per target edge, in `target.edges()` order. The first
    /// endpoint lies in the branch set of the smaller target endpoint.
    pub connecting_edges: Vec<Edge>,
}

impl MinorWitness {
    pub fn validate(&self, host: &Graph, target: &Graph) -> std::result::Result<(), String> {
        if self.branch_sets.len() != target.n() {
            return Err("one branch set per target vertex required".into());
        }
        let mut owner = vec![usize::MAX; host.n()];
        for (t, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(format!("branch set {t} is empty"));
            }
            for &v in set {
                if v >= host.n() {
                    return Err(format!("vertex {v} not in host"));
                }
                if owner[v] != usize::MAX {
                    return Err(format!("vertex {v} in two branch sets"));
                }
                owner[v] = t;
            }
            let mut seen = vec![set[0]];
            let mut i = 0;
            while i < seen.len() {
                let v = seen[i];
                i += 1;
                for &w in host.neighbors(v) {
                    if owner[w] == t && !seen.contains(&w) {
                        seen.push(w);
                    }
                }
            }
            if seen.len() != set.len() {
                return Err(format!("branch set {t} is not connected"));
            }
        }
        let target_edges = target.edge_list();
        if self.connecting_edges.len() != target_edges.len() {
            return Err("one connecting edge per target edge required".into());
        }
        for (&(a, b), &(x, y)) in target_edges.iter().zip(&self.connecting_edges) {
            if !host.has_edge(x, y) {
                return Err(format!("({x}, {y}) is not a host edge"));
            }
            if x >= host.n() || y >= host.n() || owner[x] != a || owner[y] != b {
                return Err(format!("({x}, {y}) does not join branch sets {a} and {b}"));
            }
        }
        Ok(())
    }
}

struct Search<'a> {
    host_adj: Vec<u64>,
    target: &'a Graph,
    target_adj: Vec<u64>,
    min_target_degree: usize,
    seen: HashSet<Vec<u64>>,
}

/// Blocks of a partial contraction, each a bitset of host vertices, sorted by lowest bit.
type Blocks = Vec<u64>;

fn block_adjacency(host_adj: &[u64], blocks: &[u64]) -> Vec<u64> {
    let reach: Vec<u64> = blocks
        .iter()
        .map(|&b| {
            let mut r = 0;
            let mut bits = b;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                r |= host_adj[v];
            }
            r & !b
        })
        .collect();
    (0..blocks.len())
        .map(|i| {
            (0..blocks.len())
                .filter(|&j| j != i && reach[i] & blocks[j] != 0)
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect()
}

fn normalize(mut blocks: Blocks) -> Blocks {
    blocks.retain(|&b| b != 0);
    blocks.sort_unstable_by_key(|b| b.trailing_zeros());
    blocks
}

impl<'a> Search<'a> {
    fn reduce(&self, mut blocks: Blocks) -> Blocks {
        if self.min_target_degree < 2 {
            return blocks;
        }
        loop {
            let adj = block_adjacency(&self.host_adj, &blocks);
            let deg = |i: usize| adj[i].count_ones() as usize;
            if let Some(i) = (0..blocks.len()).find(|&i| deg(i) <= 1) {
                blocks.remove(i);
                continue;
            }
            if self.min_target_degree >= 3 {
                if let Some(i) = (0..blocks.len()).find(|&i| deg(i) == 2) {
                    let j = adj[i].trailing_zeros() as usize;
                    blocks[j] |= blocks[i];
                    blocks[i] = 0;
                    blocks = normalize(blocks);
                    continue;
                }
            }
            return blocks;
        }
    }

    fn run(&mut self, blocks: Blocks) -> Option<Blocks> {
        let blocks = self.reduce(blocks);
        let k = blocks.len();
        if k < self.target.n() {
            return None;
        }
        let adj = block_adjacency(&self.host_adj, &blocks);
        let m: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        if m < self.target.edge_count() {
            return None;
        }
        if !self.seen.insert(blocks.clone()) {
            return None;
        }
        if let Some(image) = self.embed(&adj) {
            return Some(image.into_iter().map(|i| blocks[i]).collect());
        }
        if k == self.target.n() {
            return None;
        }
        // Contract edges at low-degree blocks first; they rarely anchor a branch set.
        let mut order: Vec<(usize, usize, usize)> = Vec::new();
        for i in 0..k {
            let mut bits = adj[i] & u64::MAX.checked_shl(i as u32 + 1).unwrap_or(0);
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let d = (adj[i].count_ones() + adj[j].count_ones()) as usize;
                order.push((d, i, j));
            }
        }
        order.sort_unstable();
        for (_, i, j) in order {
            let mut next = blocks.clone();
            next[i] |= next[j];
            next[j] = 0;
            if let Some(found) = self.run(normalize(next)) {
                return Some(found);
            }
        }
        None
    }

    /// Subgraph monomorphism from the target into the block graph.
    fn embed(&self, adj: &[u64]) -> Option<Vec<usize>> {
        let t = self.target.n();
        let mut order: Vec<usize> = Vec::with_capacity(t);
        let mut placed = vec![false; t];
        while order.len() < t {
            let next = (0..t)
                .filter(|&x| !placed[x])
                .max_by_key(|&x| {
                    let back = order
                        .iter()
                        .filter(|&&y| self.target.has_edge(x, y))
                        .count();
                    (back, self.target.degree(x), usize::MAX - x)
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        let mut image = vec![usize::MAX; t];
        if self.extend(adj, &order, 0, &mut image, 0) {
            Some(image)
        } else {
            None
        }
    }

    fn extend(
        &self,
        adj: &[u64],
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: u64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        let need = self.target.degree(x);
        for h in 0..adj.len() {
            if used >> h & 1 == 1 || (adj[h].count_ones() as usize) < need {
                continue;
            }
            let fits = order[..depth]
                .iter()
                .all(|&y| self.target_adj[x] >> y & 1 == 0 || adj[h] >> image[y] & 1 == 1);
            if fits {
                image[x] = h;
                if self.extend(adj, order, depth + 1, image, used | 1 << h) {
                    return true;
                }
            }
        }
        image[x] = usize::MAX;
        false
    }
}

fn bits(mask: u64) -> Vec<Vertex> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Returns a witness that `target` is a minor of `g`, or `None` when it is not.
pub fn has_minor(
    g: &Graph,
    target: &Graph,
    max_host_vertices: usize,
) -> Result<Option<MinorWitness>> {
    let limit = max_host_vertices.min(MAX_SUPPORTED);
    if g.n() > limit {
        return Err(Error::HostTooLarge { n: g.n(), limit });
    }
    if target.n() > g.n() || target.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let host_adj: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w))
        .collect();
    let target_adj: Vec<u64> = (0..target.n())
        .map(|v| {
            target
                .neighbors(v)
                .iter()
                .fold(0u64, |acc, &w| acc | 1 << w)
        })
        .collect();
    let min_target_degree = (0..target.n()).map(|v| target.degree(v)).min().unwrap_or(0);
    let mut search = Search {
        host_adj,
        target,
        target_adj,
        min_target_degree,
        seen: HashSet::new(),
    };
    let start: Blocks = (0..g.n()).map(|v| 1u64 << v).collect();
    let Some(image) = search.run(start) else {
        return Ok(None);
    };
    let branch_sets: Vec<Vec<Vertex>> = image.iter().map(|&m| bits(m)).collect();
    let connecting_edges = target
        .edges()
        .map(|(a, b)| {
            branch_sets[a]
                .iter()
                .find_map(|&x| {
                    g.neighbors(x)
                        .iter()
                        .find(|&&y| image[b] >> y & 1 == 1)
                        .map(|&y| (x, y))
                })
                .expect("embedded edge has a host edge")
        })
        .collect();
    Ok(Some(MinorWitness {
        branch_sets,
        connecting_edges,
    }))
}
