//! Tree-decomposability by bottom-up triangle merging of clusters.
//!
//! Every edge starts as its own cluster. Three clusters whose pairwise
//! intersections are three distinct single vertices merge into one. A graph
//! is tree-decomposable iff merging ends with a single cluster.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOrder {
    /// Deterministic: the candidate triple with the smallest shared vertices wins.
    Lexicographic,
    /// Random worklist and candidate choice; used to probe confluence.
    Shuffled(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    /// Children `[c1, c2, c3]` with `shared = [c1∩c2, c2∩c3, c3∩c1]`.
    Merge {
        children: [usize; 3],
        shared: [Vertex; 3],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompNode {
    pub vertices: Vec<Vertex>,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    pub nodes: Vec<DecompNode>,
    pub root: usize,
}

impl DecompositionTree {
    pub fn leaves(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(i) = stack.pop() {
            match &self.nodes[i].kind {
                NodeKind::Leaf => {
                    let v = &self.nodes[i].vertices;
                    out.push((v[0], v[1]));
                }
                NodeKind::Merge { children, .. } => stack.extend(children.iter().rev()),
            }
        }
        out
    }

    /// Indented dump, one node per line.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((i, depth)) = stack.pop() {
            let node = &self.nodes[i];
            let list: Vec<String> = node.vertices.iter().map(|v| v.to_string()).collect();
            let _ = write!(out, "{}[{}]", "  ".repeat(depth), list.join(" "));
            if let NodeKind::Merge { children, shared } = &node.kind {
                let _ = write!(out, " shared {} {} {}", shared[0], shared[1], shared[2]);
                stack.extend(children.iter().rev().map(|&c| (c, depth + 1)));
            }
            out.push('\n');
        }
        out
    }
}

struct Engine {
    nodes: Vec<DecompNode>,
    /// Live cluster ids are node ids; `alive[c]` marks current clusters.
    alive: Vec<bool>,
    vertex_clusters: Vec<Vec<usize>>,
    rng: Option<ChaCha8Rng>,
}

struct Candidate {
    shared: [Vertex; 3],
    others: (usize, usize),
}

fn merged(lists: [&[Vertex]; 3]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = lists.iter().flat_map(|l| l.iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .filter(|v| large.binary_search(v).is_ok())
        .count()
}

impl Engine {
    fn new(g: &Graph, order: MergeOrder) -> Self {
        let mut e = Engine {
            nodes: Vec::with_capacity(2 * g.edge_count()),
            alive: Vec::with_capacity(2 * g.edge_count()),
            vertex_clusters: vec![Vec::new(); g.n()],
            rng: match order {
                MergeOrder::Lexicographic => None,
                MergeOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        };
        for (a, b) in g.edges() {
            let id = e.nodes.len();
            e.nodes.push(DecompNode {
                vertices: vec![a, b],
                kind: NodeKind::Leaf,
            });
            e.alive.push(true);
            e.vertex_clusters[a].push(id);
            e.vertex_clusters[b].push(id);
        }
        e
    }

    fn shared_of(&self, c: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.nodes[c]
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.vertex_clusters[v].len() >= 2)
    }

    fn candidates(&self, c: usize) -> Vec<Candidate> {
        // neighbour cluster -> the single shared vertex, or None if several
        let mut nb: BTreeMap<usize, Option<Vertex>> = BTreeMap::new();
        for x in self.shared_of(c) {
            for &a in &self.vertex_clusters[x] {
                if a != c {
                    nb.entry(a).and_modify(|s| *s = None).or_insert(Some(x));
                }
            }
        }
        let mut out = Vec::new();
        for (&a, &p) in &nb {
            let Some(p) = p else { continue };
            for y in self.shared_of(a) {
                if y == p {
                    continue;
                }
                for &b in &self.vertex_clusters[y] {
                    if b <= a || b == c {
                        continue;
                    }
                    let Some(&Some(q)) = nb.get(&b) else { continue };
                    if q == p || q == y {
                        continue;
                    }
                    if intersection_size(&self.nodes[a].vertices, &self.nodes[b].vertices) != 1 {
                        continue;
                    }
                    let mut shared = [p, y, q];
                    shared.sort_unstable();
                    out.push(Candidate {
                        shared,
                        others: (a, b),
                    });
                }
            }
        }
        out
    }

    fn merge(&mut self, c: usize, a: usize, b: usize) -> usize {
        let id = self.nodes.len();
        let vertices = merged([
            &self.nodes[c].vertices,
            &self.nodes[a].vertices,
            &self.nodes[b].vertices,
        ]);
        let s_ca = self.nodes[c]
            .vertices
            .iter()
            .copied()
            .find(|v| self.nodes[a].vertices.binary_search(v).is_ok())
            .expect("adjacent clusters");
        let s_ab = self.nodes[a]
            .vertices
            .iter()
            .copied()
            .find(|v| self.nodes[b].vertices.binary_search(v).is_ok())
            .expect("adjacent clusters");
        let s_bc = self.nodes[b]
            .vertices
            .iter()
            .copied()
            .find(|v| self.nodes[c].vertices.binary_search(v).is_ok())
            .expect("adjacent clusters");
        for old in [c, a, b] {
            self.alive[old] = false;
            for i in 0..self.nodes[old].vertices.len() {
                let v = self.nodes[old].vertices[i];
                self.vertex_clusters[v].retain(|&x| x != old);
            }
        }
        for &v in &vertices {
            self.vertex_clusters[v].push(id);
        }
        self.nodes.push(DecompNode {
            vertices,
            kind: NodeKind::Merge {
                children: [c, a, b],
                shared: [s_ca, s_ab, s_bc],
            },
        });
        self.alive.push(true);
        id
    }

    fn run(&mut self) {
        let mut work: Vec<usize> = (0..self.nodes.len()).collect();
        if let Some(rng) = self.rng.as_mut() {
            work.shuffle(rng);
        }
        let mut queue: VecDeque<usize> = work.into();
        while let Some(c) = queue.pop_front() {
            if !self.alive[c] {
                continue;
            }
            let found = self.candidates(c);
            if found.is_empty() {
                continue;
            }
            let pick = match self.rng.as_mut() {
                Some(rng) => {
                    use rand::Rng;
                    &found[rng.gen_range(0..found.len())]
                }
                None => found
                    .iter()
                    .min_by_key(|k| (k.shared, k.others))
                    .expect("non-empty"),
            };
            let (a, b) = pick.others;
            let id = self.merge(c, a, b);
            queue.push_back(id);
        }
    }

    fn live(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.alive[i]).collect()
    }

    fn subtree(&self, root: usize) -> DecompositionTree {
        let mut nodes = Vec::new();
        let mut map: HashMap<usize, usize> = HashMap::new();
        // post-order copy so children precede parents
        let mut stack = vec![(root, false)];
        while let Some((i, expanded)) = stack.pop() {
            match &self.nodes[i].kind {
                NodeKind::Merge { children, shared } if expanded => {
                    let kids = [map[&children[0]], map[&children[1]], map[&children[2]]];
                    map.insert(i, nodes.len());
                    nodes.push(DecompNode {
                        vertices: self.nodes[i].vertices.clone(),
                        kind: NodeKind::Merge {
                            children: kids,
                            shared: *shared,
                        },
                    });
                }
                NodeKind::Merge { children, .. } => {
                    stack.push((i, true));
                    stack.extend(children.iter().map(|&c| (c, false)));
                }
                NodeKind::Leaf => {
                    map.insert(i, nodes.len());
                    nodes.push(self.nodes[i].clone());
                }
            }
        }
        let root = nodes.len() - 1;
        DecompositionTree { nodes, root }
    }

    fn leaf_edges(&self, root: usize) -> Vec<Edge> {
        let mut out = Vec::new();
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            match &self.nodes[i].kind {
                NodeKind::Leaf => {
                    let v = &self.nodes[i].vertices;
                    out.push((v[0], v[1]));
                }
                NodeKind::Merge { children, .. } => stack.extend(children),
            }
        }
        out.sort_unstable();
        out
    }
}

pub fn is_tree_decomposable(g: &Graph) -> Result<Option<DecompositionTree>> {
    is_tree_decomposable_with(g, MergeOrder::Lexicographic)
}

/// Verdict only, without materializing the tree. Expects a connected graph.
pub fn tree_decomposable(g: &Graph) -> bool {
    if g.edge_count() == 0 {
        return false;
    }
    let mut engine = Engine::new(g, MergeOrder::Lexicographic);
    engine.run();
    engine.live().len() == 1
}

pub fn is_tree_decomposable_with(
    g: &Graph,
    order: MergeOrder,
) -> Result<Option<DecompositionTree>> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut engine = Engine::new(g, order);
    engine.run();
    let live = engine.live();
    Ok((live.len() == 1).then(|| engine.subtree(live[0])))
}

/// Maximal tree-decomposable subgraphs of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSet {
    clusters: Vec<Vec<Vertex>>,
    cluster_edges: Vec<Vec<Edge>>,
    vertex_clusters: Vec<Vec<usize>>,
    edge_owner: BTreeMap<Edge, usize>,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Sorted vertex list of cluster `c`.
    pub fn vertices(&self, c: usize) -> &[Vertex] {
        &self.clusters[c]
    }

    pub fn edges(&self, c: usize) -> &[Edge] {
        &self.cluster_edges[c]
    }

    pub fn clusters(&self) -> &[Vec<Vertex>] {
        &self.clusters
    }

    /// Clusters containing `v`, ascending.
    pub fn clusters_of(&self, v: Vertex) -> &[usize] {
        &self.vertex_clusters[v]
    }

    pub fn owner(&self, e: Edge) -> Option<usize> {
        self.edge_owner.get(&e).copied()
    }

    pub fn edge_owner(&self) -> &BTreeMap<Edge, usize> {
        &self.edge_owner
    }

    pub fn contains(&self, c: usize, v: Vertex) -> bool {
        self.clusters[c].binary_search(&v).is_ok()
    }

    /// Vertices of `c` that lie in some other cluster too.
    pub fn shared_vertices(&self, c: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.clusters[c]
            .iter()
            .copied()
            .filter(|&v| self.vertex_clusters[v].len() >= 2)
    }

    /// The common vertices of two clusters.
    pub fn intersection(&self, a: usize, b: usize) -> Vec<Vertex> {
        let (x, y) = (&self.clusters[a], &self.clusters[b]);
        let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
        small
            .iter()
            .copied()
            .filter(|v| large.binary_search(v).is_ok())
            .collect()
    }
}

pub fn cdeg(cs: &ClusterSet, v: Vertex) -> usize {
    cs.vertex_clusters[v].len()
}

pub fn maximal_clusters(g: &Graph) -> Result<ClusterSet> {
    maximal_clusters_with(g, MergeOrder::Lexicographic)
}

pub fn maximal_clusters_with(g: &Graph, order: MergeOrder) -> Result<ClusterSet> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut engine = Engine::new(g, order);
    engine.run();
    let mut found: Vec<(Vec<Vertex>, Vec<Edge>)> = engine
        .live()
        .into_iter()
        .map(|c| (engine.nodes[c].vertices.clone(), engine.leaf_edges(c)))
        .collect();
    found.sort();
    let mut vertex_clusters = vec![Vec::new(); g.n()];
    let mut edge_owner = BTreeMap::new();
    let mut clusters = Vec::with_capacity(found.len());
    let mut cluster_edges = Vec::with_capacity(found.len());
    for (i, (vs, es)) in found.into_iter().enumerate() {
        for &v in &vs {
            vertex_clusters[v].push(i);
        }
        for &e in &es {
            edge_owner.insert(e, i);
        }
        clusters.push(vs);
        cluster_edges.push(es);
    }
    Ok(ClusterSet {
        clusters,
        cluster_edges,
        vertex_clusters,
        edge_owner,
    })
}
