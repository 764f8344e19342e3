//! Construction sequences of 1-dof tree-decomposable graphs from a base non-edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::treedecomp::{cdeg, maximal_clusters, tree_decomposable, ClusterSet};

/// `new_vertex ◁ (u ∈ cluster_a, w ∈ cluster_b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionStep {
    pub new_vertex: Vertex,
    pub base_pair: (Vertex, Vertex),
    pub cluster_a: usize,
    pub cluster_b: usize,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSequence {
    pub base_non_edge: Edge,
    pub steps: Vec<ConstructionStep>,
    /// Level of every vertex. Vertices interior to a single cluster take the
    /// level of the step that placed them.
    pub levels: Vec<usize>,
    graph: Graph,
    clusters: ClusterSet,
}

impl ConstructionSequence {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn clusters(&self) -> &ClusterSet {
        &self.clusters
    }

    /// Base endpoints and step vertices grouped by level.
    pub fn level_sets(&self) -> Vec<Vec<Vertex>> {
        let top = self.steps.iter().map(|s| s.level).max().unwrap_or(0);
        let mut sets = vec![Vec::new(); top + 1];
        let (a, b) = self.base_non_edge;
        sets[0].extend([a, b]);
        for s in &self.steps {
            sets[s.level].push(s.new_vertex);
        }
        for set in sets.iter_mut() {
            set.sort_unstable();
        }
        sets
    }

    /// Same steps in a different order. The order must respect levels.
    pub fn with_step_order(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.steps.len()];
        let mut steps = Vec::with_capacity(order.len());
        for &i in order {
            if i >= self.steps.len() || seen[i] {
                return Err(Error::IndexOutOfRange(i));
            }
            seen[i] = true;
            steps.push(self.steps[i].clone());
        }
        if steps.len() != self.steps.len() || steps.windows(2).any(|w| w[0].level > w[1].level) {
            return Err(Error::BadSize(
                "order must be a level-respecting permutation".into(),
            ));
        }
        Ok(ConstructionSequence {
            steps,
            ..self.clone()
        })
    }

    /// `base v0 v0'` followed by one `step v u w level` line per step.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (a, b) = self.base_non_edge;
        let _ = writeln!(out, "base {a} {b}");
        for s in &self.steps {
            let (u, w) = s.base_pair;
            let _ = writeln!(out, "step {} {} {} {}", s.new_vertex, u, w, s.level);
        }
        out
    }
}

fn check_pair(g: &Graph, f: Edge) -> Result<Edge> {
    let (a, b) = edge(f.0, f.1);
    if a == b || b >= g.n() || g.has_edge(a, b) {
        return Err(Error::NotABaseNonEdge(a, b));
    }
    Ok((a, b))
}

/// Whether `g ∪ f` is tree-decomposable. Requires the 1-dof edge count.
fn is_base_non_edge(g: &Graph, f: Edge) -> bool {
    if g.has_edge(f.0, f.1) || 2 * g.n() < 4 || g.edge_count() != 2 * g.n() - 4 {
        return false;
    }
    match g.with_edge(f.0, f.1) {
        Ok(h) => h.is_connected() && tree_decomposable(&h),
        Err(_) => false,
    }
}

pub fn find_base_non_edges(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    if n < 2 || g.edge_count() + 4 != 2 * n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if is_base_non_edge(g, (a, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// The lexicographically smallest base non-edge, if any.
pub fn first_base_non_edge(g: &Graph) -> Option<Edge> {
    let n = g.n();
    if n < 2 || g.edge_count() + 4 != 2 * n {
        return None;
    }
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&f| is_base_non_edge(g, f))
}

struct Greedy<'a> {
    cs: &'a ClusterSet,
    constructed: Vec<bool>,
    hits: Vec<usize>,
    anchor: Vec<Vertex>,
    eligible: BTreeSet<Vertex>,
}

impl<'a> Greedy<'a> {
    fn mark(&mut self, x: Vertex, touched: &mut Vec<usize>) {
        self.constructed[x] = true;
        for &c in self.cs.clusters_of(x) {
            self.hits[c] += 1;
            if self.hits[c] == 1 {
                self.anchor[c] = x;
            }
            touched.push(c);
        }
    }

    /// First pair of clusters at `v` that each touch the constructed part at
    /// exactly one vertex, with distinct touching vertices.
    fn attachment(&self, v: Vertex) -> Option<(usize, usize)> {
        let open: Vec<usize> = self
            .cs
            .clusters_of(v)
            .iter()
            .copied()
            .filter(|&c| self.hits[c] == 1)
            .collect();
        for (i, &t) in open.iter().enumerate() {
            for &t2 in &open[i + 1..] {
                if self.anchor[t] != self.anchor[t2] {
                    return Some((t, t2));
                }
            }
        }
        None
    }

    fn refresh(&mut self, touched: &[usize]) {
        let mut touched = touched.to_vec();
        touched.sort_unstable();
        touched.dedup();
        for c in touched {
            for &v in self.cs.vertices(c) {
                if self.constructed[v] {
                    self.eligible.remove(&v);
                } else if self.attachment(v).is_some() {
                    self.eligible.insert(v);
                } else {
                    self.eligible.remove(&v);
                }
            }
        }
    }
}

fn greedy(
    g: &Graph,
    cs: &ClusterSet,
    f: Edge,
) -> std::result::Result<(Vec<ConstructionStep>, Vec<usize>), usize> {
    let n = g.n();
    let mut st = Greedy {
        cs,
        constructed: vec![false; n],
        hits: vec![0; cs.len()],
        anchor: vec![usize::MAX; cs.len()],
        eligible: BTreeSet::new(),
    };
    let mut level = vec![usize::MAX; n];
    let mut used = vec![false; cs.len()];
    let mut touched = Vec::new();
    st.mark(f.0, &mut touched);
    st.mark(f.1, &mut touched);
    level[f.0] = 0;
    level[f.1] = 0;
    st.refresh(&touched);
    let mut count = 2;
    let mut steps = Vec::new();
    while count < n {
        let Some(&v) = st.eligible.iter().next() else {
            return Err(count);
        };
        let (mut t, mut t2) = st.attachment(v).expect("eligible vertex has an attachment");
        let (mut u, mut w) = (st.anchor[t], st.anchor[t2]);
        if u > w {
            std::mem::swap(&mut t, &mut t2);
            std::mem::swap(&mut u, &mut w);
        }
        if cs.intersection(t, t2) != [v] {
            return Err(count);
        }
        let lv = 1 + level[u].max(level[w]);
        used[t] = true;
        used[t2] = true;
        touched.clear();
        for c in [t, t2] {
            for &x in cs.vertices(c) {
                if !st.constructed[x] {
                    st.mark(x, &mut touched);
                    level[x] = lv;
                    count += 1;
                }
            }
        }
        st.refresh(&touched);
        steps.push(ConstructionStep {
            new_vertex: v,
            base_pair: (u, w),
            cluster_a: t,
            cluster_b: t2,
            level: lv,
        });
    }
    if used.iter().any(|&x| !x) {
        return Err(count);
    }
    steps.sort_by_key(|s| s.level);
    Ok((steps, level))
}

/// Derives the construction of `g` from base non-edge `f` greedily, always
/// placing the smallest eligible vertex next. Steps are listed level by level.
pub fn derive_construction(g: &Graph, f: Edge) -> Result<ConstructionSequence> {
    let f = check_pair(g, f)?;
    if !g.is_connected() {
        return Err(Error::NotABaseNonEdge(f.0, f.1));
    }
    let clusters = maximal_clusters(g)?;
    match greedy(g, &clusters, f) {
        Ok((steps, levels)) => Ok(ConstructionSequence {
            base_non_edge: f,
            steps,
            levels,
            graph: g.clone(),
            clusters,
        }),
        Err(constructed) if is_base_non_edge(g, f) => Err(Error::StuckConstruction {
            constructed,
            total: g.n(),
        }),
        Err(_) => Err(Error::NotABaseNonEdge(f.0, f.1)),
    }
}

/// `Ĝ_f(k)`: the graph built by steps `1..k` joined by the extreme edge `(u_k, w_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeGraph {
    pub step: usize,
    pub graph: Graph,
    /// `vertices[i]` is the original id of local vertex `i`.
    pub vertices: Vec<Vertex>,
    pub extreme_edge: Edge,
}

fn build_extreme(
    seq: &ConstructionSequence,
    k: usize,
    members: &[Vertex],
    edges: &[Edge],
) -> Result<ExtremeGraph> {
    let step = &seq.steps[k - 1];
    let (u, w) = edge(step.base_pair.0, step.base_pair.1);
    let mut local = vec![usize::MAX; seq.graph.n()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    if edges.binary_search(&(u, w)).is_ok() {
        return Err(Error::ExtremeEdgeExists(u, w));
    }
    let mapped = edges
        .iter()
        .copied()
        .chain(std::iter::once((u, w)))
        .map(|(a, b)| edge(local[a], local[b]));
    let graph = Graph::from_edges(members.len(), mapped)?;
    Ok(ExtremeGraph {
        step: k,
        graph,
        vertices: members.to_vec(),
        extreme_edge: (u, w),
    })
}

fn prefix(seq: &ConstructionSequence, upto: usize) -> (Vec<Vertex>, Vec<Edge>) {
    let (a, b) = seq.base_non_edge;
    let mut members = vec![a, b];
    let mut edges = Vec::new();
    for s in &seq.steps[..upto] {
        for c in [s.cluster_a, s.cluster_b] {
            members.extend_from_slice(seq.clusters.vertices(c));
            edges.extend_from_slice(seq.clusters.edges(c));
        }
    }
    members.sort_unstable();
    members.dedup();
    edges.sort_unstable();
    (members, edges)
}

pub fn extreme_graph(seq: &ConstructionSequence, k: usize) -> Result<ExtremeGraph> {
    if k == 0 || k > seq.steps.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    let (members, edges) = prefix(seq, k - 1);
    build_extreme(seq, k, &members, &edges)
}

/// All extreme graphs in step order, built incrementally.
pub fn extreme_graphs(
    seq: &ConstructionSequence,
) -> impl Iterator<Item = Result<ExtremeGraph>> + '_ {
    let (a, b) = seq.base_non_edge;
    let mut in_members = vec![false; seq.graph.n()];
    in_members[a] = true;
    in_members[b] = true;
    let mut members = vec![a.min(b), a.max(b)];
    let mut edges: Vec<Edge> = Vec::new();
    (1..=seq.steps.len()).map(move |k| {
        if k > 1 {
            let s = &seq.steps[k - 2];
            for c in [s.cluster_a, s.cluster_b] {
                for &v in seq.clusters.vertices(c) {
                    if !in_members[v] {
                        in_members[v] = true;
                        members.push(v);
                    }
                }
                edges.extend_from_slice(seq.clusters.edges(c));
            }
            members.sort_unstable();
            edges.sort_unstable();
        }
        build_extreme(seq, k, &members, &edges)
    })
}

/// Vertices satisfying the last-level condition for the given cluster set.
pub fn last_level_of(cs: &ClusterSet, n: usize) -> Vec<Vertex> {
    let mut out = Vec::new();
    for v in 0..n {
        let [t1, t2] = match cs.clusters_of(v) {
            &[a, b] => [a, b],
            _ => continue,
        };
        if cs.len() == 2 {
            out.push(v);
            continue;
        }
        let touching = |t: usize| {
            cs.vertices(t)
                .iter()
                .filter(|&&x| cs.clusters_of(x).iter().any(|&c| c != t1 && c != t2))
                .count()
        };
        if touching(t1) == 1 && touching(t2) == 1 {
            out.push(v);
        }
    }
    out
}

pub fn last_level(g: &Graph) -> Result<Vec<Vertex>> {
    if first_base_non_edge(g).is_none() {
        return Err(Error::NotOneDofTreeDecomposable("no base non-edge".into()));
    }
    let cs = maximal_clusters(g)?;
    Ok(last_level_of(&cs, g.n()))
}

fn one_path_from(last: &[Vertex], f: Edge) -> bool {
    last.iter().filter(|&&v| v != f.0 && v != f.1).count() == 1
}

pub fn is_one_path(seq: &ConstructionSequence) -> bool {
    let last = last_level_of(&seq.clusters, seq.graph.n());
    one_path_from(&last, seq.base_non_edge)
}

pub fn has_one_path_property(g: &Graph) -> Result<Option<Edge>> {
    let bases = find_base_non_edges(g);
    if bases.is_empty() {
        return Err(Error::NotOneDofTreeDecomposable("no base non-edge".into()));
    }
    let cs = maximal_clusters(g)?;
    let last = last_level_of(&cs, g.n());
    Ok(bases.into_iter().find(|&f| one_path_from(&last, f)))
}

/// Swaps a base non-edge whose endpoints are not both shared for the base
/// pair of the second step.
pub fn normalize_base_non_edge(g: &Graph, f: Edge) -> Result<Edge> {
    let seq = derive_construction(g, f)?;
    if seq.steps.len() < 2 {
        return Err(Error::TooFewSteps);
    }
    let (a, b) = seq.base_non_edge;
    if cdeg(&seq.clusters, a) >= 2 && cdeg(&seq.clusters, b) >= 2 {
        return Ok((a, b));
    }
    let (u, w) = seq.steps[1].base_pair;
    Ok(edge(u, w))
}
