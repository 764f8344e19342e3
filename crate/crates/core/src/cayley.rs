//! Low Cayley complexity: the definitional check over extreme graphs and the
//! four-cycle recognizer.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construction::{
    derive_construction, extreme_graphs, find_base_non_edges, first_base_non_edge,
    ConstructionSequence,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::treedecomp::{tree_decomposable, ClusterSet};

/// Four clusters `T1..T4` with `T1∩T2={p1}`, `T2∩T3={p3}`, `T3∩T4={p2}`, `T4∩T1={p4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourCycle {
    pub step: usize,
    pub clusters: [usize; 4],
    /// `[p1, p2, p3, p4]`.
    pub shared: [Vertex; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyVerdict {
    pub low_complexity: bool,
    /// First failing step (1-based) when `low_complexity` is false.
    pub witness_step: Option<usize>,
    pub four_cycles: Vec<FourCycle>,
}

impl CayleyVerdict {
    fn low() -> Self {
        CayleyVerdict {
            low_complexity: true,
            witness_step: None,
            four_cycles: Vec::new(),
        }
    }

    fn fails_at(k: usize) -> Self {
        CayleyVerdict {
            low_complexity: false,
            witness_step: Some(k),
            four_cycles: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict {}", self.low_complexity);
        if let Some(k) = self.witness_step {
            let _ = writeln!(out, "witness_step {k}");
        }
        for c in &self.four_cycles {
            let [a, b, x, y] = c.clusters;
            let _ = writeln!(out, "fourcycle {} {a} {b} {x} {y}", c.step);
        }
        out
    }
}

/// How the admissible pair list is seeded from first-level steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PairSeeding {
    /// Every step after the first, first-level steps included, goes through
    /// the pair checks and contributes its cross pairs.
    #[default]
    Closure,
    /// Only `(T_k, T'_k)` of first-level steps is added up front, and checks
    /// start at the second level.
    AsPrinted,
}

pub fn brute_on_sequence(seq: &ConstructionSequence) -> Result<CayleyVerdict> {
    for x in extreme_graphs(seq) {
        let x = x?;
        if !tree_decomposable(&x.graph) {
            return Ok(CayleyVerdict::fails_at(x.step));
        }
    }
    Ok(CayleyVerdict::low())
}

/// Per-step verdicts: whether each extreme graph is tree-decomposable.
pub fn extreme_verdicts(seq: &ConstructionSequence) -> Result<Vec<bool>> {
    extreme_graphs(seq)
        .map(|x| x.map(|x| tree_decomposable(&x.graph)))
        .collect()
}

/// The definition: every extreme graph is tree-decomposable.
pub fn low_cayley_brute(g: &Graph, f: Edge) -> Result<CayleyVerdict> {
    brute_on_sequence(&derive_construction(g, f)?)
}

/// Shared vertex per adjacent cluster pair; `None` marks pairs sharing several.
type PairMap = HashMap<(usize, usize), Option<Vertex>>;

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_map(cs: &ClusterSet, n: usize) -> PairMap {
    let mut map = PairMap::new();
    for v in 0..n {
        let list = cs.clusters_of(v);
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                map.entry(key(a, b))
                    .and_modify(|s| *s = None)
                    .or_insert(Some(v));
            }
        }
    }
    map
}

fn single_shared(pairs: &PairMap, a: usize, b: usize) -> Option<Vertex> {
    pairs.get(&key(a, b)).copied().flatten()
}

pub fn recognize(seq: &ConstructionSequence, seeding: PairSeeding) -> CayleyVerdict {
    let cs = seq.clusters();
    if cs.len() < 6 {
        return CayleyVerdict::low();
    }
    let pairs = pair_map(cs, seq.graph().n());
    let mut present = vec![false; cs.len()];
    let mut admissible: HashSet<(usize, usize)> = HashSet::new();
    let checks_from = match seeding {
        PairSeeding::Closure => 1,
        PairSeeding::AsPrinted => {
            for s in seq.steps.iter().filter(|s| s.level == 1) {
                admissible.insert(key(s.cluster_a, s.cluster_b));
            }
            seq.steps.iter().take_while(|s| s.level == 1).count()
        }
    };
    for (i, s) in seq.steps.iter().enumerate() {
        if i >= checks_from {
            let (u, w) = s.base_pair;
            let at_u: Vec<usize> = cs
                .clusters_of(u)
                .iter()
                .copied()
                .filter(|&c| present[c])
                .collect();
            let at_w: Vec<usize> = cs
                .clusters_of(w)
                .iter()
                .copied()
                .filter(|&c| present[c])
                .collect();
            let ok = at_u
                .iter()
                .any(|&a| at_w.iter().any(|&b| admissible.contains(&key(a, b))));
            if !ok {
                return CayleyVerdict::fails_at(i + 1);
            }
            for &a in &at_u {
                for &b in &at_w {
                    if a != b && pairs.contains_key(&key(a, b)) {
                        admissible.insert(key(s.cluster_a, a));
                        admissible.insert(key(s.cluster_b, b));
                    }
                }
            }
        }
        admissible.insert(key(s.cluster_a, s.cluster_b));
        present[s.cluster_a] = true;
        present[s.cluster_b] = true;
    }
    CayleyVerdict::low()
}

/// The four-cycle recognizer.
pub fn low_cayley_fast(g: &Graph, f: Edge) -> Result<CayleyVerdict> {
    Ok(recognize(&derive_construction(g, f)?, PairSeeding::Closure))
}

fn search_four_cycle(
    cs: &ClusterSet,
    pairs: &PairMap,
    present: &dyn Fn(usize) -> bool,
    u: Vertex,
    w: Vertex,
) -> Option<([usize; 4], [Vertex; 4])> {
    for &t1 in cs.clusters_of(u).iter().filter(|&&c| present(c)) {
        for &t2 in cs.clusters_of(w).iter().filter(|&&c| present(c) && c != t1) {
            let Some(p1) = single_shared(pairs, t1, t2) else {
                continue;
            };
            for p3 in cs.shared_vertices(t2).filter(|&p| p != p1) {
                for &t3 in cs.clusters_of(p3) {
                    if t3 == t1
                        || t3 == t2
                        || !present(t3)
                        || single_shared(pairs, t2, t3) != Some(p3)
                    {
                        continue;
                    }
                    for p4 in cs.shared_vertices(t1).filter(|&p| p != p1 && p != p3) {
                        for &t4 in cs.clusters_of(p4) {
                            if t4 == t1 || t4 == t2 || t4 == t3 || !present(t4) {
                                continue;
                            }
                            if single_shared(pairs, t1, t4) != Some(p4) {
                                continue;
                            }
                            let Some(p2) = single_shared(pairs, t3, t4) else {
                                continue;
                            };
                            if p2 != p1 && p2 != p3 && p2 != p4 {
                                return Some(([t1, t2, t3, t4], [p1, p2, p3, p4]));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// A four-cycle of clusters lying inside `constructed`, with `u ∈ T1` and `w ∈ T2`.
pub fn find_four_cycle(
    cs: &ClusterSet,
    constructed: &[Vertex],
    u: Vertex,
    w: Vertex,
) -> Option<FourCycle> {
    let n = cs
        .clusters()
        .iter()
        .flat_map(|c| c.iter().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut inside = vec![false; n.max(u + 1).max(w + 1)];
    for &v in constructed {
        if v < inside.len() {
            inside[v] = true;
        }
    }
    let present = |c: usize| cs.vertices(c).iter().all(|&v| inside[v]);
    let pairs = pair_map(cs, n);
    search_four_cycle(cs, &pairs, &present, u, w).map(|(clusters, shared)| FourCycle {
        step: 0,
        clusters,
        shared,
    })
}

/// Four-cycles behind every step above the first level, where one exists.
pub fn four_cycles(seq: &ConstructionSequence) -> Vec<FourCycle> {
    let cs = seq.clusters();
    let pairs = pair_map(cs, seq.graph().n());
    let mut present = vec![false; cs.len()];
    let mut out = Vec::new();
    for (i, s) in seq.steps.iter().enumerate() {
        if s.level >= 2 {
            let (u, w) = s.base_pair;
            let p = |c: usize| present[c];
            if let Some((clusters, shared)) = search_four_cycle(cs, &pairs, &p, u, w) {
                out.push(FourCycle {
                    step: i + 1,
                    clusters,
                    shared,
                });
            }
        }
        present[s.cluster_a] = true;
        present[s.cluster_b] = true;
    }
    out
}

/// Verdict for the graph, taken at its smallest base non-edge.
pub fn low_cayley_graph(g: &Graph) -> Result<CayleyVerdict> {
    let f = first_base_non_edge(g)
        .ok_or_else(|| Error::NotOneDofTreeDecomposable("no base non-edge".into()))?;
    low_cayley_fast(g, f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseInvarianceReport {
    pub verdicts: Vec<(Edge, bool)>,
    pub consistent: bool,
}

pub fn verify_base_invariance(g: &Graph) -> Result<BaseInvarianceReport> {
    let bases = find_base_non_edges(g);
    if bases.is_empty() {
        return Err(Error::NotOneDofTreeDecomposable("no base non-edge".into()));
    }
    let verdicts = bases
        .into_iter()
        .map(|f| low_cayley_brute(g, f).map(|v| (f, v.low_complexity)))
        .collect::<Result<Vec<_>>>()?;
    let consistent = verdicts.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(BaseInvarianceReport {
        verdicts,
        consistent,
    })
}
