//! Full analysis report for a single graph file.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cayley::{
    brute_on_sequence, four_cycles, recognize, verify_base_invariance, BaseInvarianceReport,
    CayleyVerdict, PairSeeding,
};
use crate::construction::{derive_construction, find_base_non_edges, is_one_path};
use crate::error::{Error, Result};
use crate::graph::{is_triangle_free, Edge, Graph, Vertex};
use crate::io::GraphFile;
use crate::minor::{has_minor, DEFAULT_MAX_HOST_VERTICES};
use crate::planarity::is_planar;
use crate::rigidity::check_rigidity;
use crate::treedecomp::tree_decomposable;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub brute: bool,
    pub all_base_non_edges: bool,
    pub timings: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorReport {
    pub target: String,
    pub branch_sets: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub phase: String,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub vertices: usize,
    pub edges: usize,
    pub clusters: usize,
    pub tree_decomposable: bool,
    pub base: Edge,
    pub base_non_edges: Vec<Edge>,
    pub one_path: bool,
    pub triangle_free: bool,
    pub planar: bool,
    pub low_cayley_fast: bool,
    pub low_cayley_brute: Option<bool>,
    pub disagreement: bool,
    pub verdict: CayleyVerdict,
    pub kuratowski_minor: Option<MinorReport>,
    pub invariance: Option<BaseInvarianceReport>,
    pub timings: Option<Vec<Timing>>,
}

impl AnalysisReport {
    /// Nothing flagged: no fast/brute disagreement and no base-dependent verdict.
    pub fn consistent(&self) -> bool {
        !self.disagreement && self.invariance.as_ref().is_none_or(|r| r.consistent)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let pairs = |es: &[Edge]| {
            es.iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "vertices {}", self.vertices);
        let _ = writeln!(out, "edges {}", self.edges);
        let _ = writeln!(out, "clusters {}", self.clusters);
        let _ = writeln!(out, "tree_decomposable {}", self.tree_decomposable);
        let _ = writeln!(out, "base {} {}", self.base.0, self.base.1);
        let _ = writeln!(out, "base_non_edges {}", pairs(&self.base_non_edges));
        let _ = writeln!(out, "one_path {}", self.one_path);
        let _ = writeln!(out, "triangle_free {}", self.triangle_free);
        let _ = writeln!(out, "planar {}", self.planar);
        let _ = writeln!(out, "low_cayley_fast {}", self.low_cayley_fast);
        if let Some(b) = self.low_cayley_brute {
            let _ = writeln!(out, "low_cayley_brute {b}");
        }
        if self.disagreement {
            let _ = writeln!(out, "DISAGREEMENT");
        }
        out += &self.verdict.to_text();
        if let Some(m) = &self.kuratowski_minor {
            let sets: Vec<String> = m
                .branch_sets
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let _ = writeln!(out, "minor {} {}", m.target, sets.join(" | "));
        }
        if let Some(r) = &self.invariance {
            let verdicts: Vec<String> = r
                .verdicts
                .iter()
                .map(|((a, b), v)| format!("{a}-{b}:{v}"))
                .collect();
            let _ = writeln!(
                out,
                "invariance {} {}",
                if r.consistent { "pass" } else { "FAIL" },
                verdicts.join(" ")
            );
        }
        if let Some(ts) = &self.timings {
            for t in ts {
                let _ = writeln!(out, "time {} {:.3}ms", t.phase, t.ms);
            }
        }
        out
    }
}

/// Explains why `g` has no base non-edge.
pub fn diagnose(g: &Graph) -> String {
    let n = g.n();
    let m = g.edge_count();
    if n < 3 {
        return format!("{n} vertices, too few for a base non-edge");
    }
    if m + 4 != 2 * n {
        let mut msg = format!("{m} edges, expected 2|V| - 4 = {}", 2 * n - 4);
        if let Ok(r) = check_rigidity(g) {
            if let Some(s) = r.violating_subgraph {
                let _ = write!(msg, "; overconstrained on {s:?}");
            }
        }
        return msg;
    }
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            let h = g.with_edge(a, b).expect("non-edge");
            if check_rigidity(&h).is_ok_and(|r| r.minimally_rigid) {
                return format!("g + ({a}, {b}) is minimally rigid but not tree-decomposable");
            }
        }
    }
    match check_rigidity(g) {
        Ok(r) if !r.independent => format!(
            "overconstrained on {:?}",
            r.violating_subgraph.unwrap_or_default()
        ),
        _ => "no non-edge completes g to a minimally rigid graph".to_string(),
    }
}

fn kuratowski_witness(g: &Graph) -> Option<MinorReport> {
    for (name, target) in [
        ("K5", Graph::complete(5)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
    ] {
        if let Ok(Some(w)) = has_minor(g, &target, DEFAULT_MAX_HOST_VERTICES) {
            return Some(MinorReport {
                target: name.to_string(),
                branch_sets: w.branch_sets,
            });
        }
    }
    None
}

pub fn analyze(file: &GraphFile, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let g = &file.graph;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |phase: &str, timings: &mut Vec<Timing>| {
        timings.push(Timing {
            phase: phase.to_string(),
            ms: clock.elapsed().as_secs_f64() * 1e3,
        });
        clock = Instant::now();
    };

    let base_non_edges = find_base_non_edges(g);
    let base = match file.base {
        Some(f) => crate::graph::edge(f.0, f.1),
        None => *base_non_edges
            .first()
            .ok_or_else(|| Error::NotOneDofTreeDecomposable(diagnose(g)))?,
    };
    let seq = derive_construction(g, base)?;
    lap("construction", &mut timings);

    let mut verdict = recognize(&seq, PairSeeding::Closure);
    lap("fast", &mut timings);
    verdict.four_cycles = four_cycles(&seq);

    let low_cayley_brute = if opts.brute {
        let b = brute_on_sequence(&seq)?.low_complexity;
        lap("brute", &mut timings);
        Some(b)
    } else {
        None
    };
    let planar = is_planar(g);
    let kuratowski_minor = if planar { None } else { kuratowski_witness(g) };
    lap("planarity", &mut timings);
    let invariance = if opts.all_base_non_edges {
        let r = verify_base_invariance(g)?;
        lap("invariance", &mut timings);
        Some(r)
    } else {
        None
    };

    Ok(AnalysisReport {
        vertices: g.n(),
        edges: g.edge_count(),
        clusters: seq.clusters().len(),
        tree_decomposable: tree_decomposable(g),
        base,
        base_non_edges,
        one_path: is_one_path(&seq),
        triangle_free: is_triangle_free(g),
        planar,
        low_cayley_fast: verdict.low_complexity,
        low_cayley_brute,
        disagreement: low_cayley_brute.is_some_and(|b| b != verdict.low_complexity),
        verdict,
        kuratowski_minor,
        invariance,
        timings: opts.timings.then_some(timings),
    })
}
