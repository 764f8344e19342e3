//! Randomized checks of the structural theorems over a generated corpus.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::{low_cayley_brute, low_cayley_fast};
use crate::construction::{find_base_non_edges, has_one_path_property};
use crate::error::Result;
use crate::generators::{
    gen_clique_minor_1path, gen_clique_minor_trifree, gen_fan, gen_random, gen_six_cluster_base,
    gen_wide_level_one, max_random_steps, Generated,
};
use crate::graph::is_triangle_free;
use crate::planarity::is_planar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: usize,
    pub label: String,
    pub generated: Generated,
}

/// Every deterministic family at each supported size.
pub fn family_instances() -> Vec<(String, Generated)> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 6, 8, 12, 20] {
        out.push((format!("fan {n}"), gen_fan(n).expect("valid size")));
    }
    out.push(("six-cluster-base".into(), gen_six_cluster_base()));
    out.push(("wide-level-one".into(), gen_wide_level_one()));
    for m in 3..=7 {
        out.push((
            format!("clique-minor-1path {m}"),
            gen_clique_minor_1path(m).expect("valid size"),
        ));
    }
    for m in 3..=6 {
        out.push((
            format!("trifree-clique {m}"),
            gen_clique_minor_trifree(m).expect("valid size"),
        ));
    }
    out
}

/// `count` random instances. `flags` fixes `(triangle_free, one_path_bias)`;
/// otherwise the four combinations rotate.
pub fn random_instances(
    count: usize,
    seed: u64,
    flags: Option<(bool, bool)>,
) -> Vec<(String, Generated)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (tf, op) = flags.unwrap_or((i % 2 == 1, i % 4 >= 2));
            let steps = rng.gen_range(1..=max_random_steps(tf));
            let s: u64 = rng.gen();
            let g = gen_random(s, steps, tf, op).expect("steps within bounds");
            (format!("random seed={s} steps={steps} tf={tf} op={op}"), g)
        })
        .collect()
}

pub fn corpus(budget: usize, seed: u64) -> Vec<Instance> {
    family_instances()
        .into_iter()
        .chain(random_instances(budget, seed, None))
        .enumerate()
        .map(|(id, (label, generated))| Instance {
            id,
            label,
            generated,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub instance: usize,
    pub label: String,
    pub check: String,
    pub detail: String,
    pub graph: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub base_non_edges: usize,
    pub fast_brute_disagreements: usize,
    pub verdicts: Vec<bool>,
    pub one_path_triangle_free: bool,
    pub planar: bool,
}

impl InstanceOutcome {
    pub fn invariant(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn low(&self) -> bool {
        self.verdicts.first().copied().unwrap_or(true)
    }
}

/// Fast and brute verdicts on every base non-edge plus the planarity data.
pub fn check_instance(g: &Generated) -> Result<InstanceOutcome> {
    let graph = &g.graph;
    let bases = find_base_non_edges(graph);
    let mut out = InstanceOutcome {
        base_non_edges: bases.len(),
        ..Default::default()
    };
    for f in bases {
        let brute = low_cayley_brute(graph, f)?.low_complexity;
        let fast = low_cayley_fast(graph, f)?.low_complexity;
        if brute != fast {
            out.fast_brute_disagreements += 1;
        }
        out.verdicts.push(brute);
    }
    out.one_path_triangle_free = is_triangle_free(graph) && has_one_path_property(graph)?.is_some();
    out.planar = is_planar(graph);
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub instances: usize,
    pub base_non_edge_checks: usize,
    pub one_path_triangle_free: usize,
    pub findings: Vec<Finding>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instances {}", self.instances);
        let _ = writeln!(out, "base_non_edge_checks {}", self.base_non_edge_checks);
        let _ = writeln!(
            out,
            "one_path_triangle_free {}",
            self.one_path_triangle_free
        );
        for f in &self.findings {
            let _ = writeln!(
                out,
                "FAIL {} instance {} ({}): {}",
                f.check, f.instance, f.label, f.detail
            );
            out += &f.graph;
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn verify_instances(instances: &[Instance]) -> Result<VerifySummary> {
    let mut summary = VerifySummary {
        instances: instances.len(),
        ..Default::default()
    };
    for inst in instances {
        let o = check_instance(&inst.generated)?;
        summary.base_non_edge_checks += o.base_non_edges;
        let mut report = |check: &str, detail: String| {
            summary.findings.push(Finding {
                instance: inst.id,
                label: inst.label.clone(),
                check: check.to_string(),
                detail,
                graph: inst.generated.to_text(std::slice::from_ref(&inst.label)),
            })
        };
        if o.fast_brute_disagreements > 0 {
            report(
                "fast-vs-brute",
                format!("{} base non-edges disagree", o.fast_brute_disagreements),
            );
        }
        if !o.invariant() {
            report("base-invariance", format!("verdicts {:?}", o.verdicts));
        }
        if o.one_path_triangle_free {
            if o.low() != o.planar {
                report(
                    "planarity",
                    format!("low_cayley {} planar {}", o.low(), o.planar),
                );
            }
            summary.one_path_triangle_free += 1;
        }
    }
    Ok(summary)
}

pub fn verify_theorems(budget: usize, seed: u64) -> Result<VerifySummary> {
    verify_instances(&corpus(budget, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_budget_passes() {
        let s = verify_theorems(8, 7).unwrap();
        assert!(s.passed(), "{}", s.to_text());
        assert_eq!(s.instances, family_instances().len() + 8);
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(corpus(10, 3), corpus(10, 3));
    }
}
