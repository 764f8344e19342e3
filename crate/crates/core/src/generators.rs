//! Deterministic example families and a seeded random generator.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construction::derive_construction;
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::io::write_graph;

/// Upper bound on random generator output.
pub const MAX_RANDOM_VERTICES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub graph: Graph,
    pub base: Edge,
}

impl Generated {
    fn new(n: usize, edges: Vec<Edge>, base: Edge) -> Self {
        Generated {
            graph: Graph::from_edges(n, edges).expect("generator emits a simple graph"),
            base,
        }
    }

    pub fn to_text(&self, comments: &[String]) -> String {
        write_graph(&self.graph, Some(self.base), comments)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Fan,
    SixClusterBase,
    WideLevelOne,
    CliqueMinorOnePath,
    CliqueMinorTriFree,
    Random,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Fan,
        Family::SixClusterBase,
        Family::WideLevelOne,
        Family::CliqueMinorOnePath,
        Family::CliqueMinorTriFree,
        Family::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Fan => "fan",
            Family::SixClusterBase => "six-cluster-base",
            Family::WideLevelOne => "wide-level-one",
            Family::CliqueMinorOnePath => "clique-minor-1path",
            Family::CliqueMinorTriFree => "trifree-clique",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "fan" => Family::Fan,
            "six-cluster-base" => Family::SixClusterBase,
            "wide-level-one" => Family::WideLevelOne,
            "clique-minor-1path" | "clique-1path" => Family::CliqueMinorOnePath,
            "trifree-clique" | "clique-minor-trifree" => Family::CliqueMinorTriFree,
            "random" => Family::Random,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub family: Family,
    /// Spoke count, clique size or step count depending on the family.
    /// Ignored by the fixed families.
    pub size: usize,
    pub seed: u64,
    pub triangle_free: bool,
    pub one_path_bias: bool,
}

impl GeneratorSpec {
    pub fn new(family: Family, size: usize) -> Self {
        GeneratorSpec {
            family,
            size,
            seed: 0,
            triangle_free: false,
            one_path_bias: false,
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        match self.family {
            Family::Fan => gen_fan(self.size),
            Family::SixClusterBase => Ok(gen_six_cluster_base()),
            Family::WideLevelOne => Ok(gen_wide_level_one()),
            Family::CliqueMinorOnePath => gen_clique_minor_1path(self.size),
            Family::CliqueMinorTriFree => gen_clique_minor_trifree(self.size),
            Family::Random => {
                gen_random(self.seed, self.size, self.triangle_free, self.one_path_bias)
            }
        }
    }

    /// Comment lines recording the parameters.
    pub fn comments(&self) -> Vec<String> {
        let mut line = format!("{} {}", self.family, self.size);
        if self.family == Family::Random {
            line += &format!(" seed={}", self.seed);
            if self.triangle_free {
                line += " triangle-free";
            }
            if self.one_path_bias {
                line += " one-path";
            }
        }
        vec![line]
    }
}

/// Quadrilateral strip on `v0..vn`: the path plus every chord `(v_i, v_{i+3})`.
/// Every `(v_i, v_{i+2})` is a base non-edge; the designated one is `(v0, v2)`.
pub fn gen_fan(n: usize) -> Result<Generated> {
    if n < 3 {
        return Err(Error::BadSize(format!("fan needs n >= 3, got {n}")));
    }
    let edges = (0..n)
        .map(|i| (i, i + 1))
        .chain((0..n.saturating_sub(2)).map(|i| (i, i + 3)))
        .collect();
    Ok(Generated::new(n + 1, edges, (0, 2)))
}

/// `K_{2,3}`: base `(w1, w2) = (0, 1)`, `p1 = 2`, `p2 = 3`, `v = 4`.
pub fn gen_six_cluster_base() -> Generated {
    Generated::new(
        5,
        vec![(0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4)],
        (0, 1),
    )
}

/// Three first-level vertices: `v0 = 0`, `v0' = 1`, `v1..v5 = 2..6`, with
/// `v4 ◁ (v1, v2)` and `v5 ◁ (v4, v3)`. Non-planar, 1-path and triangle-free.
pub fn gen_wide_level_one() -> Generated {
    let edges = vec![
        (0, 2),
        (1, 2),
        (0, 3),
        (1, 3),
        (0, 4),
        (1, 4),
        (2, 5),
        (3, 5),
        (5, 6),
        (4, 6),
    ];
    Generated::new(7, edges, (0, 1))
}

/// The six-cluster frame with the cluster `(w1, p1)` replaced by a
/// tree-decomposable gadget carrying a `K_m` minor.
///
/// Ids: `w1 = 0`, `w2 = 1`, `p1 = 2`, `p2 = 3`, `v = 4`, gadget apex `5`, chain
/// vertices from `6`. The gadget starts as the triangle `(w1, p1, 5)`; each
/// round hangs a chain `x1 ◁ (r0, r1)`, `x_i ◁ (x_{i-1}, r_i)` off the current
/// representatives `r` and appends the chain's last vertex to them.
pub fn gen_clique_minor_1path(m: usize) -> Result<Generated> {
    if !(3..=7).contains(&m) {
        return Err(Error::BadSize(format!(
            "clique-minor-1path needs 3 <= m <= 7, got {m}"
        )));
    }
    let mut edges = vec![
        (0, 2),
        (0, 5),
        (2, 5),
        (1, 2),
        (0, 3),
        (1, 3),
        (2, 4),
        (3, 4),
    ];
    let mut reps: Vec<Vertex> = vec![0, 2, 5];
    let mut next = 6;
    while reps.len() < m {
        let mut prev = reps[0];
        for &r in &reps[1..] {
            edges.push(edge(prev, next));
            edges.push(edge(r, next));
            prev = next;
            next += 1;
        }
        reps.push(prev);
    }
    Ok(Generated::new(next, edges, (0, 1)))
}

/// `v1 = 0`, `v2 = 1`, `u_i = 1 + i`, then `w_ij` in lexicographic order.
pub fn gen_clique_minor_trifree(m: usize) -> Result<Generated> {
    if !(3..=6).contains(&m) {
        return Err(Error::BadSize(format!(
            "trifree-clique needs 3 <= m <= 6, got {m}"
        )));
    }
    let mut edges = Vec::new();
    for u in 2..2 + m {
        edges.push((0, u));
        edges.push((1, u));
    }
    let mut next = 2 + m;
    for i in 2..2 + m {
        for j in i + 1..2 + m {
            edges.push((i, next));
            edges.push((j, next));
            next += 1;
        }
    }
    Ok(Generated::new(next, edges, (0, 1)))
}

pub fn max_random_steps(triangle_free: bool) -> usize {
    if triangle_free {
        MAX_RANDOM_VERTICES - 2
    } else {
        (MAX_RANDOM_VERTICES - 2) / 2
    }
}

/// Seeded random 1-dof tree-decomposable graph with base non-edge `(0, 1)`.
///
/// Each step hangs a new vertex `x` off a constructed pair `(u, w)` by the
/// edges `xu` and `xw`. Without `triangle_free`, a later step may instead
/// close `u` and `x` into a triangle through a second new vertex. With
/// `one_path_bias`, `u` is the most recently added vertex.
pub fn gen_random(
    seed: u64,
    n_steps: usize,
    triangle_free: bool,
    one_path_bias: bool,
) -> Result<Generated> {
    let cap = max_random_steps(triangle_free);
    if n_steps == 0 || n_steps > cap {
        return Err(Error::BadSize(format!(
            "random needs 1 <= steps <= {cap}, got {n_steps}"
        )));
    }
    let out = random_steps(seed, n_steps, triangle_free, one_path_bias);
    derive_construction(&out.graph, out.base)?;
    Ok(out)
}

/// The random generator without the size cap, for benchmarks.
pub fn random_steps(
    seed: u64,
    n_steps: usize,
    triangle_free: bool,
    one_path_bias: bool,
) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); 2];
    let mut edges: Vec<Edge> = Vec::new();
    let connect = |adj: &mut Vec<Vec<Vertex>>, edges: &mut Vec<Edge>, a: Vertex, b: Vertex| {
        adj[a].push(b);
        adj[b].push(a);
        edges.push(edge(a, b));
    };
    for step in 0..n_steps {
        let n = adj.len();
        let ok = |u: Vertex, w: Vertex| u != w && !(triangle_free && adj[u].contains(&w));
        let recent = n - 1;
        let (mut u, mut w) = if one_path_bias && (0..n).any(|w| ok(recent, w)) {
            let options: Vec<Vertex> = (0..n).filter(|&w| ok(recent, w)).collect();
            (recent, *options.choose(&mut rng).expect("nonempty"))
        } else {
            // (0, 1) stays non-adjacent, so this terminates
            loop {
                let (u, w) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if ok(u, w) {
                    break (u, w);
                }
            }
        };
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut u, &mut w);
        }
        let x = n;
        adj.push(Vec::new());
        if !triangle_free && step > 0 && rng.gen_ratio(1, 4) {
            let y = x + 1;
            adj.push(Vec::new());
            connect(&mut adj, &mut edges, u, y);
            connect(&mut adj, &mut edges, y, x);
        }
        connect(&mut adj, &mut edges, u, x);
        connect(&mut adj, &mut edges, w, x);
    }
    Generated::new(adj.len(), edges, (0, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_triangle_free;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!(
            "clique-1path".parse::<Family>().unwrap(),
            Family::CliqueMinorOnePath
        );
        assert_eq!(
            "nope".parse::<Family>(),
            Err(Error::UnknownFamily("nope".into()))
        );
    }

    #[test]
    fn sizes() {
        let fan = gen_fan(5).unwrap();
        assert_eq!((fan.graph.n(), fan.graph.edge_count()), (6, 8));
        assert!(matches!(gen_fan(2), Err(Error::BadSize(_))));
        let t = gen_clique_minor_trifree(3).unwrap();
        assert_eq!((t.graph.n(), t.graph.edge_count()), (8, 12));
        let c = gen_clique_minor_1path(5).unwrap();
        assert_eq!((c.graph.n(), c.graph.edge_count()), (11, 18));
        assert!(gen_clique_minor_1path(8).is_err());
        assert!(gen_clique_minor_trifree(7).is_err());
    }

    #[test]
    fn one_random_step_is_a_path() {
        let g = gen_random(1, 1, false, false).unwrap();
        assert_eq!(g.graph, Graph::from_edges(3, [(0, 2), (1, 2)]).unwrap());
        assert!(gen_random(1, 0, false, false).is_err());
        assert!(gen_random(1, 29, true, false).is_err());
    }

    #[test]
    fn random_respects_triangle_free() {
        for seed in 0..20 {
            let g = gen_random(seed, 12, true, seed % 2 == 0).unwrap();
            assert!(is_triangle_free(&g.graph));
            assert_eq!(g.graph.edge_count() + 4, 2 * g.graph.n());
        }
    }
}
