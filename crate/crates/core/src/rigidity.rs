//! Generic 2D rigidity via the (2,3)-pebble game.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityVerdict {
    pub independent: bool,
    pub minimally_rigid: bool,
    /// Vertex set whose induced subgraph has more than `2|V| - 3` edges.
    pub violating_subgraph: Option<Vec<Vertex>>,
}

/// Pebble game state: each vertex holds up to two pebbles, and each accepted
/// edge is directed away from the vertex whose pebble covers it.
#[derive(Clone)]
struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<Vertex>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Tries to bring one more pebble to `a` without touching `b`.
    /// On failure returns the visited set, which includes `b`.
    fn fetch(&mut self, a: Vertex, b: Vertex) -> std::result::Result<(), Vec<Vertex>> {
        let n = self.pebbles.len();
        let mut from = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        visited[a] = true;
        visited[b] = true;
        let mut order = vec![a, b];
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if visited[y] {
                    continue;
                }
                visited[y] = true;
                order.push(y);
                from[y] = x;
                if self.pebbles[y] > 0 {
                    // reverse the path a -> ... -> y
                    self.pebbles[y] -= 1;
                    let mut cur = y;
                    while cur != a {
                        let prev = from[cur];
                        let pos = self.out[prev]
                            .iter()
                            .position(|&z| z == cur)
                            .expect("path arc");
                        self.out[prev].swap_remove(pos);
                        self.out[cur].push(prev);
                        cur = prev;
                    }
                    self.pebbles[a] += 1;
                    return Ok(());
                }
                stack.push(y);
            }
        }
        order.sort_unstable();
        Err(order)
    }

    /// Gathers as many pebbles as possible on `a` and `b`.
    fn gather(&mut self, a: Vertex, b: Vertex) -> std::result::Result<(), Vec<Vertex>> {
        while self.pebbles[a] < 2 {
            self.fetch(a, b)?;
        }
        while self.pebbles[b] < 2 {
            self.fetch(b, a)?;
        }
        Ok(())
    }

    fn insert(&mut self, a: Vertex, b: Vertex) -> std::result::Result<(), Vec<Vertex>> {
        self.gather(a, b)?;
        self.pebbles[a] -= 1;
        self.out[a].push(b);
        Ok(())
    }
}

fn play(g: &Graph) -> (PebbleGame, Option<Vec<Vertex>>, usize) {
    let mut game = PebbleGame::new(g.n());
    let mut violation = None;
    let mut accepted = 0;
    for (a, b) in g.edges() {
        match game.insert(a, b) {
            Ok(()) => accepted += 1,
            Err(set) => {
                violation.get_or_insert(set);
            }
        }
    }
    (game, violation, accepted)
}

pub fn check_rigidity(g: &Graph) -> Result<RigidityVerdict> {
    if g.n() < 2 {
        return Err(Error::TooSmall);
    }
    let (_, violation, _) = play(g);
    let independent = violation.is_none();
    Ok(RigidityVerdict {
        independent,
        minimally_rigid: independent && g.edge_count() == 2 * g.n() - 3,
        violating_subgraph: violation,
    })
}

/// True iff `a` and `b` lie in a common rigid component, i.e. some minimally
/// rigid subgraph contains both.
pub fn exists_rigid_subgraph_containing(g: &Graph, a: Vertex, b: Vertex) -> bool {
    if a == b || a >= g.n() || b >= g.n() {
        return false;
    }
    if g.has_edge(a, b) {
        return true;
    }
    let (mut game, _, _) = play(g);
    game.gather(a, b).is_err()
}
