#![allow(dead_code)]

use std::collections::HashMap;

use cayley_core::{Edge, Graph, Vertex};

fn vertex_mask(edges: &[Edge], s: u32) -> u64 {
    let mut vm = 0u64;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if s >> i & 1 == 1 {
            vm |= 1 << a | 1 << b;
        }
    }
    vm
}

fn connected(edges: &[Edge], s: u32) -> bool {
    let mut reach = {
        let (a, b) = edges[s.trailing_zeros() as usize];
        1u64 << a | 1 << b
    };
    let mut left = s;
    loop {
        let before = left;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if left >> i & 1 == 1 && (reach >> a & 1 == 1 || reach >> b & 1 == 1) {
                reach |= 1 << a | 1 << b;
                left &= !(1 << i);
            }
        }
        if left == 0 {
            return true;
        }
        if left == before {
            return false;
        }
    }
}

struct Td<'a> {
    edges: &'a [Edge],
    memo: HashMap<u32, bool>,
}

impl Td<'_> {
    /// Literal recursive definition: a single edge, or three tree-decomposable
    /// parts pairwise sharing one vertex, the three shared vertices distinct.
    fn td(&mut self, s: u32) -> bool {
        if s.count_ones() == 1 {
            return true;
        }
        if let Some(&v) = self.memo.get(&s) {
            return v;
        }
        let vm = vertex_mask(self.edges, s);
        let ok =
            s.count_ones() + 3 == 2 * vm.count_ones() && connected(self.edges, s) && self.split(s);
        self.memo.insert(s, ok);
        ok
    }

    fn split(&mut self, s: u32) -> bool {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        // A contains the lowest edge of s
        let mut a_extra = rest;
        loop {
            let a = low | a_extra;
            let bc = s & !a;
            if bc != 0 {
                let blow = bc & bc.wrapping_neg();
                let brest = bc & !blow;
                let mut b_extra = brest;
                loop {
                    let b = blow | b_extra;
                    let c = bc & !b;
                    if c != 0 && self.shares(a, b, c) && self.td(a) && self.td(b) && self.td(c) {
                        return true;
                    }
                    if b_extra == 0 {
                        break;
                    }
                    b_extra = (b_extra - 1) & brest;
                }
            }
            if a_extra == 0 {
                return false;
            }
            a_extra = (a_extra - 1) & rest;
        }
    }

    fn shares(&self, a: u32, b: u32, c: u32) -> bool {
        let (va, vb, vc) = (
            vertex_mask(self.edges, a),
            vertex_mask(self.edges, b),
            vertex_mask(self.edges, c),
        );
        let (ab, bc, ca) = (va & vb, vb & vc, vc & va);
        ab.count_ones() == 1
            && bc.count_ones() == 1
            && ca.count_ones() == 1
            && ab != bc
            && bc != ca
            && ca != ab
    }
}

/// Independent tree-decomposability oracle for graphs with at most 16 edges.
pub fn td_oracle(g: &Graph) -> bool {
    let edges = g.edge_list();
    assert!(edges.len() <= 16 && g.n() <= 64, "oracle is exponential");
    if edges.is_empty() {
        return false;
    }
    let used = vertex_mask(&edges, (1u32 << edges.len()) - 1);
    if used.count_ones() as usize != g.n() {
        return false;
    }
    let mut td = Td {
        edges: &edges,
        memo: HashMap::new(),
    };
    td.td((1u32 << edges.len()) - 1)
}

/// All non-edges `f` with `g + f` tree-decomposable, by the oracle.
pub fn base_non_edges_oracle(g: &Graph) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if !g.has_edge(a, b) && td_oracle(&g.with_edge(a, b).unwrap()) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `(independent, minimally_rigid)` by checking every vertex subset.
pub fn laman_oracle(g: &Graph) -> (bool, bool) {
    let n = g.n();
    assert!(n <= 12);
    let edges = g.edge_list();
    let mut independent = true;
    for s in 1u32..(1 << n) {
        let k = s.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let inside = edges
            .iter()
            .filter(|&&(a, b)| s >> a & 1 == 1 && s >> b & 1 == 1)
            .count();
        if inside + 3 > 2 * k {
            independent = false;
            break;
        }
    }
    (independent, independent && edges.len() + 3 == 2 * n)
}

/// True iff `a`, `b` lie together in some vertex set spanning a rigid subgraph:
/// a subset whose induced edges have rank `2|S| - 3` under the counts.
pub fn rigid_pair_oracle(g: &Graph, a: Vertex, b: Vertex) -> bool {
    let n = g.n();
    assert!(n <= 10);
    let edges = g.edge_list();
    for s in 0u32..(1 << n) {
        if s >> a & 1 == 0 || s >> b & 1 == 0 {
            continue;
        }
        let k = s.count_ones() as usize;
        let inner: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|&(x, y)| s >> x & 1 == 1 && s >> y & 1 == 1)
            .collect();
        if inner.len() + 3 < 2 * k {
            continue;
        }
        // a spanning independent subset of size 2k - 3 exists iff the greedy
        // matroid basis reaches that size
        let verts: Vec<Vertex> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let local = |v: Vertex| verts.iter().position(|&x| x == v).unwrap();
        let mut basis: Vec<Edge> = Vec::new();
        for &(x, y) in &inner {
            let mut trial = basis.clone();
            trial.push((local(x), local(y)));
            let h = Graph::from_edges(k, trial.iter().copied()).unwrap();
            if laman_oracle(&h).0 {
                basis = trial;
            }
        }
        if basis.len() + 3 == 2 * k {
            return true;
        }
    }
    false
}
