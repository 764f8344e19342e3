//! Left-right planarity test (de Fraysseix and Rosenstiehl, in Brandes' formulation).

use std::collections::HashMap;

use crate::graph::{Graph, Vertex};

type Arc = usize;

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Interval {
    low: Option<Arc>,
    high: Option<Arc>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    g: &'g Graph,
    height: Vec<usize>,
    parent_arc: Vec<Option<Arc>>,
    oriented: HashMap<(Vertex, Vertex), ()>,
    arcs: Vec<(Vertex, Vertex)>,
    out: Vec<Vec<Arc>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    lowpt_arc: Vec<Arc>,
    reference: Vec<Option<Arc>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

const UNSEEN: usize = usize::MAX;

impl<'g> LrState<'g> {
    fn new(g: &'g Graph) -> Self {
        LrState {
            g,
            height: vec![UNSEEN; g.n()],
            parent_arc: vec![None; g.n()],
            oriented: HashMap::with_capacity(g.edge_count()),
            arcs: Vec::with_capacity(g.edge_count()),
            out: vec![Vec::new(); g.n()],
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting_depth: Vec::new(),
            lowpt_arc: Vec::new(),
            reference: Vec::new(),
            stack_bottom: Vec::new(),
            stack: Vec::new(),
        }
    }

    fn orient(&mut self, v: Vertex) {
        let parent = self.parent_arc[v];
        for &w in self.g.neighbors(v) {
            let key = (v.min(w), v.max(w));
            if self.oriented.insert(key, ()).is_some() {
                continue;
            }
            let a = self.arcs.len();
            self.arcs.push((v, w));
            self.out[v].push(a);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            self.lowpt_arc.push(a);
            self.reference.push(None);
            self.stack_bottom.push(0);
            if self.height[w] == UNSEEN {
                self.parent_arc[w] = Some(a);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[a] = self.height[w];
            }
            self.nesting_depth[a] = 2 * self.lowpt[a];
            if self.lowpt2[a] < self.height[v] {
                self.nesting_depth[a] += 1;
            }
            if let Some(e) = parent {
                if self.lowpt[a] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[a]);
                    self.lowpt[e] = self.lowpt[a];
                } else if self.lowpt[a] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[a]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[a]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: Arc) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => UNSEEN,
        }
    }

    fn test(&mut self, v: Vertex) -> bool {
        let parent = self.parent_arc[v];
        let ordered = self.out[v].clone();
        for (i, &a) in ordered.iter().enumerate() {
            let w = self.arcs[a].1;
            self.stack_bottom[a] = self.stack.len();
            if self.parent_arc[w] == Some(a) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_arc[a] = a;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval {
                        low: Some(a),
                        high: Some(a),
                    },
                });
            }
            if self.lowpt[a] < self.height[v] {
                let e = parent.expect("return arcs below the root are impossible");
                if i == 0 {
                    self.lowpt_arc[e] = self.lowpt_arc[a];
                } else if !self.add_constraints(a, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_arcs(e);
        }
        true
    }

    fn add_constraints(&mut self, a: Arc, e: Arc) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("stack holds the pairs of this arc");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty right interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right.high = q.right.high;
                } else {
                    let low = p.right.low.expect("non-empty");
                    self.reference[low] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = Some(self.lowpt_arc[e]);
            }
            if self.stack.len() == self.stack_bottom[a] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            let top = *top;
            if !(self.conflicting(&top.left, a) || self.conflicting(&top.right, a)) {
                break;
            }
            let mut q = self.stack.pop().expect("peeked");
            if self.conflicting(&q.right, a) {
                q.swap();
            }
            if self.conflicting(&q.right, a) {
                return false;
            }
            let prl = p.right.low.expect("right side was filled above");
            self.reference[prl] = q.right.high;
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else {
                let pll = p.left.low.expect("non-empty");
                self.reference[pll] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !p.left.is_empty() || !p.right.is_empty() {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_arcs(&mut self, e: Arc) {
        let u = self.arcs[e].0;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.arcs[h].1 != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(low) = p.left.low {
                    self.reference[low] = p.right.low;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.arcs[h].1 != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(low) = p.right.low {
                    self.reference[low] = p.left.low;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("e has a return arc");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }
}

/// Decides planarity in linear time.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return false;
    }
    let mut st = LrState::new(g);
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v] == UNSEEN {
            st.height[v] = 0;
            roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let mut list = std::mem::take(&mut st.out[v]);
        list.sort_by_key(|&a| st.nesting_depth[a]);
        st.out[v] = list;
    }
    roots.into_iter().all(|r| st.test(r))
}
