//! Left-right planarity test with embedding extraction.

use super::embedding::Embedding;
use super::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct Lr {
    n: usize,
    adj: Vec<Vec<(usize, usize)>>,
    oriented: Vec<bool>,
    src: Vec<usize>,
    dst: Vec<usize>,
    height: Vec<usize>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting: Vec<i64>,
    parent_edge: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
    roots: Vec<usize>,
    refs: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    emb: Embedding,
}

impl Lr {
    fn new(g: &Graph) -> Lr {
        let n = g.n();
        let m = g.m();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Lr {
            n,
            adj,
            oriented: vec![false; m],
            src: vec![NONE; m],
            dst: vec![NONE; m],
            height: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting: vec![0; m],
            parent_edge: vec![None; n],
            out: vec![Vec::new(); n],
            roots: Vec::new(),
            refs: vec![None; m],
            side: vec![1; m],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![None; m],
            left_ref: vec![NONE; n],
            right_ref: vec![NONE; n],
            emb: Embedding::new(n),
        }
    }

    fn run(mut self) -> Option<Embedding> {
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                self.roots.push(v);
                self.dfs_orientation(v);
            }
        }
        for v in 0..self.n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting[e]);
            self.out[v] = o;
        }
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            if !self.dfs_testing(r) {
                return None;
            }
        }
        for e in 0..self.src.len() {
            self.nesting[e] *= self.sign(e);
        }
        for v in 0..self.n {
            let mut o = std::mem::take(&mut self.out[v]);
            o.sort_by_key(|&e| self.nesting[e]);
            let mut prev = None;
            for &e in &o {
                let w = self.dst[e];
                self.emb.add_half_edge_cw(v, w, prev);
                prev = Some(w);
            }
            self.out[v] = o;
        }
        for i in 0..self.roots.len() {
            let r = self.roots[i];
            self.dfs_embedding(r);
        }
        Some(self.emb)
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for i in 0..self.adj[v].len() {
            let (w, vw) = self.adj[v][i];
            if self.oriented[vw] {
                continue;
            }
            self.oriented[vw] = true;
            self.src[vw] = v;
            self.dst[vw] = w;
            self.out[v].push(vw);
            self.lowpt[vw] = self.height[v];
            self.lowpt2[vw] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.dfs_orientation(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        !i.empty() && self.lowpt[i.high.expect("interval high")] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.empty() {
            return self.lowpt[p.right.low.expect("right low")];
        }
        if p.right.empty() {
            return self.lowpt[p.left.low.expect("left low")];
        }
        self.lowpt[p.left.low.unwrap()].min(self.lowpt[p.right.low.unwrap()])
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("non-root has parent edge");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.left.empty() {
                q.swap();
            }
            if !q.left.empty() {
                return false;
            }
            let qrl = q.right.low.expect("right low");
            if self.lowpt[qrl] > self.lowpt[e] {
                if p.right.empty() {
                    p.right.high = q.right.high;
                } else if let Some(prl) = p.right.low {
                    self.refs[prl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qrl] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(prl) = p.right.low {
                self.refs[prl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.empty() {
                p.left.high = q.left.high;
            } else if let Some(pll) = p.left.low {
                self.refs[pll] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.empty() && p.right.empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.refs[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.refs[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge implies nonempty stack");
            let hl = top.left.high;
            let hr = top.right.high;
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        let mut chain = Vec::new();
        let mut x = e;
        while let Some(r) = self.refs[x] {
            chain.push(x);
            x = r;
        }
        let mut s = self.side[x];
        for &y in chain.iter().rev() {
            self.side[y] *= s;
            self.refs[y] = None;
            s = self.side[y];
        }
        self.side[e]
    }

    fn dfs_embedding(&mut self, v: usize) {
        for i in 0..self.out[v].len() {
            let ei = self.out[v][i];
            let w = self.dst[ei];
            if self.parent_edge[w] == Some(ei) {
                self.emb.add_half_edge_first(w, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.dfs_embedding(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.emb.add_half_edge_cw(w, v, Some(r));
            } else {
                let r = self.left_ref[w];
                self.emb.add_half_edge_ccw(w, v, Some(r));
                self.left_ref[w] = v;
            }
        }
    }
}

/// Runs the test; `None` means non-planar.
pub fn lr_planarity(g: &Graph) -> Option<Embedding> {
    let n = g.n();
    if n > 2 && g.m() > 3 * n - 6 {
        return None;
    }
    if n < 2000 {
        return Lr::new(g).run();
    }
    // Deep graphs recurse deeply; give the search its own large stack.
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 30)
            .spawn_scoped(s, || Lr::new(g).run())
            .expect("spawn planarity thread")
            .join()
            .expect("planarity thread panicked")
    })
}
