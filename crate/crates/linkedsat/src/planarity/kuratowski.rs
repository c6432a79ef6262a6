use std::collections::BTreeSet;

use super::graph::Graph;
use super::lr::lr_planarity;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Subdivision of K5 or K3,3 contained in the tested graph.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: KuratowskiKind,
    /// Branch vertices (degree 4 for K5, degree 3 for K3,3).
    pub branch: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Shrinks a non-planar graph to an edge-minimal non-planar subgraph and classifies it.
pub fn find_witness(g: &Graph) -> Witness {
    let mut cur = g.clone();
    for &(u, v) in g.edges() {
        let h = cur.without_edge(u, v);
        if lr_planarity(&h).is_none() {
            cur = h;
        }
    }
    let branch: Vec<usize> = (0..cur.n()).filter(|&v| cur.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    Witness { kind, branch, edges: cur.edges().to_vec() }
}

/// Follows the subdivision paths out of each branch vertex and checks the contracted
/// graph is exactly K5 or K3,3 and every edge lies in `host`.
pub fn verify_witness(w: &Witness, host: &Graph) -> bool {
    if !w.edges.iter().all(|&(a, b)| host.has_edge(a, b)) {
        return false;
    }
    let g = Graph::from_edges(host.n(), &w.edges);
    let want_deg = match w.kind {
        KuratowskiKind::K5 => 4,
        KuratowskiKind::K33 => 3,
    };
    let want_count = match w.kind {
        KuratowskiKind::K5 => 5,
        KuratowskiKind::K33 => 6,
    };
    let branch: BTreeSet<usize> = w.branch.iter().copied().collect();
    if branch.len() != want_count {
        return false;
    }
    for v in 0..g.n() {
        let d = g.degree(v);
        let ok = if branch.contains(&v) { d == want_deg } else { d == 0 || d == 2 };
        if !ok {
            return false;
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut used_edges = 0;
    for &b in &branch {
        for &first in g.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            used_edges += 1;
            while !branch.contains(&cur) {
                let nxt = *g.neighbors(cur).iter().find(|&&x| x != prev).expect("degree-2 path vertex");
                prev = cur;
                cur = nxt;
                used_edges += 1;
            }
            if cur == b {
                return false;
            }
            pairs.insert((b.min(cur), b.max(cur)));
        }
    }
    // Each path is walked from both ends, so the edge total is doubled.
    if used_edges != 2 * g.m() {
        return false;
    }
    let bv: Vec<usize> = branch.into_iter().collect();
    match w.kind {
        KuratowskiKind::K5 => pairs.len() == 10,
        KuratowskiKind::K33 => {
            if pairs.len() != 9 {
                return false;
            }
            // The contracted graph must be bipartite with parts of size 3.
            let a = bv[0];
            let side_b: Vec<usize> = bv.iter().copied().filter(|&x| pairs.contains(&(a.min(x), a.max(x)))).collect();
            let side_a: Vec<usize> = bv.iter().copied().filter(|x| !side_b.contains(x)).collect();
            side_a.len() == 3
                && side_b.len() == 3
                && side_a.iter().all(|&p| side_b.iter().all(|&q| pairs.contains(&(p.min(q), p.max(q)))))
        }
    }
}
