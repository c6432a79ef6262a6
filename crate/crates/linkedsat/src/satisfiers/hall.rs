use std::collections::BTreeSet;

use crate::planarity::{Embedding, IncidenceGraph};

/// Counts for the plane subgraph induced by a clause subset and its adjacent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphStats {
    pub b: usize,
    pub c: usize,
    pub e: usize,
    pub f: usize,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HallReport {
    pub stats: SubgraphStats,
    /// |B'| + |C'| - |E'| + |F'| = 1 + k.
    pub euler: bool,
    /// 2|E'| >= 4|F'|.
    pub face_bound: bool,
    /// 2|B'| + 2|C'| - 2 - 2k >= |E'|.
    pub edge_bound: bool,
    /// |C'| <= |B'| - 1 - k.
    pub hall_bound: bool,
    /// Every clause of the subset has degree at least 4.
    pub degrees_ok: bool,
}

impl HallReport {
    pub fn all_hold(&self) -> bool {
        self.euler && self.face_bound && self.edge_bound && self.hall_bound
    }
}

/// Restricts the embedding of `g` to the subgraph induced by `subset` and its neighbors,
/// traces its faces and evaluates the counting inequalities.
pub fn hall_check(g: &IncidenceGraph, emb: &Embedding, subset: &[usize]) -> HallReport {
    let cs: BTreeSet<usize> = subset.iter().map(|&j| g.clause_vertex(j)).collect();
    let mut bs: BTreeSet<usize> = BTreeSet::new();
    for &c in &cs {
        bs.extend(g.graph.neighbors(c).iter().copied());
    }
    // Dense relabelling of the induced vertex set.
    let verts: Vec<usize> = bs.iter().chain(cs.iter()).copied().collect();
    let pos: std::collections::HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    let mut e = 0;
    for (i, &x) in verts.iter().enumerate() {
        for w in emb.neighbors_cw(x) {
            let keep = (cs.contains(&x) && bs.contains(&w)) || (bs.contains(&x) && cs.contains(&w));
            if keep {
                rot[i].push(pos[&w]);
                e += 1;
            }
        }
    }
    let e = e / 2;
    let sub = Embedding::from_rotation(&rot);
    let (_, k) = sub.graph().components();
    let f = sub.face_count();
    let (b, c) = (bs.len(), cs.len());
    let stats = SubgraphStats { b, c, e, f, k };
    let (bi, ci, ei, fi, ki) = (b as i64, c as i64, e as i64, f as i64, k as i64);
    HallReport {
        stats,
        euler: bi + ci - ei + fi == 1 + ki,
        face_bound: 2 * ei >= 4 * fi,
        edge_bound: 2 * bi + 2 * ci - 2 - 2 * ki >= ei,
        hall_bound: ci <= bi - 1 - ki,
        degrees_ok: cs.iter().all(|&x| g.graph.degree(x) >= 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::planarity::build_incidence_graph;

    #[test]
    fn star() {
        let f = Formula::from_dimacs_clauses(4, &[&[1, 2, 3, 4]]).unwrap();
        let mut g = build_incidence_graph(&f).unwrap();
        assert!(g.embed());
        let emb = g.embedding.clone().unwrap();
        let r = hall_check(&g, &emb, &[0]);
        assert_eq!(r.stats, SubgraphStats { b: 4, c: 1, e: 4, f: 1, k: 1 });
        assert!(r.all_hold() && r.degrees_ok);
    }

    #[test]
    fn quadrilateral_is_tight() {
        let f = Formula::from_dimacs_clauses(2, &[&[1, 2], &[1, 2]]).unwrap();
        let mut g = build_incidence_graph(&f).unwrap();
        assert!(g.embed());
        let emb = g.embedding.clone().unwrap();
        let r = hall_check(&g, &emb, &[0, 1]);
        assert_eq!((r.stats.e, r.stats.f), (4, 2));
        assert!(r.euler && r.face_bound);
        assert_eq!(2 * r.stats.e, 4 * r.stats.f);
    }
}
