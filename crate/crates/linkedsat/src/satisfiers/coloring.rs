use std::collections::{BTreeSet, VecDeque};

use crate::formula::{Assignment, Formula, Var};
use crate::planarity::Embedding;

use super::SatError;

const UNCOLORED: u8 = u8::MAX;

/// Proper coloring with colors `0..k`, found by Kempe-chain greedy first and exact
/// saturation-order backtracking if that fails.
pub fn color_graph(adj: &[Vec<usize>], k: u8) -> Option<Vec<u8>> {
    kempe_greedy(adj, k).or_else(|| dsatur(adj, k))
}

fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut removed = vec![false; n];
    let mut buckets: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&(d, v)) = buckets.iter().next() {
        buckets.remove(&(d, v));
        removed[v] = true;
        order.push(v);
        for &w in &adj[v] {
            if !removed[w] {
                buckets.remove(&(deg[w], w));
                deg[w] -= 1;
                buckets.insert((deg[w], w));
            }
        }
    }
    order.reverse();
    order
}

fn kempe_chain(adj: &[Vec<usize>], col: &[u8], start: usize, a: u8, b: u8) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut out = vec![start];
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && (col[y] == a || col[y] == b) {
                seen[y] = true;
                out.push(y);
                q.push_back(y);
            }
        }
    }
    out
}

fn free_color(adj: &[Vec<usize>], col: &[u8], v: usize, k: u8) -> Option<u8> {
    (0..k).find(|&c| adj[v].iter().all(|&w| col[w] != c))
}

fn kempe_greedy(adj: &[Vec<usize>], k: u8) -> Option<Vec<u8>> {
    let mut col = vec![UNCOLORED; adj.len()];
    for v in degeneracy_order(adj) {
        if let Some(c) = free_color(adj, &col, v, k) {
            col[v] = c;
            continue;
        }
        let mut done = false;
        'pairs: for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                for &u in &adj[v] {
                    if col[u] != a {
                        continue;
                    }
                    let chain = kempe_chain(adj, &col, u, a, b);
                    for &x in &chain {
                        col[x] = if col[x] == a { b } else { a };
                    }
                    if let Some(c) = free_color(adj, &col, v, k) {
                        col[v] = c;
                        done = true;
                        break 'pairs;
                    }
                    for &x in &chain {
                        col[x] = if col[x] == a { b } else { a };
                    }
                }
            }
        }
        if !done {
            return None;
        }
    }
    Some(col)
}

fn dsatur(adj: &[Vec<usize>], k: u8) -> Option<Vec<u8>> {
    let n = adj.len();
    let mut col = vec![UNCOLORED; n];
    let pick = |col: &[u8]| -> Option<usize> {
        (0..n).filter(|&v| col[v] == UNCOLORED).max_by_key(|&v| {
            let sat: BTreeSet<u8> = adj[v].iter().map(|&w| col[w]).filter(|&c| c != UNCOLORED).collect();
            let open = adj[v].iter().filter(|&&w| col[w] == UNCOLORED).count();
            (sat.len(), open, std::cmp::Reverse(v))
        })
    };
    let mut stack: Vec<(usize, u8)> = Vec::new();
    loop {
        let Some(v) = pick(&col) else {
            return Some(col);
        };
        stack.push((v, 0));
        loop {
            let (v, c) = stack.last_mut()?;
            let v = *v;
            let mut placed = false;
            while *c < k {
                let cc = *c;
                *c += 1;
                if adj[v].iter().all(|&w| col[w] != cc) {
                    col[v] = cc;
                    placed = true;
                    break;
                }
            }
            if placed {
                break;
            }
            col[v] = UNCOLORED;
            stack.pop();
            let &(u, _) = stack.last()?;
            col[u] = UNCOLORED;
        }
    }
}

#[derive(Clone, Debug)]
pub struct ColoringResult {
    pub assignment: Assignment,
    /// Color in `0..4` per variable (index 0 is variable 1).
    pub colors: Vec<u8>,
    /// The monotone triple chosen for each clause.
    pub triangles: Vec<[Var; 3]>,
}

/// Picks three distinct same-polarity variables of clause `j`, preferring three cyclically
/// consecutive neighbors in the clause vertex's rotation.
fn pick_triple(f: &Formula, j: usize, rotation: &[Var]) -> Option<[Var; 3]> {
    let c = f.clause(j);
    let has = |v: Var, neg: bool| c.iter().any(|l| l.var == v && l.negated == neg);
    for neg in [false, true] {
        let r = rotation.len();
        if r >= 3 {
            for s in 0..r {
                let t = [rotation[s], rotation[(s + 1) % r], rotation[(s + 2) % r]];
                if t.iter().all(|&v| has(v, neg)) {
                    return Some(t);
                }
            }
        }
    }
    // Any three vertices on the boundary of the clause's star neighborhood can be joined
    // inside it without crossings, so a non-consecutive triple is still planar.
    for neg in [false, true] {
        let vs: Vec<Var> = rotation.iter().copied().filter(|&v| has(v, neg)).collect();
        if vs.len() >= 3 {
            return Some([vs[0], vs[1], vs[2]]);
        }
    }
    None
}

/// Satisfies a planar formula in which every clause has three distinct variables occurring
/// with the same sign. `emb` is a planar rotation system of the incidence graph.
pub fn four_color_satisfy(f: &Formula, emb: &Embedding) -> Result<ColoringResult, SatError> {
    let nv = f.num_vars() as usize;
    if emb.n() != nv + f.num_clauses() {
        return Err(SatError::PreconditionViolated("embedding does not match the formula".into()));
    }
    let mut triangles = Vec::with_capacity(f.num_clauses());
    for j in 0..f.num_clauses() {
        let rotation: Vec<Var> = emb.neighbors_cw(nv + j).into_iter().map(|x| x as Var + 1).collect();
        let t = pick_triple(f, j, &rotation).ok_or_else(|| {
            SatError::PreconditionViolated(format!("clause {} has no three same-sign distinct variables", j + 1))
        })?;
        triangles.push(t);
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nv];
    for t in &triangles {
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    adj[t[a] as usize - 1].insert(t[b] as usize - 1);
                }
            }
        }
    }
    let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
    let colors = color_graph(&adj, 4)
        .ok_or_else(|| SatError::ColoringExhausted("no 4-coloring of the triangle graph".into()))?;
    let assignment = Assignment::from_values(colors.iter().map(|&c| c < 2).collect());
    Ok(ColoringResult { assignment, colors, triangles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Semantics;
    use crate::planarity::build_incidence_graph;

    fn solve(f: &Formula) -> ColoringResult {
        let mut g = build_incidence_graph(f).unwrap();
        assert!(g.embed());
        four_color_satisfy(f, g.embedding.as_ref().unwrap()).unwrap()
    }

    #[test]
    fn single_positive_clause() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let r = solve(&f);
        let cs: BTreeSet<u8> = r.colors.iter().copied().collect();
        assert_eq!(cs.len(), 3);
        assert!(f.evaluate(&r.assignment, Semantics::Cnf));
    }

    #[test]
    fn opposite_clauses() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3], &[-1, -2, -3]]).unwrap();
        let r = solve(&f);
        assert!(f.evaluate(&r.assignment, Semantics::Cnf));
    }

    #[test]
    fn negated_triple_with_extra_positive() {
        let f = Formula::from_dimacs_clauses(4, &[&[-1, -2, 4, -3]]).unwrap();
        let r = solve(&f);
        let mut t = r.triangles[0];
        t.sort();
        assert_eq!(t, [1, 2, 3]);
        assert!((1..=3).any(|v| !r.assignment.get(v)));
    }

    #[test]
    fn k4_needs_four_colors() {
        let adj: Vec<Vec<usize>> = (0..4).map(|v| (0..4).filter(|&w| w != v).collect()).collect();
        assert!(color_graph(&adj, 3).is_none());
        let c = color_graph(&adj, 4).unwrap();
        assert!((0..4).all(|v| adj[v].iter().all(|&w| c[v] != c[w])));
        assert!(dsatur(&adj, 3).is_none());
    }
}
