use std::collections::VecDeque;

use crate::formula::{Assignment, Formula, Var};
use crate::planarity::{build_incidence_graph, is_planar};

use super::SatError;

/// Maximum bipartite matching by Hopcroft-Karp. `adj[l]` lists right vertices of left vertex `l`.
/// Returns the partner of every left vertex.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let n_left = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![usize::MAX; n_left];
    loop {
        let mut q = VecDeque::new();
        for l in 0..n_left {
            if mate_l[l].is_none() {
                dist[l] = 0;
                q.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = q.pop_front() {
            for &r in &adj[l] {
                match mate_r[r] {
                    None => found = true,
                    Some(l2) if dist[l2] == usize::MAX => {
                        dist[l2] = dist[l] + 1;
                        q.push_back(l2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n_left];
        for l in 0..n_left {
            if mate_l[l].is_none() {
                augment(l, adj, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }
    mate_l
}

fn augment(
    start: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    // Iterative layered DFS; `path` holds left vertices on the current alternating path.
    let mut path = vec![start];
    while let Some(&l) = path.last() {
        if it[l] == adj[l].len() {
            dist[l] = usize::MAX;
            path.pop();
            continue;
        }
        let r = adj[l][it[l]];
        it[l] += 1;
        match mate_r[r] {
            None => {
                // Flip the path: each left vertex takes the right vertex it tried last.
                for &pl in path.iter().rev() {
                    let pr = adj[pl][it[pl] - 1];
                    mate_l[pl] = Some(pr);
                    mate_r[pr] = Some(pl);
                }
                return true;
            }
            Some(l2) if dist[l2] == dist[l] + 1 => path.push(l2),
            _ => {}
        }
    }
    false
}

#[derive(Clone, Debug)]
pub struct MatchingResult {
    pub assignment: Assignment,
    /// Variable assigned to each clause.
    pub matching: Vec<Var>,
}

/// Satisfies a planar formula whose clauses each have at least four distinct variables.
pub fn matching_satisfy(f: &Formula) -> Result<MatchingResult, SatError> {
    for i in 0..f.num_clauses() {
        let k = f.clause_vars(i).len();
        if k < 4 {
            return Err(SatError::PreconditionViolated(format!(
                "clause {} has {} distinct variables, at least 4 required",
                i + 1,
                k
            )));
        }
    }
    let g = build_incidence_graph(f).map_err(|e| SatError::PreconditionViolated(e.to_string()))?;
    if !is_planar(&g.graph) {
        return Err(SatError::PreconditionViolated("incidence graph is not planar".into()));
    }
    let adj: Vec<Vec<usize>> =
        (0..f.num_clauses()).map(|i| f.clause_vars(i).iter().map(|&v| v as usize - 1).collect()).collect();
    let mate = hopcroft_karp(&adj, f.num_vars() as usize);
    let matched = mate.iter().filter(|m| m.is_some()).count();
    if matched < f.num_clauses() {
        return Err(SatError::MatchingIncomplete { matched, clauses: f.num_clauses() });
    }
    let mut a = Assignment::new(f.num_vars());
    let mut matching = Vec::with_capacity(f.num_clauses());
    for (i, m) in mate.iter().enumerate() {
        let v = m.unwrap() as Var + 1;
        let lit = f.clause(i).iter().find(|l| l.var == v).unwrap();
        a.set(v, !lit.negated);
        matching.push(v);
    }
    Ok(MatchingResult { assignment: a, matching })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Semantics;

    #[test]
    fn hk_perfect_on_cycle() {
        let adj = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        let m = hopcroft_karp(&adj, 3);
        assert!(m.iter().all(|x| x.is_some()));
    }

    #[test]
    fn hk_needs_augmenting_path() {
        // Greedy would match 0-0 and leave 1 unmatched.
        let adj = vec![vec![0, 1], vec![0]];
        let m = hopcroft_karp(&adj, 2);
        assert_eq!(m, vec![Some(1), Some(0)]);
    }

    #[test]
    fn satisfies_wide_clauses() {
        let f = Formula::from_dimacs_clauses(5, &[&[1, -2, 3, 4], &[-1, 2, -3, 5]]).unwrap();
        let r = matching_satisfy(&f).unwrap();
        assert!(f.evaluate(&r.assignment, Semantics::Cnf));
        assert_ne!(r.matching[0], r.matching[1]);
    }

    #[test]
    fn rejects_narrow_clause() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        assert!(matches!(matching_satisfy(&f), Err(SatError::PreconditionViolated(_))));
    }
}
