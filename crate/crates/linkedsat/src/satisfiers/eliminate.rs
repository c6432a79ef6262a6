//! Model counting by variable elimination over clause factors.
//!
//! Each clause is a 0/1 table over its variables. Variables are summed out along a greedy
//! min-degree order of the primal graph; the cost is exponential only in the widest
//! intermediate table, which stays small for the ladder-like outputs of the reductions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::count::Cl;

struct Factor {
    vars: Vec<usize>,
    table: Vec<BigUint>,
}

/// Greedy min-degree order, or `None` once some variable has more than `cap` neighbours.
fn min_degree_order(adj: &mut [BTreeSet<usize>], cap: usize) -> Option<Vec<usize>> {
    let mut queue: BTreeSet<(usize, usize)> = adj.iter().enumerate().map(|(v, a)| (a.len(), v)).collect();
    let mut order = Vec::with_capacity(adj.len());
    while let Some((d, v)) = queue.pop_first() {
        if d > cap {
            return None;
        }
        let nb: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
        for &u in &nb {
            queue.remove(&(adj[u].len(), u));
        }
        for &u in &nb {
            adj[u].remove(&v);
            for &w in &nb {
                if w != u {
                    adj[u].insert(w);
                }
            }
        }
        for &u in &nb {
            queue.insert((adj[u].len(), u));
        }
        order.push(v);
    }
    Some(order)
}

/// Models over the variables occurring in `clauses`, or `None` when the elimination
/// would need a table over more than `cap` variables.
pub(super) fn eliminate_count(clauses: &[Cl], cap: usize) -> Option<BigUint> {
    let mut ids: HashMap<u32, usize> = HashMap::new();
    for l in clauses.iter().flatten() {
        let n = ids.len();
        ids.entry(l.unsigned_abs()).or_insert(n);
    }
    let n = ids.len();
    let mut adj = vec![BTreeSet::new(); n];
    let mut factors: Vec<Option<Factor>> = Vec::with_capacity(clauses.len());
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in clauses {
        let mut vars: Vec<usize> = c.iter().map(|l| ids[&l.unsigned_abs()]).collect();
        vars.sort_unstable();
        vars.dedup();
        for &a in &vars {
            touching[a].push(factors.len());
            for &b in &vars {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        // The only falsifying row has every literal false.
        let mut falsify = 0usize;
        for l in c {
            let i = vars.binary_search(&ids[&l.unsigned_abs()]).unwrap();
            if *l < 0 {
                falsify |= 1 << i;
            }
        }
        let table = (0..1usize << vars.len()).map(|a| if a == falsify { BigUint::zero() } else { BigUint::one() }).collect();
        factors.push(Some(Factor { vars, table }));
    }
    let order = min_degree_order(&mut adj, cap)?;

    let mut total = BigUint::one();
    for v in order {
        let mut group: Vec<Factor> = Vec::new();
        for &fi in &touching[v] {
            if let Some(f) = factors[fi].take() {
                group.push(f);
            }
        }
        let mut scope: Vec<usize> = group.iter().flat_map(|f| f.vars.iter().copied()).filter(|&u| u != v).collect();
        scope.sort_unstable();
        scope.dedup();
        // For each factor, the bit of each of its variables in a (scope + v) assignment.
        let vbit = scope.len();
        let maps: Vec<Vec<usize>> = group
            .iter()
            .map(|f| f.vars.iter().map(|u| if *u == v { vbit } else { scope.binary_search(u).unwrap() }).collect())
            .collect();
        let mut table = Vec::with_capacity(1 << scope.len());
        for a in 0..1usize << scope.len() {
            let mut sum = BigUint::zero();
            for x in 0..2usize {
                let full = a | (x << vbit);
                let mut prod = BigUint::one();
                for (f, m) in group.iter().zip(&maps) {
                    let idx = m.iter().enumerate().fold(0, |acc, (i, &b)| acc | (((full >> b) & 1) << i));
                    let t = &f.table[idx];
                    if t.is_zero() {
                        prod = BigUint::zero();
                        break;
                    }
                    if !t.is_one() {
                        prod *= t;
                    }
                }
                sum += prod;
            }
            table.push(sum);
        }
        if scope.is_empty() {
            total *= &table[0];
            if total.is_zero() {
                return Some(total);
            }
            continue;
        }
        let fi = factors.len();
        for &u in &scope {
            touching[u].push(fi);
        }
        factors.push(Some(Factor { vars: scope, table }));
    }
    Some(total)
}
