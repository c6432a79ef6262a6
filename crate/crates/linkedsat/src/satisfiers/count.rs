//! Exact model counting beyond the brute-force cap.
//!
//! Literal-equivalence classes from the binary implication graph are collapsed first. The
//! remainder is counted by variable elimination along a min-degree order when that order is
//! narrow, and otherwise by a DPLL search with unit propagation, connected-component
//! splitting and component caching. Used to cross-check reduction outputs that have hundreds of
//! variables; small inputs are cross-checked against `brute_count`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::formula::{Formula, Semantics};

pub(super) type Cl = Vec<i32>;

fn lit_index(l: i32) -> usize {
    let v = l.unsigned_abs() as usize - 1;
    2 * v + usize::from(l < 0)
}

fn index_lit(i: usize) -> i32 {
    let v = (i / 2 + 1) as i32;
    if i % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Sorted, deduplicated clause; `None` for tautologies.
fn normalize(mut c: Cl) -> Option<Cl> {
    c.sort_unstable_by_key(|&l| (l.unsigned_abs(), l < 0));
    c.dedup();
    for w in c.windows(2) {
        if w[0] == -w[1] {
            return None;
        }
    }
    Some(c)
}

/// CNF clauses for a formula; 1-in-3 clauses become the clause plus pairwise exclusions.
pub fn cnf_clauses(f: &Formula, sem: Semantics) -> Vec<Cl> {
    let mut out = Vec::new();
    for c in f.clauses() {
        let lits: Cl = c.iter().map(|l| l.to_dimacs() as i32).collect();
        if sem == Semantics::OneInThree {
            for i in 0..lits.len() {
                for j in i + 1..lits.len() {
                    out.push(vec![-lits[i], -lits[j]]);
                }
            }
        }
        out.push(lits);
    }
    out
}

/// Iterative Tarjan SCC over literal nodes.
fn scc(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(s, 0)];
        index[s] = next;
        low[s] = next;
        next += 1;
        stack.push(s);
        on[s] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on[w] = true;
                    call.push((w, 0));
                } else if on[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

/// Collapses equivalent literals. Returns the rewritten clauses and the number of variable
/// classes among occurring variables, or `None` if some `x` is equivalent to `!x`.
fn collapse_equivalences(num_vars: usize, clauses: Vec<Cl>) -> Option<(Vec<Cl>, usize)> {
    let n = 2 * num_vars;
    let mut adj = vec![Vec::new(); n];
    for c in &clauses {
        if c.len() == 2 {
            adj[lit_index(-c[0])].push(lit_index(c[1]));
            adj[lit_index(-c[1])].push(lit_index(c[0]));
        }
    }
    let comp = scc(n, &adj);
    // Representative per component: the literal with the smallest variable.
    let mut rep: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        rep.entry(comp[i]).and_modify(|r| *r = (*r).min(i)).or_insert(i);
    }
    for v in 0..num_vars {
        if comp[2 * v] == comp[2 * v + 1] {
            return None;
        }
    }
    let map = |l: i32| index_lit(rep[&comp[lit_index(l)]]);
    let classes = vars_of(&clauses)
        .into_iter()
        .map(|v| map(v as i32).unsigned_abs())
        .collect::<std::collections::HashSet<u32>>()
        .len();
    let out = clauses.into_iter().filter_map(|c| normalize(c.into_iter().map(map).collect())).collect();
    Some((out, classes))
}

fn vars_of(clauses: &[Cl]) -> Vec<u32> {
    let mut vs: Vec<u32> = clauses.iter().flatten().map(|l| l.unsigned_abs()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

struct Counter {
    cache: HashMap<Vec<Cl>, BigUint>,
}

impl Counter {
    /// Models over the variables that occur in `clauses`.
    fn count(&mut self, clauses: Vec<Cl>) -> BigUint {
        if clauses.is_empty() {
            return BigUint::one();
        }
        let mut total = BigUint::one();
        for comp in components(clauses) {
            let c = self.count_component(comp);
            if c.is_zero() {
                return c;
            }
            total *= c;
        }
        total
    }

    fn count_component(&mut self, mut clauses: Vec<Cl>) -> BigUint {
        clauses.sort_unstable();
        if let Some(v) = self.cache.get(&clauses) {
            return v.clone();
        }
        let nv = vars_of(&clauses).len();
        let unit = clauses.iter().find(|c| c.len() == 1).map(|c| c[0]);
        let branches: Vec<i32> = match unit {
            Some(l) => vec![l],
            None => {
                let mut occ: HashMap<u32, usize> = HashMap::new();
                for l in clauses.iter().flatten() {
                    *occ.entry(l.unsigned_abs()).or_default() += 1;
                }
                let (&v, _) = occ.iter().max_by_key(|&(&v, &k)| (k, std::cmp::Reverse(v))).unwrap();
                vec![v as i32, -(v as i32)]
            }
        };
        let mut total = BigUint::zero();
        for l in branches {
            if let Some((reduced, assigned)) = propagate(&clauses, l) {
                let free = nv - assigned - vars_of(&reduced).len();
                total += self.count(reduced) * pow2(free);
            }
        }
        if self.cache.len() > 2_000_000 {
            self.cache.clear();
        }
        self.cache.insert(clauses, total.clone());
        total
    }
}

fn components(clauses: Vec<Cl>) -> Vec<Vec<Cl>> {
    let vars = vars_of(&clauses);
    let pos: HashMap<u32, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vars.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in &clauses {
        let a = find(&mut parent, pos[&c[0].unsigned_abs()]);
        for l in &c[1..] {
            let b = find(&mut parent, pos[&l.unsigned_abs()]);
            if a != b {
                parent[b] = a;
            }
        }
    }
    let mut groups: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<Vec<Cl>> = Vec::new();
    for c in clauses {
        let r = find(&mut parent, pos[&c[0].unsigned_abs()]);
        let g = *groups.entry(r).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[g].push(c);
    }
    out
}

/// Sets `lit` true and unit-propagates. Returns the reduced clauses and the number of assigned variables.
fn propagate(clauses: &[Cl], lit: i32) -> Option<(Vec<Cl>, usize)> {
    let mut occ: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, c) in clauses.iter().enumerate() {
        for l in c {
            occ.entry(l.unsigned_abs()).or_default().push(i);
        }
    }
    let mut val: HashMap<u32, bool> = HashMap::new();
    let mut queue = vec![lit];
    while let Some(l) = queue.pop() {
        let v = l.unsigned_abs();
        let b = l > 0;
        if let Some(&old) = val.get(&v) {
            if old != b {
                return None;
            }
            continue;
        }
        val.insert(v, b);
        for &ci in occ.get(&v).map(|x| x.as_slice()).unwrap_or(&[]) {
            let mut open = None;
            let mut open_n = 0;
            let mut sat = false;
            for &q in &clauses[ci] {
                match val.get(&q.unsigned_abs()) {
                    Some(&x) if x == (q > 0) => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open_n += 1;
                        open = Some(q);
                    }
                }
            }
            if sat {
                continue;
            }
            match open_n {
                0 => return None,
                1 => queue.push(open.unwrap()),
                _ => {}
            }
        }
    }
    let mut reduced = Vec::new();
    for c in clauses {
        let mut keep = Vec::with_capacity(c.len());
        let mut sat = false;
        for &q in c {
            match val.get(&q.unsigned_abs()) {
                Some(&x) if x == (q > 0) => {
                    sat = true;
                    break;
                }
                Some(_) => {}
                None => keep.push(q),
            }
        }
        if !sat {
            reduced.push(keep);
        }
    }
    Some((reduced, val.len()))
}

/// Widest factor the elimination pass may build before the search takes over.
const ELIMINATION_WIDTH: usize = 18;

/// Exact model count of `f` under `sem`, with no variable cap.
pub fn exact_count(f: &Formula, sem: Semantics) -> BigUint {
    let n = f.num_vars() as usize;
    let mut clauses = Vec::new();
    for c in cnf_clauses(f, sem) {
        if c.is_empty() {
            return BigUint::zero();
        }
        if let Some(c) = normalize(c) {
            clauses.push(c);
        }
    }
    let untouched = n - vars_of(&clauses).len();
    let Some((collapsed, classes)) = collapse_equivalences(n, clauses) else {
        return BigUint::zero();
    };
    // A class whose representative no longer occurs is unconstrained.
    let free_classes = classes - vars_of(&collapsed).len();
    if let Some(inner) = super::eliminate::eliminate_count(&collapsed, ELIMINATION_WIDTH) {
        return inner * pow2(untouched + free_classes);
    }
    // The search recurses once per decision; run it on a roomy stack.
    let inner = std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 30)
            .spawn_scoped(s, || Counter { cache: HashMap::new() }.count(collapsed))
            .expect("spawn counting thread")
            .join()
            .expect("counting thread panicked")
    });
    inner * pow2(untouched + free_classes)
}
