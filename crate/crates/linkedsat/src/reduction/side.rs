//! The side-separated construction for monotone var-linked formulas.
//!
//! Every variable becomes a ladder of copies running along its axis segment: a lower row
//! holding its value and an upper row holding the complement. A clause is placed right of
//! its middle leg; its left and right legs are carried by connector ladders stacked above
//! (positive clauses) or below (negated clauses) the variable ladders, one height band per
//! nesting level. Links between a variable ladder and a connector use two implications at
//! distinct copies. Every negated occurrence then lies in the column left of its clause
//! and every positive one in the column right of it, so with κ running up the clause
//! columns the two kinds of edges fall on opposite sides.
//!
//! Column layout per leg slot `s` (base column `16 s`): a connector starting at the slot
//! occupies columns `16s-7 ..= 16s`, a middle leg uses `16s ..= 16s+2` with the clause at
//! `16s+1`, and a connector ending at the slot occupies `16s-6 ..= 16s`.

use std::collections::BTreeMap;

use super::route::{check_levels, kappa_orders};
use super::{LinkedInstance, Method, Provenance, ReductionError};
use crate::formula::{Clause, Formula, Lit, Var};
use crate::gadgets::{gadget_spec, FreshSupply, Variant};
use crate::layout::{three_legged_layout, ColumnKind, Side, Q};

const UNIT: i64 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Out {
    Var(Var),
    Clause(usize),
}

/// A placed ladder: copies per column for its two rows.
struct Ladder {
    id: usize,
    first: i64,
    near: Vec<Var>,
    far: Vec<Var>,
}

impl Ladder {
    fn near_at(&self, col: i64) -> Var {
        self.near[((col - self.first) / 2) as usize]
    }

    fn far_at(&self, col: i64) -> Var {
        self.far[((col - self.first) / 2) as usize]
    }
}

struct Builder {
    supply: FreshSupply,
    clauses: Vec<Clause>,
    items: BTreeMap<i64, Vec<(Q, Out)>>,
}

impl Builder {
    fn put(&mut self, col: i64, h: Q, o: Out) {
        self.items.entry(col).or_default().push((h, o));
    }

    fn clause(&mut self, col: i64, h: Q, c: Clause) {
        let j = self.clauses.len();
        self.clauses.push(c);
        self.put(col, h, Out::Clause(j));
    }

    /// A SIDE_CYCLE ladder of `k` copies from column `first`, near row at height `near`
    /// and far row at `far`. `port` reuses an existing variable as the first near copy.
    fn ladder(&mut self, k: usize, first: i64, near: Q, far: Q, port: Option<Var>) -> Ladder {
        let spec = gadget_spec(Variant::SideCycle(k)).expect("ladders have at least one copy");
        let id = self.supply.begin_gadget();
        let mapping: Vec<Var> = spec
            .vars
            .iter()
            .enumerate()
            .map(|(i, name)| match port {
                Some(v) if i == spec.in_port => v,
                _ => self.supply.fresh(id, name),
            })
            .collect();
        let row = |r: usize| if r == 0 { near } else { far };
        for (t, &(off, r)) in spec.var_place.iter().enumerate() {
            self.put(first + off, row(r), Out::Var(mapping[t]));
        }
        let quarter = (far - near) / Q::from_integer(4);
        let (s_h, t_h) = (near + quarter, near + quarter * Q::from_integer(3));
        let last = spec.clauses.len() - 1;
        for (j, (c, &(off, r))) in spec.clauses.iter().zip(&spec.clause_place).enumerate() {
            let h = match j {
                _ if j == last => t_h,
                _ if j == last - 1 => s_h,
                _ => row(r),
            };
            self.clause(first + off, h, c.iter().map(|&(v, neg)| Lit::new(mapping[v], neg)).collect());
        }
        Ladder { id, first, near: mapping[..k].to_vec(), far: mapping[k..].to_vec() }
    }

    /// Forces the connector's near row to equal the variable's near row through
    /// `(-g@a | k@a+2)` and `(-k@b-2 | g@b)`.
    fn link(&mut self, g: &Ladder, k: &Ladder, a: i64, b: i64, h: Q) {
        self.clause(a + 1, h, vec![Lit::neg(g.near_at(a)), Lit::pos(k.near_at(a + 2))]);
        self.clause(b - 1, h, vec![Lit::neg(k.near_at(b - 2)), Lit::pos(g.near_at(b))]);
    }
}

fn q(n: i64) -> Q {
    Q::from_integer(n as i128)
}

/// Heights of the near and far rows of a connector band at `level`.
fn band(side: Side, level: usize) -> (Q, Q) {
    let l = level as i64;
    match side {
        Side::Above => (q(2 * l), q(2 * l + 1)),
        Side::Below => (q(1 - 2 * l), q(-2 * l)),
    }
}

/// Replaces each variable by a SIDE_CYCLE ladder and each clause by one whose negated
/// literals point left and positive literal points right. Positive clauses go above the
/// variable axis, negated ones below; the spans on each side must be laminar for `order`.
pub fn reduce_side(f: &Formula, order: &[Var]) -> Result<LinkedInstance, ReductionError> {
    let c = f.classify();
    if !c.monotone || f.has_empty_clause() {
        return Err(ReductionError::ClassMismatch { variant: Method::Side, need: "monotone non-empty clauses" });
    }
    let sides: Vec<Side> =
        f.clauses().iter().map(|c| if c[0].negated { Side::Below } else { Side::Above }).collect();
    let d = three_legged_layout(f, order, &sides)?;
    let nv = f.num_vars();
    let mut b = Builder { supply: FreshSupply::new(nv), clauses: f.clauses().to_vec(), items: BTreeMap::new() };
    let (zero, one) = (q(0), q(1));

    let mut gadgets = Vec::with_capacity(nv as usize);
    for v in 1..=nv {
        let (s, e) = d.var_segments[v as usize - 1];
        let first = UNIT * s - 8;
        let k = ((UNIT * e + 8 - first) / 2 + 1) as usize;
        gadgets.push(b.ladder(k, first, zero, one, Some(v)));
    }
    // The gadget row facing each side: the complement row above, the value row below.
    let near_of = |g: &Ladder, side: Side, col: i64| match side {
        Side::Above => g.far_at(col),
        Side::Below => g.near_at(col),
    };
    let gadget_h = |side: Side| match side {
        Side::Above => one,
        Side::Below => zero,
    };

    let mut chains = Vec::new();
    for (j, lc) in d.clauses.iter().enumerate() {
        let side = lc.side;
        let (near, far) = band(side, lc.level);
        let px = lc.point.0;
        let x = UNIT * px + 1;
        let link_h = (gadget_h(side) + near) / q(2);
        let mut lits = Vec::with_capacity(lc.legs.len());
        for &(v, foot) in &lc.legs {
            let g = &gadgets[v as usize - 1];
            let base = UNIT * foot;
            if foot == px {
                lits.push(Lit::neg(near_of(g, side, base)));
                chains.push((v, j, Vec::new()));
                continue;
            }
            // A gadget-side proxy for linking: its near row is the row facing this side.
            let proxy = Ladder {
                id: g.id,
                first: g.first,
                near: match side {
                    Side::Above => g.far.clone(),
                    Side::Below => g.near.clone(),
                },
                far: Vec::new(),
            };
            if foot < px {
                let first = base - 6;
                let k = ((x - 1 - first) / 2 + 1) as usize;
                let con = b.ladder(k, first, near, far, None);
                b.link(&proxy, &con, first, base, link_h);
                lits.push(Lit::neg(con.near_at(x - 1)));
                chains.push((v, j, vec![con.id]));
            } else {
                let first = x + 1;
                let k = ((base - 2 - first) / 2 + 1) as usize;
                let con = b.ladder(k, first, near, far, None);
                b.link(&proxy, &con, base - 6, base, link_h);
                lits.push(Lit::pos(con.far_at(x + 1)));
                chains.push((v, j, vec![con.id]));
            }
        }
        b.clauses[j] = lits;
        b.put(x, (near + far) / q(2), Out::Clause(j));
    }

    let formula = Formula::from_clauses(b.supply.num_vars(), b.clauses).expect("fresh ids are in range");
    let lo = *b.items.keys().next().expect("every formula has a variable");
    let shift = -lo + lo.rem_euclid(2);
    let width = (*b.items.keys().last().unwrap() + shift + 1) as usize;
    let columns: Vec<ColumnKind> =
        (0..width).map(|c| if c % 2 == 0 { ColumnKind::Variable } else { ColumnKind::Clause }).collect();
    let mut var_slots = vec![(usize::MAX, 0); formula.num_vars() as usize];
    let mut clause_slots = vec![(usize::MAX, 0); formula.num_clauses()];
    for (&col, list) in b.items.iter_mut() {
        let c = (col + shift) as usize;
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ReductionError::ClearanceViolated { column: c, detail: format!("{:?} and {:?} coincide", w[0].1, w[1].1) });
        }
        for (rank, &(_, o)) in list.iter().enumerate() {
            match o {
                Out::Var(v) => var_slots[v as usize - 1] = (c, rank),
                Out::Clause(j) => clause_slots[j] = (c, rank),
            }
        }
    }
    debug_assert!(var_slots.iter().chain(&clause_slots).all(|s| s.0 != usize::MAX));
    let mut level_edges = Vec::new();
    for (j, cl) in formula.clauses().iter().enumerate() {
        for l in cl {
            level_edges.push((clause_slots[j], var_slots[l.var as usize - 1]));
        }
    }
    check_levels(columns.len(), &level_edges)?;

    let (kappa_clauses, kappa_vars) = kappa_orders(&columns, &var_slots, &clause_slots);
    let provenance = Provenance {
        original_vars: nv,
        original_clauses: f.num_clauses(),
        gadgets: b.supply.gadget_count(),
        chains,
        fresh_names: (nv + 1..=b.supply.num_vars()).map(|v| b.supply.name(v).unwrap().to_string()).collect(),
    };
    Ok(LinkedInstance {
        method: Method::Side,
        formula,
        kappa_clauses,
        kappa_vars,
        columns,
        var_slots,
        clause_slots,
        provenance,
    })
}
