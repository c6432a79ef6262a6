//! Routes every drawing edge through the columns it crosses, adds detours at clauses whose
//! incoming chains arrive from the right, and expands route points into gadget members.
//!
//! Items in a column are ordered by (height, offset): geometric crossings have offset 0;
//! detour points share the clause's height and use small offsets to sit just above or
//! below it. The resulting level graph is checked for crossings between adjacent columns.

use std::collections::BTreeMap;

use super::{LinkedInstance, Method, Provenance, ReductionError, Slot};
use crate::formula::{Clause, Formula, Lit, Var};
use crate::gadgets::{gadget_spec, instantiate_with, FreshSupply, Variant};
use crate::layout::{build_r_drawing_geom, ColumnKind, GridDrawing, RDrawing, Q};

type Key = (Q, i32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Vertex(usize),
    Point(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Out {
    Var(Var),
    Clause(usize),
}

fn clearance(column: usize, detail: impl Into<String>) -> ReductionError {
    ReductionError::ClearanceViolated { column, detail: detail.into() }
}

fn last_key(r: &RDrawing, points: &[(usize, Key)], var: usize) -> Key {
    points.last().map(|p| p.1).unwrap_or((Q::from_integer(r.vertex_y[var] as i128), 0))
}

/// Appends the straddle and overshoot points for chains reaching clauses from the right.
fn add_detours(r: &RDrawing, incident: &[Vec<usize>], points: &mut [Vec<(usize, Key)>]) -> Result<(), ReductionError> {
    for c in r.num_vars..r.vertex_column.len() {
        let x = r.vertex_column[c];
        let y = Q::from_integer(r.vertex_y[c] as i128);
        let mut fan: Vec<Key> = Vec::new();
        let mut right: Vec<(Key, usize)> = Vec::new();
        for &e in &incident[c] {
            let v = r.edges[e].0;
            let k = last_key(r, &points[e], v);
            if r.vertex_column[v] < x {
                fan.push(k);
            } else {
                right.push((k, e));
            }
        }
        right.sort();
        let fan_top = fan.iter().map(|k| k.0).max().map_or(y, |t| t.max(y));
        let fan_bottom = fan.iter().map(|k| k.0).min().map_or(y, |b| b.min(y));
        match right.len() {
            0 => {}
            1 | 2 => {
                let top = right[right.len() - 1].1;
                points[top].extend([(x, (y, 1)), (x - 1, (fan_top, 1))]);
                if right.len() == 2 {
                    points[right[0].1].extend([(x, (y, -1)), (x - 1, (fan_bottom, -1))]);
                }
            }
            3 if fan.is_empty() => {
                if x < 5 {
                    return Err(clearance(x, "overshoot needs five columns left of the clause"));
                }
                let (bottom, middle, top) = (right[0].1, right[1].1, right[2].1);
                let loop_points = (0..=5)
                    .map(|j| (x - j, (y, if j == 5 { 0 } else { 2 })))
                    .chain((1..=4).rev().map(|j| (x - j, (y, -1))));
                points[top].extend(loop_points);
                points[middle].extend([(x, (y, 1)), (x - 1, (y, 1))]);
                points[bottom].extend([(x, (y, -1)), (x - 1, (y, -2))]);
            }
            _ => return Err(clearance(x, "clause has too many chains arriving from the right")),
        }
    }
    Ok(())
}

/// Checks that no two edges between adjacent columns cross.
pub(super) fn check_levels(columns: usize, edges: &[(Slot, Slot)]) -> Result<(), ReductionError> {
    let mut by_gap: Vec<Vec<(usize, usize)>> = vec![Vec::new(); columns];
    for &(a, b) in edges {
        let (l, r) = if a.0 < b.0 { (a, b) } else { (b, a) };
        if r.0 != l.0 + 1 {
            return Err(clearance(l.0, "edge does not join adjacent columns"));
        }
        by_gap[l.0].push((l.1, r.1));
    }
    for (gap, list) in by_gap.iter_mut().enumerate() {
        list.sort_unstable();
        let mut prev_max = 0usize;
        let mut i = 0;
        while i < list.len() {
            let mut j = i;
            while j < list.len() && list[j].0 == list[i].0 {
                if list[j].1 < prev_max {
                    return Err(clearance(gap, "edges cross between this column and the next"));
                }
                j += 1;
            }
            prev_max = prev_max.max(list[j - 1].1);
            i = j;
        }
    }
    Ok(())
}

/// `geometry`, when given, holds the positions edge heights are interpolated in (see
/// `build_r_drawing_geom`); otherwise `d` itself is the straight-line geometry.
pub(super) fn build(
    f: &Formula,
    d: &GridDrawing,
    geometry: Option<&[(Q, Q)]>,
    variant: Variant,
) -> Result<LinkedInstance, ReductionError> {
    let spec = gadget_spec(variant)?;
    let width = spec.width;
    let nv = d.num_vars;
    let m = f.num_clauses();
    let n = d.pos.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(_, c)) in d.edges.iter().enumerate() {
        incident[c].push(e);
    }
    let all_right = |c: usize| incident[c].iter().all(|&e| d.pos[d.edges[e].0].0 > d.pos[c].0);
    let mut extra = BTreeMap::new();
    if variant == Variant::OneInThree {
        for c in nv..n {
            if incident[c].len() >= 3 && all_right(c) {
                extra.insert(d.pos[c].0, 2);
            }
        }
    }
    if geometry.is_some() && width == 4 {
        // Detours run left of their clause at its height; give them squeezed columns there.
        // Whole pairs of pairs keep every chain length a multiple of four.
        for c in nv..n {
            let right = incident[c].iter().filter(|&&e| d.pos[d.edges[e].0].0 > d.pos[c].0).count();
            let need = match right {
                0 => 0,
                1 | 2 => 2,
                _ => 4,
            };
            let slot = extra.entry(d.pos[c].0).or_insert(0);
            *slot = (*slot).max(need);
        }
    }
    let r = build_r_drawing_geom(d, geometry, spec.padding, &extra, geometry.is_some())?;
    let mut points: Vec<Vec<(usize, Key)>> =
        r.crossings.iter().map(|cr| cr.iter().map(|&(c, y)| (c, (y, 0))).collect()).collect();
    if width == 4 {
        add_detours(&r, &incident, &mut points)?;
    }

    // Order every column.
    let mut cols: Vec<Vec<(Key, Item)>> = vec![Vec::new(); r.columns.len()];
    for v in 0..n {
        cols[r.vertex_column[v]].push(((Q::from_integer(r.vertex_y[v] as i128), 0), Item::Vertex(v)));
    }
    for (e, pts) in points.iter().enumerate() {
        for (i, &(c, k)) in pts.iter().enumerate() {
            cols[c].push((k, Item::Point(e, i)));
        }
    }
    for (c, list) in cols.iter_mut().enumerate() {
        list.sort_by(|a, b| a.0.cmp(&b.0));
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(clearance(c, "two items coincide"));
        }
    }

    // Gadget chains.
    let mut supply = FreshSupply::new(f.num_vars());
    let mut gadget_clauses: Vec<Clause> = Vec::new();
    let mut members: Vec<Vec<Vec<(usize, Out)>>> = Vec::with_capacity(points.len());
    let mut port_of_edge: Vec<Var> = Vec::with_capacity(points.len());
    let mut chains = Vec::with_capacity(points.len());
    for (e, pts) in points.iter().enumerate() {
        let (v, c) = r.edges[e];
        if pts.len() % width != 0 {
            return Err(clearance(r.vertex_column[c], format!("chain of length {} does not fit width {width}", pts.len())));
        }
        let mut per_point: Vec<Vec<(usize, Out)>> = vec![Vec::new(); pts.len()];
        let mut port = v as Var + 1;
        let mut ids = Vec::new();
        for base in (0..pts.len()).step_by(width) {
            let at = |off: i64| if off == 0 { r.vertex_column[v] } else { pts[base + off as usize - 1].0 };
            let first_clause = m + gadget_clauses.len();
            let inst = instantiate_with(&spec, port, &mut supply, at);
            for (t, &(off, rank)) in spec.var_place.iter().enumerate() {
                if off > 0 {
                    per_point[base + off as usize - 1].push((rank, Out::Var(inst.mapping[t])));
                }
            }
            for (k, &(off, rank)) in spec.clause_place.iter().enumerate() {
                per_point[base + off as usize - 1].push((rank, Out::Clause(first_clause + k)));
            }
            port = inst.mapping[spec.out_port];
            ids.push(inst.id);
            gadget_clauses.extend(inst.clauses);
        }
        for p in &mut per_point {
            p.sort_by_key(|x| x.0);
        }
        members.push(per_point);
        port_of_edge.push(port);
        chains.push((v as Var + 1, c - nv, ids));
    }

    // Substitute the chain ends into the original clauses.
    let mut clauses: Vec<Clause> = f.clauses().to_vec();
    for (e, &(v, c)) in r.edges.iter().enumerate() {
        let old = v as Var + 1;
        for l in clauses[c - nv].iter_mut() {
            if l.var == old {
                *l = Lit::new(port_of_edge[e], l.negated);
            }
        }
    }
    clauses.extend(gadget_clauses);
    let formula = Formula::from_clauses(supply.num_vars(), clauses).expect("fresh ids are in range");

    let mut var_slots = vec![(usize::MAX, 0); formula.num_vars() as usize];
    let mut clause_slots = vec![(usize::MAX, 0); formula.num_clauses()];
    for (c, list) in cols.iter().enumerate() {
        let mut rank = 0;
        let mut place = |o: Out, rank: &mut usize| {
            match o {
                Out::Var(v) => var_slots[v as usize - 1] = (c, *rank),
                Out::Clause(j) => clause_slots[j] = (c, *rank),
            }
            *rank += 1;
        };
        for &(_, item) in list {
            match item {
                Item::Vertex(v) if v < nv => place(Out::Var(v as Var + 1), &mut rank),
                Item::Vertex(v) => place(Out::Clause(v - nv), &mut rank),
                Item::Point(e, i) => {
                    for &(_, o) in &members[e][i] {
                        place(o, &mut rank);
                    }
                }
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
    check_levels(r.columns.len(), &level_edges)?;

    let columns: Vec<ColumnKind> = r.columns.iter().map(|c| c.kind).collect();
    let (kappa_clauses, kappa_vars) = kappa_orders(&columns, &var_slots, &clause_slots);
    let provenance = Provenance {
        original_vars: f.num_vars(),
        original_clauses: m,
        gadgets: supply.gadget_count(),
        chains,
        fresh_names: (f.num_vars() + 1..=supply.num_vars()).map(|v| supply.name(v).unwrap().to_string()).collect(),
    };
    Ok(LinkedInstance {
        method: Method::Connector(variant),
        formula,
        kappa_clauses,
        kappa_vars,
        columns,
        var_slots,
        clause_slots,
        provenance,
    })
}

/// Clause columns left to right, each bottom to top; then variable columns right to left,
/// each top to bottom.
pub(super) fn kappa_orders(columns: &[ColumnKind], var_slots: &[Slot], clause_slots: &[Slot]) -> (Vec<usize>, Vec<Var>) {
    let mut cl: Vec<(Slot, usize)> = clause_slots.iter().enumerate().map(|(j, &s)| (s, j)).collect();
    cl.sort_unstable();
    let mut vs: Vec<(Slot, Var)> = var_slots.iter().enumerate().map(|(v, &s)| (s, v as Var + 1)).collect();
    vs.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    debug_assert!(cl.iter().all(|(s, _)| columns[s.0] == ColumnKind::Clause));
    (cl.into_iter().map(|x| x.1).collect(), vs.into_iter().map(|x| x.1).collect())
}
