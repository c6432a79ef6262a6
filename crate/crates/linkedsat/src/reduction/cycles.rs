use super::{LinkedInstance, Slot};
use crate::layout::ColumnKind;

/// A cycle over incidence-graph vertices: variable `v` is vertex `v - 1`, clause `j` is
/// vertex `num_vars + j`. The closing edge from the last vertex to the first is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    pub vertices: Vec<usize>,
}

/// κ as one cycle: its clause part, then its variable part.
pub fn kappa_cycle(li: &LinkedInstance) -> CycleSpec {
    let nv = li.formula.num_vars() as usize;
    let vertices = li
        .kappa_clauses
        .iter()
        .map(|&j| nv + j)
        .chain(li.kappa_vars.iter().map(|&v| v as usize - 1))
        .collect();
    CycleSpec { vertices }
}

/// Visits the columns of `kind` left to right, alternating upward and downward.
fn serpentine(li: &LinkedInstance, kind: ColumnKind, slots: &[Slot], offset: usize) -> CycleSpec {
    let mut per_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); li.columns.len()];
    for (i, &(c, r)) in slots.iter().enumerate() {
        per_col[c].push((r, offset + i));
    }
    let mut vertices = Vec::with_capacity(slots.len());
    let mut upward = true;
    for (c, list) in per_col.iter_mut().enumerate() {
        if li.columns[c] != kind || list.is_empty() {
            continue;
        }
        list.sort_unstable();
        if !upward {
            list.reverse();
        }
        vertices.extend(list.iter().map(|x| x.1));
        upward = !upward;
    }
    CycleSpec { vertices }
}

/// The cycle H through every variable.
pub fn emit_variable_cycle(li: &LinkedInstance) -> CycleSpec {
    serpentine(li, ColumnKind::Variable, &li.var_slots, 0)
}

/// The cycle H' through every clause.
pub fn emit_clause_cycle(li: &LinkedInstance) -> CycleSpec {
    serpentine(li, ColumnKind::Clause, &li.clause_slots, li.formula.num_vars() as usize)
}
