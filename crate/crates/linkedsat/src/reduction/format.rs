//! Text serialization of linked instances.
//!
//! ```text
//! [formula]
//! p cnf 3 2
//! ...
//! [kappa]
//! clauses: 1 2
//! vars: 3 1 2
//! [columns]
//! 0 V
//! [positions]
//! v1 0 0
//! c1 1 0
//! [provenance]
//! method BASIC
//! original 2 1
//! gadgets 1
//! chain 1 1 : 1
//! fresh 3 g1_x'
//! ```

use std::fmt::Write as _;

use super::{LinkedInstance, Method, Provenance, ReductionError, Slot};
use crate::formula::{parse_dimacs, Var};
use crate::layout::ColumnKind;

const SECTIONS: [&str; 5] = ["formula", "kappa", "columns", "positions", "provenance"];

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl LinkedInstance {
    /// Byte-stable text form; `parse_linked_instance` reads it back.
    pub fn to_text(&self) -> String {
        let mut s = String::from("[formula]\n");
        s.push_str(&self.formula.to_dimacs());
        s.push_str("[kappa]\n");
        let _ = writeln!(s, "clauses: {}", join(self.kappa_clauses.iter().map(|j| j + 1)));
        let _ = writeln!(s, "vars: {}", join(&self.kappa_vars));
        s.push_str("[columns]\n");
        for (i, k) in self.columns.iter().enumerate() {
            let _ = writeln!(s, "{i} {}", k.tag());
        }
        s.push_str("[positions]\n");
        for (v, p) in self.var_slots.iter().enumerate() {
            let _ = writeln!(s, "v{} {} {}", v + 1, p.0, p.1);
        }
        for (j, p) in self.clause_slots.iter().enumerate() {
            let _ = writeln!(s, "c{} {} {}", j + 1, p.0, p.1);
        }
        let p = &self.provenance;
        s.push_str("[provenance]\n");
        let _ = writeln!(s, "method {}", self.method);
        let _ = writeln!(s, "original {} {}", p.original_vars, p.original_clauses);
        let _ = writeln!(s, "gadgets {}", p.gadgets);
        for (v, c, ids) in &p.chains {
            let _ = write!(s, "chain {v} {} :", c + 1);
            for id in ids {
                let _ = write!(s, " {id}");
            }
            s.push('\n');
        }
        for (i, name) in p.fresh_names.iter().enumerate() {
            let _ = writeln!(s, "fresh {} {name}", p.original_vars as usize + 1 + i);
        }
        s
    }
}

fn err(line: usize, msg: impl Into<String>) -> ReductionError {
    ReductionError::Format { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ReductionError> {
    tok.parse().map_err(|_| err(line, format!("bad number `{tok}`")))
}

fn list<T: std::str::FromStr>(rest: &str, line: usize) -> Result<Vec<T>, ReductionError> {
    rest.split_whitespace().map(|t| num(t, line)).collect()
}

/// Reads the format written by `LinkedInstance::to_text`. Unknown sections are rejected.
pub fn parse_linked_instance(text: &str) -> Result<LinkedInstance, ReductionError> {
    let mut bodies: Vec<Vec<(usize, &str)>> = vec![Vec::new(); SECTIONS.len()];
    let mut seen = [false; 5];
    let mut current: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let i = SECTIONS.iter().position(|&s| s == name).ok_or_else(|| err(line, format!("unknown section [{name}]")))?;
            if seen[i] {
                return Err(err(line, format!("duplicate section [{name}]")));
            }
            seen[i] = true;
            current = Some(i);
            continue;
        }
        if t.is_empty() {
            continue;
        }
        match current {
            Some(i) => bodies[i].push((line, raw)),
            None => return Err(err(line, "content before the first section")),
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(err(text.lines().count().max(1), format!("missing section [{}]", SECTIONS[i])));
    }

    let first_line = |i: usize| bodies[i].first().map_or(1, |x| x.0);
    let dimacs: String = bodies[0].iter().map(|(_, l)| format!("{l}\n")).collect();
    let formula = parse_dimacs(&dimacs).map_err(|e| err(first_line(0) + e.line() - 1, e.to_string()))?;

    let (mut kappa_clauses, mut kappa_vars) = (None, None);
    for &(line, l) in &bodies[1] {
        if let Some(rest) = l.trim().strip_prefix("clauses:") {
            let ids: Vec<usize> = list(rest, line)?;
            if ids.contains(&0) {
                return Err(err(line, "clause ids start at 1"));
            }
            kappa_clauses = Some(ids.into_iter().map(|j| j - 1).collect::<Vec<_>>());
        } else if let Some(rest) = l.trim().strip_prefix("vars:") {
            kappa_vars = Some(list::<Var>(rest, line)?);
        } else {
            return Err(err(line, "expected `clauses:` or `vars:`"));
        }
    }
    let kl = first_line(1);
    let kappa_clauses = kappa_clauses.ok_or_else(|| err(kl, "missing `clauses:` line"))?;
    let kappa_vars = kappa_vars.ok_or_else(|| err(kl, "missing `vars:` line"))?;

    let mut columns = Vec::new();
    for &(line, l) in &bodies[2] {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 2 || num::<usize>(parts[0], line)? != columns.len() {
            return Err(err(line, "expected `<index> V|C` in order"));
        }
        columns.push(match parts[1] {
            "V" => ColumnKind::Variable,
            "C" => ColumnKind::Clause,
            other => return Err(err(line, format!("unknown column kind `{other}`"))),
        });
    }

    let nv = formula.num_vars() as usize;
    let mut var_slots: Vec<Option<Slot>> = vec![None; nv];
    let mut clause_slots: Vec<Option<Slot>> = vec![None; formula.num_clauses()];
    for &(line, l) in &bodies[3] {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(line, "expected `v<id>|c<id> <column> <rank>`"));
        }
        let slot: Slot = (num(parts[1], line)?, num(parts[2], line)?);
        if slot.0 >= columns.len() {
            return Err(err(line, format!("column {} out of range", slot.0)));
        }
        let (table, id) = match parts[0].split_at(1) {
            ("v", id) => (&mut var_slots, num::<usize>(id, line)?),
            ("c", id) => (&mut clause_slots, num::<usize>(id, line)?),
            _ => return Err(err(line, format!("bad vertex `{}`", parts[0]))),
        };
        match id.checked_sub(1).and_then(|i| table.get_mut(i)) {
            Some(cell @ None) => *cell = Some(slot),
            Some(Some(_)) => return Err(err(line, format!("duplicate position for {}", parts[0]))),
            None => return Err(err(line, format!("vertex {} out of range", parts[0]))),
        }
    }
    let pl = first_line(3);
    let var_slots: Vec<Slot> =
        var_slots.into_iter().enumerate().map(|(i, s)| s.ok_or_else(|| err(pl, format!("no position for v{}", i + 1)))).collect::<Result<_, _>>()?;
    let clause_slots: Vec<Slot> = clause_slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| err(pl, format!("no position for c{}", i + 1))))
        .collect::<Result<_, _>>()?;

    let mut method = None;
    let mut provenance = Provenance::default();
    let mut original = false;
    for &(line, l) in &bodies[4] {
        let (key, rest) = l.trim().split_once(' ').unwrap_or((l.trim(), ""));
        match key {
            "method" => method = Some(Method::parse(rest).ok_or_else(|| err(line, format!("unknown method `{rest}`")))?),
            "original" => {
                let v: Vec<usize> = list(rest, line)?;
                if v.len() != 2 {
                    return Err(err(line, "expected `original <vars> <clauses>`"));
                }
                provenance.original_vars = v[0] as u32;
                provenance.original_clauses = v[1];
                original = true;
            }
            "gadgets" => provenance.gadgets = num(rest.trim(), line)?,
            "chain" => {
                let (head, ids) = rest.split_once(':').ok_or_else(|| err(line, "expected `chain <var> <clause> : <ids>`"))?;
                let h: Vec<usize> = list(head, line)?;
                if h.len() != 2 || h[1] == 0 {
                    return Err(err(line, "expected `chain <var> <clause> : <ids>`"));
                }
                provenance.chains.push((h[0] as Var, h[1] - 1, list(ids, line)?));
            }
            "fresh" => {
                let (id, name) = rest.split_once(' ').ok_or_else(|| err(line, "expected `fresh <id> <name>`"))?;
                let want = provenance.original_vars as usize + 1 + provenance.fresh_names.len();
                if num::<usize>(id, line)? != want {
                    return Err(err(line, format!("fresh ids must be consecutive from {want}")));
                }
                provenance.fresh_names.push(name.trim().to_string());
            }
            other => return Err(err(line, format!("unknown provenance key `{other}`"))),
        }
    }
    let vl = first_line(4);
    let method = method.ok_or_else(|| err(vl, "missing `method`"))?;
    if !original {
        return Err(err(vl, "missing `original`"));
    }
    Ok(LinkedInstance { method, formula, kappa_clauses, kappa_vars, columns, var_slots, clause_slots, provenance })
}
