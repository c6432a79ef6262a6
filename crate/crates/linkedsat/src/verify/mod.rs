//! Validators for linked instances, and the seeded instance generator.

mod gen;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use gen::{gen_instance, parse_order_comment, GenClass, GenError, Generated};

use crate::formula::{Formula, Var};
use crate::gadgets::{forced_relation, Variant};
use crate::layout::ColumnKind;
use crate::planarity::{build_incidence_graph, is_planar, union_graph};
use crate::reduction::{emit_clause_cycle, emit_variable_cycle, kappa_cycle, LinkedInstance, Method};
use crate::satisfiers::{brute_count, exact_count};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: &'static str, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(Check { name, verdict, detail: detail.into() });
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One `check <name> pass|fail|skip <detail>` line per check.
    pub fn to_text(&self) -> String {
        self.checks.iter().map(|c| format!("check {} {} {}\n", c.name, c.verdict.name(), c.detail)).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whether κ lists every clause once and then every variable once.
pub fn check_kappa_order(li: &LinkedInstance) -> Result<(), String> {
    let m = li.formula.num_clauses();
    let n = li.formula.num_vars() as usize;
    let mut seen = vec![false; m];
    for &j in &li.kappa_clauses {
        if j >= m || std::mem::replace(&mut seen[j], true) {
            return Err(format!("clause {} repeated or out of range", j + 1));
        }
    }
    if let Some(j) = seen.iter().position(|s| !s) {
        return Err(format!("clause {} missing from the clause part", j + 1));
    }
    let mut seen = vec![false; n];
    for &v in &li.kappa_vars {
        let i = (v as usize).wrapping_sub(1);
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(format!("variable {v} repeated or out of range"));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(format!("variable {} missing from the variable part", i + 1));
    }
    Ok(())
}

/// An incidence edge on the wrong side of κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideViolation {
    /// Position in the flattened clause-by-clause literal list, from 0.
    pub edge: usize,
    pub clause: usize,
    pub var: Var,
    pub reason: String,
}

impl fmt::Display for SideViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {} (clause {}, variable {}): {}", self.edge, self.clause + 1, self.var, self.reason)
    }
}

/// Checks that positive occurrences leave their clause toward the interior of κ and
/// negated ones toward the exterior.
///
/// κ runs up every clause column, so the side of an edge is the direction it leaves the
/// clause column in: right is interior, left exterior. Independently, each side's edges
/// are checked to be pairwise non-interleaved as chords of κ, which is what lets all of
/// them be drawn on that side without crossings.
pub fn check_side_separation(li: &LinkedInstance) -> Result<(), SideViolation> {
    let nv = li.formula.num_vars() as usize;
    let mut at = vec![0usize; li.vertex_count()];
    for (i, &j) in li.kappa_clauses.iter().enumerate() {
        at[nv + j] = i;
    }
    for (i, &v) in li.kappa_vars.iter().enumerate() {
        at[v as usize - 1] = li.kappa_clauses.len() + i;
    }
    let mut chords: [Vec<(usize, usize, usize)>; 2] = [Vec::new(), Vec::new()];
    let mut edge = 0;
    for (j, cl) in li.formula.clauses().iter().enumerate() {
        for l in cl {
            let (cc, vc) = (li.clause_slots[j].0, li.var_slots[l.var as usize - 1].0);
            let bad = |reason: String| SideViolation { edge, clause: j, var: l.var, reason };
            if li.columns.get(cc) != Some(&ColumnKind::Clause) || vc.abs_diff(cc) != 1 {
                return Err(bad("edge does not join adjacent columns".into()));
            }
            let interior = vc > cc;
            if interior == l.negated {
                let (want, got) = if l.negated { ("exterior", "interior") } else { ("interior", "exterior") };
                return Err(bad(format!("{} occurrence should leave to the {want} but leaves to the {got}", if l.negated { "negated" } else { "positive" })));
            }
            let (a, b) = (at[nv + j], at[l.var as usize - 1]);
            chords[interior as usize].push((a.min(b), a.max(b), edge));
            edge += 1;
        }
    }
    for list in &mut chords {
        list.sort_unstable();
        for (i, &(a, b, e)) in list.iter().enumerate() {
            for &(c, d, _) in &list[i + 1..] {
                if c >= b {
                    break;
                }
                if a < c && c < b && b < d {
                    let (j, v) = locate(li, e);
                    return Err(SideViolation { edge: e, clause: j, var: v, reason: "crosses another edge on the same side of κ".into() });
                }
            }
        }
    }
    Ok(())
}

fn locate(li: &LinkedInstance, edge: usize) -> (usize, Var) {
    let mut e = 0;
    for (j, cl) in li.formula.clauses().iter().enumerate() {
        if edge < e + cl.len() {
            return (j, cl[edge - e].var);
        }
        e += cl.len();
    }
    unreachable!("edge ids come from the formula")
}

/// Model count multiplier per gadget, if it does not depend on the port value.
fn per_gadget_multiplier(method: Method) -> Option<u64> {
    match method {
        Method::Side => Some(1),
        Method::Connector(v) => {
            let (t, f) = forced_relation(v).ok()?.multiplier;
            (t == f).then_some(t)
        }
    }
}

fn class_check(method: Method, f: &Formula) -> (bool, &'static str) {
    let c = f.classify();
    match method {
        Method::Connector(Variant::OneInThree) => (c.positive && c.exactly_three_distinct, "positive, three distinct"),
        Method::Connector(Variant::ThreeDistinct) => (c.exactly_three_distinct, "three distinct"),
        Method::Connector(Variant::Monotone) => (c.monotone && c.is_3sat, "monotone 3-sat"),
        Method::Side => (c.is_3sat && c.max_occurrence <= 3, "3-sat, occurrence <= 3"),
        Method::Connector(_) => (c.is_3sat, "3-sat"),
    }
}

/// Runs every applicable check of `li` against the formula it was reduced from.
pub fn verify_linked(li: &LinkedInstance, original: &Formula, method: Method) -> VerificationReport {
    let mut r = VerificationReport::default();
    if li.method != method {
        r.push("method", Verdict::Fail, format!("instance was built by {} not {method}", li.method));
    } else {
        r.push("method", Verdict::Pass, method.to_string());
    }
    let kappa = check_kappa_order(li);
    let kappa_ok = kappa.is_ok();
    r.push("kappa_order", Verdict::of(kappa_ok), kappa.err().unwrap_or_else(|| format!("{} clauses then {} variables", li.kappa_clauses.len(), li.kappa_vars.len())));

    let g = build_incidence_graph(&li.formula);
    match (&g, kappa_ok) {
        (Ok(g), true) => {
            // Verdicts only; a Kuratowski witness for huge outputs is too slow to extract here.
            let planar = |cycles: &[Vec<usize>]| union_graph(&g.graph, cycles).map(|u| is_planar(&u.0)).unwrap_or(false);
            let k = kappa_cycle(li).vertices;
            r.push("union_planar", Verdict::of(planar(&[k])), "incidence graph plus kappa");
            let (h, h2) = (emit_variable_cycle(li).vertices, emit_clause_cycle(li).vertices);
            let one = |c: &Vec<usize>| if c.len() < 3 { None } else { Some(planar(std::slice::from_ref(c))) };
            for (name, c) in [("variable_cycle", &h), ("clause_cycle", &h2)] {
                match one(c) {
                    Some(ok) => r.push(name, Verdict::of(ok), format!("{} vertices", c.len())),
                    None => r.push(name, Verdict::Skip, "fewer than three vertices"),
                }
            }
            if h.len() >= 3 && h2.len() >= 3 {
                r.push("both_cycles", Verdict::Skip, format!("planar={} (not required)", planar(&[h, h2])));
            } else {
                r.push("both_cycles", Verdict::Skip, "fewer than three vertices");
            }
        }
        (Err(e), _) => r.push("union_planar", Verdict::Fail, e.to_string()),
        (_, false) => r.push("union_planar", Verdict::Skip, "kappa order invalid"),
    }

    let (ok, what) = class_check(method, &li.formula);
    r.push("variant_constraints", Verdict::of(ok), what);

    if method == Method::Side {
        match check_side_separation(li) {
            Ok(()) => r.push("side_separation", Verdict::Pass, "positive inside, negated outside"),
            Err(v) => r.push("side_separation", Verdict::Fail, v.to_string()),
        }
    } else {
        r.push("side_separation", Verdict::Skip, "not targeted by this method");
    }

    let sem = method.semantics();
    let gadgets = li.provenance.gadgets;
    match brute_count(original, sem) {
        Err(e) => {
            r.push("equisatisfiable", Verdict::Skip, e.to_string());
            r.push("parsimony", Verdict::Skip, e.to_string());
        }
        Ok(before) => {
            let after = exact_count(&li.formula, sem);
            let detail = format!("in={before} out={after}");
            r.push("equisatisfiable", Verdict::of((before == 0) == after.is_zero()), detail.clone());
            match per_gadget_multiplier(method) {
                Some(m) => {
                    let mult = if m == 1 { BigUint::one() } else { BigUint::from(m).pow(gadgets as u32) };
                    let expect = BigUint::from(before) * &mult;
                    r.push("parsimony", Verdict::of(expect == after), format!("{detail} expected={expect} gadgets={gadgets} multiplier={m}"));
                }
                None => r.push("parsimony", Verdict::Skip, "multiplier depends on the port value"),
            }
        }
    }

    let n = original.num_vars() as usize + original.num_clauses();
    let v = li.vertex_count();
    let c = if n == 0 { 0.0 } else { v as f64 / (n * n) as f64 };
    r.push("size", Verdict::Pass, format!("vertices={v} input={n} c={c:.3}"));
    r
}
