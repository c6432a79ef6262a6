//! Connector and variable gadgets: clause templates, ports, forced semantics and local
//! column placement.
//!
//! Template variable 0 is always the in-port. Connector gadgets place the in-port on column
//! offset 0 and the out-port on the last variable offset; the reduction chains them so one
//! gadget's out-port becomes the next gadget's in-port.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::formula::{Assignment, Clause, Formula, Lit, Semantics, Var};
use crate::layout::{ColumnKind, PaddingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    OneInThree,
    ThreeDistinct,
    Monotone,
    /// Degree-3 split chain with the given (multiple of 4) number of chain variables.
    MonotoneDeg3(usize),
    /// Ladder of the given length.
    SideCycle(usize),
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "BASIC",
            Variant::OneInThree => "ONE_IN_THREE",
            Variant::ThreeDistinct => "THREE_DISTINCT",
            Variant::Monotone => "MONOTONE",
            Variant::MonotoneDeg3(_) => "MONOTONE_DEG3",
            Variant::SideCycle(_) => "SIDE_CYCLE",
        }
    }

    /// Parses `BASIC`, `one-in-three`, `MONOTONE_DEG3(8)`, `side_cycle(3)` and the like.
    pub fn parse(s: &str) -> Option<Variant> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        let (head, arg) = match norm.find('(') {
            Some(i) if norm.ends_with(')') => (&norm[..i], Some(norm[i + 1..norm.len() - 1].parse::<usize>().ok()?)),
            Some(_) => return None,
            None => (norm.as_str(), None),
        };
        Some(match (head, arg) {
            ("BASIC", None) => Variant::Basic,
            ("ONE_IN_THREE", None) => Variant::OneInThree,
            ("THREE_DISTINCT", None) => Variant::ThreeDistinct,
            ("MONOTONE", None) => Variant::Monotone,
            ("MONOTONE_DEG3", a) => Variant::MonotoneDeg3(a.unwrap_or(4)),
            ("SIDE_CYCLE", a) => Variant::SideCycle(a.unwrap_or(2)),
            _ => return None,
        })
    }

    /// Connector gadgets used by the edge-replacement reduction.
    pub fn is_connector(self) -> bool {
        matches!(self, Variant::Basic | Variant::OneInThree | Variant::ThreeDistinct | Variant::Monotone)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::MonotoneDeg3(n) => write!(f, "MONOTONE_DEG3({n})"),
            Variant::SideCycle(k) => write!(f, "SIDE_CYCLE({k})"),
            v => f.write_str(v.name()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("{0} is not a valid gadget size")]
    BadSize(Variant),
    #[error("anchor column {column} is a {found:?} column")]
    WrongAnchorTag { column: usize, found: ColumnKind },
    #[error("gadget needs columns {lo}..={hi} but only 0..{have} exist")]
    InsufficientColumns { lo: i64, hi: i64, have: usize },
    #[error("column {0} has the wrong kind for the gadget")]
    ColumnKindMismatch(usize),
}

/// Relation every satisfying assignment imposes relative to the in-port value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedRelation {
    /// Per template variable: `Some(true)` equals the in-port, `Some(false)` is its negation,
    /// `None` is unconstrained.
    pub forced: Vec<Option<bool>>,
    /// Satisfying assignments of the gadget per in-port value (true, false).
    pub multiplier: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub variant: Variant,
    pub vars: Vec<String>,
    pub in_port: usize,
    pub out_port: usize,
    /// Clauses over template variable indices with a negation flag.
    pub clauses: Vec<Vec<(usize, bool)>>,
    pub semantics: Semantics,
    pub width: usize,
    pub padding: PaddingSpec,
    /// (column offset, rank within that column) per template variable.
    pub var_place: Vec<(i64, usize)>,
    pub clause_place: Vec<(i64, usize)>,
    pub relation: ForcedRelation,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The catalog entry for a variant.
pub fn gadget_spec(variant: Variant) -> Result<GadgetSpec, GadgetError> {
    let p = |v: usize| (v, false);
    let n = |v: usize| (v, true);
    let spec = match variant {
        Variant::Basic => GadgetSpec {
            variant,
            vars: names(&["x", "x'"]),
            in_port: 0,
            out_port: 1,
            clauses: vec![vec![n(0), p(1)], vec![p(0), n(1)]],
            semantics: Semantics::Cnf,
            width: 2,
            padding: PaddingSpec::NONE,
            var_place: vec![(0, 0), (2, 0)],
            clause_place: vec![(1, 0), (1, 1)],
            relation: ForcedRelation { forced: vec![Some(true), Some(true)], multiplier: (1, 1) },
        },
        Variant::OneInThree => GadgetSpec {
            variant,
            vars: names(&["x", "x'", "a", "b"]),
            in_port: 0,
            out_port: 1,
            clauses: vec![vec![p(0), p(2), p(3)], vec![p(1), p(2), p(3)]],
            semantics: Semantics::OneInThree,
            width: 4,
            padding: PaddingSpec::new(2, 1),
            var_place: vec![(0, 0), (4, 0), (2, 0), (2, 1)],
            clause_place: vec![(1, 0), (3, 0)],
            relation: ForcedRelation { forced: vec![Some(true), Some(true), None, None], multiplier: (1, 2) },
        },
        Variant::ThreeDistinct => {
            let (x, xp, a, b, u, ap, bp, up) = (0, 1, 2, 3, 4, 5, 6, 7);
            GadgetSpec {
                variant,
                vars: names(&["x", "x'", "a", "b", "u", "a'", "b'", "u'"]),
                in_port: 0,
                out_port: 1,
                clauses: vec![
                    vec![n(x), p(a), p(u)],
                    vec![p(xp), n(a), p(u)],
                    vec![n(x), p(b), n(u)],
                    vec![p(xp), n(b), n(u)],
                    vec![n(xp), p(ap), p(up)],
                    vec![p(x), n(ap), p(up)],
                    vec![n(xp), p(bp), n(up)],
                    vec![p(x), n(bp), n(up)],
                ],
                semantics: Semantics::Cnf,
                width: 4,
                padding: PaddingSpec::new(4, 3),
                // Column 2 holds a, u, b, a', u', b' in that order.
                var_place: vec![(0, 0), (4, 0), (2, 0), (2, 2), (2, 1), (2, 3), (2, 5), (2, 4)],
                // Clauses containing x sit next to it, those containing x' next to x'.
                clause_place: vec![(1, 0), (3, 0), (1, 1), (3, 1), (3, 2), (1, 2), (3, 3), (1, 3)],
                relation: ForcedRelation { forced: vec![Some(true), Some(true), None, None, None, None, None, None], multiplier: (16, 16) },
            }
        }
        Variant::Monotone => GadgetSpec {
            variant,
            vars: names(&["x", "x'", "xbar"]),
            in_port: 0,
            out_port: 1,
            clauses: vec![vec![p(0), p(2)], vec![n(0), n(2)], vec![p(2), p(1)], vec![n(2), n(1)]],
            semantics: Semantics::Cnf,
            width: 4,
            padding: PaddingSpec::new(4, 3),
            var_place: vec![(0, 0), (4, 0), (2, 0)],
            clause_place: vec![(1, 0), (1, 1), (3, 0), (3, 1)],
            relation: ForcedRelation { forced: vec![Some(true), Some(true), Some(false)], multiplier: (1, 1) },
        },
        Variant::MonotoneDeg3(len) => {
            if len < 4 || len % 4 != 0 {
                return Err(GadgetError::BadSize(variant));
            }
            let half = len / 2;
            let vars = (0..len).map(|i| format!("y{i}")).collect();
            let col = |i: usize| 2 * i.min(len - i) as i64;
            let rank = |i: usize| usize::from(i > half);
            let mut clauses = Vec::new();
            let mut clause_place = Vec::new();
            for j in 0..len {
                let k = (j + 1) % len;
                clauses.push(if j % 2 == 0 { vec![n(j), n(k)] } else { vec![p(j), p(k)] });
                let c = if j < half { 2 * j as i64 + 1 } else { 2 * (len - j) as i64 - 1 };
                clause_place.push((c, usize::from(j >= half)));
            }
            GadgetSpec {
                variant,
                vars,
                in_port: 0,
                out_port: half,
                clauses,
                semantics: Semantics::Cnf,
                width: len,
                padding: PaddingSpec::NONE,
                var_place: (0..len).map(|i| (col(i), rank(i))).collect(),
                clause_place,
                relation: ForcedRelation {
                    forced: (0..len).map(|i| Some(i % 2 == 0)).collect(),
                    multiplier: (1, 1),
                },
            }
        }
        Variant::SideCycle(k) => {
            if k == 0 {
                return Err(GadgetError::BadSize(variant));
            }
            let mut vars: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
            vars.extend((1..=k).map(|i| format!("xbar{i}")));
            let mut clauses = Vec::new();
            let mut clause_place = Vec::new();
            for i in 0..k - 1 {
                clauses.push(vec![n(i), p(i + 1)]);
                clause_place.push((2 * i as i64 + 1, 0));
                clauses.push(vec![n(k + i), p(k + i + 1)]);
                clause_place.push((2 * i as i64 + 1, 1));
            }
            clauses.push(vec![p(0), p(k)]);
            clause_place.push((-1, 0));
            clauses.push(vec![n(k - 1), n(2 * k - 1)]);
            clause_place.push((2 * k as i64 - 1, 0));
            let mut forced = vec![Some(true); k];
            forced.extend(vec![Some(false); k]);
            GadgetSpec {
                variant,
                vars,
                in_port: 0,
                out_port: k - 1,
                clauses,
                semantics: Semantics::Cnf,
                width: 2 * k,
                padding: PaddingSpec::NONE,
                var_place: (0..2 * k).map(|i| (2 * (i % k) as i64, i / k)).collect(),
                clause_place,
                relation: ForcedRelation { forced, multiplier: (1, 1) },
            }
        }
    };
    Ok(spec)
}

impl GadgetSpec {
    /// The gadget alone as a formula over variables `1..=vars.len()`.
    pub fn template_formula(&self) -> Formula {
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|&(v, neg)| Lit::new(v as Var + 1, neg)).collect())
            .collect();
        Formula::from_clauses(self.vars.len() as u32, clauses).expect("template indices are in range")
    }

    /// Whether `a` (over the template formula) obeys the forced relation.
    pub fn obeys_relation(&self, a: &Assignment) -> bool {
        let x = a.get(self.in_port as Var + 1);
        self.relation
            .forced
            .iter()
            .enumerate()
            .all(|(i, f)| f.is_none_or(|same| a.get(i as Var + 1) == (x == same)))
    }

    fn relation_text(&self) -> String {
        let x = &self.vars[self.in_port];
        let parts: Vec<String> = self
            .relation
            .forced
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.in_port)
            .filter_map(|(i, f)| f.map(|same| format!("{}={}{}", self.vars[i], if same { "" } else { "!" }, x)))
            .collect();
        parts.join(" ")
    }

    fn lit_text(&self, &(v, neg): &(usize, bool)) -> String {
        format!("{}{}", if neg { "-" } else { "" }, self.vars[v])
    }
}

/// Structured text describing the fixed catalog plus sized entries for `MONOTONE_DEG3(4)`
/// and `SIDE_CYCLE(2)`.
pub fn catalog_dump() -> String {
    let variants = [
        Variant::Basic,
        Variant::OneInThree,
        Variant::ThreeDistinct,
        Variant::Monotone,
        Variant::MonotoneDeg3(4),
        Variant::SideCycle(2),
    ];
    let mut s = String::new();
    for v in variants {
        let g = gadget_spec(v).expect("catalog sizes are valid");
        let sem = match g.semantics {
            Semantics::Cnf => "cnf",
            Semantics::OneInThree => "one-in-three",
        };
        let _ = writeln!(s, "gadget {} width {} semantics {}", v, g.width, sem);
        let _ = writeln!(
            s,
            "  padding {} {}",
            g.padding.pairs_after_variable_segment, g.padding.pairs_after_clause_segment
        );
        let _ = writeln!(s, "  ports {} {}", g.vars[g.in_port], g.vars[g.out_port]);
        let internals: Vec<&str> = (0..g.vars.len())
            .filter(|&i| i != g.in_port && i != g.out_port)
            .map(|i| g.vars[i].as_str())
            .collect();
        let _ = writeln!(s, "  internal {}", internals.join(" "));
        for c in &g.clauses {
            let lits: Vec<String> = c.iter().map(|l| g.lit_text(l)).collect();
            let _ = writeln!(s, "  clause {}", lits.join(" "));
        }
        let _ = writeln!(s, "  forced {}", g.relation_text());
        let _ = writeln!(s, "  multiplier {} {}", g.relation.multiplier.0, g.relation.multiplier.1);
    }
    s
}

/// Allocates fresh variable ids and records their names `g<gadget>_<template>`.
#[derive(Clone, Debug)]
pub struct FreshSupply {
    first: Var,
    next: Var,
    gadgets: usize,
    names: Vec<String>,
}

impl FreshSupply {
    /// Fresh ids start right after `num_vars`.
    pub fn new(num_vars: u32) -> FreshSupply {
        FreshSupply { first: num_vars + 1, next: num_vars + 1, gadgets: 0, names: Vec::new() }
    }

    pub fn begin_gadget(&mut self) -> usize {
        self.gadgets += 1;
        self.gadgets
    }

    pub fn fresh(&mut self, gadget: usize, template: &str) -> Var {
        let v = self.next;
        self.next += 1;
        self.names.push(format!("g{gadget}_{template}"));
        v
    }

    /// Highest id handed out so far (or the original variable count).
    pub fn num_vars(&self) -> u32 {
        self.next - 1
    }

    pub fn gadget_count(&self) -> usize {
        self.gadgets
    }

    pub fn name(&self, v: Var) -> Option<&str> {
        v.checked_sub(self.first).and_then(|i| self.names.get(i as usize)).map(String::as_str)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstantiation {
    pub variant: Variant,
    pub id: usize,
    /// Template variable index to concrete variable.
    pub mapping: Vec<Var>,
    pub clauses: Vec<Clause>,
    /// Absolute (column, rank) per template variable, then per clause.
    pub var_columns: Vec<(usize, usize)>,
    pub clause_columns: Vec<(usize, usize)>,
}

impl GadgetInstantiation {
    pub fn in_port(&self, spec: &GadgetSpec) -> Var {
        self.mapping[spec.in_port]
    }

    pub fn out_port(&self, spec: &GadgetSpec) -> Var {
        self.mapping[spec.out_port]
    }
}

/// Instantiates `spec` with `in_port` as its in-port and fresh variables elsewhere. Offsets
/// are measured from `anchor` in `direction` (+1 right, -1 left) over the column kinds.
pub fn instantiate(
    spec: &GadgetSpec,
    in_port: Var,
    supply: &mut FreshSupply,
    anchor: usize,
    direction: i64,
    columns: &[ColumnKind],
) -> Result<GadgetInstantiation, GadgetError> {
    match columns.get(anchor) {
        Some(ColumnKind::Variable) => {}
        Some(&found) => return Err(GadgetError::WrongAnchorTag { column: anchor, found }),
        None => return Err(GadgetError::InsufficientColumns { lo: anchor as i64, hi: anchor as i64, have: columns.len() }),
    }
    let abs = |off: i64| anchor as i64 + direction * off;
    let offs = spec.var_place.iter().chain(&spec.clause_place).map(|p| abs(p.0));
    let (lo, hi) = offs.fold((i64::MAX, i64::MIN), |(a, b), c| (a.min(c), b.max(c)));
    if lo < 0 || hi >= columns.len() as i64 {
        return Err(GadgetError::InsufficientColumns { lo, hi, have: columns.len() });
    }
    let place = |list: &[(i64, usize)], want: ColumnKind| -> Result<Vec<(usize, usize)>, GadgetError> {
        list.iter()
            .map(|&(off, rank)| {
                let c = abs(off) as usize;
                if columns[c] != want {
                    return Err(GadgetError::ColumnKindMismatch(c));
                }
                Ok((c, rank))
            })
            .collect()
    };
    place(&spec.var_place, ColumnKind::Variable)?;
    place(&spec.clause_place, ColumnKind::Clause)?;
    Ok(instantiate_with(spec, in_port, supply, |off| abs(off) as usize))
}

/// Instantiates without column checks; `column` maps each template offset to a column.
/// Used for chains that bend, where offsets do not translate to a straight run of columns.
pub fn instantiate_with(
    spec: &GadgetSpec,
    in_port: Var,
    supply: &mut FreshSupply,
    column: impl Fn(i64) -> usize,
) -> GadgetInstantiation {
    let id = supply.begin_gadget();
    let mapping: Vec<Var> = spec
        .vars
        .iter()
        .enumerate()
        .map(|(i, name)| if i == spec.in_port { in_port } else { supply.fresh(id, name) })
        .collect();
    let clauses = spec
        .clauses
        .iter()
        .map(|c| c.iter().map(|&(v, neg)| Lit::new(mapping[v], neg)).collect())
        .collect();
    let var_columns = spec.var_place.iter().map(|&(off, r)| (column(off), r)).collect();
    let clause_columns = spec.clause_place.iter().map(|&(off, r)| (column(off), r)).collect();
    GadgetInstantiation { variant: spec.variant, id, mapping, clauses, var_columns, clause_columns }
}

/// Relation and multiplier of a variant, as listed in the catalog.
pub fn forced_relation(variant: Variant) -> Result<ForcedRelation, GadgetError> {
    gadget_spec(variant).map(|g| g.relation)
}
