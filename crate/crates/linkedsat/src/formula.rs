//! CNF data model: literals, clauses, DIMACS text and class predicates.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

/// Variable id. Ids are dense and start at 1.
pub type Var = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: Var,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: Var) -> Lit {
        Lit { var, negated: false }
    }

    pub fn neg(var: Var) -> Lit {
        Lit { var, negated: true }
    }

    pub fn new(var: Var, negated: bool) -> Lit {
        Lit { var, negated }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn negate(self) -> Lit {
        Lit { var: self.var, negated: !self.negated }
    }

    /// Truth value of the literal under `value` of its variable.
    pub fn holds(self, value: bool) -> bool {
        value != self.negated
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

pub type Clause = Vec<Lit>;

/// How clauses are interpreted when evaluating or counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// At least one literal true.
    Cnf,
    /// Exactly one literal true.
    OneInThree,
}

/// Total truth assignment; index 0 is variable 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(num_vars: u32) -> Assignment {
        Assignment { values: vec![false; num_vars as usize] }
    }

    pub fn from_values(values: Vec<bool>) -> Assignment {
        Assignment { values }
    }

    pub fn get(&self, var: Var) -> bool {
        self.values[var as usize - 1]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var as usize - 1] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// DIMACS-style `v` line, terminated by `0`.
    pub fn to_v_line(&self) -> String {
        let mut s = String::from("v");
        for (i, &b) in self.values.iter().enumerate() {
            let v = i as i64 + 1;
            let _ = write!(s, " {}", if b { v } else { -v });
        }
        s.push_str(" 0\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("variable {0} is out of range")]
    VarOutOfRange(Var),
    #[error("variable {var} does not occur in clause {clause}")]
    VarNotInClause { clause: usize, var: Var },
    #[error("clause index {0} is out of range")]
    ClauseOutOfRange(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: literal {lit} out of range (1..={max})")]
    LiteralOutOfRange { line: usize, lit: i64, max: u32 },
    #[error("line {line}: clause count mismatch: header says {expected}, found {found}")]
    ClauseCountMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: clause data before header")]
    MissingHeader { line: usize },
    #[error("line {line}: unterminated clause")]
    UnterminatedClause { line: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::MalformedHeader { line, .. }
            | ParseError::LiteralOutOfRange { line, .. }
            | ParseError::ClauseCountMismatch { line, .. }
            | ParseError::InvalidToken { line, .. }
            | ParseError::MissingHeader { line }
            | ParseError::UnterminatedClause { line } => *line,
        }
    }
}

impl Formula {
    pub fn new(num_vars: u32) -> Formula {
        Formula { num_vars, clauses: Vec::new() }
    }

    /// Builds a formula, checking that all variables are in range.
    pub fn from_clauses(num_vars: u32, clauses: Vec<Clause>) -> Result<Formula, FormulaError> {
        for c in &clauses {
            for l in c {
                if l.var == 0 || l.var > num_vars {
                    return Err(FormulaError::VarOutOfRange(l.var));
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    /// Convenience constructor from signed DIMACS literals.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i64]]) -> Result<Formula, FormulaError> {
        let cs = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Lit::new(l.unsigned_abs() as Var, l < 0))
                    .collect()
            })
            .collect();
        Formula::from_clauses(num_vars, cs)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        1..=self.num_vars
    }

    /// Allocates a new variable id.
    pub fn add_var(&mut self) -> Var {
        self.num_vars += 1;
        self.num_vars
    }

    pub fn add_clause(&mut self, clause: Clause) -> Result<usize, FormulaError> {
        for l in &clause {
            if l.var == 0 || l.var > self.num_vars {
                return Err(FormulaError::VarOutOfRange(l.var));
            }
        }
        self.clauses.push(clause);
        Ok(self.clauses.len() - 1)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Distinct variables of clause `i`, in first-occurrence order.
    pub fn clause_vars(&self, i: usize) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for l in &self.clauses[i] {
            if !out.contains(&l.var) {
                out.push(l.var);
            }
        }
        out
    }

    pub fn clause_satisfied(&self, i: usize, a: &Assignment, sem: Semantics) -> bool {
        let trues = self.clauses[i].iter().filter(|l| l.holds(a.get(l.var))).count();
        match sem {
            Semantics::Cnf => trues >= 1,
            Semantics::OneInThree => trues == 1,
        }
    }

    pub fn evaluate(&self, a: &Assignment, sem: Semantics) -> bool {
        (0..self.clauses.len()).all(|i| self.clause_satisfied(i, a, sem))
    }

    /// Replaces the first occurrence of `old` in clause `clause` by `new`, keeping polarity.
    pub fn substitute_occurrence(&self, clause: usize, old: Var, new: Var) -> Result<Formula, FormulaError> {
        let c = self.clauses.get(clause).ok_or(FormulaError::ClauseOutOfRange(clause))?;
        let pos = c
            .iter()
            .position(|l| l.var == old)
            .ok_or(FormulaError::VarNotInClause { clause, var: old })?;
        if new == 0 || new > self.num_vars {
            return Err(FormulaError::VarOutOfRange(new));
        }
        let mut out = self.clone();
        out.clauses[clause][pos].var = new;
        Ok(out)
    }

    /// Byte-stable DIMACS text.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        self.write_clauses(&mut s);
        s
    }

    pub(crate) fn write_clauses(&self, s: &mut String) {
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{} ", l.to_dimacs());
            }
            s.push_str("0\n");
        }
    }

    /// Occurrence count per variable (number of clauses containing it), index 0 = var 1.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0usize; self.num_vars as usize];
        for i in 0..self.clauses.len() {
            for v in self.clause_vars(i) {
                occ[v as usize - 1] += 1;
            }
        }
        occ
    }

    pub fn classify(&self) -> ClassFlags {
        let is_3sat = self.clauses.iter().all(|c| c.len() <= 3);
        let exactly_three_distinct =
            (0..self.clauses.len()).all(|i| self.clauses[i].len() == 3 && self.clause_vars(i).len() == 3);
        let monotone = self
            .clauses
            .iter()
            .all(|c| c.iter().all(|l| l.negated) || c.iter().all(|l| !l.negated));
        let positive = self.clauses.iter().all(|c| c.iter().all(|l| !l.negated));
        let max_occurrence = self.occurrences().into_iter().max().unwrap_or(0);
        ClassFlags { is_3sat, exactly_three_distinct, monotone, positive, max_occurrence }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassFlags {
    pub is_3sat: bool,
    pub exactly_three_distinct: bool,
    pub monotone: bool,
    pub positive: bool,
    pub max_occurrence: usize,
}

impl fmt::Display for ClassFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "is_3sat {}", self.is_3sat)?;
        writeln!(f, "exactly_three_distinct {}", self.exactly_three_distinct)?;
        writeln!(f, "monotone {}", self.monotone)?;
        writeln!(f, "positive {}", self.positive)?;
        writeln!(f, "max_occurrence {}", self.max_occurrence)
    }
}

/// Parses DIMACS CNF. Clauses may span lines; `%` ends the data as in SATLIB files.
pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Clause = Vec::new();
    let mut last_line = 0;
    let mut current_start = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader { line, msg: "duplicate header".into() });
            }
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(ParseError::MalformedHeader { line, msg: "expected `p cnf <vars> <clauses>`".into() });
            }
            let nv = parts[2]
                .parse::<u32>()
                .map_err(|_| ParseError::MalformedHeader { line, msg: format!("bad variable count `{}`", parts[2]) })?;
            let nc = parts[3]
                .parse::<usize>()
                .map_err(|_| ParseError::MalformedHeader { line, msg: format!("bad clause count `{}`", parts[3]) })?;
            header = Some((nv, nc));
            continue;
        }
        let (nv, nc) = header.ok_or(ParseError::MissingHeader { line })?;
        for tok in t.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| ParseError::InvalidToken { line, token: tok.to_string() })?;
            if v == 0 {
                if clauses.len() == nc {
                    return Err(ParseError::ClauseCountMismatch { line, expected: nc, found: nc + 1 });
                }
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if v.unsigned_abs() > nv as u64 {
                return Err(ParseError::LiteralOutOfRange { line, lit: v, max: nv });
            }
            if current.is_empty() {
                current_start = line;
            }
            current.push(Lit::new(v.unsigned_abs() as Var, v < 0));
        }
    }
    let (nv, nc) = header.ok_or(ParseError::MalformedHeader { line: last_line.max(1), msg: "missing header".into() })?;
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause { line: current_start });
    }
    if clauses.len() != nc {
        return Err(ParseError::ClauseCountMismatch { line: last_line.max(1), expected: nc, found: clauses.len() });
    }
    Ok(Formula { num_vars: nv, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![Lit::pos(1), Lit::neg(2)]]);
    }

    #[test]
    fn parses_empty_clause_list() {
        let f = parse_dimacs("p cnf 3 0").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.num_clauses(), 0);
    }

    #[test]
    fn rejects_out_of_range() {
        let e = parse_dimacs("p cnf 1 1\n2 0").unwrap_err();
        assert!(matches!(e, ParseError::LiteralOutOfRange { line: 2, lit: 2, max: 1 }));
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(parse_dimacs("p dnf 1 1\n1 0"), Err(ParseError::MalformedHeader { line: 1, .. })));
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 0\n"),
            Err(ParseError::ClauseCountMismatch { expected: 2, found: 1, .. })
        ));
        assert!(matches!(parse_dimacs("1 0\n"), Err(ParseError::MissingHeader { line: 1 })));
        assert!(matches!(parse_dimacs("p cnf 2 1\n1 x 0"), Err(ParseError::InvalidToken { line: 2, .. })));
    }

    #[test]
    fn duplicates_kept() {
        let f = parse_dimacs("p cnf 2 1\n1 1 2 0\n").unwrap();
        assert_eq!(f.clause(0).len(), 3);
        assert!(!f.classify().exactly_three_distinct);
    }

    #[test]
    fn serialization_is_stable() {
        let f = parse_dimacs("c hi\np cnf 3 2\n1   -2\n 3 0\n-1 0\n").unwrap();
        assert_eq!(f.to_dimacs(), "p cnf 3 2\n1 -2 3 0\n-1 0\n");
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn classify_monotone_pair() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3], &[-1, -2, -3]]).unwrap();
        let c = f.classify();
        assert!(c.monotone && !c.positive && c.exactly_three_distinct && c.is_3sat);
        assert_eq!(c.max_occurrence, 2);
    }

    #[test]
    fn classify_connector() {
        let f = Formula::from_dimacs_clauses(2, &[&[-1, 2], &[1, -2]]).unwrap();
        let c = f.classify();
        assert!(c.is_3sat && !c.monotone);
    }

    #[test]
    fn substitute() {
        let f = Formula::from_dimacs_clauses(5, &[&[1, 3, -4]]).unwrap();
        let g = f.substitute_occurrence(0, 4, 5).unwrap();
        assert_eq!(g.clause(0), &vec![Lit::pos(1), Lit::pos(3), Lit::neg(5)]);
        assert_eq!(f.substitute_occurrence(0, 3, 3).unwrap(), f);
        assert!(f.substitute_occurrence(0, 2, 5).is_err());
    }

    #[test]
    fn one_in_three_eval() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let a = Assignment::from_values(vec![true, true, false]);
        assert!(f.evaluate(&a, Semantics::Cnf));
        assert!(!f.evaluate(&a, Semantics::OneInThree));
    }
}
