//! Seeded generator of var-linked planar instances.
//!
//! Clause variable sets are sampled over a hidden variable order, one side of the axis at
//! a time, and kept only if they nest or are disjoint with every clause already on that
//! side (an inner clause must sit between two consecutive legs of the outer one). Such a
//! family always has a crossing-free three-legged drawing, so planarity holds by
//! construction; it is re-certified before returning.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::formula::{Clause, Formula, Lit, Var};
use crate::layout::{grid_embed, GridDrawing};
use crate::planarity::{build_incidence_graph, is_planar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenClass {
    /// Exactly three distinct variables per clause, mixed signs.
    Planar3Sat,
    /// Two or three distinct variables per clause, all of one sign; positive clauses
    /// above the axis, negated ones below.
    Monotone,
    /// Exactly three distinct positive variables per clause.
    Positive1in3,
    /// Four or five distinct variables per clause, mixed signs.
    Geq4Distinct,
    /// Three to five distinct variables, at least three of them with a common sign.
    Monotone3Distinct,
}

impl GenClass {
    pub const ALL: [GenClass; 5] =
        [GenClass::Planar3Sat, GenClass::Monotone, GenClass::Positive1in3, GenClass::Geq4Distinct, GenClass::Monotone3Distinct];

    pub fn name(self) -> &'static str {
        match self {
            GenClass::Planar3Sat => "planar3sat",
            GenClass::Monotone => "monotone",
            GenClass::Positive1in3 => "positive_1in3",
            GenClass::Geq4Distinct => "geq4_distinct",
            GenClass::Monotone3Distinct => "monotone3_distinct",
        }
    }

    pub fn parse(s: &str) -> Option<GenClass> {
        GenClass::ALL.into_iter().find(|c| c.name() == s.trim().to_ascii_lowercase().replace('-', "_"))
    }

    fn clause_sizes(self) -> (usize, usize) {
        match self {
            GenClass::Planar3Sat | GenClass::Positive1in3 => (3, 3),
            GenClass::Monotone => (2, 3),
            GenClass::Geq4Distinct => (4, 5),
            GenClass::Monotone3Distinct => (3, 5),
        }
    }

    /// Whether a formula is in the class.
    pub fn certify(self, f: &Formula) -> bool {
        let c = f.classify();
        let (lo, hi) = self.clause_sizes();
        let sizes = (0..f.num_clauses()).all(|j| {
            let k = f.clause_vars(j).len();
            f.clause(j).len() == k && (lo..=hi).contains(&k)
        });
        let class = match self {
            GenClass::Planar3Sat => c.exactly_three_distinct,
            GenClass::Monotone => c.monotone,
            GenClass::Positive1in3 => c.positive && c.exactly_three_distinct,
            GenClass::Geq4Distinct => true,
            GenClass::Monotone3Distinct => f.clauses().iter().all(|cl| {
                let neg = cl.iter().filter(|l| l.negated).count();
                neg >= 3 || cl.len() - neg >= 3
            }),
        };
        sizes && class
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("class {class} needs at least {need} variables")]
    TooFewVariables { class: GenClass, need: usize },
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub formula: Formula,
    /// Variable order along the axis of the three-legged drawing.
    pub order: Vec<Var>,
    pub drawing: GridDrawing,
}

impl Generated {
    /// DIMACS text with the axis order in a leading `c order` comment.
    pub fn to_text(&self) -> String {
        let order: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
        format!("c order {}\n{}", order.join(" "), self.formula.to_dimacs())
    }
}

/// Reads a `c order` comment as written by `Generated::to_text`.
pub fn parse_order_comment(text: &str) -> Option<Vec<Var>> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix("c order")?;
        rest.split_whitespace().map(|t| t.parse().ok()).collect()
    })
}

fn pieces(p: &[usize]) -> Vec<(usize, usize)> {
    if p.len() == 1 {
        return vec![(p[0], p[0])];
    }
    p.windows(2).map(|w| (w[0], w[1])).collect()
}

fn fits(inner: &[usize], outer: &[usize]) -> bool {
    let (lo, hi) = (inner[0], inner[inner.len() - 1]);
    pieces(outer).iter().any(|&(a, b)| a <= lo && hi <= b)
}

fn compatible(p: &[usize], q: &[usize]) -> bool {
    p[p.len() - 1] <= q[0] || q[q.len() - 1] <= p[0] || fits(p, q) || fits(q, p)
}

/// A deterministic instance of `class` with `vars` variables and up to `clauses` clauses.
pub fn gen_instance(class: GenClass, vars: usize, clauses: usize, seed: u64) -> Result<Generated, GenError> {
    let need = class.clause_sizes().0;
    if vars < need {
        return Err(GenError::TooFewVariables { class, need });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = class.clause_sizes();
    // Accepted position sets per side (0 = above, 1 = below).
    let mut placed: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
    let mut spans: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut attempts = 0;
    while spans.len() < clauses && attempts < 200 * clauses.max(1) {
        attempts += 1;
        let k = rng.gen_range(lo..=hi.min(vars));
        let width = rng.gen_range(k..=(k + 3).min(vars));
        let start = rng.gen_range(0..=vars - width);
        let mut inner: Vec<usize> = (start + 1..start + width - 1).collect();
        inner.shuffle(&mut rng);
        let mut p: Vec<usize> = inner.into_iter().take(k - 2).collect();
        p.push(start);
        p.push(start + width - 1);
        p.sort_unstable();
        let side = rng.gen_range(0..2);
        if placed[side].iter().all(|q| compatible(&p, q)) {
            placed[side].push(p.clone());
            spans.push((side, p));
        }
    }

    let mut order: Vec<Var> = (1..=vars as Var).collect();
    order.shuffle(&mut rng);
    let mut out: Vec<Clause> = Vec::with_capacity(spans.len());
    for (side, p) in &spans {
        let mut c: Clause = p.iter().map(|&r| Lit::pos(order[r])).collect();
        match class {
            GenClass::Planar3Sat | GenClass::Geq4Distinct => {
                for l in &mut c {
                    l.negated = rng.gen_bool(0.5);
                }
            }
            GenClass::Monotone => {
                for l in &mut c {
                    l.negated = *side == 1;
                }
            }
            GenClass::Positive1in3 => {}
            GenClass::Monotone3Distinct => {
                let sign = rng.gen_bool(0.5);
                let mut idx: Vec<usize> = (0..c.len()).collect();
                idx.shuffle(&mut rng);
                for (n, &i) in idx.iter().enumerate() {
                    c[i].negated = if n < 3 { sign } else { rng.gen_bool(0.5) };
                }
            }
        }
        c.shuffle(&mut rng);
        out.push(c);
    }
    let formula = Formula::from_clauses(vars as u32, out).expect("generated ids are in range");
    debug_assert!(class.certify(&formula));
    let g = build_incidence_graph(&formula).expect("generated clauses are non-empty");
    assert!(is_planar(&g.graph), "laminar families are planar");
    let drawing = grid_embed(&g).expect("planar graphs embed");
    Ok(Generated { formula, order, drawing })
}
