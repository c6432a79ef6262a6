//! Edge-by-edge gadget replacement over an R-drawing, producing instances whose incidence
//! graph stays planar together with a Hamiltonian cycle through all clauses, then all
//! variables.

mod cycles;
mod format;
mod route;
mod side;

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, Semantics, Var};
use crate::gadgets::{GadgetError, Variant};
use crate::layout::{
    grid_embed, parity_scale, parity_scale_min, parity_scale_with, sweep_drawing, ColumnKind, GridDrawing, LayoutError,
};
use crate::planarity::{build_incidence_graph, GraphError};

pub use cycles::{emit_clause_cycle, emit_variable_cycle, kappa_cycle, CycleSpec};
pub use format::parse_linked_instance;
pub use side::reduce_side;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("{variant} reduction needs {need}")]
    ClassMismatch { variant: Method, need: &'static str },
    #[error("drawing does not match the formula: {0}")]
    DrawingMismatch(String),
    #[error("not enough clearance at column {column}: {detail}")]
    ClearanceViolated { column: usize, detail: String },
    #[error("{0} is not an edge-connector variant")]
    NotConnector(Variant),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Which construction produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Connector(Variant),
    Side,
}

impl Method {
    pub fn parse(s: &str) -> Option<Method> {
        if s.trim().eq_ignore_ascii_case("side") {
            return Some(Method::Side);
        }
        Variant::parse(s).filter(|v| v.is_connector()).map(Method::Connector)
    }

    pub fn semantics(self) -> Semantics {
        match self {
            Method::Connector(Variant::OneInThree) => Semantics::OneInThree,
            _ => Semantics::Cnf,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Connector(v) => write!(f, "{v}"),
            Method::Side => f.write_str("SIDE"),
        }
    }
}

/// Where an output vertex sits: column index and rank (0 = lowest) within the column.
pub type Slot = (usize, usize);

/// How the output relates to the input formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub original_vars: u32,
    pub original_clauses: usize,
    pub gadgets: usize,
    /// Per original incidence edge: (variable, clause index, gadget ids along the chain).
    pub chains: Vec<(Var, usize, Vec<usize>)>,
    /// Names of the fresh variables, in id order starting at `original_vars + 1`.
    pub fresh_names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedInstance {
    pub method: Method,
    pub formula: Formula,
    /// κ's clause part (0-based clause indices) followed by its variable part.
    pub kappa_clauses: Vec<usize>,
    pub kappa_vars: Vec<Var>,
    pub columns: Vec<ColumnKind>,
    /// Slot per variable (index 0 = variable 1), then per clause.
    pub var_slots: Vec<Slot>,
    pub clause_slots: Vec<Slot>,
    pub provenance: Provenance,
}

impl LinkedInstance {
    pub fn semantics(&self) -> Semantics {
        self.method.semantics()
    }

    pub fn vertex_count(&self) -> usize {
        self.formula.num_vars() as usize + self.formula.num_clauses()
    }
}

fn check_class(f: &Formula, variant: Variant) -> Result<(), ReductionError> {
    let c = f.classify();
    let method = Method::Connector(variant);
    let need = match variant {
        Variant::Basic if !c.is_3sat => "clauses of at most three literals",
        Variant::OneInThree if !(c.positive && c.exactly_three_distinct) => {
            "positive clauses with exactly three distinct variables"
        }
        Variant::ThreeDistinct if !c.exactly_three_distinct => "clauses with exactly three distinct variables",
        Variant::Monotone if !(c.monotone && c.is_3sat) => "monotone clauses of at most three literals",
        Variant::Basic | Variant::OneInThree | Variant::ThreeDistinct | Variant::Monotone => return Ok(()),
        other => return Err(ReductionError::NotConnector(other)),
    };
    Err(ReductionError::ClassMismatch { variant: method, need })
}

/// Replaces every edge of the parity-scaled `drawing` of `f` by a chain of `variant` gadgets.
pub fn reduce(f: &Formula, drawing: &GridDrawing, variant: Variant) -> Result<LinkedInstance, ReductionError> {
    check_class(f, variant)?;
    let g = build_incidence_graph(f)?;
    let expected: Vec<(usize, usize)> =
        g.edges.iter().map(|e| (g.var_vertex(e.var), g.clause_vertex(e.clause))).collect();
    if drawing.num_vars != f.num_vars() as usize || drawing.pos.len() != g.graph.n() {
        return Err(ReductionError::DrawingMismatch("vertex counts differ".into()));
    }
    let mut have = drawing.edges.clone();
    let mut want = expected.clone();
    have.sort_unstable();
    want.sort_unstable();
    if have != want {
        return Err(ReductionError::DrawingMismatch("edge sets differ".into()));
    }
    if !drawing.is_parity_scaled() {
        let v = (0..drawing.pos.len()).find(|&v| (drawing.pos[v].0.rem_euclid(2) == 0) != drawing.is_var(v)).unwrap();
        return Err(LayoutError::Parity(v, drawing.pos[v].0).into());
    }
    route::build(f, drawing, None, variant)
}

/// Sweep spacings tried before falling back to parity scaling.
const SWEEP_SPACINGS: usize = 3;

/// Embeds `f` and reduces it along a sweep of the drawing, one column per vertex, with
/// growing spacing while the detours lack room. Failing that, the drawing is parity-scaled: the smallest
/// crossing-free even factor is tried first, then larger ones.
pub fn reduce_formula(f: &Formula, variant: Variant) -> Result<LinkedInstance, ReductionError> {
    check_class(f, variant)?;
    let g = build_incidence_graph(f)?;
    let d = grid_embed(&g)?;
    for spacing in 0..SWEEP_SPACINGS {
        let swept = sweep_drawing(&d, spacing);
        match route::build(f, &swept.drawing, Some(&swept.geometry), variant) {
            Err(ReductionError::ClearanceViolated { .. }) => {}
            other => return other,
        }
    }
    let first = parity_scale_min(&d).factor;
    let last = parity_scale(&d).factor.max(first) * 4;
    let mut factor = first;
    loop {
        let s = parity_scale_with(&d, factor);
        if s.drawing.is_crossing_free() {
            match reduce(f, &s.drawing, variant) {
                Err(ReductionError::ClearanceViolated { .. }) if factor < last => {}
                other => return other,
            }
        }
        if factor >= last {
            return Err(LayoutError::Invalid(format!("no crossing-free scaling up to factor {last}")).into());
        }
        factor += 2;
    }
}
