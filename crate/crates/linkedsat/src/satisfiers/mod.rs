//! Satisfiers for always-satisfiable planar classes, Hall-condition statistics and counting oracles.

mod brute;
mod coloring;
mod count;
mod eliminate;
mod hall;
mod matching;

use thiserror::Error;

pub use brute::{brute_count, brute_models, brute_solve, BRUTE_VAR_CAP};
pub use coloring::{color_graph, four_color_satisfy, ColoringResult};
pub use count::{cnf_clauses, exact_count};
pub use hall::{hall_check, HallReport, SubgraphStats};
pub use matching::{hopcroft_karp, matching_satisfy, MatchingResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("{vars} variables exceed the brute-force cap of {cap}")]
    VarCapExceeded { vars: u32, cap: u32 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("coloring search exhausted: {0}")]
    ColoringExhausted(String),
    #[error("matching does not cover all clauses ({matched} of {clauses})")]
    MatchingIncomplete { matched: usize, clauses: usize },
}
