//! Straight-line grid drawings, parity scaling, R-drawings and three-legged layouts.

mod grid;
mod parity;
mod rdrawing;
mod sweep;
mod three_legged;

use std::fmt::Write as _;

use thiserror::Error;

pub use grid::{grid_embed, grid_positions};
pub use parity::{clearance, parity_scale, parity_scale_min, parity_scale_with, ScaledDrawing};
pub use rdrawing::{build_r_drawing, build_r_drawing_geom, build_r_drawing_with, Column, ColumnKind, PaddingSpec, RDrawing};
pub use sweep::{sweep_drawing, SweptDrawing};
pub use three_legged::{three_legged_layout, LegClause, Side, ThreeLeggedDrawing};

/// Exact rationals used for clearances and edge heights.
pub type Q = num_rational::Ratio<i128>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("drawing has crossing edges {0:?} and {1:?}")]
    Crossing((usize, usize), (usize, usize)),
    #[error("drawing is not parity scaled: vertex {0} at x = {1}")]
    Parity(usize, i64),
    #[error("clause spans on the {0} side are not laminar: clauses {1} and {2}")]
    NonLaminar(&'static str, usize, usize),
    #[error("invalid layout input: {0}")]
    Invalid(String),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// Straight-line drawing of an incidence graph. Vertices `0..num_vars` are variables,
/// the rest clauses; `edges` are (variable vertex, clause vertex) pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridDrawing {
    pub num_vars: usize,
    pub pos: Vec<(i64, i64)>,
    pub edges: Vec<(usize, usize)>,
}

impl GridDrawing {
    pub fn is_var(&self, v: usize) -> bool {
        v < self.num_vars
    }

    /// First pair of edges that meet anywhere other than a shared endpoint.
    pub fn find_crossing(&self) -> Option<((usize, usize), (usize, usize))> {
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if edges_conflict(&self.pos, self.edges[i], self.edges[j]) {
                    return Some((self.edges[i], self.edges[j]));
                }
            }
        }
        // A vertex lying on a non-incident edge also counts.
        for &(a, b) in &self.edges {
            for v in 0..self.pos.len() {
                if v != a && v != b && on_segment(self.pos[a], self.pos[b], self.pos[v]) {
                    return Some(((a, b), (v, v)));
                }
            }
        }
        None
    }

    pub fn is_crossing_free(&self) -> bool {
        self.find_crossing().is_none()
    }

    /// Variables on even x, clauses on odd x.
    pub fn is_parity_scaled(&self) -> bool {
        self.pos.iter().enumerate().all(|(v, p)| (p.0.rem_euclid(2) == 0) == self.is_var(v))
    }

    /// `pos <vertex> <x> <y>` lines, vertices named `v<id>` (variables) or `c<id>` (clauses).
    pub fn to_pos_text(&self) -> String {
        let mut s = String::new();
        for (v, p) in self.pos.iter().enumerate() {
            let _ = writeln!(s, "pos {} {} {}", self.vertex_name(v), p.0, p.1);
        }
        s
    }

    pub fn vertex_name(&self, v: usize) -> String {
        if self.is_var(v) {
            format!("v{}", v + 1)
        } else {
            format!("c{}", v - self.num_vars + 1)
        }
    }

    /// Reads positions for the vertices of an incidence graph with `num_vars` variables
    /// and `num_clauses` clauses. Every vertex must be listed.
    pub fn parse_pos_text(
        text: &str,
        num_vars: usize,
        num_clauses: usize,
        edges: Vec<(usize, usize)>,
    ) -> Result<GridDrawing, LayoutError> {
        let mut pos: Vec<Option<(i64, i64)>> = vec![None; num_vars + num_clauses];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t: Vec<&str> = raw.split_whitespace().collect();
            if t.is_empty() || t[0].starts_with('#') {
                continue;
            }
            let bad = |msg: &str| LayoutError::Format { line, msg: msg.to_string() };
            if t.len() != 4 || t[0] != "pos" {
                return Err(bad("expected `pos <vertex> <x> <y>`"));
            }
            let (kind, id) = t[1].split_at(1);
            let id: usize = id.parse().map_err(|_| bad("bad vertex name"))?;
            let v = match kind {
                "v" if id >= 1 && id <= num_vars => id - 1,
                "c" if id >= 1 && id <= num_clauses => num_vars + id - 1,
                _ => return Err(bad("unknown vertex")),
            };
            let x = t[2].parse().map_err(|_| bad("bad x"))?;
            let y = t[3].parse().map_err(|_| bad("bad y"))?;
            pos[v] = Some((x, y));
        }
        let pos = pos
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| LayoutError::Invalid(format!("no position for vertex {v}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GridDrawing { num_vars, pos, edges })
    }
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ax, ay, bx, by, cx, cy) = (a.0 as i128, a.1 as i128, b.0 as i128, b.1 as i128, c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    orient(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Closed-segment intersection test.
pub fn segments_intersect(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let d1 = orient(c, d, a).signum();
    let d2 = orient(c, d, b).signum();
    let d3 = orient(a, b, c).signum();
    let d4 = orient(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(c, d, a))
        || (d2 == 0 && on_segment(c, d, b))
        || (d3 == 0 && on_segment(a, b, c))
        || (d4 == 0 && on_segment(a, b, d))
}

fn edges_conflict(pos: &[(i64, i64)], e: (usize, usize), f: (usize, usize)) -> bool {
    let shared: Vec<usize> = [e.0, e.1].into_iter().filter(|x| *x == f.0 || *x == f.1).collect();
    let (a, b, c, d) = (pos[e.0], pos[e.1], pos[f.0], pos[f.1]);
    match shared.len() {
        0 => segments_intersect(a, b, c, d),
        1 => {
            // Edges with a common endpoint conflict only if they overlap along a line.
            let s = shared[0];
            let other_e = if e.0 == s { e.1 } else { e.0 };
            let other_f = if f.0 == s { f.1 } else { f.0 };
            on_segment(pos[s], pos[other_e], pos[other_f]) || on_segment(pos[s], pos[other_f], pos[other_e])
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_cases() {
        assert!(segments_intersect((0, 0), (2, 2), (0, 2), (2, 0)));
        assert!(!segments_intersect((0, 0), (1, 0), (2, 0), (3, 0)));
        assert!(segments_intersect((0, 0), (2, 0), (1, 0), (3, 0)));
        assert!(segments_intersect((0, 0), (2, 0), (1, 0), (1, 5)));
        assert!(!segments_intersect((0, 0), (2, 0), (1, 1), (1, 5)));
    }

    #[test]
    fn shared_endpoint_overlap_detected() {
        let d = GridDrawing { num_vars: 2, pos: vec![(0, 0), (2, 0), (4, 0)], edges: vec![(0, 2), (1, 2)] };
        assert!(!d.is_crossing_free());
        let d = GridDrawing { num_vars: 2, pos: vec![(0, 0), (2, 2), (4, 0)], edges: vec![(0, 2), (1, 2)] };
        assert!(d.is_crossing_free());
    }

    #[test]
    fn pos_round_trip() {
        let d = GridDrawing { num_vars: 1, pos: vec![(0, 0), (3, -1)], edges: vec![(0, 1)] };
        let t = d.to_pos_text();
        assert_eq!(t, "pos v1 0 0\npos c1 3 -1\n");
        assert_eq!(GridDrawing::parse_pos_text(&t, 1, 1, vec![(0, 1)]).unwrap(), d);
    }
}
