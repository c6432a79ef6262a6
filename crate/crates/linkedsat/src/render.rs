//! SVG pictures of drawings, linked instances and gadget templates.
//!
//! Variables are white circles and clauses black discs. An edge from a variable to a clause
//! carries an arrowhead when the variable occurs negated. A linked instance also gets its
//! Hamiltonian cycle κ as one dotted closed path. Coordinates are taken from the drawing
//! and multiplied by [`SCALE`], with the y axis pointing up.

use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::Formula;
use crate::gadgets::GadgetSpec;
use crate::layout::GridDrawing;
use crate::reduction::{kappa_cycle, LinkedInstance, Slot};

pub const SCALE: f64 = 20.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 5.0;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("no position for vertex {0}")]
    MissingPosition(usize),
    #[error("edge ({0}, {1}) does not match the formula")]
    UnknownEdge(usize, usize),
}

struct Scene {
    num_vars: usize,
    pos: Vec<(f64, f64)>,
    /// (variable vertex, clause vertex, negated)
    edges: Vec<(usize, usize, bool)>,
    kappa: Option<Vec<usize>>,
}

/// Edges of `f` as (variable vertex, clause vertex, negated), one per distinct pair.
fn formula_edges(f: &Formula) -> Vec<(usize, usize, bool)> {
    let nv = f.num_vars() as usize;
    let mut out = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        for v in f.clause_vars(j) {
            let negated = c.iter().any(|l| l.var == v && l.negated);
            out.push((v as usize - 1, nv + j, negated));
        }
    }
    out
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

impl Scene {
    fn to_svg(&self) -> String {
        let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for (i, &(x, y)) in self.pos.iter().enumerate() {
            if i == 0 {
                (x0, x1, y0, y1) = (x, x, y, y);
            }
            (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
        }
        let sx = |x: f64| (x - x0) * SCALE + MARGIN;
        let sy = |y: f64| (y1 - y) * SCALE + MARGIN;
        let (w, h) = ((x1 - x0) * SCALE + 2.0 * MARGIN, (y1 - y0) * SCALE + 2.0 * MARGIN);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            fmt(w),
            fmt(h),
            fmt(w),
            fmt(h)
        );
        s.push_str(concat!(
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
            r#"<path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
            "\n"
        ));
        for &(v, c, negated) in &self.edges {
            let (ax, ay) = (sx(self.pos[v].0), sy(self.pos[v].1));
            let (bx, by) = (sx(self.pos[c].0), sy(self.pos[c].1));
            // Stop at the clause disc so the arrowhead stays visible.
            let len = ((bx - ax).powi(2) + (by - ay).powi(2)).sqrt();
            let t = if len > RADIUS { (len - RADIUS) / len } else { 1.0 };
            let (ex, ey) = (ax + (bx - ax) * t, ay + (by - ay) * t);
            let marker = if negated { r#" marker-end="url(#arrow)""# } else { "" };
            let _ = writeln!(
                s,
                r#"<line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"{marker}/>"#,
                fmt(ax),
                fmt(ay),
                fmt(ex),
                fmt(ey)
            );
        }
        if let Some(k) = &self.kappa {
            let pts: Vec<String> = k.iter().map(|&u| format!("{},{}", fmt(sx(self.pos[u].0)), fmt(sy(self.pos[u].1)))).collect();
            let _ = writeln!(
                s,
                r#"<polygon class="kappa" points="{}" fill="none" stroke="gray" stroke-dasharray="2,3"/>"#,
                pts.join(" ")
            );
        }
        for (i, &(x, y)) in self.pos.iter().enumerate() {
            let (class, fill) = if i < self.num_vars { ("var", "white") } else { ("clause", "black") };
            let _ = writeln!(
                s,
                r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}" stroke="black"/>"#,
                fmt(sx(x)),
                fmt(sy(y)),
                fmt(RADIUS)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// A straight-line drawing of `f`'s incidence graph.
pub fn render_drawing_svg(f: &Formula, d: &GridDrawing) -> Result<String, RenderError> {
    let n = f.num_vars() as usize + f.num_clauses();
    if d.pos.len() < n {
        return Err(RenderError::MissingPosition(d.pos.len()));
    }
    let edges = formula_edges(f);
    for &(v, c) in &d.edges {
        if !edges.iter().any(|e| e.0 == v && e.1 == c) {
            return Err(RenderError::UnknownEdge(v, c));
        }
    }
    let pos = d.pos[..n].iter().map(|&(x, y)| (x as f64, y as f64)).collect();
    Ok(Scene { num_vars: f.num_vars() as usize, pos, edges, kappa: None }.to_svg())
}

fn slot_positions(slots: &[Slot], columns: usize, offset: usize, pos: &mut Vec<(f64, f64)>) -> Result<(), RenderError> {
    for (i, &(c, r)) in slots.iter().enumerate() {
        if c >= columns {
            return Err(RenderError::MissingPosition(offset + i));
        }
        pos.push((c as f64, r as f64));
    }
    Ok(())
}

/// A linked instance at its column/rank positions, with κ dotted.
pub fn render_linked_svg(li: &LinkedInstance) -> Result<String, RenderError> {
    let nv = li.formula.num_vars() as usize;
    if li.var_slots.len() != nv || li.clause_slots.len() != li.formula.num_clauses() {
        return Err(RenderError::MissingPosition(li.var_slots.len().min(nv)));
    }
    let mut pos = Vec::with_capacity(li.vertex_count());
    slot_positions(&li.var_slots, li.columns.len(), 0, &mut pos)?;
    slot_positions(&li.clause_slots, li.columns.len(), nv, &mut pos)?;
    let kappa = kappa_cycle(li).vertices;
    Ok(Scene { num_vars: nv, pos, edges: formula_edges(&li.formula), kappa: Some(kappa) }.to_svg())
}

/// A gadget template at its catalog placement.
pub fn render_gadget_svg(spec: &GadgetSpec) -> Result<String, RenderError> {
    let f = spec.template_formula();
    let mut pos: Vec<(f64, f64)> = spec.var_place.iter().map(|&(c, r)| (c as f64, r as f64)).collect();
    pos.extend(spec.clause_place.iter().map(|&(c, r)| (c as f64, r as f64)));
    if pos.len() != f.num_vars() as usize + f.num_clauses() {
        return Err(RenderError::MissingPosition(pos.len()));
    }
    Ok(Scene { num_vars: f.num_vars() as usize, pos, edges: formula_edges(&f), kappa: None }.to_svg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{gadget_spec, Variant};

    #[test]
    fn basic_gadget_picture() {
        let svg = render_gadget_svg(&gadget_spec(Variant::Basic).unwrap()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches(r#"class="edge""#).count(), 4);
        assert_eq!(svg.matches("marker-end").count(), 2);
        assert_eq!(svg.matches(r#"fill="white""#).count(), 2);
    }

    #[test]
    fn empty_formula_is_a_blank_canvas() {
        let f = Formula::new(0);
        let d = GridDrawing { num_vars: 0, pos: vec![], edges: vec![] };
        let svg = render_drawing_svg(&f, &d).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn number_format_is_short() {
        assert_eq!(fmt(20.0), "20");
        assert_eq!(fmt(2.5), "2.5");
        assert_eq!(fmt(-0.001), "0");
    }
}
