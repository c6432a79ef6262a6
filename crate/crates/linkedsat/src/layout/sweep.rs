//! One column per vertex, following a sweep of a straight-line drawing.
//!
//! Two shears make every vertex's x and y distinct while keeping the drawing
//! crossing-free. Sweeping left to right, each
//! vertex then gets its own column of the right parity, with a single gap column between
//! two consecutive vertices of the same kind, plus optional spacing. Edges keep their sheared straight-line
//! geometry for the heights at which they cross columns, so the number of columns is at
//! most twice the number of vertices no matter how tight the original drawing is.

use super::{GridDrawing, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweptDrawing {
    /// Column (x) and height (y) per vertex; variables on even columns, clauses on odd.
    pub drawing: GridDrawing,
    /// Sheared position per vertex, for interpolating edge heights.
    pub geometry: Vec<(Q, Q)>,
}

/// `spacing` extra column pairs separate every two consecutive vertices.
pub fn sweep_drawing(d: &GridDrawing, spacing: usize) -> SweptDrawing {
    let n = d.pos.len();
    let span = |f: &dyn Fn(&(i64, i64)) -> i64| {
        let (lo, hi) = d.pos.iter().map(f).fold((0, 0), |(lo, hi), v| (v.min(lo), v.max(hi)));
        (hi - lo + 1) as i128
    };
    // (x, y) -> (X, Y) = (k x + y, l y + X): invertible and affine, so still crossing-free,
    // and both coordinates are now distinct across vertices.
    let k = span(&|p| p.1);
    let xs: Vec<i128> = d.pos.iter().map(|p| p.0 as i128 * k + p.1 as i128).collect();
    let l = xs.iter().max().map_or(1, |hi| hi - xs.iter().min().unwrap() + 1);
    let ys: Vec<i128> = d.pos.iter().zip(&xs).map(|(p, &x)| l * p.1 as i128 + x).collect();
    let geometry: Vec<(Q, Q)> = xs.iter().zip(&ys).map(|(&x, &y)| (Q::from_integer(x), Q::from_integer(y))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| geometry[a].0.cmp(&geometry[b].0));
    let mut pos = vec![(0i64, 0i64); n];
    let mut last: Option<i64> = None;
    for v in order {
        let parity = i64::from(!d.is_var(v));
        let col = match last {
            None => parity,
            Some(c) if (c + 1).rem_euclid(2) == parity => c + 1 + 2 * spacing as i64,
            Some(c) => c + 2 + 2 * spacing as i64,
        };
        pos[v] = (col, ys[v] as i64);
        last = Some(col);
    }
    SweptDrawing { drawing: GridDrawing { num_vars: d.num_vars, pos, edges: d.edges.clone() }, geometry }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stacked_vertices_get_their_own_columns() {
        // Two variables above each other and a clause to their right.
        let d = GridDrawing { num_vars: 2, pos: vec![(0, 0), (0, 4), (6, 2)], edges: vec![(0, 2), (1, 2)] };
        let s = sweep_drawing(&d, 0);
        let cols: Vec<i64> = s.drawing.pos.iter().map(|p| p.0).collect();
        assert_eq!(cols, vec![0, 2, 3]);
        let spaced: Vec<i64> = sweep_drawing(&d, 1).drawing.pos.iter().map(|p| p.0).collect();
        assert_eq!(spaced, vec![0, 4, 7]);
        let mut heights: Vec<i64> = s.drawing.pos.iter().map(|p| p.1).collect();
        heights.dedup();
        assert_eq!(heights.len(), 3);
        assert!(s.drawing.is_parity_scaled());
        assert!(s.geometry[0].0 < s.geometry[1].0 && s.geometry[1].0 < s.geometry[2].0);
    }
}
