use num_traits::{Signed, Zero};

use super::{GridDrawing, Q};

/// A parity-scaled drawing with the factor that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledDrawing {
    pub drawing: GridDrawing,
    /// Even multiplier applied to all x-coordinates before clauses were shifted by one.
    pub factor: i64,
}

/// Smallest horizontal distance between a vertex and an edge not incident to it.
/// `None` when no horizontal line meets both a vertex and a non-incident edge.
pub fn clearance(d: &GridDrawing) -> Option<Q> {
    let mut best: Option<Q> = None;
    for &(a, b) in &d.edges {
        let (pa, pb) = (d.pos[a], d.pos[b]);
        for (v, &p) in d.pos.iter().enumerate() {
            if v == a || v == b {
                continue;
            }
            let dist = if pa.1 == pb.1 {
                if p.1 != pa.1 {
                    continue;
                }
                let (lo, hi) = (pa.0.min(pb.0), pa.0.max(pb.0));
                Q::from_integer((lo - p.0).max(p.0 - hi).max(0) as i128)
            } else {
                if p.1 < pa.1.min(pb.1) || p.1 > pa.1.max(pb.1) {
                    continue;
                }
                let t = Q::new((p.1 - pa.1) as i128, (pb.1 - pa.1) as i128);
                let x = Q::from_integer(pa.0 as i128) + t * Q::from_integer((pb.0 - pa.0) as i128);
                (Q::from_integer(p.0 as i128) - x).abs()
            };
            best = Some(match best {
                Some(b) if b <= dist => b,
                _ => dist,
            });
        }
    }
    best
}

fn apply(d: &GridDrawing, factor: i64) -> GridDrawing {
    let pos = d
        .pos
        .iter()
        .enumerate()
        .map(|(v, &(x, y))| (x * factor + i64::from(!d.is_var(v)), y))
        .collect();
    GridDrawing { num_vars: d.num_vars, pos, edges: d.edges.clone() }
}

/// Multiplies x by `2 * round(2 / v)` (at least 2) and moves clauses one unit right, so
/// variables land on even and clauses on odd x. Without any vertex/edge pair sharing a
/// horizontal line the clearance is taken as 1.
pub fn parity_scale(d: &GridDrawing) -> ScaledDrawing {
    let v = clearance(d).filter(|v| !v.is_zero()).unwrap_or_else(|| Q::from_integer(1));
    let two_over_v = Q::from_integer(2) / v;
    let rounded = (two_over_v + Q::new(1, 2)).floor().to_integer().max(1) as i64;
    let factor = 2 * rounded;
    ScaledDrawing { drawing: apply(d, factor), factor }
}

/// Scales by an explicit even `factor`; the result may have crossings if it is too small.
pub fn parity_scale_with(d: &GridDrawing, factor: i64) -> ScaledDrawing {
    assert!(factor > 0 && factor % 2 == 0, "parity factor must be positive and even");
    ScaledDrawing { drawing: apply(d, factor), factor }
}

/// Like `parity_scale`, but uses the smallest even factor whose result is crossing-free.
pub fn parity_scale_min(d: &GridDrawing) -> ScaledDrawing {
    let full = parity_scale(d);
    let mut f = 2;
    while f < full.factor {
        let cand = apply(d, f);
        if cand.is_crossing_free() {
            return ScaledDrawing { drawing: cand, factor: f };
        }
        f += 2;
    }
    full
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        // Variable at x = 3, clause at x = 4; a third vertex gives clearance 1.
        let d = GridDrawing { num_vars: 2, pos: vec![(3, 0), (5, 2), (4, 2)], edges: vec![(0, 2)] };
        assert_eq!(clearance(&d), Some(Q::from_integer(1)));
        let s = parity_scale(&d);
        assert_eq!(s.factor, 4);
        assert_eq!(s.drawing.pos[0].0, 12);
        assert_eq!(s.drawing.pos[2].0, 17);
    }

    #[test]
    fn compliant_drawing_keeps_parity() {
        let d = GridDrawing { num_vars: 2, pos: vec![(0, 0), (0, 4), (3, 4)], edges: vec![(0, 2)] };
        assert_eq!(clearance(&d), Some(Q::from_integer(3)));
        let s = parity_scale(&d);
        assert_eq!(s.factor, 2);
        assert!(s.drawing.is_parity_scaled());
        assert_eq!(s.drawing.pos, vec![(0, 0), (0, 4), (7, 4)]);
    }
}
