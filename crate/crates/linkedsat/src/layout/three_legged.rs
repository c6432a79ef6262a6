use std::collections::BTreeSet;

use super::{segments_intersect, LayoutError};
use crate::formula::{Formula, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Above => "above",
            Side::Below => "below",
        }
    }

    fn sign(self) -> i64 {
        match self {
            Side::Above => 1,
            Side::Below => -1,
        }
    }
}

/// A clause drawn as a point joined to its variables by vertical-then-horizontal legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegClause {
    pub side: Side,
    /// Containment depth; 1 for clauses nesting no other clause.
    pub level: usize,
    /// Leg foot per distinct variable, left to right.
    pub legs: Vec<(Var, i64)>,
    pub point: (i64, i64),
}

impl LegClause {
    /// The polyline pieces of all legs.
    pub fn segments(&self) -> Vec<((i64, i64), (i64, i64))> {
        let y = self.point.1;
        let mut out = Vec::new();
        for &(_, x) in &self.legs {
            out.push(((x, 0), (x, y)));
            if x != self.point.0 {
                out.push(((x, y), self.point));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeLeggedDrawing {
    pub order: Vec<Var>,
    /// Closed x-interval of each variable segment on the axis, indexed by variable - 1.
    pub var_segments: Vec<(i64, i64)>,
    pub clauses: Vec<LegClause>,
}

impl ThreeLeggedDrawing {
    /// First pair of clauses whose legs meet, under exact integer geometry.
    pub fn find_crossing(&self) -> Option<(usize, usize)> {
        let segs: Vec<_> = self.clauses.iter().map(|c| c.segments()).collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                for a in &segs[i] {
                    for b in &segs[j] {
                        if segments_intersect(a.0, a.1, b.0, b.1) {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Sub-intervals of a clause between consecutive leg positions.
fn pieces(pos: &[usize]) -> Vec<(usize, usize)> {
    if pos.len() == 1 {
        return vec![(pos[0], pos[0])];
    }
    pos.windows(2).map(|w| (w[0], w[1])).collect()
}

fn fits(inner: &[usize], outer: &[usize]) -> bool {
    let (lo, hi) = (inner[0], inner[inner.len() - 1]);
    pieces(outer).iter().any(|&(a, b)| a <= lo && hi <= b)
}

/// Lays out `f` with variables along the axis in `order` and clause `j` on side `sides[j]`.
/// Clauses on one side must nest or be disjoint; an inner clause must also avoid the
/// middle leg of any clause enclosing it.
pub fn three_legged_layout(f: &Formula, order: &[Var], sides: &[Side]) -> Result<ThreeLeggedDrawing, LayoutError> {
    let nv = f.num_vars() as usize;
    let mut rank = vec![usize::MAX; nv];
    for (i, &v) in order.iter().enumerate() {
        if v == 0 || v as usize > nv || rank[v as usize - 1] != usize::MAX {
            return Err(LayoutError::Invalid(format!("order is not a permutation of the variables (at {v})")));
        }
        rank[v as usize - 1] = i;
    }
    if order.len() != nv {
        return Err(LayoutError::Invalid("order must list every variable".into()));
    }
    if sides.len() != f.num_clauses() {
        return Err(LayoutError::Invalid("one side per clause is required".into()));
    }
    let m = f.num_clauses();
    let mut pos: Vec<Vec<usize>> = Vec::with_capacity(m);
    for j in 0..m {
        let p: BTreeSet<usize> = f.clause(j).iter().map(|l| rank[l.var as usize - 1]).collect();
        if p.is_empty() {
            return Err(LayoutError::Invalid(format!("clause {} is empty", j + 1)));
        }
        pos.push(p.into_iter().collect());
    }

    // inside[j] lists clauses nested directly or transitively under clause j.
    let mut inside: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if sides[i] != sides[j] {
                continue;
            }
            let (a, b) = (&pos[i], &pos[j]);
            let disjoint = a[a.len() - 1] <= b[0] || b[b.len() - 1] <= a[0];
            let (i_in_j, j_in_i) = (fits(a, b), fits(b, a));
            if i_in_j && j_in_i {
                // Identical single-piece spans: the lower index goes inside.
                inside[j].push(i);
            } else if i_in_j {
                inside[j].push(i);
            } else if j_in_i {
                inside[i].push(j);
            } else if !disjoint {
                return Err(LayoutError::NonLaminar(sides[i].name(), i + 1, j + 1));
            } else {
                continue;
            }
        }
    }
    let mut level = vec![0usize; m];
    let mut by_size: Vec<usize> = (0..m).collect();
    by_size.sort_by_key(|&j| inside[j].len());
    for &j in &by_size {
        level[j] = 1 + inside[j].iter().map(|&i| level[i]).max().unwrap_or(0);
    }

    // Order the legs on each variable: clauses ending there (inner first), single-leg
    // clauses, the clause using it as a middle leg, then clauses starting there (outer
    // first). Below-side legs follow the above-side ones.
    let mut slots: Vec<Vec<(usize, (u8, i64))>> = vec![Vec::new(); nv];
    for j in 0..m {
        let p = &pos[j];
        let (lo, hi) = (p[0], p[p.len() - 1]);
        for &r in p {
            let lv = level[j] as i64;
            let key = if lo == hi {
                (1, lv)
            } else if r == hi {
                (0, lv)
            } else if r == lo {
                (3, -lv)
            } else {
                (2, lv)
            };
            slots[r].push((j, key));
        }
    }
    let mut var_segments = vec![(0i64, 0i64); nv];
    let mut foot: Vec<Vec<(Var, i64)>> = vec![Vec::new(); m];
    let mut x = 0i64;
    for r in 0..nv {
        let v = order[r];
        let s = &mut slots[r];
        s.sort_by_key(|&(j, key)| (sides[j] == Side::Below, key, j));
        let start = x;
        for &(j, _) in s.iter() {
            foot[j].push((v, x));
            x += 1;
        }
        if s.is_empty() {
            x += 1;
        }
        var_segments[v as usize - 1] = (start, x - 1);
        x += 1;
    }
    let clauses = (0..m)
        .map(|j| {
            let mut legs = std::mem::take(&mut foot[j]);
            legs.sort_by_key(|&(_, x)| x);
            let px = if legs.len() == 3 { legs[1].1 } else { legs[0].1 };
            LegClause { side: sides[j], level: level[j], legs, point: (px, sides[j].sign() * level[j] as i64) }
        })
        .collect();
    let d = ThreeLeggedDrawing { order: order.to_vec(), var_segments, clauses };
    if let Some((i, j)) = d.find_crossing() {
        return Err(LayoutError::NonLaminar(sides[i].name(), i + 1, j + 1));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_clause() {
        let f = Formula::from_dimacs_clauses(3, &[&[1, 2, 3]]).unwrap();
        let d = three_legged_layout(&f, &[1, 2, 3], &[Side::Above]).unwrap();
        assert_eq!(d.clauses[0].level, 1);
        assert_eq!(d.clauses[0].legs.len(), 3);
    }

    #[test]
    fn nested_levels() {
        let f = Formula::from_dimacs_clauses(4, &[&[1, 2, 3], &[1, 3, 4]]).unwrap();
        let d = three_legged_layout(&f, &[1, 2, 3, 4], &[Side::Above, Side::Above]).unwrap();
        assert_eq!((d.clauses[0].level, d.clauses[1].level), (1, 2));
    }

    #[test]
    fn interleaved_rejected() {
        let f = Formula::from_dimacs_clauses(4, &[&[1, 2, 3], &[2, 3, 4]]).unwrap();
        let e = three_legged_layout(&f, &[1, 2, 3, 4], &[Side::Above, Side::Above]).unwrap_err();
        assert_eq!(e, LayoutError::NonLaminar("above", 1, 2));
        assert!(three_legged_layout(&f, &[1, 2, 3, 4], &[Side::Above, Side::Below]).is_ok());
    }

    #[test]
    fn inner_clause_blocks_middle_leg() {
        let f = Formula::from_dimacs_clauses(4, &[&[1, 3], &[1, 2, 4]]).unwrap();
        assert!(three_legged_layout(&f, &[1, 2, 3, 4], &[Side::Above, Side::Above]).is_err());
    }
}
