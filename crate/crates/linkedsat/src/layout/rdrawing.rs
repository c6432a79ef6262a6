use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{GridDrawing, LayoutError, Q};

/// Extra segment pairs inserted after each original column of the given kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PaddingSpec {
    pub pairs_after_variable_segment: usize,
    pub pairs_after_clause_segment: usize,
}

impl PaddingSpec {
    pub const NONE: PaddingSpec = PaddingSpec { pairs_after_variable_segment: 0, pairs_after_clause_segment: 0 };

    pub fn new(after_variable: usize, after_clause: usize) -> PaddingSpec {
        PaddingSpec { pairs_after_variable_segment: after_variable, pairs_after_clause_segment: after_clause }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnKind {
    Variable,
    Clause,
}

impl ColumnKind {
    pub fn tag(self) -> char {
        match self {
            ColumnKind::Variable => 'V',
            ColumnKind::Clause => 'C',
        }
    }

    fn other(self) -> ColumnKind {
        match self {
            ColumnKind::Variable => ColumnKind::Clause,
            ColumnKind::Clause => ColumnKind::Variable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Column {
    pub kind: ColumnKind,
    pub x: i64,
    /// x-coordinate in the input drawing for original columns; padding columns have none.
    pub original: Option<i64>,
    /// Position in input coordinates, used to interpolate edge heights.
    pub phi: Q,
}

/// Column structure of a parity-scaled drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDrawing {
    pub num_vars: usize,
    pub columns: Vec<Column>,
    pub vertex_column: Vec<usize>,
    pub vertex_rank: Vec<usize>,
    pub vertex_y: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
    /// Per edge, the strictly intermediate columns it crosses, ordered from the variable
    /// end to the clause end, with the exact crossing height.
    pub crossings: Vec<Vec<(usize, Q)>>,
}

impl RDrawing {
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Clause segments strictly between two columns.
    pub fn clause_segments_between(&self, a: usize, b: usize) -> usize {
        let (lo, hi) = (a.min(b), a.max(b));
        (lo + 1..hi).filter(|&i| self.columns[i].kind == ColumnKind::Clause).count()
    }

    /// `column <i> <V|C> <x>` lines followed by `vertex <name> <column> <rank>` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.columns.iter().enumerate() {
            let _ = writeln!(s, "column {} {} {}", i, c.kind.tag(), c.x);
        }
        for v in 0..self.vertex_column.len() {
            let name = if v < self.num_vars { format!("v{}", v + 1) } else { format!("c{}", v - self.num_vars + 1) };
            let _ = writeln!(s, "vertex {} {} {}", name, self.vertex_column[v], self.vertex_rank[v]);
        }
        s
    }

    /// Checks alternation, vertex placement by kind and consecutive crossing lists.
    pub fn check_invariants(&self) -> Result<(), String> {
        for w in self.columns.windows(2) {
            if w[0].kind == w[1].kind {
                return Err(format!("columns at x={} and x={} have the same kind", w[0].x, w[1].x));
            }
        }
        for (v, &c) in self.vertex_column.iter().enumerate() {
            let want = if v < self.num_vars { ColumnKind::Variable } else { ColumnKind::Clause };
            if self.columns[c].kind != want {
                return Err(format!("vertex {v} sits on a column of the wrong kind"));
            }
        }
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (ca, cb) = (self.vertex_column[a] as i64, self.vertex_column[b] as i64);
            let step = if cb > ca { 1 } else { -1 };
            let want: Vec<usize> = (1..(cb - ca).abs()).map(|k| (ca + step * k) as usize).collect();
            let got: Vec<usize> = self.crossings[e].iter().map(|c| c.0).collect();
            if want != got {
                return Err(format!("edge {e} does not cross consecutive columns"));
            }
        }
        Ok(())
    }
}

/// Column list for a parity-scaled drawing with `pad` pairs after original columns and
/// `extra` additional pairs immediately left of the given original clause columns.
pub fn build_r_drawing_with(
    d: &GridDrawing,
    pad: PaddingSpec,
    extra: &BTreeMap<i64, usize>,
) -> Result<RDrawing, LayoutError> {
    build_r_drawing_geom(d, None, pad, extra, false)
}

/// As [`build_r_drawing_with`], but edge heights are interpolated in `geometry` (one point
/// per vertex, x strictly increasing with the column) instead of in `d` itself. This is
/// how a swept drawing keeps one column per vertex while its edges follow the original
/// straight lines.
///
/// With `squeeze`, the `extra` columns before a clause are packed against it, closer than
/// any edge not incident to the clause can pass at the clause's height. This needs integer
/// geometry with pairwise distinct heights, as a swept drawing has.
pub fn build_r_drawing_geom(
    d: &GridDrawing,
    geometry: Option<&[(Q, Q)]>,
    pad: PaddingSpec,
    extra: &BTreeMap<i64, usize>,
    squeeze: bool,
) -> Result<RDrawing, LayoutError> {
    if !d.is_parity_scaled() {
        let v = (0..d.pos.len()).find(|&v| (d.pos[v].0.rem_euclid(2) == 0) != d.is_var(v)).unwrap();
        return Err(LayoutError::Parity(v, d.pos[v].0));
    }
    let n = d.pos.len();
    if n == 0 {
        return Ok(RDrawing {
            num_vars: 0,
            columns: Vec::new(),
            vertex_column: Vec::new(),
            vertex_rank: Vec::new(),
            vertex_y: Vec::new(),
            edges: Vec::new(),
            crossings: Vec::new(),
        });
    }
    let xmin = d.pos.iter().map(|p| p.0).min().unwrap();
    let xmax = d.pos.iter().map(|p| p.0).max().unwrap();
    let x0 = xmin - xmin.rem_euclid(2);
    // First the kinds and original x of every column, then interpolation positions.
    let mut kinds: Vec<(ColumnKind, Option<i64>)> = Vec::new();
    for x in x0..=xmax {
        let kind = if x.rem_euclid(2) == 0 { ColumnKind::Variable } else { ColumnKind::Clause };
        if kind == ColumnKind::Clause {
            for _ in 0..extra.get(&x).copied().unwrap_or(0) {
                kinds.push((ColumnKind::Clause, None));
                kinds.push((ColumnKind::Variable, None));
            }
        }
        kinds.push((kind, Some(x)));
        if x < xmax {
            let pairs = match kind {
                ColumnKind::Variable => pad.pairs_after_variable_segment,
                ColumnKind::Clause => pad.pairs_after_clause_segment,
            };
            for _ in 0..pairs {
                kinds.push((kind.other(), None));
                kinds.push((kind, None));
            }
        }
    }
    let geom: Vec<(Q, Q)> = match geometry {
        Some(g) if g.len() == n => g.to_vec(),
        Some(_) => return Err(LayoutError::Invalid("geometry does not match the drawing".into())),
        None => d.pos.iter().map(|p| (Q::from_integer(p.0 as i128), Q::from_integer(p.1 as i128))).collect(),
    };
    let original_phi = original_positions(d, &geom, x0, xmax)?;
    let originals: Vec<usize> = (0..kinds.len()).filter(|&i| kinds[i].1.is_some()).collect();
    let mut columns = Vec::with_capacity(kinds.len());
    for (i, &(kind, orig)) in kinds.iter().enumerate() {
        let phi = match orig {
            Some(x) => original_phi[&x],
            None => {
                let prev = *originals.iter().rev().find(|&&o| o < i).unwrap();
                let next = *originals.iter().find(|&&o| o > i).unwrap();
                let (a, b) = (original_phi[&kinds[prev].1.unwrap()], original_phi[&kinds[next].1.unwrap()]);
                a + (b - a) * Q::new((i - prev) as i128, (next - prev) as i128)
            }
        };
        columns.push(Column { kind, x: x0 + i as i64, original: orig, phi });
    }
    if squeeze {
        // An edge missing a vertex at its height does so by at least 1 / |dy| horizontally.
        let (lo, hi) = geom.iter().fold((geom[0].1, geom[0].1), |(lo, hi), p| (p.1.min(lo), p.1.max(hi)));
        let tiny = Q::new(1, 2) / (hi - lo + Q::from_integer(1));
        for &i in &originals {
            let Some(x) = kinds[i].1 else { continue };
            let k = 2 * extra.get(&x).copied().unwrap_or(0);
            if k == 0 || kinds[i].0 != ColumnKind::Clause {
                continue;
            }
            let phi = columns[i].phi;
            let before = (i - k).checked_sub(1).map_or(phi - Q::from_integer(1), |b| columns[b].phi);
            let room = (phi - before) / Q::from_integer(2);
            let eps = room.min(tiny) / Q::from_integer(k as i128 + 1);
            for j in 1..=k {
                columns[i - j].phi = phi - eps * Q::from_integer(j as i128);
            }
        }
    }
    let col_of_x: BTreeMap<i64, usize> = originals.iter().map(|&i| (kinds[i].1.unwrap(), i)).collect();
    let vertex_column: Vec<usize> = d.pos.iter().map(|p| col_of_x[&p.0]).collect();
    let vertex_y: Vec<i64> = d.pos.iter().map(|p| p.1).collect();
    let mut vertex_rank = vec![0; n];
    let mut per_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        per_col.entry(vertex_column[v]).or_default().push(v);
    }
    for vs in per_col.values_mut() {
        vs.sort_by_key(|&v| (vertex_y[v], v));
        for (r, &v) in vs.iter().enumerate() {
            vertex_rank[v] = r;
        }
    }
    let mut crossings = Vec::with_capacity(d.edges.len());
    for &(a, b) in &d.edges {
        let (ca, cb) = (vertex_column[a], vertex_column[b]);
        let ((xa, ya), (xb, yb)) = (geom[a], geom[b]);
        let cols: Vec<usize> = if ca < cb { (ca + 1..cb).collect() } else { (cb + 1..ca).rev().collect() };
        let list = cols
            .into_iter()
            .map(|k| {
                let t = (columns[k].phi - xa) / (xb - xa);
                (k, ya + t * (yb - ya))
            })
            .collect();
        crossings.push(list);
    }
    Ok(RDrawing { num_vars: d.num_vars, columns, vertex_column, vertex_rank, vertex_y, edges: d.edges.clone(), crossings })
}

/// Input position of every integer column `x0..=xmax`. Columns holding vertices take the
/// vertex's geometric x; the others are interpolated between their neighbours.
fn original_positions(d: &GridDrawing, geom: &[(Q, Q)], x0: i64, xmax: i64) -> Result<BTreeMap<i64, Q>, LayoutError> {
    let mut at: BTreeMap<i64, Q> = BTreeMap::new();
    for (v, p) in d.pos.iter().enumerate() {
        if let Some(old) = at.insert(p.0, geom[v].0) {
            if old != geom[v].0 {
                return Err(LayoutError::Invalid(format!("column {} holds vertices at different positions", p.0)));
            }
        }
    }
    let known: Vec<(i64, Q)> = at.iter().map(|(&x, &q)| (x, q)).collect();
    if known.windows(2).any(|w| w[1].1 <= w[0].1) {
        return Err(LayoutError::Invalid("geometry is not increasing along the columns".into()));
    }
    let mut out = BTreeMap::new();
    for x in x0..=xmax {
        let phi = match at.get(&x) {
            Some(&q) => q,
            None => {
                let next = known.iter().find(|k| k.0 > x);
                match (known.iter().rev().find(|k| k.0 < x), next) {
                    (Some(a), Some(b)) => a.1 + (b.1 - a.1) * Q::new((x - a.0) as i128, (b.0 - a.0) as i128),
                    (None, Some(b)) => b.1 - Q::from_integer((b.0 - x) as i128),
                    (Some(a), None) => a.1 + Q::from_integer((x - a.0) as i128),
                    (None, None) => unreachable!("the drawing has a vertex"),
                }
            }
        };
        out.insert(x, phi);
    }
    Ok(out)
}

pub fn build_r_drawing(d: &GridDrawing, pad: PaddingSpec) -> Result<RDrawing, LayoutError> {
    build_r_drawing_with(d, pad, &BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unpadded_columns() {
        let d = GridDrawing { num_vars: 1, pos: vec![(0, 0), (3, 0)], edges: vec![(0, 1)] };
        let r = build_r_drawing(&d, PaddingSpec::NONE).unwrap();
        let tags: String = r.columns.iter().map(|c| c.kind.tag()).collect();
        assert_eq!(tags, "VCVC");
        assert_eq!(r.columns.iter().map(|c| c.x).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(r.crossings[0].iter().map(|c| c.0).collect::<Vec<_>>(), vec![1, 2]);
        r.check_invariants().unwrap();
    }

    #[test]
    fn padding_counts() {
        let d = GridDrawing { num_vars: 2, pos: vec![(0, 0), (6, 0), (3, 1)], edges: vec![(0, 2), (1, 2)] };
        let r = build_r_drawing(&d, PaddingSpec::new(2, 1)).unwrap();
        r.check_invariants().unwrap();
        let (v0, v1, c) = (r.vertex_column[0], r.vertex_column[1], r.vertex_column[2]);
        assert_eq!(r.clause_segments_between(v0, c) % 2, 0);
        let r = build_r_drawing(&d, PaddingSpec::new(4, 3)).unwrap();
        let (v0, v1b, c) = (r.vertex_column[0], r.vertex_column[1], r.vertex_column[2]);
        assert_eq!(r.clause_segments_between(v0, c) % 4, 0);
        assert_eq!(r.clause_segments_between(c, v1b) % 4, 3);
        let _ = v1;
    }

    #[test]
    fn rejects_unscaled() {
        let d = GridDrawing { num_vars: 1, pos: vec![(1, 0), (3, 0)], edges: vec![(0, 1)] };
        assert!(matches!(build_r_drawing(&d, PaddingSpec::NONE), Err(LayoutError::Parity(0, 1))));
    }
}
