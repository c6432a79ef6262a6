//! Shift-method straight-line drawing on an O(n) x O(n) grid: triangulate a planar
//! embedding, compute a canonical ordering, then place vertices by shifting contours.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{GridDrawing, LayoutError};
use crate::planarity::{Embedding, Graph, IncidenceGraph, PlanarityResult, planarity_test};

/// Adds the chord `a - c` inside the face where `a`s neighbor `b` and `c`s neighbor `b` meet.
fn add_chord(emb: &mut Embedding, a: usize, b: usize, c: usize) {
    emb.add_half_edge_cw(a, c, Some(b));
    emb.add_half_edge_ccw(c, a, Some(b));
}

fn make_biconnected(emb: &mut Embedding, start: usize, out: usize, counted: &mut HashSet<(usize, usize)>) -> Vec<usize> {
    if counted.contains(&(start, out)) {
        return Vec::new();
    }
    counted.insert((start, out));
    let (mut v1, mut v2) = (start, out);
    let mut face = vec![start];
    let mut face_set: HashSet<usize> = HashSet::from([start]);
    let (_, mut v3) = emb.next_face_half_edge(v1, v2);
    while v2 != start || v3 != out {
        if face_set.contains(&v2) {
            add_chord(emb, v1, v2, v3);
            counted.insert((v2, v3));
            counted.insert((v3, v1));
            v2 = v1;
        } else {
            face_set.insert(v2);
            face.push(v2);
        }
        v1 = v2;
        let nx = emb.next_face_half_edge(v2, v3);
        v2 = nx.0;
        v3 = nx.1;
        counted.insert((v1, v2));
    }
    face
}

fn has_edge(emb: &Embedding, a: usize, b: usize) -> bool {
    emb.has_half_edge(a, b)
}

fn triangulate_face(emb: &mut Embedding, mut v1: usize, mut v2: usize) {
    let (_, mut v3) = emb.next_face_half_edge(v1, v2);
    let (_, mut v4) = emb.next_face_half_edge(v2, v3);
    if v1 == v2 || v1 == v3 {
        return;
    }
    while v1 != v4 {
        if has_edge(emb, v1, v3) {
            v1 = v2;
            v2 = v3;
            v3 = v4;
        } else {
            add_chord(emb, v1, v2, v3);
            v2 = v3;
            v3 = v4;
        }
        v4 = emb.next_face_half_edge(v2, v3).1;
    }
}

/// Fully triangulates a connected embedding; returns the outer triangle.
fn triangulate(emb: &mut Embedding) -> [usize; 3] {
    let mut counted = HashSet::new();
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut outer = 0usize;
    for v in 0..emb.n() {
        for w in emb.neighbors_cw(v) {
            let f = make_biconnected(emb, v, w, &mut counted);
            if !f.is_empty() {
                if f.len() > faces.get(outer).map_or(0, |o| o.len()) {
                    outer = faces.len();
                }
                faces.push(f);
            }
        }
    }
    for f in &faces {
        triangulate_face(emb, f[0], f[1]);
    }
    let v1 = faces[outer][0];
    let v2 = faces[outer][1];
    let v3 = emb.ccw(v2, v1);
    [v1, v2, v3]
}

fn canonical_ordering(emb: &Embedding, outer: [usize; 3]) -> Vec<(usize, Vec<usize>)> {
    let n = emb.n();
    let [v1, v2, _] = outer;
    let mut chords: HashMap<usize, i64> = HashMap::new();
    let mut marked: HashSet<usize> = HashSet::new();
    let mut ready: BTreeSet<usize> = outer.iter().copied().collect();
    let mut ccw_nbr: HashMap<usize, usize> = HashMap::new();
    let mut prev = v2;
    for &x in &outer[2..] {
        ccw_nbr.insert(prev, x);
        prev = x;
    }
    ccw_nbr.insert(prev, v1);
    let mut cw_nbr: HashMap<usize, usize> = HashMap::new();
    let mut prev = v1;
    for idx in (1..outer.len()).rev() {
        cw_nbr.insert(prev, outer[idx]);
        prev = outer[idx];
    }

    let is_outer_nbr = |cw: &HashMap<usize, usize>, ccw: &HashMap<usize, usize>, x: usize, y: usize| {
        match (ccw.get(&x), cw.get(&x)) {
            (None, Some(&c)) => c == y,
            (Some(&a), None) => a == y,
            (Some(&a), Some(&c)) => a == y || c == y,
            (None, None) => false,
        }
    };
    let on_outer = |marked: &HashSet<usize>, ccw: &HashMap<usize, usize>, x: usize| {
        !marked.contains(&x) && (ccw.contains_key(&x) || x == v1)
    };

    for &v in &outer {
        for nbr in emb.neighbors_cw(v) {
            if on_outer(&marked, &ccw_nbr, nbr) && !is_outer_nbr(&cw_nbr, &ccw_nbr, v, nbr) {
                *chords.entry(v).or_default() += 1;
                ready.remove(&v);
            }
        }
    }
    let mut order: Vec<(usize, Vec<usize>)> = vec![(usize::MAX, Vec::new()); n];
    order[0] = (v1, Vec::new());
    order[1] = (v2, Vec::new());
    ready.remove(&v1);
    ready.remove(&v2);

    for k in (2..n).rev() {
        let v = ready.pop_first().expect("canonical ordering: no vertex ready");
        marked.insert(v);
        let (mut wp, mut wq) = (None, None);
        for nbr in emb.neighbors_cw(v) {
            if marked.contains(&nbr) {
                continue;
            }
            if on_outer(&marked, &ccw_nbr, nbr) {
                if nbr == v1 {
                    wp = Some(v1);
                } else if nbr == v2 {
                    wq = Some(v2);
                } else if cw_nbr.get(&nbr) == Some(&v) {
                    wp = Some(nbr);
                } else {
                    wq = Some(nbr);
                }
            }
            if wp.is_some() && wq.is_some() {
                break;
            }
        }
        let (wp, wq) = (wp.expect("wp"), wq.expect("wq"));
        let mut wp_wq = vec![wp];
        let mut nbr = wp;
        while nbr != wq {
            let next = emb.ccw(v, nbr);
            wp_wq.push(next);
            cw_nbr.insert(nbr, next);
            ccw_nbr.insert(next, nbr);
            nbr = next;
        }
        if wp_wq.len() == 2 {
            for w in [wp, wq] {
                let c = chords.entry(w).or_default();
                *c -= 1;
                if *c == 0 {
                    ready.insert(w);
                }
            }
        } else {
            let new_nodes: HashSet<usize> = wp_wq[1..wp_wq.len() - 1].iter().copied().collect();
            let mut inner: Vec<usize> = new_nodes.iter().copied().collect();
            inner.sort_unstable();
            for w in inner {
                ready.insert(w);
                for nbr in emb.neighbors_cw(w) {
                    if on_outer(&marked, &ccw_nbr, nbr) && !is_outer_nbr(&cw_nbr, &ccw_nbr, w, nbr) {
                        *chords.entry(w).or_default() += 1;
                        ready.remove(&w);
                        if !new_nodes.contains(&nbr) {
                            *chords.entry(nbr).or_default() += 1;
                            ready.remove(&nbr);
                        }
                    }
                }
            }
        }
        order[k] = (v, wp_wq);
    }
    order
}

fn shift_positions(emb: &Embedding, outer: [usize; 3]) -> Vec<(i64, i64)> {
    let n = emb.n();
    let order = canonical_ordering(emb, outer);
    let mut left: Vec<Option<usize>> = vec![None; n];
    let mut right: Vec<Option<usize>> = vec![None; n];
    let mut dx = vec![0i64; n];
    let mut y = vec![0i64; n];
    let (v1, v2, v3) = (order[0].0, order[1].0, order[2].0);
    dx[v1] = 0;
    right[v1] = Some(v3);
    dx[v2] = 1;
    dx[v3] = 1;
    y[v3] = 1;
    right[v3] = Some(v2);
    for (vk, contour) in order.iter().skip(3) {
        let vk = *vk;
        let wp = contour[0];
        let wp1 = contour[1];
        let wq = contour[contour.len() - 1];
        let wq1 = contour[contour.len() - 2];
        let multi = contour.len() > 2;
        dx[wp1] += 1;
        dx[wq] += 1;
        let span: i64 = contour[1..].iter().map(|&x| dx[x]).sum();
        dx[vk] = (-y[wp] + span + y[wq]).div_euclid(2);
        y[vk] = (y[wp] + span + y[wq]).div_euclid(2);
        dx[wq] = span - dx[vk];
        if multi {
            dx[wp1] -= dx[vk];
        }
        right[wp] = Some(vk);
        right[vk] = Some(wq);
        if multi {
            left[vk] = Some(wp1);
            right[wq1] = None;
        } else {
            left[vk] = None;
        }
    }
    let mut pos = vec![(0i64, 0i64); n];
    pos[v1] = (0, y[v1]);
    let mut stack = vec![v1];
    while let Some(p) = stack.pop() {
        for child in [left[p], right[p]].into_iter().flatten() {
            pos[child] = (pos[p].0 + dx[child], y[child]);
            stack.push(child);
        }
    }
    pos
}

/// Straight-line drawing of a planar graph with integer coordinates in a (2n-4) x (n-2) box.
pub fn grid_positions(g: &Graph) -> Result<Vec<(i64, i64)>, LayoutError> {
    let n = g.n();
    if n < 4 {
        let defaults = [(0, 0), (2, 0), (1, 1)];
        return Ok(defaults[..n].to_vec());
    }
    // Join components through one representative each; bridges keep the graph planar.
    let mut h = g.clone();
    let (comp, k) = g.components();
    let mut reps = vec![usize::MAX; k];
    for v in 0..n {
        if reps[comp[v]] == usize::MAX {
            reps[comp[v]] = v;
        }
    }
    for w in reps.windows(2) {
        h.add_edge(w[0], w[1]);
    }
    let mut emb = match planarity_test(&h) {
        PlanarityResult::Planar(e) => e,
        PlanarityResult::NonPlanar(_) => return Err(LayoutError::NonPlanar),
    };
    let outer = triangulate(&mut emb);
    Ok(shift_positions(&emb, outer))
}

pub fn grid_embed(g: &IncidenceGraph) -> Result<GridDrawing, LayoutError> {
    let pos = grid_positions(&g.graph)?;
    let edges = g.edges.iter().map(|e| (g.var_vertex(e.var), g.clause_vertex(e.clause))).collect();
    let d = GridDrawing { num_vars: g.num_vars, pos, edges };
    if let Some((a, b)) = d.find_crossing() {
        return Err(LayoutError::Crossing(a, b));
    }
    Ok(d)
}
