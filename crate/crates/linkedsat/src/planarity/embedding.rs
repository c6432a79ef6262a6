use std::collections::{HashMap, HashSet};

use super::graph::Graph;

/// Rotation system stored as clockwise/counterclockwise successor maps per vertex.
#[derive(Clone, Debug, Default)]
pub struct Embedding {
    cw: Vec<HashMap<usize, usize>>,
    ccw: Vec<HashMap<usize, usize>>,
    first: Vec<Option<usize>>,
}

impl Embedding {
    pub fn new(n: usize) -> Embedding {
        Embedding { cw: vec![HashMap::new(); n], ccw: vec![HashMap::new(); n], first: vec![None; n] }
    }

    /// Builds an embedding from clockwise neighbor lists.
    pub fn from_rotation(rot: &[Vec<usize>]) -> Embedding {
        let mut e = Embedding::new(rot.len());
        for (v, list) in rot.iter().enumerate() {
            let mut prev = None;
            for &w in list {
                e.add_half_edge_cw(v, w, prev);
                prev = Some(w);
            }
        }
        e
    }

    pub fn n(&self) -> usize {
        self.cw.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.cw.push(HashMap::new());
        self.ccw.push(HashMap::new());
        self.first.push(None);
        self.cw.len() - 1
    }

    pub fn has_half_edge(&self, v: usize, w: usize) -> bool {
        self.cw[v].contains_key(&w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.cw[v].len()
    }

    /// Inserts `v -> w` clockwise right after `v -> r`; with no reference `w` becomes the only neighbor.
    pub fn add_half_edge_cw(&mut self, v: usize, w: usize, r: Option<usize>) {
        match r {
            None => {
                self.cw[v].insert(w, w);
                self.ccw[v].insert(w, w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let after = self.cw[v][&r];
                self.cw[v].insert(r, w);
                self.cw[v].insert(w, after);
                self.ccw[v].insert(after, w);
                self.ccw[v].insert(w, r);
            }
        }
    }

    /// Inserts `v -> w` counterclockwise right before `v -> r`.
    pub fn add_half_edge_ccw(&mut self, v: usize, w: usize, r: Option<usize>) {
        match r {
            None => self.add_half_edge_cw(v, w, None),
            Some(r) => {
                let before = self.ccw[v][&r];
                self.add_half_edge_cw(v, w, Some(before));
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    /// Inserts `v -> w` as the first neighbor of `v`.
    pub fn add_half_edge_first(&mut self, v: usize, w: usize) {
        let r = self.first[v];
        self.add_half_edge_ccw(v, w, r);
        self.first[v] = Some(w);
    }

    pub fn cw(&self, v: usize, w: usize) -> usize {
        self.cw[v][&w]
    }

    pub fn ccw(&self, v: usize, w: usize) -> usize {
        self.ccw[v][&w]
    }

    /// Neighbors of `v` in clockwise order starting at the first neighbor.
    pub fn neighbors_cw(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cw[v].len());
        if let Some(s) = self.first[v] {
            let mut w = s;
            loop {
                out.push(w);
                w = self.cw[v][&w];
                if w == s {
                    break;
                }
            }
        }
        out
    }

    /// Half-edge following `v -> w` on its face.
    pub fn next_face_half_edge(&self, v: usize, w: usize) -> (usize, usize) {
        (w, self.ccw[w][&v])
    }

    /// Vertex cycle of the face to the right of half-edge `v -> w`.
    pub fn traverse_face(&self, v: usize, w: usize) -> Vec<usize> {
        let mut face = vec![v];
        let (mut a, mut b) = self.next_face_half_edge(v, w);
        while (a, b) != (v, w) {
            face.push(a);
            let nx = self.next_face_half_edge(a, b);
            a = nx.0;
            b = nx.1;
        }
        face
    }

    /// All faces, each given by its vertex cycle.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for v in 0..self.n() {
            for w in self.neighbors_cw(v) {
                if seen.contains(&(v, w)) {
                    continue;
                }
                let face = self.traverse_face(v, w);
                for i in 0..face.len() {
                    seen.insert((face[i], face[(i + 1) % face.len()]));
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Face count of the whole plane map: per-component outer faces are merged into one.
    pub fn face_count(&self) -> usize {
        if self.n() == 0 {
            return 1;
        }
        let (_, k) = self.graph().components();
        let isolated = (0..self.n()).filter(|&v| self.cw[v].is_empty()).count();
        self.faces().len() + isolated + 1 - k
    }

    /// Underlying simple graph.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for v in 0..self.n() {
            for w in self.neighbors_cw(v) {
                if v < w {
                    g.add_edge(v, w);
                }
            }
        }
        g
    }

    /// Checks symmetry and Euler's relation `n - m + f = 1 + k`.
    pub fn euler_ok(&self) -> bool {
        for v in 0..self.n() {
            for w in self.neighbors_cw(v) {
                if !self.has_half_edge(w, v) {
                    return false;
                }
            }
        }
        let g = self.graph();
        let (_, k) = g.components();
        let (n, m, f) = (self.n() as i64, g.m() as i64, self.face_count() as i64);
        n - m + f == 1 + k as i64
    }

    /// Rotation text: one `r <v> <w...>` line per vertex, clockwise.
    pub fn to_rotation_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n() {
            s.push_str(&format!("r {v}"));
            for w in self.neighbors_cw(v) {
                s.push_str(&format!(" {w}"));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_two_faces() {
        let e = Embedding::from_rotation(&[vec![1, 2], vec![2, 0], vec![0, 1]]);
        assert_eq!(e.faces().len(), 2);
        assert!(e.euler_ok());
    }

    #[test]
    fn bad_k4_rotation_fails_euler() {
        // K4 with rotations that do not form a planar map.
        let e = Embedding::from_rotation(&[vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]);
        assert!(!e.euler_ok());
    }

    #[test]
    fn insertion_orders() {
        let mut e = Embedding::new(4);
        e.add_half_edge_cw(0, 1, None);
        e.add_half_edge_cw(0, 2, Some(1));
        e.add_half_edge_ccw(0, 3, Some(1));
        assert_eq!(e.neighbors_cw(0), vec![3, 1, 2]);
        e.add_half_edge_first(1, 0);
        assert_eq!(e.neighbors_cw(1), vec![0]);
    }
}
