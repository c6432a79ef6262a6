//! Incidence graphs, planarity testing, Kuratowski witnesses and cycle augmentation.

mod embedding;
mod graph;
mod kuratowski;
mod lr;

use std::collections::HashMap;

use thiserror::Error;

pub use embedding::Embedding;
pub use graph::Graph;
pub use kuratowski::{find_witness, verify_witness, KuratowskiKind, Witness};

use crate::formula::{Formula, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("cycle must have at least 3 distinct vertices")]
    BadCycle,
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// One incidence edge. `negated` is the polarity of the first occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceEdge {
    pub var: Var,
    pub clause: usize,
    pub negated: bool,
}

/// Bipartite variable/clause graph. Variable `v` is vertex `v - 1`; clause `j` is vertex `num_vars + j`.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub graph: Graph,
    pub edges: Vec<IncidenceEdge>,
    pub embedding: Option<Embedding>,
}

impl IncidenceGraph {
    pub fn var_vertex(&self, v: Var) -> usize {
        v as usize - 1
    }

    pub fn clause_vertex(&self, j: usize) -> usize {
        self.num_vars + j
    }

    pub fn is_var_vertex(&self, x: usize) -> bool {
        x < self.num_vars
    }

    /// Computes and stores a planar rotation system; returns whether one exists.
    pub fn embed(&mut self) -> bool {
        match planarity_test(&self.graph) {
            PlanarityResult::Planar(e) => {
                self.embedding = Some(e);
                true
            }
            PlanarityResult::NonPlanar(_) => false,
        }
    }

    /// Polarity lookup keyed by (variable vertex, clause vertex).
    pub fn polarity_map(&self) -> HashMap<(usize, usize), bool> {
        self.edges
            .iter()
            .map(|e| ((self.var_vertex(e.var), self.clause_vertex(e.clause)), e.negated))
            .collect()
    }
}

pub fn build_incidence_graph(f: &Formula) -> Result<IncidenceGraph, GraphError> {
    let nv = f.num_vars() as usize;
    let mut graph = Graph::new(nv + f.num_clauses());
    let mut edges = Vec::new();
    for (j, c) in f.clauses().iter().enumerate() {
        if c.is_empty() {
            return Err(GraphError::EmptyClause(j));
        }
        for l in c {
            if graph.add_edge(l.var as usize - 1, nv + j) {
                edges.push(IncidenceEdge { var: l.var, clause: j, negated: l.negated });
            }
        }
    }
    Ok(IncidenceGraph { num_vars: nv, num_clauses: f.num_clauses(), graph, edges, embedding: None })
}

#[derive(Clone, Debug)]
pub enum PlanarityResult {
    Planar(Embedding),
    NonPlanar(Witness),
}

impl PlanarityResult {
    pub fn is_planar(&self) -> bool {
        matches!(self, PlanarityResult::Planar(_))
    }
}

pub fn is_planar(g: &Graph) -> bool {
    lr::lr_planarity(g).is_some()
}

/// Embedding on success, Kuratowski subdivision on failure.
pub fn planarity_test(g: &Graph) -> PlanarityResult {
    match lr::lr_planarity(g) {
        Some(e) => PlanarityResult::Planar(e),
        None => PlanarityResult::NonPlanar(find_witness(g)),
    }
}

#[derive(Clone, Debug)]
pub struct UnionResult {
    pub result: PlanarityResult,
    /// Cycle edges that were already edges of the base graph.
    pub shared_edges: usize,
}

impl UnionResult {
    pub fn is_planar(&self) -> bool {
        self.result.is_planar()
    }

    /// More than two shared edges is reported but not treated as invalid.
    pub fn shared_warning(&self) -> bool {
        self.shared_edges > 2
    }
}

pub fn union_graph(g: &Graph, cycles: &[Vec<usize>]) -> Result<(Graph, usize), GraphError> {
    let mut u = g.clone();
    let mut shared = 0;
    for c in cycles {
        if c.len() < 3 {
            return Err(GraphError::BadCycle);
        }
        let mut seen = std::collections::HashSet::new();
        for &x in c {
            if x >= g.n() {
                return Err(GraphError::UnknownVertex(x));
            }
            if !seen.insert(x) {
                return Err(GraphError::BadCycle);
            }
        }
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            if g.has_edge(a, b) {
                shared += 1;
            }
            u.add_edge(a, b);
        }
    }
    Ok((u, shared))
}

/// Planarity of `g` plus the given cycles, with edges already in `g` not duplicated.
pub fn union_planar(g: &Graph, cycles: &[Vec<usize>]) -> Result<UnionResult, GraphError> {
    let (u, shared) = union_graph(g, cycles)?;
    Ok(UnionResult { result: planarity_test(&u), shared_edges: shared })
}

/// Parses the edge-list format (`v <id>`, `c <id>`, `e <a> <b>`). Ids are arbitrary tokens
/// mapped to dense indices in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<String>), GraphError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut names: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t: Vec<&str> = raw.split_whitespace().collect();
        if t.is_empty() || t[0].starts_with('#') {
            continue;
        }
        let mut intern = |s: &str, names: &mut Vec<String>| -> usize {
            *ids.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        };
        match (t[0], t.len()) {
            ("v", 2) | ("c", 2) => {
                intern(t[1], &mut names);
            }
            ("e", 3) => {
                let a = intern(t[1], &mut names);
                let b = intern(t[2], &mut names);
                edges.push((a, b));
            }
            _ => return Err(GraphError::Format { line, msg: format!("unrecognized line `{raw}`") }),
        }
    }
    Ok((Graph::from_edges(names.len(), &edges), names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(a, b);
            }
        }
        g
    }

    #[test]
    fn k4_planar_four_faces() {
        match planarity_test(&complete(4)) {
            PlanarityResult::Planar(e) => {
                assert_eq!(e.face_count(), 4);
                assert!(e.euler_ok());
            }
            _ => panic!("K4 is planar"),
        }
    }

    #[test]
    fn k5_and_k33_witnesses() {
        match planarity_test(&complete(5)) {
            PlanarityResult::NonPlanar(w) => assert_eq!(w.kind, KuratowskiKind::K5),
            _ => panic!(),
        }
        match planarity_test(&k33()) {
            PlanarityResult::NonPlanar(w) => assert_eq!(w.kind, KuratowskiKind::K33),
            _ => panic!(),
        }
    }

    #[test]
    fn incidence_collapses_duplicates() {
        let f = Formula::from_dimacs_clauses(2, &[&[1, 1, 2]]).unwrap();
        let g = build_incidence_graph(&f).unwrap();
        assert_eq!(g.graph.m(), 2);
        let f = Formula::from_dimacs_clauses(2, &[&[-1, 2], &[1, -2]]).unwrap();
        let g = build_incidence_graph(&f).unwrap();
        assert_eq!(g.graph.m(), 4);
        assert!((0..4).all(|v| g.graph.degree(v) == 2));
        let f = Formula::from_clauses(1, vec![vec![]]).unwrap();
        assert_eq!(build_incidence_graph(&f).unwrap_err(), GraphError::EmptyClause(0));
    }

    #[test]
    fn union_examples() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let r = union_planar(&c4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(r.is_planar());
        assert_eq!(r.shared_edges, 4);
        assert!(r.shared_warning());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(union_planar(&star, &[vec![1, 2, 3]]).unwrap().is_planar());
        assert!(!union_planar(&k33(), &[vec![0, 3, 1]]).unwrap().is_planar());
        assert_eq!(union_planar(&star, &[vec![1, 2, 9]]).unwrap_err(), GraphError::UnknownVertex(9));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let (h, names) = parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(h.m(), 2);
        assert_eq!(names, vec!["0", "1", "2"]);
        assert!(parse_edge_list("x 1\n").is_err());
    }
}
