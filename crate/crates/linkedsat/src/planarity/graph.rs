use std::collections::HashSet;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    set: HashSet<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], edges: Vec::new(), set: HashSet::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `{u,v}`; loops and duplicates are ignored. Returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n() && v < self.n(), "edge endpoint out of range");
        if u == v || !self.set.insert(key(u, v)) {
            return false;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
        true
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.set.contains(&key(u, v))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut k = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = k;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = k;
                        stack.push(w);
                    }
                }
            }
            k += 1;
        }
        (comp, k)
    }

    /// Same graph without the edge `{u,v}`.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let k = key(u, v);
        let mut g = Graph::new(self.n());
        for &(a, b) in &self.edges {
            if key(a, b) != k {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Edge-list text: `v <id>` per vertex, `e <a> <b>` per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n() {
            s.push_str(&format!("v {v}\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("e {a} {b}\n"));
        }
        s
    }
}
