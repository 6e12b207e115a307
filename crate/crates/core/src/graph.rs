//! Plain simple graphs over `usize` vertex ids.
//!
//! Used for the neighbourhood subgraphs `G_v`, their unions, and the small
//! test graphs (K5, K3,3) fed to the genus oracle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

/// A finite simple undirected graph with ordered vertex and adjacency sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list; endpoints are added as vertices.
    /// Loops are ignored and repeated edges collapse.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Self {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::new();
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.add_vertex(u);
            return;
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.get(&v).into_iter().flat_map(|n| n.iter().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.values().map(BTreeSet::len).min()
    }

    /// Union of vertex and edge sets.
    pub fn union_with(&mut self, other: &SimpleGraph) {
        for (&v, n) in &other.adj {
            let entry = self.adj.entry(v).or_default();
            entry.extend(n.iter().copied());
        }
    }

    pub fn union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = self.clone();
        g.union_with(other);
        g
    }

    pub fn shared_vertices(&self, other: &SimpleGraph) -> BTreeSet<usize> {
        self.adj
            .keys()
            .filter(|v| other.adj.contains_key(v))
            .copied()
            .collect()
    }

    pub fn induced(&self, vertices: &BTreeSet<usize>) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for &v in vertices {
            if let Some(n) = self.adj.get(&v) {
                g.add_vertex(v);
                for &w in n {
                    if vertices.contains(&w) {
                        g.add_edge(v, w);
                    }
                }
            }
        }
        g
    }

    /// Connected components, each as an induced subgraph, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<SimpleGraph> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(self.induced(&comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Relabels vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for (&v, n) in &self.adj {
            g.add_vertex(f(v));
            for &w in n {
                g.add_edge(f(v), f(w));
            }
        }
        g
    }
}
