//! Validated triangulations of closed surfaces and the graph queries used by
//! the certificate code (`N(v)`, `G_v`, `e(A)`, `e(A, B)`).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::surface_map::{CombinatorialMap, FaceListError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("the map is disconnected")]
    Disconnected,
    #[error("the graph is not simple: edge {{{u},{v}}} is a loop or repeated")]
    NonSimple { u: usize, v: usize },
    #[error("face {face} has length {len}, not 3")]
    NonTriangularFace { face: usize, len: usize },
    #[error("faces {first} and {second} share {shared} edges")]
    FacePair {
        first: usize,
        second: usize,
        shared: usize,
    },
    #[error(transparent)]
    FaceList(#[from] FaceListError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
}

/// A map whose faces are triangles, no two of which share more than one edge.
#[derive(Clone, Debug)]
pub struct Triangulation {
    map: CombinatorialMap,
    faces: Vec<[usize; 3]>,
    euler_genus: usize,
    orientable: bool,
    adjacency: Vec<Vec<usize>>,
}

/// Checks that `map` is a triangulation. Conditions are tested in the order
/// connectivity, simplicity, triangular faces, face pairs; the first failure
/// is reported.
pub fn validate_triangulation(map: CombinatorialMap) -> Result<Triangulation, ValidationError> {
    if !map.is_connected() {
        return Err(ValidationError::Disconnected);
    }
    let mut seen = BTreeSet::new();
    for e in 0..map.edge_count() {
        let (u, v) = map.edge_endpoints(e);
        if u == v || !seen.insert((u.min(v), u.max(v))) {
            return Err(ValidationError::NonSimple { u, v });
        }
    }
    let traced = map.trace_faces();
    let mut faces = Vec::with_capacity(traced.len());
    for (i, f) in traced.iter().enumerate() {
        if f.len() != 3 {
            return Err(ValidationError::NonTriangularFace { face: i, len: f.len() });
        }
        faces.push([f[0], f[1], f[2]]);
    }
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); map.edge_count()];
    for (i, f) in faces.iter().enumerate() {
        for &d in f {
            faces_of_edge[d / 2].push(i);
        }
    }
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for fs in &faces_of_edge {
        if let [a, b] = fs[..] {
            *shared.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    if let Some((&(first, second), &n)) = shared.iter().find(|(&(a, b), &n)| a == b || n >= 2) {
        // a face meeting itself along an edge also counts as two shared sides
        return Err(ValidationError::FacePair {
            first,
            second,
            shared: if first == second { 2 } else { n },
        });
    }

    let euler_genus = map.euler_genus();
    let orientable = map.is_orientable();
    let mut adjacency = vec![Vec::new(); map.vertex_count()];
    for e in 0..map.edge_count() {
        let (u, v) = map.edge_endpoints(e);
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for n in &mut adjacency {
        n.sort_unstable();
    }
    let t = Triangulation {
        map,
        faces,
        euler_genus,
        orientable,
        adjacency,
    };
    debug_assert_eq!(
        t.edge_count() as i64,
        3 * (t.vertex_count() as i64 + t.euler_genus as i64 - 2)
    );
    Ok(t)
}

impl Triangulation {
    /// Reconstructs and validates a triangulation from its face triples.
    pub fn from_faces(triples: &[[usize; 3]]) -> Result<Self, ValidationError> {
        validate_triangulation(CombinatorialMap::from_face_list(triples)?)
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn euler_genus(&self) -> usize {
        self.euler_genus
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.map.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Faces as dart triples in traversal order.
    pub fn face_darts(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Faces as vertex triples in traversal order.
    pub fn face_triples(&self) -> Vec<[usize; 3]> {
        self.faces
            .iter()
            .map(|f| f.map(|d| self.map.origin(d)))
            .collect()
    }

    /// Faces as sorted vertex triples, sorted lexicographically.
    pub fn sorted_faces(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = self
            .face_triples()
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Edges as sorted endpoint pairs, in edge-index order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count())
            .map(|e| {
                let (u, v) = self.map.edge_endpoints(e);
                (u.min(v), u.max(v))
            })
            .collect()
    }

    pub(crate) fn nbrs(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub(crate) fn deg(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub(crate) fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    fn check(&self, v: usize) -> Result<(), QueryError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(QueryError::UnknownVertex(v))
        }
    }

    pub fn degree(&self, v: usize) -> Result<usize, QueryError> {
        self.check(v)?;
        Ok(self.deg(v))
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize], QueryError> {
        self.check(v)?;
        Ok(self.nbrs(v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool, QueryError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.adjacent(u, v))
    }

    /// Neighbours of `v` in rotation order (the link cycle).
    pub fn rotation(&self, v: usize) -> Result<Vec<usize>, QueryError> {
        self.check(v)?;
        Ok(self.map.rotation(v))
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in 0..self.vertex_count() {
            g.add_vertex(v);
            for &w in self.nbrs(v) {
                g.add_edge(v, w);
            }
        }
        g
    }

    /// `G_v`: the subgraph induced by `v` and its neighbours.
    pub fn closed_neighborhood_subgraph(&self, v: usize) -> Result<SimpleGraph, QueryError> {
        self.check(v)?;
        Ok(self.g_v(v))
    }

    pub(crate) fn g_v(&self, v: usize) -> SimpleGraph {
        let mut verts: BTreeSet<usize> = self.nbrs(v).iter().copied().collect();
        verts.insert(v);
        self.induced(&verts)
    }

    pub fn induced(&self, verts: &BTreeSet<usize>) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for &u in verts {
            g.add_vertex(u);
            for &w in self.nbrs(u) {
                if verts.contains(&w) {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }

    /// `e(A)`: edges with both ends in `a`.
    pub fn edge_count_within(&self, a: &BTreeSet<usize>) -> usize {
        a.iter()
            .map(|&u| self.nbrs(u).iter().filter(|w| a.contains(w)).count())
            .sum::<usize>()
            / 2
    }

    /// `e(A, B)` for disjoint `a` and `b`.
    pub fn edge_count_between(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> usize {
        debug_assert!(a.is_disjoint(b), "e(A,B) needs disjoint sets");
        a.iter()
            .map(|&u| self.nbrs(u).iter().filter(|w| b.contains(w)).count())
            .sum()
    }

    /// `e(v, B)`.
    pub fn edges_to(&self, v: usize, b: &BTreeSet<usize>) -> usize {
        self.nbrs(v).iter().filter(|w| b.contains(w)).count()
    }

    /// `N(A)`: union of the neighbourhoods of the members of `a`.
    pub fn neighborhood(&self, a: &BTreeSet<usize>) -> BTreeSet<usize> {
        a.iter().flat_map(|&v| self.nbrs(v).iter().copied()).collect()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>, QueryError> {
        if !self.has_edge(u, v)? {
            return Err(QueryError::NotAnEdge(u, v));
        }
        Ok(self
            .nbrs(u)
            .iter()
            .copied()
            .filter(|&w| self.adjacent(v, w))
            .collect())
    }

    /// The same triangulation with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, ValidationError> {
        let faces: Vec<[usize; 3]> = self
            .face_triples()
            .into_iter()
            .map(|t| t.map(|v| perm[v]))
            .collect();
        Self::from_faces(&faces)
    }
}
