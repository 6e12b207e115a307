//! Signed rotation systems (combinatorial maps) for graphs cellularly embedded
//! in orientable and non-orientable surfaces.
//!
//! Edge `e` owns darts `2e` and `2e + 1`; the edge involution is `d ^ 1`.
//! `sigma` is the local rotation around each vertex and each edge carries one
//! signature bit (`twisted` = signature `-1`).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::graph::SimpleGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("dart arrays disagree in length ({origin} origins, {sigma} sigma entries, {signs} signatures)")]
    LengthMismatch {
        origin: usize,
        sigma: usize,
        signs: usize,
    },
    #[error("sigma is not a permutation of the darts")]
    NotPermutation,
    #[error("dart {dart} refers to vertex {vertex}, outside 0..{vertex_count}")]
    VertexOutOfRange {
        dart: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("the darts at vertex {0} do not form a single rotation cycle")]
    BrokenRotation(usize),
    #[error("vertex {0} has no incident darts")]
    IsolatedVertex(usize),
    #[error("rotation of vertex {vertex} lists neighbour {neighbor} which does not list it back")]
    AsymmetricRotation { vertex: usize, neighbor: usize },
    #[error("rotation of vertex {0} repeats a neighbour or contains a loop")]
    RepeatedNeighbor(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceListError {
    #[error("face list is empty")]
    Empty,
    #[error("face {0} repeats a vertex")]
    DegenerateFace(usize),
    #[error("vertex ids are not contiguous from 0 (missing {0})")]
    NonContiguousIds(usize),
    #[error("non-manifold: edge {{{u},{v}}} lies in {count} faces")]
    NonManifoldEdge { u: usize, v: usize, count: usize },
    #[error("pinch point: the link of vertex {0} is not a single cycle")]
    PinchPoint(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A connected-or-not signed rotation system. Construction only checks the
/// permutation structure; simplicity, connectivity and face conditions are
/// checked by triangulation validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialMap {
    vertex_count: usize,
    origin: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    twisted: Vec<bool>,
}

impl CombinatorialMap {
    /// Builds a map from raw dart data. `origin[d]` is the vertex of dart `d`,
    /// `sigma[d]` the next dart in its rotation, `twisted[e]` the signature
    /// bit of edge `e`.
    pub fn from_parts(
        vertex_count: usize,
        origin: Vec<usize>,
        sigma: Vec<usize>,
        twisted: Vec<bool>,
    ) -> Result<Self, MapError> {
        if origin.len() != sigma.len() || origin.len() != 2 * twisted.len() {
            return Err(MapError::LengthMismatch {
                origin: origin.len(),
                sigma: sigma.len(),
                signs: twisted.len(),
            });
        }
        let n = sigma.len();
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s >= n || sigma_inv[s] != usize::MAX {
                return Err(MapError::NotPermutation);
            }
            sigma_inv[s] = d;
        }
        for (d, &v) in origin.iter().enumerate() {
            if v >= vertex_count {
                return Err(MapError::VertexOutOfRange {
                    dart: d,
                    vertex: v,
                    vertex_count,
                });
            }
        }
        // each vertex must own exactly one sigma cycle
        let mut cycle_seen = vec![false; vertex_count];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let v = origin[start];
            if cycle_seen[v] {
                return Err(MapError::BrokenRotation(v));
            }
            cycle_seen[v] = true;
            let mut d = start;
            loop {
                visited[d] = true;
                if origin[d] != v {
                    return Err(MapError::BrokenRotation(v));
                }
                d = sigma[d];
                if d == start {
                    break;
                }
            }
        }
        if let Some(v) = cycle_seen.iter().position(|&s| !s) {
            return Err(MapError::IsolatedVertex(v));
        }
        Ok(Self {
            vertex_count,
            origin,
            sigma,
            sigma_inv,
            twisted,
        })
    }

    /// Builds a map from per-vertex cyclic neighbour lists. Edges are indexed
    /// by their sorted endpoint pair; dart `2e` sits at the smaller endpoint.
    /// Every edge in `twisted_edges` gets signature `-1`.
    pub fn from_rotations(
        rotations: &[Vec<usize>],
        twisted_edges: &[(usize, usize)],
    ) -> Result<Self, MapError> {
        let n = rotations.len();
        let mut edges = BTreeSet::new();
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(MapError::IsolatedVertex(v));
            }
            let distinct: BTreeSet<_> = rot.iter().copied().collect();
            if distinct.len() != rot.len() || distinct.contains(&v) {
                return Err(MapError::RepeatedNeighbor(v));
            }
            for &w in rot {
                if w >= n {
                    return Err(MapError::VertexOutOfRange {
                        dart: 0,
                        vertex: w,
                        vertex_count: n,
                    });
                }
                if !rotations[w].contains(&v) {
                    return Err(MapError::AsymmetricRotation {
                        vertex: v,
                        neighbor: w,
                    });
                }
                edges.insert((v.min(w), v.max(w)));
            }
        }
        let index: HashMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let dart = |v: usize, w: usize| -> usize {
            let e = index[&(v.min(w), v.max(w))];
            2 * e + usize::from(v > w)
        };
        let m = edges.len();
        let mut origin = vec![0; 2 * m];
        let mut sigma = vec![0; 2 * m];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &w) in rot.iter().enumerate() {
                let d = dart(v, w);
                origin[d] = v;
                sigma[d] = dart(v, rot[(i + 1) % rot.len()]);
            }
        }
        let mut twisted = vec![false; m];
        for &(u, v) in twisted_edges {
            if let Some(&e) = index.get(&(u.min(v), u.max(v))) {
                twisted[e] = true;
            }
        }
        Self::from_parts(n, origin, sigma, twisted)
    }

    /// Reconstructs the embedding of a closed triangulated surface from its
    /// faces. Every vertex pair must lie in exactly two triples and every
    /// vertex link must be one cycle. Vertex 0 gets the lexicographically
    /// smallest of its two possible rotations; the other rotations are
    /// oriented along a BFS tree so that tree edges are untwisted.
    pub fn from_face_list(triples: &[[usize; 3]]) -> Result<Self, FaceListError> {
        if triples.is_empty() {
            return Err(FaceListError::Empty);
        }
        let mut ids = BTreeSet::new();
        for (i, t) in triples.iter().enumerate() {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(FaceListError::DegenerateFace(i));
            }
            ids.extend(t.iter().copied());
        }
        let n = ids.len();
        if let Some(missing) = (0..n).find(|v| !ids.contains(v)) {
            return Err(FaceListError::NonContiguousIds(missing));
        }

        let mut pair_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for t in triples {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                *pair_count.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        if let Some((&(u, v), &count)) = pair_count.iter().find(|(_, &c)| c != 2) {
            return Err(FaceListError::NonManifoldEdge { u, v, count });
        }

        // link edges of every vertex
        let mut links: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for t in triples {
            links[t[0]].push((t[1], t[2]));
            links[t[1]].push((t[0], t[2]));
            links[t[2]].push((t[0], t[1]));
        }
        let mut cycles = Vec::with_capacity(n);
        for (v, link) in links.iter().enumerate() {
            cycles.push(link_cycle(link).ok_or(FaceListError::PinchPoint(v))?);
        }

        // orient rotations along a BFS tree from vertex 0
        let mut reversed = vec![false; n];
        let mut placed = vec![false; n];
        placed[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            let cu = oriented(&cycles[u], reversed[u]);
            for &v in &cycles[u] {
                if placed[v] {
                    continue;
                }
                placed[v] = true;
                let cv = &cycles[v];
                // pick v's direction so that edge uv is untwisted
                reversed[v] = !untwisted_pair(&cu, cv, u, v);
                queue.push_back(v);
            }
        }
        // vertices outside the component of 0 keep their default direction
        let rotations: Vec<Vec<usize>> = (0..n).map(|v| oriented(&cycles[v], reversed[v])).collect();
        let mut twisted_edges = Vec::new();
        for &(u, v) in pair_count.keys() {
            if !untwisted_pair(&rotations[u], &rotations[v], u, v) {
                twisted_edges.push((u, v));
            }
        }
        Ok(Self::from_rotations(&rotations, &twisted_edges)?)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.twisted.len()
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn origin(&self, dart: usize) -> usize {
        self.origin[dart]
    }

    pub fn sigma(&self, dart: usize) -> usize {
        self.sigma[dart]
    }

    pub fn sigma_inv(&self, dart: usize) -> usize {
        self.sigma_inv[dart]
    }

    pub fn alpha(&self, dart: usize) -> usize {
        dart ^ 1
    }

    pub fn is_twisted(&self, edge: usize) -> bool {
        self.twisted[edge]
    }

    /// Endpoints of edge `e` as `(origin of 2e, origin of 2e+1)`.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        (self.origin[2 * edge], self.origin[2 * edge + 1])
    }

    /// The vertex the dart points to.
    pub fn head(&self, dart: usize) -> usize {
        self.origin[dart ^ 1]
    }

    /// Darts around `v` in rotation order, starting from the smallest dart.
    pub fn darts_at(&self, v: usize) -> Vec<usize> {
        let Some(start) = (0..self.dart_count()).find(|&d| self.origin[d] == v) else {
            return Vec::new();
        };
        let mut out = vec![start];
        let mut d = self.sigma[start];
        while d != start {
            out.push(d);
            d = self.sigma[d];
        }
        out
    }

    /// Neighbours of `v` in rotation order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        self.darts_at(v).into_iter().map(|d| self.head(d)).collect()
    }

    /// The underlying graph; parallel edges collapse.
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in 0..self.vertex_count {
            g.add_vertex(v);
        }
        for e in 0..self.edge_count() {
            let (u, v) = self.edge_endpoints(e);
            g.add_edge(u, v);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        self.graph().is_connected()
    }

    /// No loops and no two edges with the same endpoints.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        (0..self.edge_count()).all(|e| {
            let (u, v) = self.edge_endpoints(e);
            u != v && seen.insert((u.min(v), u.max(v)))
        })
    }

    fn face_step(&self, dart: usize, flipped: bool) -> (usize, bool) {
        let arrive = dart ^ 1;
        let flipped = flipped ^ self.twisted[dart / 2];
        let next = if flipped {
            self.sigma_inv[arrive]
        } else {
            self.sigma[arrive]
        };
        (next, flipped)
    }

    /// Face boundaries as dart cycles. Each face is reported once (one of its
    /// two traversal directions); faces appear in order of their smallest
    /// dart and each list starts at that dart.
    pub fn trace_faces(&self) -> Vec<Vec<usize>> {
        let n = self.dart_count();
        let mut seen = vec![false; 2 * n];
        let state = |d: usize, f: bool| 2 * d + usize::from(f);
        let mut faces = Vec::new();
        for d0 in 0..n {
            for f0 in [false, true] {
                if seen[state(d0, f0)] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut d, mut f) = (d0, f0);
                loop {
                    seen[state(d, f)] = true;
                    face.push(d);
                    (d, f) = self.face_step(d, f);
                    if (d, f) == (d0, f0) {
                        break;
                    }
                }
                // mark the reverse traversal of the same face
                let (mut d, mut f) = (d0 ^ 1, !(f0 ^ self.twisted[d0 / 2]));
                while !seen[state(d, f)] {
                    seen[state(d, f)] = true;
                    (d, f) = self.face_step(d, f);
                }
                faces.push(face);
            }
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        self.trace_faces().len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Euler genus `2 - (V - E + F)` of the surface of a connected map.
    pub fn euler_genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2, "connected maps have chi <= 2");
        (2 - chi).max(0) as usize
    }

    /// True iff some set of vertex switches makes every signature `+1`.
    pub fn is_orientable(&self) -> bool {
        let mut flip: Vec<Option<bool>> = vec![None; self.vertex_count];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for e in 0..self.edge_count() {
            let (u, v) = self.edge_endpoints(e);
            incident[u].push(e);
            incident[v].push(e);
        }
        for root in 0..self.vertex_count {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let fu = flip[u].unwrap();
                for &e in &incident[u] {
                    let (a, b) = self.edge_endpoints(e);
                    let w = if a == u { b } else { a };
                    let want = fu ^ self.twisted[e];
                    match flip[w] {
                        None => {
                            flip[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(fw) if fw != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Reverses the rotation at `v` and toggles the signature of every edge
    /// at `v`. The embedding is unchanged up to homeomorphism.
    pub fn switch_vertex(&self, v: usize) -> Self {
        let mut out = self.clone();
        for d in self.darts_at(v) {
            out.sigma[d] = self.sigma_inv[d];
            out.sigma_inv[d] = self.sigma[d];
            // a loop would be toggled twice
            out.twisted[d / 2] ^= true;
        }
        out
    }
}

/// Walks the link multigraph of a vertex. Returns the cycle of link vertices
/// starting at the smallest one and heading to its smaller link neighbour, or
/// `None` when the link is not a single cycle.
fn link_cycle(link: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in link.iter().enumerate() {
        incident.entry(a).or_default().push(i);
        incident.entry(b).or_default().push(i);
    }
    if incident.values().any(|es| es.len() != 2) {
        return None;
    }
    let (&start, first_edges) = incident.iter().next()?;
    let other = |i: usize, v: usize| {
        let (a, b) = link[i];
        if a == v {
            b
        } else {
            a
        }
    };
    let (e0, e1) = (first_edges[0], first_edges[1]);
    let mut edge = if other(e0, start) <= other(e1, start) {
        e0
    } else {
        e1
    };
    let mut used = vec![false; link.len()];
    let mut cycle = vec![start];
    let mut cur = start;
    loop {
        used[edge] = true;
        cur = other(edge, cur);
        if cur == start {
            break;
        }
        cycle.push(cur);
        let es = &incident[&cur];
        edge = if used[es[0]] { es[1] } else { es[0] };
        if used[edge] {
            return None;
        }
    }
    if used.iter().all(|&u| u) {
        Some(cycle)
    } else {
        None
    }
}

fn oriented(cycle: &[usize], reversed: bool) -> Vec<usize> {
    if !reversed {
        return cycle.to_vec();
    }
    let mut out = Vec::with_capacity(cycle.len());
    out.push(cycle[0]);
    out.extend(cycle[1..].iter().rev());
    out
}

fn next_in(rot: &[usize], x: usize) -> usize {
    let i = rot.iter().position(|&y| y == x).expect("neighbour in rotation");
    rot[(i + 1) % rot.len()]
}

fn prev_in(rot: &[usize], x: usize) -> usize {
    let i = rot.iter().position(|&y| y == x).expect("neighbour in rotation");
    rot[(i + rot.len() - 1) % rot.len()]
}

/// Edge `uv` is untwisted when the face following `u -> v` on the positive
/// side closes as a triangle, i.e. `next_v(u) == prev_u(v)`.
fn untwisted_pair(rot_u: &[usize], rot_v: &[usize], u: usize, v: usize) -> bool {
    next_in(rot_v, u) == prev_in(rot_u, v)
}
