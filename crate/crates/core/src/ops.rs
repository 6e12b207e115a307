//! Edge contraction, vertex splitting, irreducibility, and contractibility of
//! 3-cycles.
//!
//! Contraction validity is decided by the outcome: the contracted face list
//! is rebuilt and re-validated, and the surface must be unchanged. The
//! common-neighbour count is only used to label the failure.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::triangulation::{QueryError, Triangulation, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum ContractionFailure {
    /// `|N(u) ∩ N(v)| != 2`.
    CommonNeighborCount { count: usize },
    /// The contracted face list is not a triangulation.
    PostValidation { detail: String },
    /// A triangulation, but of a different surface.
    SurfaceChange {
        euler_genus: usize,
        orientable: bool,
    },
}

#[derive(Debug, Clone)]
pub enum ContractionOutcome {
    Valid(Triangulation),
    Invalid(ContractionFailure),
}

impl ContractionOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, ContractionOutcome::Valid(_))
    }

    pub fn result(&self) -> Option<&Triangulation> {
        match self {
            ContractionOutcome::Valid(t) => Some(t),
            ContractionOutcome::Invalid(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&ContractionFailure> {
        match self {
            ContractionOutcome::Valid(_) => None,
            ContractionOutcome::Invalid(f) => Some(f),
        }
    }
}

pub fn common_neighbors(t: &Triangulation, u: usize, v: usize) -> Result<Vec<usize>, QueryError> {
    t.common_neighbors(u, v)
}

/// Contracts `uv` on the face list: the two faces through `uv` disappear and
/// the larger endpoint is renamed to the smaller one. Ids above the removed
/// vertex shift down by one. No validity shortcut is applied.
pub fn contract_faces(
    t: &Triangulation,
    u: usize,
    v: usize,
) -> Result<Result<Triangulation, ValidationError>, QueryError> {
    if !t.has_edge(u, v)? {
        return Err(QueryError::NotAnEdge(u, v));
    }
    let (keep, gone) = (u.min(v), u.max(v));
    let rename = |w: usize| {
        let w = if w == gone { keep } else { w };
        if w > gone {
            w - 1
        } else {
            w
        }
    };
    let faces: Vec<[usize; 3]> = t
        .face_triples()
        .into_iter()
        .filter(|f| !(f.contains(&u) && f.contains(&v)))
        .map(|f| f.map(rename))
        .collect();
    Ok(Triangulation::from_faces(&faces))
}

/// Contracts edge `uv` and reports whether the result is a triangulation of
/// the same surface.
pub fn contract_edge(t: &Triangulation, u: usize, v: usize) -> Result<ContractionOutcome, QueryError> {
    let common = t.common_neighbors(u, v)?;
    if common.len() != 2 {
        return Ok(ContractionOutcome::Invalid(
            ContractionFailure::CommonNeighborCount { count: common.len() },
        ));
    }
    Ok(match contract_faces(t, u, v)? {
        Err(e) => ContractionOutcome::Invalid(ContractionFailure::PostValidation {
            detail: e.to_string(),
        }),
        Ok(r) if r.euler_genus() != t.euler_genus() || r.is_orientable() != t.is_orientable() => {
            ContractionOutcome::Invalid(ContractionFailure::SurfaceChange {
                euler_genus: r.euler_genus(),
                orientable: r.is_orientable(),
            })
        }
        Ok(r) => ContractionOutcome::Valid(r),
    })
}

/// A vertex split: `arc` is a contiguous run of the rotation at `vertex`
/// (either direction) that stays with `vertex`; its two ends become the common
/// neighbours of `vertex` and the new vertex, which takes the rest of the
/// rotation plus both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub vertex: usize,
    pub arc: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("arc has {0} darts; both arcs need at least 2")]
    ArcTooShort(usize),
    #[error("arc has {len} darts but vertex degree is {degree}; the other arc would be too short")]
    ArcTooLong { len: usize, degree: usize },
    #[error("{0} is not a neighbour of the split vertex or is repeated")]
    NotNeighbor(usize),
    #[error("arc is not contiguous in the rotation")]
    NotContiguous,
    #[error("split produced an invalid triangulation: {0}")]
    Invalid(#[from] ValidationError),
}

/// Splits a vertex; the new vertex gets id `vertex_count()`.
pub fn split_vertex(t: &Triangulation, spec: &SplitSpec) -> Result<Triangulation, SplitError> {
    let v = spec.vertex;
    let rot = t.rotation(v)?;
    let deg = rot.len();
    let len = spec.arc.len();
    if len < 2 {
        return Err(SplitError::ArcTooShort(len));
    }
    if len > deg {
        return Err(SplitError::ArcTooLong { len, degree: deg });
    }
    let mut distinct = BTreeSet::new();
    for &w in &spec.arc {
        if !rot.contains(&w) || !distinct.insert(w) {
            return Err(SplitError::NotNeighbor(w));
        }
    }
    let p = rot.iter().position(|&w| w == spec.arc[0]).unwrap();
    let forward = (0..len).all(|k| rot[(p + k) % deg] == spec.arc[k]);
    let backward = (0..len).all(|k| rot[(p + deg - k) % deg] == spec.arc[k]);
    let arc: Vec<usize> = if forward {
        spec.arc.clone()
    } else if backward {
        spec.arc.iter().rev().copied().collect()
    } else {
        return Err(SplitError::NotContiguous);
    };
    let keep_pairs: BTreeSet<(usize, usize)> = arc
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    let fresh = t.vertex_count();
    let mut faces = Vec::with_capacity(t.face_count() + 2);
    for f in t.face_triples() {
        if !f.contains(&v) {
            faces.push(f);
            continue;
        }
        let others: Vec<usize> = f.iter().copied().filter(|&w| w != v).collect();
        let pair = (others[0].min(others[1]), others[0].max(others[1]));
        if keep_pairs.contains(&pair) {
            faces.push(f);
        } else {
            faces.push(f.map(|w| if w == v { fresh } else { w }));
        }
    }
    faces.push([v, fresh, arc[0]]);
    faces.push([v, fresh, arc[len - 1]]);
    Ok(Triangulation::from_faces(&faces)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// Lowest-index contractible edge, when reducible.
    pub witness: Option<(usize, usize)>,
}

pub fn is_irreducible(t: &Triangulation) -> Irreducibility {
    for (u, v) in t.edges() {
        if contract_edge(t, u, v).expect("edge of t").is_valid() {
            return Irreducibility {
                irreducible: false,
                witness: Some((u, v)),
            };
        }
    }
    Irreducibility {
        irreducible: true,
        witness: None,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("{0:?} is not a 3-cycle of the graph")]
    NotATriangle([usize; 3]),
    #[error("the sphere is excluded: the crosscheck needs positive Euler genus")]
    SphereUnsupported,
}

/// One side of the surface cut open along a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutSide {
    pub faces: usize,
    pub euler_characteristic: i64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Cuts the surface along the 3-cycle `tri` and returns the resulting pieces.
/// Faces stay together across edges off the cycle; each cycle vertex splits
/// into its wedges, and each side of a cycle edge becomes a boundary edge.
pub fn cut_along_triangle(t: &Triangulation, tri: [usize; 3]) -> Result<Vec<CutSide>, CycleError> {
    let [a, b, c] = tri;
    let n = t.vertex_count();
    let is_cycle = a != b
        && b != c
        && a != c
        && a < n
        && b < n
        && c < n
        && t.adjacent(a, b)
        && t.adjacent(b, c)
        && t.adjacent(a, c);
    if !is_cycle {
        return Err(CycleError::NotATriangle(tri));
    }
    let key = |x: usize, y: usize| (x.min(y), x.max(y));
    let cycle_edges: BTreeSet<(usize, usize)> = [key(a, b), key(b, c), key(a, c)].into();

    let faces = t.face_triples();
    let mut faces_of_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (x, y) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            faces_of_edge.entry(key(x, y)).or_default().push(i);
        }
    }
    let corner = |f: usize, x: usize| 3 * f + faces[f].iter().position(|&y| y == x).unwrap();

    let mut side = UnionFind::new(faces.len());
    let mut wedge = UnionFind::new(3 * faces.len());
    for (&(x, y), fs) in &faces_of_edge {
        if cycle_edges.contains(&(x, y)) {
            continue;
        }
        let (f, g) = (fs[0], fs[1]);
        side.union(f, g);
        wedge.union(corner(f, x), corner(g, x));
        wedge.union(corner(f, y), corner(g, y));
    }

    let mut pieces: BTreeMap<usize, (usize, BTreeSet<usize>, usize)> = BTreeMap::new();
    for f in 0..faces.len() {
        let root = side.find(f);
        let entry = pieces.entry(root).or_default();
        entry.0 += 1;
        for k in 0..3 {
            let w = wedge.find(3 * f + k);
            entry.1.insert(w);
        }
    }
    for (&e, fs) in &faces_of_edge {
        if cycle_edges.contains(&e) {
            for &f in fs {
                pieces.get_mut(&side.find(f)).unwrap().2 += 1;
            }
        } else {
            pieces.get_mut(&side.find(fs[0])).unwrap().2 += 1;
        }
    }
    Ok(pieces
        .values()
        .map(|(f, corners, e)| CutSide {
            faces: *f,
            euler_characteristic: corners.len() as i64 - *e as i64 + *f as i64,
        })
        .collect())
}

/// True iff the 3-cycle bounds a disk: cutting along it separates the
/// surface and one side has Euler characteristic 1. A non-separating or
/// one-sided cycle leaves a single piece.
pub fn cycle_is_contractible(t: &Triangulation, tri: [usize; 3]) -> Result<bool, CycleError> {
    let pieces = cut_along_triangle(t, tri)?;
    Ok(pieces.len() >= 2 && pieces.iter().any(|p| p.euler_characteristic == 1))
}

/// Every edge lies in a non-contractible triangle. Only meaningful off the
/// sphere, where it is equivalent to irreducibility.
pub fn irreducibility_crosscheck(t: &Triangulation) -> Result<bool, CycleError> {
    if t.euler_genus() == 0 {
        return Err(CycleError::SphereUnsupported);
    }
    for (u, v) in t.edges() {
        let common = t.common_neighbors(u, v).expect("edge of t");
        let mut found = false;
        for w in common {
            if !cycle_is_contractible(t, [u, v, w])? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn common_neighbor_counts() {
        let k4 = catalog::tetrahedron();
        assert!(k4.edges().iter().all(|&(u, v)| common_neighbors(&k4, u, v).unwrap().len() == 2));
        let k6 = catalog::k6_projective();
        assert!(k6.edges().iter().all(|&(u, v)| common_neighbors(&k6, u, v).unwrap().len() == 4));
        let oct = catalog::octahedron();
        assert!(oct.edges().iter().all(|&(u, v)| common_neighbors(&oct, u, v).unwrap().len() == 2));
        assert_eq!(common_neighbors(&oct, 0, 5), Err(QueryError::NotAnEdge(0, 5)));
    }

    #[test]
    fn k4_contraction_fails_validation() {
        let k4 = catalog::tetrahedron();
        for (u, v) in k4.edges() {
            match contract_edge(&k4, u, v).unwrap() {
                ContractionOutcome::Invalid(ContractionFailure::PostValidation { detail }) => {
                    assert!(detail.contains("share"), "{detail}");
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn octahedron_contracts_to_five_vertices() {
        let oct = catalog::octahedron();
        for (u, v) in oct.edges() {
            let out = contract_edge(&oct, u, v).unwrap();
            let r = out.result().expect("valid contraction");
            assert_eq!((r.vertex_count(), r.edge_count(), r.face_count()), (5, 9, 6));
            assert_eq!(r.euler_genus(), 0);
        }
    }

    #[test]
    fn k6_contraction_blocked_by_common_neighbors() {
        let k6 = catalog::k6_projective();
        let out = contract_edge(&k6, 0, 1).unwrap();
        assert_eq!(
            out.failure(),
            Some(&ContractionFailure::CommonNeighborCount { count: 4 })
        );
    }

    #[test]
    fn split_icosahedron_vertex() {
        let ico = catalog::icosahedron();
        let rot = ico.rotation(0).unwrap();
        assert_eq!(rot.len(), 5);
        let s = split_vertex(&ico, &SplitSpec { vertex: 0, arc: rot[0..3].to_vec() }).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count(), s.face_count()), (13, 33, 22));
        assert_eq!(s.euler_genus(), 0);
        assert_eq!(s.degree(0).unwrap(), 4);
        assert_eq!(s.degree(12).unwrap(), 5);
        // a 3/5 split of a degree-6 vertex
        let w = rot[0];
        assert_eq!(s.degree(w).unwrap(), 6);
        let rw = s.rotation(w).unwrap();
        let s2 = split_vertex(&s, &SplitSpec { vertex: w, arc: rw[1..4].to_vec() }).unwrap();
        assert_eq!((s2.vertex_count(), s2.edge_count(), s2.face_count()), (14, 36, 24));
    }

    #[test]
    fn split_spec_errors() {
        let oct = catalog::octahedron();
        let rot = oct.rotation(0).unwrap();
        let bad = |arc: Vec<usize>| split_vertex(&oct, &SplitSpec { vertex: 0, arc }).unwrap_err();
        assert_eq!(bad(vec![rot[0]]), SplitError::ArcTooShort(1));
        assert_eq!(bad(vec![rot[0], rot[2]]), SplitError::NotContiguous);
        assert_eq!(bad(vec![rot[0], 5]), SplitError::NotNeighbor(5));
        assert_eq!(
            bad(vec![rot[0], rot[1], rot[2], rot[3], rot[0]]),
            SplitError::ArcTooLong { len: 5, degree: 4 }
        );
        assert_eq!(bad(vec![rot[0], rot[1], rot[0]]), SplitError::NotNeighbor(rot[0]));
        assert!(matches!(
            split_vertex(&oct, &SplitSpec { vertex: 9, arc: vec![] }),
            Err(SplitError::Query(QueryError::UnknownVertex(9)))
        ));
    }

    #[test]
    fn backward_arc_is_accepted() {
        let oct = catalog::octahedron();
        let rot = oct.rotation(0).unwrap();
        let fwd = split_vertex(&oct, &SplitSpec { vertex: 0, arc: vec![rot[0], rot[1], rot[2]] }).unwrap();
        let bwd = split_vertex(&oct, &SplitSpec { vertex: 0, arc: vec![rot[2], rot[1], rot[0]] }).unwrap();
        assert_eq!(fwd.sorted_faces(), bwd.sorted_faces());
    }

    #[test]
    fn irreducibility_of_small_cases() {
        assert!(is_irreducible(&catalog::tetrahedron()).irreducible);
        assert!(is_irreducible(&catalog::k6_projective()).irreducible);
        assert!(is_irreducible(&catalog::k7_minus_k3()).irreducible);
        assert!(is_irreducible(&catalog::k7_torus()).irreducible);
        let ico = is_irreducible(&catalog::icosahedron());
        assert!(!ico.irreducible);
        assert_eq!(ico.witness, Some(catalog::icosahedron().edges()[0]));
    }

    #[test]
    fn facial_triangles_are_contractible() {
        for t in [catalog::icosahedron(), catalog::k6_projective(), catalog::k7_torus()] {
            for f in t.face_triples() {
                assert!(cycle_is_contractible(&t, f).unwrap());
            }
        }
    }

    #[test]
    fn icosahedron_triangles_are_all_facial() {
        let ico = catalog::icosahedron();
        let g = ico.graph();
        let mut triangles = 0;
        for (u, v) in g.edges() {
            for w in g.neighbors(v) {
                if w > v && g.has_edge(u, w) {
                    triangles += 1;
                    assert!(cycle_is_contractible(&ico, [u, v, w]).unwrap());
                }
            }
        }
        assert_eq!(triangles, 20);
    }

    #[test]
    fn k6_has_non_contractible_triangles() {
        let k6 = catalog::k6_projective();
        let faces: BTreeSet<[usize; 3]> = k6.sorted_faces().into_iter().collect();
        let mut non_contractible = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let contractible = cycle_is_contractible(&k6, [a, b, c]).unwrap();
                    assert_eq!(contractible, faces.contains(&[a, b, c]));
                    non_contractible += usize::from(!contractible);
                }
            }
        }
        assert_eq!(non_contractible, 10);
    }

    #[test]
    fn crosscheck_matches_irreducibility() {
        assert_eq!(irreducibility_crosscheck(&catalog::k6_projective()), Ok(true));
        assert_eq!(irreducibility_crosscheck(&catalog::k7_torus()), Ok(true));
        assert_eq!(
            irreducibility_crosscheck(&catalog::tetrahedron()),
            Err(CycleError::SphereUnsupported)
        );
        let k7 = catalog::k7_torus();
        let rot = k7.rotation(0).unwrap();
        let split = split_vertex(&k7, &SplitSpec { vertex: 0, arc: rot[0..4].to_vec() }).unwrap();
        assert_eq!(split.euler_genus(), 2);
        assert!(!is_irreducible(&split).irreducible);
        assert_eq!(irreducibility_crosscheck(&split), Ok(false));
    }

    #[test]
    fn not_a_triangle() {
        let oct = catalog::octahedron();
        assert_eq!(
            cycle_is_contractible(&oct, [0, 5, 1]),
            Err(CycleError::NotATriangle([0, 5, 1]))
        );
    }
}
