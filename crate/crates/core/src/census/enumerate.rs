//! Orderly generation of simplicial surfaces.
//!
//! Vertex 0 is a vertex of maximum degree `d`, with link `1, 2, ..., d`.
//! The lowest open edge (an edge in exactly one triangle) is closed next by a
//! triangle through an existing vertex or the smallest unused label. Edges
//! carry at most two triangles and a vertex link may only close into a cycle
//! once it contains every neighbour, so completed complexes are exactly the
//! closed surfaces; isomorphic copies are merged by canonical form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use super::canonical::{canonical_labeling, CanonicalForm};
use super::format::{normalize_faces, CensusFile, Surface};
use crate::ops::is_irreducible;
use crate::triangulation::Triangulation;

pub const CAP_ENV: &str = "IRRTRI_ENUM_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("{surface} with up to {max_n} vertices exceeds the enumeration cap of {cap}")]
    CapExceeded { surface: Surface, max_n: usize, cap: usize },
    #[error("{CAP_ENV} must be a positive integer, got `{0}`")]
    BadCapOverride(String),
}

/// Largest `max_n` enumerated without an override.
pub fn default_cap(surface: Surface) -> usize {
    if surface == Surface::nonorientable(1) {
        7
    } else {
        8
    }
}

/// The cap, honouring the environment override.
pub fn enumeration_cap(surface: Surface) -> Result<usize, EnumerationError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            let cap: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&c| c > 0)
                .ok_or_else(|| EnumerationError::BadCapOverride(v.clone()))?;
            log::warn!("{CAP_ENV}={cap} overrides the default cap {} for {surface}", default_cap(surface));
            Ok(cap)
        }
        Err(_) => Ok(default_cap(surface)),
    }
}

#[derive(Clone)]
struct State {
    n_max: usize,
    d: usize,
    used: usize,
    faces: Vec<[u8; 3]>,
    /// Triangles on each edge, `0..=2`.
    on_edge: Vec<u8>,
    deg: Vec<u8>,
    closed: Vec<bool>,
    /// Link edges at each vertex.
    link: Vec<Vec<(u8, u8)>>,
}

impl State {
    fn new(n_max: usize, d: usize) -> Self {
        let mut s = State {
            n_max,
            d,
            used: d + 1,
            faces: Vec::new(),
            on_edge: vec![0; n_max * n_max],
            deg: vec![0; n_max],
            closed: vec![false; n_max],
            link: vec![Vec::new(); n_max],
        };
        for i in 1..=d {
            let j = if i == d { 1 } else { i + 1 };
            let ok = s.add_face(0, i, j);
            debug_assert!(ok);
        }
        debug_assert!(s.closed[0]);
        s
    }

    fn e(&self, a: usize, b: usize) -> u8 {
        self.on_edge[a * self.n_max + b]
    }

    fn bump(&mut self, a: usize, b: usize) {
        if self.e(a, b) == 0 {
            self.deg[a] += 1;
            self.deg[b] += 1;
        }
        self.on_edge[a * self.n_max + b] += 1;
        self.on_edge[b * self.n_max + a] += 1;
    }

    /// Whether adding link edge `x y` at `v` closes a cycle, and if so
    /// whether that cycle covers the whole link. `None` means forbidden.
    fn link_step(&self, v: usize, x: usize, y: usize) -> Option<bool> {
        let link = &self.link[v];
        let ldeg = |z: usize| link.iter().filter(|&&(p, q)| p as usize == z || q as usize == z).count();
        if ldeg(x) != 1 || ldeg(y) != 1 {
            return Some(false);
        }
        // follow the path from x; it closes only if it ends at y
        let (mut prev, mut cur, mut len) = (usize::MAX, x, 1);
        loop {
            let next = link.iter().find_map(|&(p, q)| {
                let (p, q) = (p as usize, q as usize);
                if p == cur && q != prev {
                    Some(q)
                } else if q == cur && p != prev {
                    Some(p)
                } else {
                    None
                }
            });
            match next {
                Some(z) => {
                    prev = cur;
                    cur = z;
                    len += 1;
                }
                None => break,
            }
        }
        if cur != y {
            return Some(false);
        }
        (len == self.deg[v] as usize).then_some(true)
    }

    /// Adds triangle `a b c` if every constraint allows it.
    fn add_face(&mut self, a: usize, b: usize, c: usize) -> bool {
        let tri = [a, b, c];
        if tri.iter().any(|&v| self.closed[v]) {
            return false;
        }
        if self.e(a, b) >= 2 || self.e(b, c) >= 2 || self.e(a, c) >= 2 {
            return false;
        }
        let new_nbrs = |v: usize, p: usize, q: usize| (self.e(v, p) == 0) as u8 + (self.e(v, q) == 0) as u8;
        if tri.iter().enumerate().any(|(k, &v)| {
            self.deg[v] + new_nbrs(v, tri[(k + 1) % 3], tri[(k + 2) % 3]) > self.d as u8
        }) {
            return false;
        }
        self.bump(a, b);
        self.bump(b, c);
        self.bump(a, c);
        let mut closes = [false; 3];
        for k in 0..3 {
            let (v, x, y) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            match self.link_step(v, x, y) {
                Some(c) => closes[k] = c,
                None => return false,
            }
        }
        for k in 0..3 {
            let (v, x, y) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
            self.link[v].push((x as u8, y as u8));
            if closes[k] {
                self.closed[v] = true;
            }
        }
        self.faces.push([a as u8, b as u8, c as u8]);
        true
    }

    fn lowest_open_edge(&self) -> Option<(usize, usize)> {
        (0..self.used)
            .flat_map(|a| (a + 1..self.used).map(move |b| (a, b)))
            .find(|&(a, b)| self.e(a, b) == 1)
    }

    /// Third vertex of the single triangle on `a b`.
    fn apex(&self, a: usize, b: usize) -> usize {
        self.faces
            .iter()
            .find_map(|f| {
                let f = f.map(usize::from);
                (f.contains(&a) && f.contains(&b)).then(|| f.into_iter().find(|&v| v != a && v != b).unwrap())
            })
            .expect("open edge lies on a triangle")
    }
}

fn search(s: State, face_cap: usize, out: &mut Vec<Vec<[usize; 3]>>) {
    let Some((a, b)) = s.lowest_open_edge() else {
        out.push(s.faces.iter().map(|f| f.map(usize::from)).collect());
        return;
    };
    if s.faces.len() >= face_cap {
        return;
    }
    let z = s.apex(a, b);
    let fresh = if s.used < s.n_max { s.used + 1 } else { s.used };
    for c in 0..fresh {
        if c == a || c == b || c == z {
            continue;
        }
        let mut next = s.clone();
        if c == next.used {
            next.used += 1;
        }
        if next.add_face(a, b, c) {
            search(next, face_cap, out);
        }
    }
}

/// Every closed simplicial surface with Euler characteristic `chi` and at
/// most `n_max` vertices whose maximum degree is `d`, possibly with repeats.
fn raw_surfaces(n_max: usize, d: usize, chi: i64) -> Vec<Vec<[usize; 3]>> {
    // F = 2(V - chi)
    let face_cap = (2 * (n_max as i64 - chi)).max(0) as usize;
    let root = State::new(n_max, d);
    // split on the first branching so workers share the load
    let Some((a, b)) = root.lowest_open_edge() else {
        return Vec::new();
    };
    let z = root.apex(a, b);
    let fresh = if root.used < n_max { root.used + 1 } else { root.used };
    (0..fresh)
        .into_par_iter()
        .filter(|&c| c != a && c != b && c != z)
        .flat_map_iter(|c| {
            let mut next = root.clone();
            if c == next.used {
                next.used += 1;
            }
            let mut out = Vec::new();
            if next.add_face(a, b, c) {
                search(next, face_cap, &mut out);
            }
            out.into_iter()
                .filter(|f| f.len() as i64 == 2 * (face_vertices(f) as i64 - chi))
        })
        .collect()
}

fn face_vertices(faces: &[[usize; 3]]) -> usize {
    faces.iter().flatten().max().map_or(0, |&m| m + 1)
}

#[derive(Debug, Clone)]
pub struct Enumerated {
    pub triangulation: Triangulation,
    pub form: CanonicalForm,
}

/// All triangulations of `surface` with at most `max_n` vertices, one per
/// isomorphism class (mirror images identified), relabelled canonically and
/// sorted by order then canonical form. Ignores the cap.
pub fn enumerate_unchecked(surface: Surface, max_n: usize, irreducible_only: bool) -> Vec<Enumerated> {
    let chi = surface.euler_characteristic();
    let raw: Vec<Vec<[usize; 3]>> = (3..max_n).into_par_iter().flat_map_iter(|d| raw_surfaces(max_n, d, chi)).collect();
    let mut classes: BTreeMap<(usize, CanonicalForm), Triangulation> = BTreeMap::new();
    let found: Vec<(usize, CanonicalForm, Triangulation)> = raw
        .into_par_iter()
        .filter_map(|faces| {
            let t = Triangulation::from_faces(&faces).expect("generated complexes are triangulations");
            if Surface::of(&t) != surface {
                return None;
            }
            let (form, perm) = canonical_labeling(&t);
            Some((t.vertex_count(), form, t.relabel(&perm).expect("relabel")))
        })
        .collect();
    for (n, form, t) in found {
        classes.entry((n, form)).or_insert(t);
    }
    classes
        .into_par_iter()
        .filter(|(_, t)| !irreducible_only || is_irreducible(t).irreducible)
        .map(|((_, form), triangulation)| Enumerated { triangulation, form })
        .collect()
}

/// As [`enumerate_unchecked`], refusing `max_n` above the cap.
pub fn enumerate_triangulations(
    surface: Surface,
    max_n: usize,
    irreducible_only: bool,
) -> Result<CensusFile, EnumerationError> {
    let cap = enumeration_cap(surface)?;
    if max_n > cap {
        return Err(EnumerationError::CapExceeded { surface, max_n, cap });
    }
    let mut file = CensusFile::new(surface);
    file.entries = enumerate_unchecked(surface, max_n, irreducible_only)
        .into_iter()
        .map(|e| normalize_faces(&e.triangulation.face_triples()))
        .collect();
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::census::canonical_form;

    fn counts(surface: Surface, max_n: usize, irreducible_only: bool) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for e in enumerate_unchecked(surface, max_n, irreducible_only) {
            *m.entry(e.triangulation.vertex_count()).or_default() += 1;
        }
        m
    }

    #[test]
    fn sphere_counts() {
        // triangulations of the sphere with 4..=8 vertices: 1, 1, 2, 5, 14
        let m = counts(Surface::SPHERE, 8, false);
        assert_eq!(m, BTreeMap::from([(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)]));
        let irr = enumerate_unchecked(Surface::SPHERE, 8, true);
        assert_eq!(irr.len(), 1);
        assert_eq!(irr[0].form, canonical_form(&catalog::tetrahedron()));
    }

    #[test]
    fn projective_plane_up_to_six_is_k6() {
        let all = enumerate_unchecked(Surface::nonorientable(1), 6, false);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].form, canonical_form(&catalog::k6_projective()));
    }

    #[test]
    fn torus_up_to_seven_is_k7() {
        let all = enumerate_unchecked(Surface::orientable(1), 7, false);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].form, canonical_form(&catalog::k7_torus()));
    }

    #[test]
    fn output_is_distinct_and_deterministic() {
        let a = enumerate_triangulations(Surface::SPHERE, 7, false).unwrap();
        let b = enumerate_triangulations(Surface::SPHERE, 7, false).unwrap();
        assert_eq!(a, b);
        let forms: std::collections::BTreeSet<CanonicalForm> = a
            .triangulations()
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(forms.len(), a.len());
    }

    #[test]
    fn cap_is_enforced() {
        if std::env::var(CAP_ENV).is_ok() {
            return;
        }
        let err = enumerate_triangulations(Surface::nonorientable(1), 8, true).unwrap_err();
        assert_eq!(
            err,
            EnumerationError::CapExceeded {
                surface: Surface::nonorientable(1),
                max_n: 8,
                cap: 7
            }
        );
    }
}
