use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::triangulation::Triangulation;

/// Relabelling- and reflection-invariant encoding of a triangulation. Two
/// triangulations have the same form exactly when they are isomorphic as
/// embedded complexes, mirror images included.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm(pub Vec<u8>);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// The rotation at each vertex, read as its link cycle.
struct Links {
    rot: Vec<Vec<usize>>,
}

impl Links {
    fn new(t: &Triangulation) -> Self {
        Links {
            rot: (0..t.vertex_count()).map(|v| t.rotation(v).expect("vertex in range")).collect(),
        }
    }

    /// The link of `v` read from `start`, with `next` second.
    fn walk(&self, v: usize, start: usize, next: usize) -> impl Iterator<Item = usize> + '_ {
        let r = &self.rot[v];
        let d = r.len();
        let p = r.iter().position(|&x| x == start).expect("start in link");
        let forward = r[(p + 1) % d] == next;
        debug_assert!(forward || r[(p + d - 1) % d] == next);
        (0..d).map(move |k| if forward { r[(p + k) % d] } else { r[(p + d - k) % d] })
    }
}

/// BFS labelling from the flag `(root, first, second)`; returns the code
/// and the relabelling `old -> new`.
fn code_from(links: &Links, n: usize, root: usize, first: usize, second: usize) -> (Vec<u8>, Vec<usize>) {
    const NONE: usize = usize::MAX;
    let mut label = vec![NONE; n];
    let mut start: Vec<(usize, usize)> = vec![(NONE, NONE); n];
    let mut queue = VecDeque::with_capacity(n);
    let mut next_label = 0;
    label[root] = next_label;
    next_label += 1;
    start[root] = (first, second);
    queue.push_back(root);
    let mut code = Vec::with_capacity(2 * (n + 6 * n));
    while let Some(v) = queue.pop_front() {
        let (a, b) = start[v];
        let walk: Vec<usize> = links.walk(v, a, b).collect();
        let d = walk.len();
        code.extend_from_slice(&(d as u16).to_be_bytes());
        for k in 0..d {
            let w = walk[k];
            if label[w] == NONE {
                label[w] = next_label;
                next_label += 1;
                // `v, walk[k-1], w` is a face, so `walk[k-1]` follows `v` in the link of `w`
                start[w] = (v, walk[(k + d - 1) % d]);
                queue.push_back(w);
            }
            code.extend_from_slice(&(label[w] as u16).to_be_bytes());
        }
    }
    (code, label)
}

/// The canonical form and a relabelling (`perm[old] = new`) realising it.
pub fn canonical_labeling(t: &Triangulation) -> (CanonicalForm, Vec<usize>) {
    let links = Links::new(t);
    let n = t.vertex_count();
    let max_deg = (0..n).map(|v| links.rot[v].len()).max().unwrap_or(0);
    let mut best: Option<(Vec<u8>, Vec<usize>)> = None;
    // the root must have maximum degree; the first code word already says so
    for v in (0..n).filter(|&v| links.rot[v].len() == max_deg) {
        let r = &links.rot[v];
        let d = r.len();
        for i in 0..d {
            for nb in [r[(i + 1) % d], r[(i + d - 1) % d]] {
                let (code, perm) = code_from(&links, n, v, r[i], nb);
                if best.as_ref().is_none_or(|(b, _)| code < *b) {
                    best = Some((code, perm));
                }
            }
        }
    }
    let (code, perm) = best.unwrap_or_default();
    (CanonicalForm(code), perm)
}

pub fn canonical_form(t: &Triangulation) -> CanonicalForm {
    canonical_labeling(t).0
}

/// `t` relabelled into canonical order.
pub fn canonical_relabel(t: &Triangulation) -> Triangulation {
    let (_, perm) = canonical_labeling(t);
    t.relabel(&perm).expect("relabelling preserves validity")
}

pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.vertex_count() == b.vertex_count() && a.face_count() == b.face_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn mirror(t: &Triangulation) -> Triangulation {
        let faces: Vec<[usize; 3]> = t.face_triples().into_iter().map(|[a, b, c]| [a, c, b]).collect();
        Triangulation::from_faces(&faces).unwrap()
    }

    #[test]
    fn k4_relabelings_agree() {
        let t = catalog::tetrahedron();
        let f = canonical_form(&t);
        for perm in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 3, 0, 1], [0, 2, 3, 1]] {
            assert_eq!(canonical_form(&t.relabel(&perm).unwrap()), f);
        }
    }

    #[test]
    fn mirror_images_agree() {
        for t in [catalog::k7_torus(), catalog::icosahedron(), catalog::k6_projective()] {
            assert_eq!(canonical_form(&mirror(&t)), canonical_form(&t));
        }
    }

    #[test]
    fn different_triangulations_differ() {
        assert_ne!(
            canonical_form(&catalog::k6_projective()),
            canonical_form(&catalog::k7_minus_k3())
        );
        assert_ne!(canonical_form(&catalog::octahedron()), canonical_form(&catalog::tetrahedron()));
    }

    #[test]
    fn canonical_relabel_is_a_fixed_point() {
        let t = catalog::k7_minus_k3();
        let c = canonical_relabel(&t);
        assert_eq!(canonical_form(&c), canonical_form(&t));
        let (_, perm) = canonical_labeling(&c);
        let again = c.relabel(&perm).unwrap();
        assert_eq!(again.sorted_faces(), c.sorted_faces());
    }

    #[test]
    fn code_starts_with_the_max_degree() {
        let f = canonical_form(&catalog::k7_minus_k3());
        assert_eq!(&f.0[..2], &6u16.to_be_bytes());
        assert_eq!(f.0.len(), 2 * (7 + 2 * 18));
    }
}
