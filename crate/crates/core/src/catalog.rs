//! Small named triangulations used by tests, examples and the bundled censuses.

use crate::surface_map::CombinatorialMap;
use crate::triangulation::Triangulation;

/// K4 on the sphere.
pub fn tetrahedron_faces() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
}

/// Octahedron; antipodal pairs are (0,5), (1,3), (2,4).
pub fn octahedron_faces() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 1, 2],
        [5, 2, 3],
        [5, 3, 4],
        [5, 4, 1],
    ]
}

/// Icosahedron: apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron_faces() -> Vec<[usize; 3]> {
    let up = |k: usize| 1 + k % 5;
    let low = |k: usize| 6 + k % 5;
    let mut faces = Vec::with_capacity(20);
    for k in 0..5 {
        faces.push([0, up(k), up(k + 1)]);
        faces.push([11, low(k), low(k + 1)]);
        faces.push([up(k), up(k + 1), low(k)]);
        faces.push([up(k + 1), low(k), low(k + 1)]);
    }
    faces
}

/// K6 on the projective plane (the hemi-icosahedron).
pub fn k6_projective_faces() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ]
}

/// K7 minus the triangle {4, 5, 6} on the projective plane.
pub fn k7_minus_k3_faces() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 4],
        [0, 1, 5],
        [0, 2, 4],
        [0, 2, 6],
        [0, 3, 5],
        [0, 3, 6],
        [1, 2, 5],
        [1, 2, 6],
        [1, 3, 4],
        [1, 3, 6],
        [2, 3, 4],
        [2, 3, 5],
    ]
}

/// The classical toroidal rotation of K7: vertex `i` sees
/// `i+1, i+3, i+2, i+6, i+4, i+5` (mod 7).
pub fn k7_torus_rotations() -> Vec<Vec<usize>> {
    (0..7)
        .map(|i| [1, 3, 2, 6, 4, 5].iter().map(|k| (i + k) % 7).collect())
        .collect()
}

pub fn k7_torus_map() -> CombinatorialMap {
    CombinatorialMap::from_rotations(&k7_torus_rotations(), &[]).expect("valid rotation system")
}

/// Faces of K7 on the torus: `{i, i+1, i+3}` and `{i, i+2, i+3}` (mod 7).
pub fn k7_torus_faces() -> Vec<[usize; 3]> {
    let mut faces = Vec::with_capacity(14);
    for i in 0..7 {
        faces.push([i, (i + 1) % 7, (i + 3) % 7]);
        faces.push([i, (i + 2) % 7, (i + 3) % 7]);
    }
    faces
}

/// Two triangles glued along their whole boundary (a sphere whose two faces
/// share three edges).
pub fn theta_sphere_faces() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 1, 2]]
}

fn build(faces: &[[usize; 3]]) -> Triangulation {
    Triangulation::from_faces(faces).expect("catalog entry is a valid triangulation")
}

pub fn tetrahedron() -> Triangulation {
    build(&tetrahedron_faces())
}

pub fn octahedron() -> Triangulation {
    build(&octahedron_faces())
}

pub fn icosahedron() -> Triangulation {
    build(&icosahedron_faces())
}

pub fn k6_projective() -> Triangulation {
    build(&k6_projective_faces())
}

pub fn k7_minus_k3() -> Triangulation {
    build(&k7_minus_k3_faces())
}

pub fn k7_torus() -> Triangulation {
    build(&k7_torus_faces())
}
