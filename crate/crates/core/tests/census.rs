use irrtri::catalog;
use irrtri::census::{
    bundled, canonical_form, check_census, enumerate_triangulations, isomorphic, parse_census, write_census,
    CensusOptions, Surface,
};

#[test]
fn bundled_censuses_pass_every_check() {
    for file in bundled() {
        let r = check_census(&file, CensusOptions::default());
        for e in &r.entries {
            assert!(e.passed, "{} entry {}: {:?}", file.surface, e.index, e.errors);
        }
        if file.surface.euler_genus >= 1 {
            assert!(r.entries.iter().all(|e| e.full_certificate == Some(true) && e.move_stable == Some(true)));
        }
    }
}

#[test]
fn torus_census_statistics() {
    let torus = &bundled()[2];
    let r = check_census(torus, CensusOptions::default());
    assert_eq!(r.entries.len(), 21);
    assert_eq!(r.max_vertices, 10);
    assert_eq!(r.bound, Some(22));
    assert_eq!(r.summary(), "21/21 pass; max |V| = 10 <= 22");
}

#[test]
fn enumeration_reproduces_bundled_censuses() {
    for file in bundled().into_iter().take(2) {
        let max_n = if file.surface == Surface::SPHERE { 6 } else { 7 };
        let fresh = enumerate_triangulations(file.surface, max_n, true).unwrap();
        assert_eq!(write_census(&fresh), write_census(&file));
    }
}

#[test]
fn enumerated_projective_plane_is_k6_and_k7_minus_k3() {
    let f = enumerate_triangulations(Surface::nonorientable(1), 7, true).unwrap();
    let ts = f.triangulations().unwrap();
    assert_eq!(ts.len(), 2);
    assert!(isomorphic(&ts[0], &catalog::k6_projective()));
    assert!(isomorphic(&ts[1], &catalog::k7_minus_k3()));
}

#[test]
fn sphere_irreducible_counts_per_order() {
    let f = enumerate_triangulations(Surface::SPHERE, 8, true).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(canonical_form(&f.triangulations().unwrap()[0]), canonical_form(&catalog::tetrahedron()));
}

#[test]
fn enumerated_entries_satisfy_euler_relation() {
    for s in [Surface::SPHERE, Surface::nonorientable(1), Surface::orientable(1), Surface::nonorientable(2)] {
        let f = enumerate_triangulations(s, if s == Surface::nonorientable(1) { 7 } else { 8 }, false).unwrap();
        for t in f.triangulations().unwrap() {
            let g = t.euler_genus() as i64;
            assert_eq!(t.edge_count() as i64, 3 * (t.vertex_count() as i64 + g - 2));
            assert_eq!(3 * t.face_count(), 2 * t.edge_count());
        }
    }
}

#[test]
fn census_text_round_trip() {
    for file in bundled() {
        let text = write_census(&file);
        assert_eq!(write_census(&parse_census(&text).unwrap()), text);
    }
}
