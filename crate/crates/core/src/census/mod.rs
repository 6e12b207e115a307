//! Census files, canonical forms, exhaustive enumeration of small
//! triangulations, and whole-census verification.

mod canonical;
mod check;
mod enumerate;
mod format;

pub use canonical::{canonical_form, canonical_labeling, canonical_relabel, isomorphic, CanonicalForm};
pub use check::{check_census, CensusOptions, CensusReport, EntryReport};
pub use enumerate::{
    default_cap, enumerate_triangulations, enumerate_unchecked, enumeration_cap, Enumerated, EnumerationError,
    CAP_ENV,
};
pub use format::{
    normalize_faces, parse_census, parse_census_text, write_census, CensusError, CensusFile, Surface,
    SurfaceParseError,
};

const SPHERE: &str = include_str!("../../data/census/sphere.tri");
const PROJECTIVE_PLANE: &str = include_str!("../../data/census/projective_plane.tri");
const TORUS: &str = include_str!("../../data/census/torus.tri");

/// Text of the census shipped for `surface`: the sphere, projective plane
/// and torus.
pub fn bundled_text(surface: Surface) -> Option<&'static str> {
    match (surface.orientable, surface.euler_genus) {
        (true, 0) => Some(SPHERE),
        (false, 1) => Some(PROJECTIVE_PLANE),
        (true, 2) => Some(TORUS),
        _ => None,
    }
}

/// Every bundled census, parsed and validated.
pub fn bundled() -> Vec<CensusFile> {
    [Surface::SPHERE, Surface::nonorientable(1), Surface::orientable(1)]
        .into_iter()
        .map(|s| parse_census(bundled_text(s).expect("bundled")).expect("bundled census is valid"))
        .collect()
}
