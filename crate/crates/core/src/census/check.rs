use serde::Serialize;

use super::format::{CensusFile, Surface};
use crate::certificate::{
    build_good_s, build_simple_s, full_partition, move_postcondition_violations, verify_full_certificate,
    verify_simple_certificate, CertificateError, InequalityReport,
};
use crate::genus::check_positive_genus_lemma;
use crate::ops::is_irreducible;
use crate::triangulation::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusOptions {
    /// Count `|V| <= 13g - 4` toward pass/fail.
    pub check_bound: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { check_bound: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub index: usize,
    pub vertices: usize,
    pub valid: bool,
    pub irreducible: Option<bool>,
    /// A contractible edge when reducible.
    pub witness: Option<(usize, usize)>,
    /// `None` on the sphere, where the statements do not apply.
    pub positive_genus_lemma: Option<bool>,
    pub move_stable: Option<bool>,
    pub simple_certificate: Option<bool>,
    pub full_certificate: Option<bool>,
    /// `|V| <= 13g - 4`.
    pub bound: Option<bool>,
    /// `|V| <= 25g - 12`.
    pub simple_bound: Option<bool>,
    pub errors: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub surface: Surface,
    pub options: CensusOptions,
    pub entries: Vec<EntryReport>,
    pub passed: usize,
    pub max_vertices: usize,
    /// `13g - 4`, absent on the sphere.
    pub bound: Option<i64>,
    /// Order given by the known infinite construction families: `floor(17h/2)`
    /// for `S_h`, `floor(11k/2)` for `N_k`. Informational only; small surfaces
    /// have larger sporadic examples.
    pub known_construction: usize,
}

impl CensusReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.entries.len()
    }

    pub fn failed(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.index).collect()
    }

    /// One-line summary, e.g. `2/2 pass; max |V| = 7 <= 9`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}/{} pass; max |V| = {}",
            self.passed,
            self.entries.len(),
            self.max_vertices
        );
        if let Some(b) = self.bound {
            s.push_str(&format!(" <= {b}"));
        }
        s
    }
}

fn record<T>(errors: &mut Vec<String>, what: &str, r: Result<T, CertificateError>) -> Option<T> {
    r.map_err(|e| errors.push(format!("{what}: {e}"))).ok()
}

fn report_holds(errors: &mut Vec<String>, what: &str, r: &InequalityReport) -> bool {
    let ok = r.all_hold();
    if !ok {
        errors.push(format!("{what}: failing {}", r.failures().join(", ")));
    }
    ok
}

/// Runs every check on one validated entry.
pub fn check_entry(index: usize, t: &Triangulation, options: CensusOptions) -> EntryReport {
    let g = t.euler_genus() as i64;
    let n = t.vertex_count() as i64;
    let mut errors = Vec::new();
    let irr = is_irreducible(t);
    if !irr.irreducible {
        errors.push(format!(
            "reducible: edge {:?} contracts",
            irr.witness.expect("reducible maps name an edge")
        ));
    }
    let mut rep = EntryReport {
        index,
        vertices: t.vertex_count(),
        valid: true,
        irreducible: Some(irr.irreducible),
        witness: irr.witness,
        positive_genus_lemma: None,
        move_stable: None,
        simple_certificate: None,
        full_certificate: None,
        bound: None,
        simple_bound: None,
        errors: Vec::new(),
        passed: false,
    };
    if g >= 1 {
        let lemma = check_positive_genus_lemma(t);
        if !lemma.holds() {
            errors.push(format!("positive-genus lemma fails at {} vertices", lemma.violations.len()));
        }
        rep.positive_genus_lemma = Some(lemma.holds());
        rep.bound = Some(n <= 13 * g - 4);
        rep.simple_bound = Some(n <= 25 * g - 12);
        if options.check_bound && rep.bound == Some(false) {
            errors.push(format!("|V| = {n} exceeds 13g - 4 = {}", 13 * g - 4));
        }
        if irr.irreducible {
            if let Some(good) = record(&mut errors, "simple certificate", build_simple_s(t)) {
                if let Some(r) = record(&mut errors, "simple certificate", verify_simple_certificate(t, &good)) {
                    rep.simple_certificate = Some(report_holds(&mut errors, "simple certificate", &r));
                }
            }
            if let Some(good) = record(&mut errors, "full certificate", build_good_s(t)) {
                let stable = move_postcondition_violations(t, &good).is_empty();
                if !stable {
                    errors.push("good set is not move-stable".into());
                }
                rep.move_stable = Some(stable);
                if let Some(p) = record(&mut errors, "full certificate", full_partition(t, &good)) {
                    let r = verify_full_certificate(&p);
                    rep.full_certificate = Some(report_holds(&mut errors, "full certificate", &r));
                }
            }
            if rep.simple_certificate.is_none() {
                rep.simple_certificate = Some(false);
            }
            if rep.full_certificate.is_none() {
                rep.full_certificate = Some(false);
            }
        }
    }
    rep.passed = errors.is_empty();
    rep.errors = errors;
    rep
}

fn known_construction(surface: Surface) -> usize {
    if surface.orientable {
        17 * (surface.euler_genus / 2) / 2
    } else {
        11 * surface.euler_genus / 2
    }
}

/// Validates and checks every entry; failures are collected per entry.
pub fn check_census(file: &CensusFile, options: CensusOptions) -> CensusReport {
    let entries: Vec<EntryReport> = file
        .entries
        .iter()
        .enumerate()
        .map(|(index, faces)| match Triangulation::from_faces(faces) {
            Ok(t) if Surface::of(&t) == file.surface => check_entry(index, &t, options),
            other => {
                let msg = match other {
                    Ok(t) => format!("lies on {}, header declares {}", Surface::of(&t), file.surface),
                    Err(e) => e.to_string(),
                };
                EntryReport {
                    index,
                    vertices: faces.iter().flatten().max().map_or(0, |&m| m + 1),
                    valid: false,
                    irreducible: None,
                    witness: None,
                    positive_genus_lemma: None,
                    move_stable: None,
                    simple_certificate: None,
                    full_certificate: None,
                    bound: None,
                    simple_bound: None,
                    errors: vec![msg],
                    passed: false,
                }
            }
        })
        .collect();
    let g = file.surface.euler_genus as i64;
    CensusReport {
        surface: file.surface,
        options,
        passed: entries.iter().filter(|e| e.passed).count(),
        max_vertices: entries.iter().map(|e| e.vertices).max().unwrap_or(0),
        bound: (g >= 1).then_some(13 * g - 4),
        known_construction: known_construction(file.surface),
        entries,
    }
}
