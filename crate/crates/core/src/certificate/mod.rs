//! The independent-set certificates on concrete irreducible triangulations.
//!
//! Two modes share the partition code. Simple mode builds a maximal ordered
//! independent set of vertices of degree at most 6 and checks the coarse
//! `{S, N, A, Z}` inequalities (bound `25g - 12`). Full mode runs the
//! improvement search over good sets of degree-at-most-9 vertices, keeps a
//! tree representation along the way, and checks every per-degree inequality
//! (bound `13g - 4`).
//!
//! Here `g` is always the Euler genus of the surface.

mod good_set;
mod inequalities;
mod partition;

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::genus::TreeError;

pub use good_set::{
    build_good_s, build_simple_s, check_goodness, move_postcondition_violations, GoodSet, Level,
    MoveStep, MoveViolation,
};
pub use inequalities::{
    verify_full_certificate, verify_simple_certificate, InequalityCheck, InequalityReport, Relation,
};
pub use partition::{
    full_partition, simple_partition, AssignedComponent, LevelCounts, PartitionReport, SimplePartition,
};

/// Smallest and largest degree tracked per level.
pub const MIN_LEVEL: usize = 4;
pub const MAX_LEVEL: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Simple,
    Full,
}

impl Mode {
    /// Largest degree allowed in `S`.
    pub fn degree_cap(self) -> usize {
        match self {
            Mode::Simple => 6,
            Mode::Full => MAX_LEVEL,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("input has Euler genus 0; the certificate needs g >= 1")]
    Sphere,
    #[error("input is reducible: edge {0:?} contracts")]
    Reducible((usize, usize)),
    #[error("goodness fails at level {level}: no tree node matches the component containing {component_min}")]
    NotGood { level: usize, component_min: usize },
    #[error("improvement step did not increase phi: {before:?} -> {after:?}")]
    PhiNotIncreasing { before: PhiVector, after: PhiVector },
    #[error("vertex {vertex} in A_hat_{level} has no component of H_{level} with three neighbours")]
    NoQualifyingComponent { vertex: usize, level: usize },
    #[error("set S is not independent or has a vertex of degree above {cap}")]
    BadSet { cap: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `(|S_4|, ..., |S_9|)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct PhiVector(pub [usize; 6]);

impl PhiVector {
    pub fn get(&self, i: usize) -> usize {
        self.0[i - MIN_LEVEL]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Lexicographic comparison from `|S_4|` upward, so a surplus at a lower
/// degree wins.
pub fn phi_compare(a: &PhiVector, b: &PhiVector) -> Ordering {
    a.0.cmp(&b.0)
}

impl PartialOrd for PhiVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PhiVector {
    fn cmp(&self, other: &Self) -> Ordering {
        phi_compare(self, other)
    }
}
