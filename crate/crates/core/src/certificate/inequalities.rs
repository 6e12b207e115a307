use std::fmt;

use serde::Serialize;

use super::good_set::GoodSet;
use super::partition::{simple_partition, PartitionReport, SimplePartition};
use super::{CertificateError, Mode, MAX_LEVEL, MIN_LEVEL};
use crate::triangulation::Triangulation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// One evaluated relation. `gap` is how far the relation is from tight
/// (negative when it fails; for equalities, `right - left`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub id: String,
    pub left: i64,
    pub relation: Relation,
    pub right: i64,
    pub holds: bool,
    pub gap: i64,
    /// Evaluated with `S` empty.
    pub vacuous: bool,
}

impl InequalityCheck {
    fn new(id: impl Into<String>, left: i64, relation: Relation, right: i64) -> Self {
        let (holds, gap) = match relation {
            Relation::Le => (left <= right, right - left),
            Relation::Ge => (left >= right, left - right),
            Relation::Eq => (left == right, right - left),
        };
        InequalityCheck {
            id: id.into(),
            left,
            relation,
            right,
            holds,
            gap,
            vacuous: false,
        }
    }
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} {} {} {}  gap {}  {}",
            self.id,
            self.left,
            self.relation,
            self.right,
            self.gap,
            if self.holds { "ok" } else { "FAIL" }
        )?;
        if self.vacuous {
            f.write_str(" (vacuous)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub mode: Mode,
    pub checks: Vec<InequalityCheck>,
    /// Final vertex bounds.
    pub bounds: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().chain(&self.bounds).all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .chain(&self.bounds)
            .filter(|c| !c.holds)
            .map(|c| c.id.as_str())
            .collect()
    }

    pub fn get(&self, id: &str) -> Option<&InequalityCheck> {
        self.checks.iter().chain(&self.bounds).find(|c| c.id == id)
    }
}

#[derive(Default)]
struct Checks(Vec<InequalityCheck>);

impl Checks {
    fn le(&mut self, id: impl Into<String>, left: i64, right: i64) {
        self.0.push(InequalityCheck::new(id, left, Relation::Le, right));
    }
    fn ge(&mut self, id: impl Into<String>, left: i64, right: i64) {
        self.0.push(InequalityCheck::new(id, left, Relation::Ge, right));
    }
    fn eq(&mut self, id: impl Into<String>, left: i64, right: i64) {
        self.0.push(InequalityCheck::new(id, left, Relation::Eq, right));
    }
}

const S_DEPENDENT: &[&str] = &["Sg", "N", "NS", "NN", "N6S", "eSN", "Ui", "Components", "3Ui", "3Vi", "4Vi", "Bi", "Bedges", "Btree"];

fn mark_vacuous(checks: &mut [InequalityCheck], s_empty: bool) {
    if !s_empty {
        return;
    }
    for c in checks {
        let stem = c.id.split('.').next().unwrap_or("");
        c.vacuous = S_DEPENDENT.contains(&stem);
    }
}

fn common_checks(c: &mut Checks, b: &SimplePartition) {
    let (s, n, a, z) = (b.s.len() as i64, b.n.len() as i64, b.a.len() as i64, b.z.len() as i64);
    let e_sum = b.e_sn + b.e_n + b.e_na + b.e_nz + b.e_a + b.e_az + b.e_z;
    c.le("3A", 3 * a, b.e_na);
    c.eq("WholeGraph", e_sum, 3 * (b.vertices + b.g - 2));
    c.eq("WholeGraph.edges", e_sum, b.edges);
    c.eq("Vpart", b.vertices, s + n + a + z);
    c.le("Sg.tree", s, b.tree_lower_bound);
    c.le("Sg.genus", b.tree_lower_bound, b.g);
}

/// Evaluates the coarse inequalities on the set from `build_simple_s` and the
/// final bound `|V| <= 25g - 12`.
pub fn verify_simple_certificate(t: &Triangulation, good: &GoodSet) -> Result<InequalityReport, CertificateError> {
    let b = simple_partition(t, good)?;
    let (s, n, a, z) = (b.s.len() as i64, b.n.len() as i64, b.a.len() as i64, b.z.len() as i64);
    let mut c = Checks::default();
    c.le("ZZZ", 7 * z, b.deg_sum_z);
    c.eq("ZZZ.sum", b.deg_sum_z, b.e_nz + b.e_az + 2 * b.e_z);
    c.le("AAA", 4 * a, b.deg_sum_a);
    c.eq("AAA.sum", b.deg_sum_a, b.e_na + b.e_az + 2 * b.e_a);
    common_checks(&mut c, &b);
    c.le("NS", n, b.e_sn);
    c.le("NN", 3 * n, 2 * b.e_n);
    c.le("N6S", n, 6 * s);
    let mut checks = c.0;
    mark_vacuous(&mut checks, b.s.is_empty());
    let bounds = vec![InequalityCheck::new("bound", b.vertices, Relation::Le, 25 * b.g - 12)];
    Ok(InequalityReport {
        mode: Mode::Simple,
        checks,
        bounds,
    })
}

/// Evaluates every per-degree inequality on a full partition. The relation
/// with halves is doubled on both sides. Bounds: `21|V| <= 273g - 72` and the
/// rounded `|V| <= 13g - 4`.
pub fn verify_full_certificate(r: &PartitionReport) -> InequalityReport {
    let b = &r.basic;
    let (s, n, a, z) = (b.s.len() as i64, b.n.len() as i64, b.a.len() as i64, b.z.len() as i64);
    let g = b.g;
    let si = |i: usize| r.s(i);
    let sum_s = |lo: usize, hi: usize, w: &dyn Fn(i64) -> i64| (lo..=hi).map(|j| w(j as i64) * si(j)).sum::<i64>();
    let mut c = Checks::default();

    c.le("N", n, b.e_sn);
    c.eq("eSN", b.e_sn, sum_s(MIN_LEVEL, MAX_LEVEL, &|j| j));
    for i in MIN_LEVEL + 1..=MAX_LEVEL {
        c.le(format!("Ui.{i}"), r.level(i).u, r.level(i - 1).u + i as i64 * si(i));
    }
    for i in MIN_LEVEL..=MAX_LEVEL {
        let l = r.level(i);
        c.le(format!("Components.{i}"), l.u, l.c + sum_s(MIN_LEVEL, i, &|j| j - 1));
    }
    for i in MIN_LEVEL..=MAX_LEVEL {
        let l = r.level(i);
        c.le(format!("3Ui.{i}"), 3 * l.u, 2 * l.e_u);
        c.le(format!("3Vi.{i}"), 3 * l.v, l.e_uv);
        c.le(format!("3Vi.{i}.chain"), l.e_uv, l.e_uy);
    }
    c.le("10Z", 10 * z, b.deg_sum_z);
    c.eq("10Z.sum", b.deg_sum_z, 2 * b.e_z + b.e_nz + b.e_az);
    let weighted_a: i64 = (MIN_LEVEL..=10).map(|i| i as i64 * r.a(i)).sum();
    c.le("iAi", weighted_a, b.deg_sum_a);
    c.eq("iAi.sum", b.deg_sum_a, 2 * b.e_a + b.e_na + b.e_az);
    for i in MIN_LEVEL..=MAX_LEVEL {
        let l = r.level(i);
        let left = 4 * l.v + (i as i64 + 1) * l.w + 3 * l.a_hat;
        let right = sum_s(i + 1, MAX_LEVEL, &|j| j) + l.e_uy + 2 * l.e_y + b.e_nz + b.e_na;
        c.le(format!("4Vi.{i}"), left, right);
    }
    for i in MIN_LEVEL..=MAX_LEVEL {
        let l = r.level(i);
        let right = 2 * s - 2 * l.u + l.a_hat + 4 * l.c + sum_s(MIN_LEVEL, i, &|j| j - 4);
        c.ge(format!("Bi.{i}"), 2 * g, right);
        let b_edges: i64 = l.components.iter().map(|x| x.b_edges).sum();
        c.ge(format!("Bedges.{i}"), b_edges, 3 * l.a_hat + sum_s(MIN_LEVEL, i, &|j| j));
        let tree: i64 = l.components.iter().map(|x| x.b_edges - 2 * x.b_vertices + 4).sum();
        c.ge(format!("Btree.{i}"), 2 * g, 2 * (s - l.s_hat) + tree);
    }
    common_checks(&mut c, b);
    for i in MIN_LEVEL..=MAX_LEVEL {
        let l = r.level(i);
        c.eq(format!("Npart.{i}"), n, l.u + l.v + l.w);
        c.eq(format!("eN.{i}"), b.e_n, l.e_u + l.e_uy + l.e_y);
    }
    c.eq("Apart", a, r.a_sizes.iter().sum());
    c.eq("Spart", s, sum_s(MIN_LEVEL, MAX_LEVEL, &|_| 1));

    let mut checks = c.0;
    mark_vacuous(&mut checks, b.s.is_empty());
    let bounds = vec![
        InequalityCheck::new("final", 21 * b.vertices, Relation::Le, 273 * g - 72),
        InequalityCheck::new("rounded", b.vertices, Relation::Le, 13 * g - 4),
    ];
    InequalityReport {
        mode: Mode::Full,
        checks,
        bounds,
    }
}
