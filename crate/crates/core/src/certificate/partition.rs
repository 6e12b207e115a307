use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::good_set::GoodSet;
use super::{CertificateError, MAX_LEVEL, MIN_LEVEL};
use crate::genus::{validate_tree_representation, DEFAULT_ORACLE_BUDGET};
use crate::triangulation::Triangulation;

/// The coarse partition `{S, N, A, Z}` with its edge counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplePartition {
    pub g: i64,
    pub vertices: i64,
    pub edges: i64,
    pub s: BTreeSet<usize>,
    pub n: BTreeSet<usize>,
    pub a: BTreeSet<usize>,
    pub z: BTreeSet<usize>,
    pub e_sn: i64,
    pub e_n: i64,
    pub e_na: i64,
    pub e_nz: i64,
    pub e_a: i64,
    pub e_az: i64,
    pub e_z: i64,
    /// Sum of degrees over `A` and over `Z`.
    pub deg_sum_a: i64,
    pub deg_sum_z: i64,
    pub min_degree_z: Option<usize>,
    /// Largest degree in `S`.
    pub max_degree_s: Option<usize>,
    /// Minimum degree of `G[N]` (None when `N` is empty).
    pub min_degree_n: Option<usize>,
    /// Certified lower bound on `eg` from the tree kept with `S`.
    pub tree_lower_bound: i64,
}

/// One component `X_l` of `H_i` with the vertices `D_l` of `A_hat_i`
/// assigned to it and the size of the bipartite graph `B_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignedComponent {
    pub vertices: Vec<usize>,
    pub d: Vec<usize>,
    pub b_vertices: i64,
    pub b_edges: i64,
}

/// Everything indexed by one degree `i` in `4..=9`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCounts {
    pub i: usize,
    pub s: i64,
    pub s_hat: i64,
    pub u: i64,
    pub y: i64,
    pub v: i64,
    pub w: i64,
    pub c: i64,
    pub a_hat: i64,
    pub e_u: i64,
    pub e_uy: i64,
    pub e_y: i64,
    pub e_uv: i64,
    pub e_ua: i64,
    pub components: Vec<AssignedComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub basic: SimplePartition,
    pub levels: Vec<LevelCounts>,
    /// `|A_4|, ..., |A_9|, |A_10|` where `A_10` collects degrees `>= 10`.
    pub a_sizes: Vec<i64>,
}

fn len(s: &BTreeSet<usize>) -> i64 {
    s.len() as i64
}

fn check_set(t: &Triangulation, good: &GoodSet) -> Result<(), CertificateError> {
    let cap = good.mode.degree_cap();
    let ok = good
        .set
        .iter()
        .all(|&v| v < t.vertex_count() && t.deg(v) <= cap && !t.nbrs(v).iter().any(|w| good.set.contains(w)));
    if ok {
        Ok(())
    } else {
        Err(CertificateError::BadSet { cap })
    }
}

/// `N = N(S)`, `A` = outside vertices with at least three neighbours in `N`,
/// `Z` = the rest.
pub fn simple_partition(t: &Triangulation, good: &GoodSet) -> Result<SimplePartition, CertificateError> {
    check_set(t, good)?;
    let s = good.set.clone();
    let n = t.neighborhood(&s);
    let (a, z): (BTreeSet<usize>, BTreeSet<usize>) = (0..t.vertex_count())
        .filter(|v| !s.contains(v) && !n.contains(v))
        .partition(|&v| t.edges_to(v, &n) >= 3);
    let e = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| t.edge_count_between(x, y) as i64;
    let deg_sum = |x: &BTreeSet<usize>| x.iter().map(|&v| t.deg(v) as i64).sum::<i64>();
    let bound = validate_tree_representation(&good.tree, DEFAULT_ORACLE_BUDGET)?;
    Ok(SimplePartition {
        g: t.euler_genus() as i64,
        vertices: t.vertex_count() as i64,
        edges: t.edge_count() as i64,
        e_sn: e(&s, &n),
        e_n: t.edge_count_within(&n) as i64,
        e_na: e(&n, &a),
        e_nz: e(&n, &z),
        e_a: t.edge_count_within(&a) as i64,
        e_az: e(&a, &z),
        e_z: t.edge_count_within(&z) as i64,
        deg_sum_a: deg_sum(&a),
        deg_sum_z: deg_sum(&z),
        min_degree_z: z.iter().map(|&v| t.deg(v)).min(),
        max_degree_s: s.iter().map(|&v| t.deg(v)).max(),
        min_degree_n: t.induced(&n).min_degree(),
        tree_lower_bound: bound.lower_bound as i64,
        s,
        n,
        a,
        z,
    })
}

/// Computes every set and edge count of the full certificate. Each vertex of
/// `A_hat_i` goes to the first component of `H_i` (by smallest vertex) where
/// it has at least three neighbours.
pub fn full_partition(t: &Triangulation, good: &GoodSet) -> Result<PartitionReport, CertificateError> {
    let basic = simple_partition(t, good)?;
    let deg = |v: usize| t.deg(v);
    let mut a_sizes = vec![0i64; 7];
    for &v in &basic.a {
        a_sizes[deg(v).clamp(MIN_LEVEL, 10) - MIN_LEVEL] += 1;
    }
    let mut levels = Vec::new();
    for i in MIN_LEVEL..=MAX_LEVEL {
        let level = good.level(i);
        let s_hat = &level.s_hat;
        let u = t.neighborhood(s_hat);
        let y: BTreeSet<usize> = basic.n.difference(&u).copied().collect();
        let (v, w): (BTreeSet<usize>, BTreeSet<usize>) = y.iter().partition(|&&x| deg(x) <= i);
        let a_hat: BTreeSet<usize> = basic.a.iter().copied().filter(|&x| deg(x) <= i).collect();

        let mut components: Vec<AssignedComponent> = level
            .components
            .iter()
            .map(|c| AssignedComponent {
                vertices: c.vertices().collect(),
                d: Vec::new(),
                b_vertices: 0,
                b_edges: 0,
            })
            .collect();
        for &x in &a_hat {
            let slot = level
                .components
                .iter()
                .position(|c| t.nbrs(x).iter().filter(|w| c.contains_vertex(**w)).count() >= 3)
                .ok_or(CertificateError::NoQualifyingComponent { vertex: x, level: i })?;
            components[slot].d.push(x);
        }
        for comp in &mut components {
            let vx: BTreeSet<usize> = comp.vertices.iter().copied().collect();
            let mut p: BTreeSet<usize> = s_hat.intersection(&vx).copied().collect();
            p.extend(comp.d.iter().copied());
            let q: BTreeSet<usize> = vx.intersection(&u).copied().collect();
            comp.b_vertices = len(&p) + len(&q);
            comp.b_edges = t.edge_count_between(&p, &q) as i64;
        }

        let e = |x: &BTreeSet<usize>, y: &BTreeSet<usize>| t.edge_count_between(x, y) as i64;
        levels.push(LevelCounts {
            i,
            s: s_hat.iter().filter(|&&x| deg(x) == i).count() as i64,
            s_hat: len(s_hat),
            u: len(&u),
            y: len(&y),
            v: len(&v),
            w: len(&w),
            c: level.components.len() as i64,
            a_hat: len(&a_hat),
            e_u: t.edge_count_within(&u) as i64,
            e_uy: e(&u, &y),
            e_y: t.edge_count_within(&y) as i64,
            e_uv: e(&u, &v),
            e_ua: e(&u, &basic.a),
            components,
        });
    }
    Ok(PartitionReport {
        basic,
        levels,
        a_sizes,
    })
}

impl PartitionReport {
    pub fn level(&self, i: usize) -> &LevelCounts {
        &self.levels[i - MIN_LEVEL]
    }

    /// `|S_i|`.
    pub fn s(&self, i: usize) -> i64 {
        self.level(i).s
    }

    /// `|A_i|` for `i` in `4..=10`.
    pub fn a(&self, i: usize) -> i64 {
        self.a_sizes[i - MIN_LEVEL]
    }

    /// Values of every named quantity, keyed as in the derivation tables.
    pub fn variables(&self) -> BTreeMap<String, i64> {
        let b = &self.basic;
        let mut m = BTreeMap::new();
        let mut put = |k: String, v: i64| {
            m.insert(k, v);
        };
        put("g".into(), b.g);
        put("|V(G)|".into(), b.vertices);
        put("|E(G)|".into(), b.edges);
        put("|S|".into(), len(&b.s));
        put("|N|".into(), len(&b.n));
        put("|A|".into(), len(&b.a));
        put("|Z|".into(), len(&b.z));
        put("e(S,N)".into(), b.e_sn);
        put("e(N)".into(), b.e_n);
        put("e(N,A)".into(), b.e_na);
        put("e(N,Z)".into(), b.e_nz);
        put("e(A)".into(), b.e_a);
        put("e(A,Z)".into(), b.e_az);
        put("e(Z)".into(), b.e_z);
        for i in MIN_LEVEL..=10 {
            put(format!("|A_{i}|"), self.a(i));
        }
        for l in &self.levels {
            let i = l.i;
            put(format!("|S_{i}|"), l.s);
            put(format!("|U_{i}|"), l.u);
            put(format!("|Y_{i}|"), l.y);
            put(format!("|V_{i}|"), l.v);
            put(format!("|W_{i}|"), l.w);
            put(format!("c_{i}"), l.c);
            put(format!("e(U_{i})"), l.e_u);
            put(format!("e(U_{i},Y_{i})"), l.e_uy);
            put(format!("e(Y_{i})"), l.e_y);
            put(format!("e(U_{i},V_{i})"), l.e_uv);
            put(format!("e(U_{i},A)"), l.e_ua);
        }
        m
    }
}
