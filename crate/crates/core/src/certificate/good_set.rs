use std::collections::BTreeSet;

use serde::Serialize;

use super::{CertificateError, Mode, PhiVector, MAX_LEVEL, MIN_LEVEL};
use crate::genus::{TreeNode, TreeRepresentation};
use crate::graph::SimpleGraph;
use crate::ops::is_irreducible;
use crate::triangulation::Triangulation;

/// Data for one degree level `i`: `S_hat_i`, the components of `H_i` (ordered
/// by smallest vertex) and, per component, the tree node representing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub i: usize,
    pub s_hat: BTreeSet<usize>,
    pub components: Vec<SimpleGraph>,
    pub nodes: Vec<Option<usize>>,
}

impl Level {
    /// `V(H_i)`.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.components.iter().flat_map(|c| c.vertices()).collect()
    }

    pub fn h(&self) -> SimpleGraph {
        let mut h = SimpleGraph::new();
        for c in &self.components {
            h.union_with(c);
        }
        h
    }
}

/// One improvement step of the full-mode search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveStep {
    pub vertex: usize,
    pub degree: usize,
    /// Members of `S` with degree above `degree`, dropped by the step.
    pub dropped: Vec<usize>,
    pub phi_before: PhiVector,
    pub phi_after: PhiVector,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodSet {
    pub mode: Mode,
    pub set: BTreeSet<usize>,
    pub tree: TreeRepresentation,
    /// Levels `4..=9`.
    pub levels: Vec<Level>,
    pub history: Vec<MoveStep>,
}

impl GoodSet {
    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i - MIN_LEVEL]
    }

    pub fn phi(&self, t: &Triangulation) -> PhiVector {
        phi_of(t, &self.set)
    }
}

/// A vertex of degree `degree` outside `H_level` with at most two neighbours
/// in every component of `H_level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MoveViolation {
    pub vertex: usize,
    pub degree: usize,
    pub level: usize,
}

fn precheck(t: &Triangulation) -> Result<(), CertificateError> {
    if t.euler_genus() == 0 {
        return Err(CertificateError::Sphere);
    }
    if let Some(w) = is_irreducible(t).witness {
        return Err(CertificateError::Reducible(w));
    }
    Ok(())
}

fn phi_of(t: &Triangulation, set: &BTreeSet<usize>) -> PhiVector {
    let mut phi = [0usize; 6];
    for &v in set {
        let d = t.deg(v);
        if (MIN_LEVEL..=MAX_LEVEL).contains(&d) {
            phi[d - MIN_LEVEL] += 1;
        }
    }
    PhiVector(phi)
}

fn find_node(tree: &TreeRepresentation, leaves: &BTreeSet<usize>, graph: &SimpleGraph) -> Option<usize> {
    tree.reachable()
        .into_iter()
        .find(|&x| tree.leaves_below(x) == *leaves && tree.graph_at(x) == *graph)
}

fn compute_levels(t: &Triangulation, set: &BTreeSet<usize>, tree: &TreeRepresentation) -> Vec<Level> {
    (MIN_LEVEL..=MAX_LEVEL)
        .map(|i| {
            let s_hat: BTreeSet<usize> = set.iter().copied().filter(|&v| t.deg(v) <= i).collect();
            let mut h = SimpleGraph::new();
            for &v in &s_hat {
                h.union_with(&t.g_v(v));
            }
            let components = h.components();
            let nodes = components
                .iter()
                .map(|c| {
                    let leaves: BTreeSet<usize> = s_hat.intersection(&c.vertex_set()).copied().collect();
                    find_node(tree, &leaves, c)
                })
                .collect();
            Level {
                i,
                s_hat,
                components,
                nodes,
            }
        })
        .collect()
}

/// Recomputes the levels of `set` and checks that every component of every
/// `H_i` is `G<x>` for a node `x` whose leaves are `S_hat_i ∩ V(X)`.
pub fn check_goodness(
    t: &Triangulation,
    set: &BTreeSet<usize>,
    tree: &TreeRepresentation,
) -> Result<Vec<Level>, CertificateError> {
    let levels = compute_levels(t, set, tree);
    for level in &levels {
        for (c, node) in level.components.iter().zip(&level.nodes) {
            if node.is_none() {
                return Err(CertificateError::NotGood {
                    level: level.i,
                    component_min: c.vertices().next().unwrap_or(0),
                });
            }
        }
    }
    Ok(levels)
}

fn is_candidate(t: &Triangulation, v: usize, level: &Level, h_vertices: &BTreeSet<usize>) -> bool {
    !h_vertices.contains(&v)
        && level
            .components
            .iter()
            .all(|c| t.nbrs(v).iter().filter(|w| c.contains_vertex(**w)).count() <= 2)
}

fn copy_subtree(from: &TreeRepresentation, x: usize, to: &mut TreeRepresentation) -> usize {
    match from.node(x) {
        TreeNode::Leaf { label, graph } => to.add_leaf(*label, graph.clone()),
        TreeNode::Internal { left, right } => {
            let (left, right) = (*left, *right);
            let l = copy_subtree(from, left, to);
            let r = copy_subtree(from, right, to);
            to.add_internal(l, r)
        }
    }
}

/// Full-mode search: starting from the empty set, repeatedly take the first
/// vertex (by degree, then id) of degree `j <= 9` outside `H_j` with at most
/// two neighbours in each component of `H_j`, replace `S` by
/// `S_hat_j + {v}`, and rebuild the tree by hanging the subtrees of the
/// components of `H_j` off a path ending at the leaf `v`.
pub fn build_good_s(t: &Triangulation) -> Result<GoodSet, CertificateError> {
    precheck(t)?;
    let mut order: Vec<usize> = (0..t.vertex_count())
        .filter(|&v| (MIN_LEVEL..=MAX_LEVEL).contains(&t.deg(v)))
        .collect();
    order.sort_by_key(|&v| (t.deg(v), v));

    let mut set = BTreeSet::new();
    let mut tree = TreeRepresentation::new();
    let mut levels = compute_levels(t, &set, &tree);
    let mut history = Vec::new();
    loop {
        let candidate = order.iter().copied().find(|&v| {
            let level = &levels[t.deg(v) - MIN_LEVEL];
            is_candidate(t, v, level, &level.vertices())
        });
        let Some(v) = candidate else { break };
        let j = t.deg(v);
        let level = &levels[j - MIN_LEVEL];

        let touches = |c: &SimpleGraph| t.nbrs(v).iter().any(|w| c.contains_vertex(*w));
        let mut parts: Vec<usize> = (0..level.components.len()).collect();
        parts.sort_by_key(|&k| !touches(&level.components[k]));

        let mut next_tree = TreeRepresentation::new();
        let mut cur = next_tree.add_leaf(v, t.g_v(v));
        for k in parts {
            let node = level.nodes[k].ok_or(CertificateError::NotGood {
                level: j,
                component_min: level.components[k].vertices().next().unwrap_or(0),
            })?;
            let x = copy_subtree(&tree, node, &mut next_tree);
            cur = next_tree.add_internal(x, cur);
        }
        next_tree.set_root(cur);

        let mut next_set = level.s_hat.clone();
        next_set.insert(v);
        let before = phi_of(t, &set);
        let after = phi_of(t, &next_set);
        if after <= before {
            return Err(CertificateError::PhiNotIncreasing { before, after });
        }
        next_tree.check()?;
        levels = check_goodness(t, &next_set, &next_tree)?;
        log::debug!("move: add {v} (degree {j}), phi {before:?} -> {after:?}");
        history.push(MoveStep {
            vertex: v,
            degree: j,
            dropped: set.difference(&next_set).copied().collect(),
            phi_before: before,
            phi_after: after,
        });
        set = next_set;
        tree = next_tree;
    }
    Ok(GoodSet {
        mode: Mode::Full,
        set,
        tree,
        levels,
        history,
    })
}

/// Simple mode: greedy in vertex order, adding `v` when `deg(v) <= 6`, `v`
/// is not adjacent to `S`, and `G_v` shares at most two vertices with the
/// union of the `G_w` already chosen. The tree is the caterpillar of the
/// insertion order.
pub fn build_simple_s(t: &Triangulation) -> Result<GoodSet, CertificateError> {
    precheck(t)?;
    let cap = Mode::Simple.degree_cap();
    let mut set = BTreeSet::new();
    let mut union = SimpleGraph::new();
    let mut tree = TreeRepresentation::new();
    let mut root = None;
    for v in 0..t.vertex_count() {
        if t.deg(v) > cap || t.nbrs(v).iter().any(|w| set.contains(w)) {
            continue;
        }
        let gv = t.g_v(v);
        if gv.shared_vertices(&union).len() > 2 {
            continue;
        }
        let leaf = tree.add_leaf(v, gv.clone());
        root = Some(match root {
            None => leaf,
            Some(r) => tree.add_internal(r, leaf),
        });
        union.union_with(&gv);
        set.insert(v);
    }
    if let Some(r) = root {
        tree.set_root(r);
    }
    tree.check()?;
    let levels = compute_levels(t, &set, &tree);
    Ok(GoodSet {
        mode: Mode::Simple,
        set,
        tree,
        levels,
        history: Vec::new(),
    })
}

/// Scans every vertex `v` with `j = deg(v) <= 9` and every `i >= j`: if `v`
/// lies outside `H_i` it must have three neighbours in one component of `H_i`.
pub fn move_postcondition_violations(t: &Triangulation, good: &GoodSet) -> Vec<MoveViolation> {
    let mut out = Vec::new();
    let vertex_sets: Vec<BTreeSet<usize>> = good.levels.iter().map(Level::vertices).collect();
    for v in 0..t.vertex_count() {
        let j = t.deg(v);
        if j > MAX_LEVEL {
            continue;
        }
        for i in j.max(MIN_LEVEL)..=MAX_LEVEL {
            let level = good.level(i);
            if is_candidate(t, v, level, &vertex_sets[i - MIN_LEVEL]) {
                out.push(MoveViolation {
                    vertex: v,
                    degree: j,
                    level: i,
                });
            }
        }
    }
    out
}
