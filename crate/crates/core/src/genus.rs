//! Genus reasoning on subgraphs: compatibility, planarity, an exhaustive
//! Euler-genus oracle for tiny graphs, tree representations and the
//! positive-genus neighbourhood checks.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::graph::UnGraph;
use serde::Serialize;
use thiserror::Error;

use crate::graph::SimpleGraph;
use crate::triangulation::Triangulation;

/// Default search-node limit for [`brute_force_euler_genus`].
pub const DEFAULT_ORACLE_BUDGET: u128 = 10_000_000;

/// Two graphs are compatible when they share at most two vertices.
pub fn are_compatible(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    a.vertices().filter(|&v| b.contains_vertex(v)).take(3).count() <= 2
}

/// A pair of graphs together with their shared vertices.
#[derive(Debug, Clone)]
pub struct CompatiblePair {
    pub first: SimpleGraph,
    pub second: SimpleGraph,
    pub shared: BTreeSet<usize>,
}

impl CompatiblePair {
    pub fn new(first: SimpleGraph, second: SimpleGraph) -> Self {
        let shared = first.shared_vertices(&second);
        Self {
            first,
            second,
            shared,
        }
    }

    pub fn is_compatible(&self) -> bool {
        self.shared.len() <= 2
    }
}

/// Exact planarity via the left-right criterion.
pub fn is_planar(g: &SimpleGraph) -> bool {
    let index: BTreeMap<usize, u32> = g.vertices().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let pg = UnGraph::<(), ()>::from_edges(g.edges().map(|(u, v)| (index[&u], index[&v])));
    rustworkx_core::planar::is_planar(&pg)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("search stopped after {explored} nodes, over the budget of {budget}")]
    BudgetExceeded { explored: u128, budget: u128 },
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// One connected component prepared for the exhaustive search.
struct Component {
    vertex_count: usize,
    /// darts `2e`, `2e+1` of edge `e`; `origin[d]` is a local vertex index
    origin: Vec<usize>,
    /// darts around each local vertex, root first
    darts_at: Vec<Vec<usize>>,
    /// edges whose signature is searched (those off the spanning tree)
    free_edges: Vec<usize>,
}

impl Component {
    fn from_graph(g: &SimpleGraph) -> Self {
        // root at a vertex of maximum degree, smallest id on ties
        let root = g
            .vertices()
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("non-empty component");
        // each next vertex has the most already-placed neighbours (then the
        // highest degree, then the smallest id); its tree edge goes to the
        // earliest placed neighbour
        let mut order = vec![root];
        let mut local: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
        let mut tree = BTreeSet::new();
        let mut placed_nbrs: BTreeMap<usize, usize> = g.neighbors(root).map(|w| (w, 1)).collect();
        while let Some((&v, _)) = placed_nbrs
            .iter()
            .max_by_key(|&(&v, &k)| (k, g.degree(v), std::cmp::Reverse(v)))
        {
            placed_nbrs.remove(&v);
            let parent = g
                .neighbors(v)
                .filter(|w| local.contains_key(w))
                .min_by_key(|w| local[w])
                .expect("placed neighbour");
            tree.insert((v.min(parent), v.max(parent)));
            local.insert(v, order.len());
            order.push(v);
            for w in g.neighbors(v) {
                if !local.contains_key(&w) {
                    *placed_nbrs.entry(w).or_default() += 1;
                }
            }
        }
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut origin = Vec::with_capacity(2 * edges.len());
        let mut darts_at = vec![Vec::new(); order.len()];
        let mut free_edges = Vec::new();
        for (e, &(u, v)) in edges.iter().enumerate() {
            let (lu, lv) = (local[&u], local[&v]);
            origin.push(lu);
            origin.push(lv);
            darts_at[lu].push(2 * e);
            darts_at[lv].push(2 * e + 1);
            if !tree.contains(&(u, v)) {
                free_edges.push(e);
            }
        }
        Self {
            vertex_count: order.len(),
            origin,
            darts_at,
            free_edges,
        }
    }

    fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    fn space(&self) -> u128 {
        let rot: u128 = self
            .darts_at
            .iter()
            .enumerate()
            .map(|(i, ds)| {
                let d = ds.len();
                let all = factorial(d.saturating_sub(1));
                if i == 0 && d >= 3 {
                    all / 2
                } else {
                    all
                }
            })
            .product();
        rot.saturating_mul(1u128 << self.free_edges.len().min(120))
    }


    /// Maximum face count over the reduced space of signed rotation systems,
    /// by branch and bound. Vertices are fixed in order; at each vertex the
    /// signatures of its free back edges are chosen first, then the rotation
    /// one successor at a time. Every face-walk state is linked to its
    /// successor as soon as that is determined, and since every orbit has at
    /// least three states, the states not yet on closed orbits bound how
    /// many more orbits can form.
    ///
    /// Returns the face count and the number of search nodes used.
    fn max_faces(&self, budget: u128) -> Result<(usize, u128), OracleError> {
        if self.edge_count() <= 1 {
            return Ok((1, 1));
        }
        let mut search = Search {
            comp: self,
            best: 0,
            nodes: 0,
            budget,
            back: (0..self.vertex_count).map(|i| self.back_edges(i)).collect(),
            free: vec![false; self.edge_count()],
        };
        for &e in &self.free_edges {
            search.free[e] = true;
        }
        search.vertex(Partial::new(self), 0)?;
        Ok((search.best, search.nodes))
    }

    /// Edges from local vertex `i` to earlier vertices.
    fn back_edges(&self, i: usize) -> Vec<usize> {
        self.darts_at[i]
            .iter()
            .map(|&d| d / 2)
            .filter(|&e| self.origin[2 * e].max(self.origin[2 * e + 1]) == i && self.origin[2 * e] != self.origin[2 * e + 1])
            .collect()
    }
}

/// Partial face-walk permutation on states `dart << 1 | flipped`.
#[derive(Clone)]
struct Partial {
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    twisted: Vec<bool>,
    linked: Vec<bool>,
    /// For a path endpoint, the opposite endpoint.
    other_end: Vec<usize>,
    /// Length of an open path, stored at its head.
    path_len: Vec<usize>,
    /// Lower bound on the excess over 3 of the orbit an open path closes
    /// into, stored at its head.
    path_excess: Vec<usize>,
    closed_orbits: usize,
    closed_states: usize,
    /// Sum of `path_excess` over open paths.
    open_excess: usize,
}

impl Partial {
    fn new(c: &Component) -> Self {
        let darts = c.origin.len();
        Partial {
            sigma: vec![0; darts],
            sigma_inv: vec![0; darts],
            twisted: vec![false; c.edge_count()],
            linked: vec![false; 2 * darts],
            other_end: (0..2 * darts).collect(),
            path_len: vec![1; 2 * darts],
            path_excess: vec![0; 2 * darts],
            closed_orbits: 0,
            closed_states: 0,
            open_excess: 0,
        }
    }

    fn successor(&self, s: usize) -> usize {
        let (d, flipped) = (s >> 1, s & 1 == 1);
        let arrive = d ^ 1;
        let flipped = flipped ^ self.twisted[d >> 1];
        let next = if flipped { self.sigma_inv[arrive] } else { self.sigma[arrive] };
        next << 1 | usize::from(flipped)
    }

    /// Links state `s` (a path tail) to its successor (a path head).
    fn link(&mut self, c: &Component, s: usize) {
        debug_assert!(!self.linked[s]);
        let t = self.successor(s);
        self.linked[s] = true;
        let head = self.other_end[s];
        if head == t {
            self.closed_orbits += 1;
            self.closed_states += self.path_len[head];
            self.open_excess -= self.path_excess[head];
            return;
        }
        let tail = self.other_end[t];
        let len = self.path_len[head] + self.path_len[t];
        self.open_excess -= self.path_excess[head] + self.path_excess[t];
        // a path whose walk does not end where it started needs at least one
        // more state; charging more than one would overcount when several
        // paths end up on the same orbit
        let from = c.origin[(tail >> 1) ^ 1];
        let to = c.origin[head >> 1];
        let ex = (len + usize::from(from != to)).saturating_sub(3);
        self.other_end[head] = tail;
        self.other_end[tail] = head;
        self.path_len[head] = len;
        self.path_excess[head] = ex;
        self.open_excess += ex;
    }

    /// Upper bound on the final face count.
    fn face_bound(&self) -> usize {
        let rest = self.linked.len() - self.closed_states - self.open_excess;
        (self.closed_orbits + rest / 3) / 2
    }

    /// Sets `sigma[x] = y` and links the two states this determines: the
    /// unflipped arrival along `x` and the flipped arrival along `y`, when
    /// those edges already have their signature.
    fn place(&mut self, c: &Component, x: usize, y: usize, signed: impl Fn(usize) -> bool) {
        self.sigma[x] = y;
        self.sigma_inv[y] = x;
        if signed(x / 2) {
            self.link(c, ((x ^ 1) << 1) | usize::from(self.twisted[x / 2]));
        }
        if signed(y / 2) {
            self.link(c, ((y ^ 1) << 1) | usize::from(!self.twisted[y / 2]));
        }
    }
}

struct Search<'a> {
    comp: &'a Component,
    best: usize,
    nodes: u128,
    budget: u128,
    back: Vec<Vec<usize>>,
    /// Edges whose signature is searched.
    free: Vec<bool>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded {
                explored: self.nodes,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn vertex(&mut self, p: Partial, i: usize) -> Result<(), OracleError> {
        if i == self.comp.vertex_count {
            debug_assert!(p.linked.iter().all(|&l| l));
            self.best = self.best.max(p.closed_orbits / 2);
            return Ok(());
        }
        if p.face_bound() <= self.best {
            return Ok(());
        }
        let back = self.back[i].clone();
        let free: Vec<usize> = back.iter().copied().filter(|&e| self.free[e]).collect();
        for bits in 0..1usize << free.len() {
            self.tick()?;
            let mut q = p.clone();
            for (k, &e) in free.iter().enumerate() {
                q.twisted[e] = bits >> k & 1 == 1;
            }
            // leaving along a back edge lands at an earlier, finished vertex
            for &e in &back {
                let out = if self.comp.origin[2 * e] == i { 2 * e } else { 2 * e + 1 };
                q.link(self.comp, out << 1);
                q.link(self.comp, out << 1 | 1);
            }
            if q.face_bound() <= self.best {
                continue;
            }
            let ds = &self.comp.darts_at[i];
            let mut seq = vec![ds[0]];
            let rest: Vec<usize> = ds[1..].to_vec();
            self.rotation(q, i, &mut seq, rest)?;
        }
        Ok(())
    }

    fn rotation(&mut self, p: Partial, i: usize, seq: &mut Vec<usize>, rest: Vec<usize>) -> Result<(), OracleError> {
        let comp = self.comp;
        let is_back = move |e: usize| comp.origin[2 * e].max(comp.origin[2 * e + 1]) <= i;
        let last = *seq.last().expect("rotation starts with a dart");
        if rest.is_empty() {
            let d = seq.len();
            // one rotation of each mirror pair at the root
            if i == 0 && d >= 3 && seq[1] > seq[d - 1] {
                return Ok(());
            }
            let mut q = p;
            q.place(comp, last, seq[0], is_back);
            return self.vertex(q, i + 1);
        }
        for k in 0..rest.len() {
            self.tick()?;
            let y = rest[k];
            let mut q = p.clone();
            q.place(comp, last, y, is_back);
            if q.face_bound() <= self.best {
                continue;
            }
            let mut remaining = rest.clone();
            remaining.remove(k);
            seq.push(y);
            let r = self.rotation(q, i, seq, remaining);
            seq.pop();
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
impl Component {
    /// All cyclic orders of the darts at local vertex `i`, as successor maps
    /// `(dart, next dart)`. For the root only one of each mirror pair is kept.
    fn rotations_at(&self, i: usize) -> Vec<Vec<(usize, usize)>> {
        let ds = &self.darts_at[i];
        if ds.len() <= 2 {
            return vec![ds.iter().enumerate().map(|(k, &d)| (d, ds[(k + 1) % ds.len()])).collect()];
        }
        let mut rest: Vec<usize> = ds[1..].to_vec();
        let mut out = Vec::new();
        permutations(&mut rest, 0, &mut |perm| {
            if i == 0 && perm[0] > perm[perm.len() - 1] {
                return;
            }
            let cyc: Vec<usize> = std::iter::once(ds[0]).chain(perm.iter().copied()).collect();
            out.push(
                cyc.iter()
                    .enumerate()
                    .map(|(k, &d)| (d, cyc[(k + 1) % cyc.len()]))
                    .collect(),
            );
        });
        out
    }

    /// Plain enumeration of the reduced space, used to cross-check the
    /// branch-and-bound search.
    fn exhaustive_max_faces(&self) -> usize {
        if self.edge_count() == 0 {
            return 1;
        }
        let choices: Vec<Vec<Vec<(usize, usize)>>> =
            (0..self.vertex_count).map(|i| self.rotations_at(i)).collect();
        let sign_patterns = 1usize << self.free_edges.len();
        // split the work over the root's rotations and the sign patterns
        let jobs: Vec<(usize, usize)> = (0..choices[0].len())
            .flat_map(|r| (0..sign_patterns).map(move |s| (r, s)))
            .collect();
        jobs.iter()
            .map(|&(r, s)| self.search_fixed(&choices, r, s))
            .max()
            .unwrap_or(0)
    }

    fn search_fixed(&self, choices: &[Vec<Vec<(usize, usize)>>], root_choice: usize, signs: usize) -> usize {
        let n = self.origin.len();
        let mut sigma = vec![0usize; n];
        let mut sigma_inv = vec![0usize; n];
        let mut twisted = vec![false; self.edge_count()];
        for (k, &e) in self.free_edges.iter().enumerate() {
            twisted[e] = signs >> k & 1 == 1;
        }
        let apply = |sigma: &mut Vec<usize>, sigma_inv: &mut Vec<usize>, rot: &[(usize, usize)]| {
            for &(d, next) in rot {
                sigma[d] = next;
                sigma_inv[next] = d;
            }
        };
        apply(&mut sigma, &mut sigma_inv, &choices[0][root_choice]);
        let mut counter = vec![0usize; self.vertex_count];
        for c in &choices[1..self.vertex_count] {
            apply(&mut sigma, &mut sigma_inv, &c[0]);
        }
        let mut seen = vec![0u32; 2 * n];
        let mut stamp = 0u32;
        let mut best = 0;
        loop {
            stamp += 1;
            best = best.max(count_faces(&sigma, &sigma_inv, &twisted, &mut seen, stamp));
            // odometer over the non-root vertices
            let mut i = 1;
            loop {
                if i == self.vertex_count {
                    return best;
                }
                counter[i] += 1;
                if counter[i] == choices[i].len() {
                    counter[i] = 0;
                    apply(&mut sigma, &mut sigma_inv, &choices[i][0]);
                    i += 1;
                } else {
                    apply(&mut sigma, &mut sigma_inv, &choices[i][counter[i]]);
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
/// Number of faces of a signed rotation system (orbits of the face walk,
/// halved because each face is walked in both directions).
fn count_faces(sigma: &[usize], sigma_inv: &[usize], twisted: &[bool], seen: &mut [u32], stamp: u32) -> usize {
    let mut orbits = 0;
    for start in 0..seen.len() {
        if seen[start] == stamp {
            continue;
        }
        orbits += 1;
        let mut s = start;
        while seen[s] != stamp {
            seen[s] = stamp;
            let (d, flipped) = (s >> 1, s & 1 == 1);
            let arrive = d ^ 1;
            let flipped = flipped ^ twisted[d >> 1];
            let next = if flipped { sigma_inv[arrive] } else { sigma[arrive] };
            s = next << 1 | usize::from(flipped);
        }
    }
    orbits / 2
}

/// Size of the reduced search space: per connected component, the rotations
/// at every vertex (one of each mirror pair at the root) times the signatures
/// off a spanning tree. Components are searched independently, so their
/// sizes add.
pub fn oracle_search_space(g: &SimpleGraph) -> u128 {
    g.components()
        .iter()
        .filter(|c| c.edge_count() > 0)
        .map(|c| Component::from_graph(c).space())
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Exact Euler genus by exhaustive branch-and-bound search over signed
/// rotation systems.
///
/// The search fixes the signatures of a BFS spanning tree (vertex switches)
/// and keeps one rotation of each mirror pair at a maximum-degree root
/// (global switch). The Euler genus of an embedding of a disconnected graph
/// is the sum over its components, so components are minimised separately.
/// `budget` caps the number of search nodes (partial embeddings) over all
/// components; the result is exact whenever it is returned.
pub fn brute_force_euler_genus(g: &SimpleGraph, budget: u128) -> Result<usize, OracleError> {
    let mut total = 0;
    let mut left = budget;
    for c in g.components() {
        if c.edge_count() == 0 {
            continue;
        }
        let comp = Component::from_graph(&c);
        let (faces, nodes) = comp.max_faces(left).map_err(|e| match e {
            OracleError::BudgetExceeded { explored, .. } => OracleError::BudgetExceeded {
                explored: budget - left + explored,
                budget,
            },
        })?;
        left -= nodes.min(left);
        let chi = comp.vertex_count as i64 - comp.edge_count() as i64 + faces as i64;
        total += (2 - chi) as usize;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf { label: usize, graph: SimpleGraph },
    Internal { left: usize, right: usize },
}

/// A rooted binary tree whose leaves carry subgraphs. Internal nodes stand
/// for the union of the leaf graphs below them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TreeRepresentation {
    nodes: Vec<TreeNode>,
    root: Option<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("children of node {node} share vertices {shared:?} (more than two)")]
    Incompatible { node: usize, shared: Vec<usize> },
    #[error("node {0} is referenced more than once or unreachable from the root")]
    Malformed(usize),
}

impl TreeRepresentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_leaf(&mut self, label: usize, graph: SimpleGraph) -> usize {
        self.nodes.push(TreeNode::Leaf { label, graph });
        self.nodes.len() - 1
    }

    pub fn add_internal(&mut self, left: usize, right: usize) -> usize {
        self.nodes.push(TreeNode::Internal { left, right });
        self.nodes.len() - 1
    }

    pub fn set_root(&mut self, root: usize) {
        self.root = Some(root);
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn node(&self, id: usize) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Node ids reachable from the root, parents before children.
    pub fn reachable(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.root.into_iter().collect();
        while let Some(x) = stack.pop() {
            out.push(x);
            if let TreeNode::Internal { left, right } = self.nodes[x] {
                stack.push(right);
                stack.push(left);
            }
        }
        out
    }

    /// Leaf labels below `x`.
    pub fn leaves_below(&self, x: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match &self.nodes[y] {
                TreeNode::Leaf { label, .. } => {
                    out.insert(*label);
                }
                TreeNode::Internal { left, right } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        out
    }

    pub fn leaf_labels(&self) -> BTreeSet<usize> {
        self.root.map(|r| self.leaves_below(r)).unwrap_or_default()
    }

    /// `G<x>`: the union of the leaf graphs below `x`.
    pub fn graph_at(&self, x: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match &self.nodes[y] {
                TreeNode::Leaf { graph, .. } => g.union_with(graph),
                TreeNode::Internal { left, right } => {
                    stack.push(*left);
                    stack.push(*right);
                }
            }
        }
        g
    }

    /// Leaves reachable from the root as `(node id, label, graph)`.
    pub fn leaves(&self) -> Vec<(usize, usize, &SimpleGraph)> {
        self.reachable()
            .into_iter()
            .filter_map(|x| match &self.nodes[x] {
                TreeNode::Leaf { label, graph } => Some((x, *label, graph)),
                TreeNode::Internal { .. } => None,
            })
            .collect()
    }

    /// Checks that every node is reached once and that the two children of
    /// every internal node are compatible.
    pub fn check(&self) -> Result<(), TreeError> {
        let mut count = vec![0usize; self.nodes.len()];
        for x in self.reachable() {
            count[x] += 1;
            if count[x] > 1 {
                return Err(TreeError::Malformed(x));
            }
        }
        for x in self.reachable() {
            if let TreeNode::Internal { left, right } = self.nodes[x] {
                let shared = self.graph_at(left).shared_vertices(&self.graph_at(right));
                if shared.len() > 2 {
                    return Err(TreeError::Incompatible {
                        node: x,
                        shared: shared.into_iter().collect(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// What is known about the Euler genus of one leaf graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum LeafBound {
    Planar,
    Exact(usize),
    /// Nonplanar, exact value out of oracle budget.
    AtLeastOne,
}

impl LeafBound {
    pub fn lower_bound(self) -> usize {
        match self {
            LeafBound::Planar => 0,
            LeafBound::Exact(k) => k,
            LeafBound::AtLeastOne => 1,
        }
    }
}

pub fn leaf_bound(g: &SimpleGraph, budget: u128) -> LeafBound {
    if is_planar(g) {
        return LeafBound::Planar;
    }
    match brute_force_euler_genus(g, budget) {
        Ok(k) => LeafBound::Exact(k),
        Err(OracleError::BudgetExceeded { .. }) => LeafBound::AtLeastOne,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeBound {
    /// Certified lower bound on the Euler genus of the root graph.
    pub lower_bound: usize,
    /// `(leaf label, bound)` in leaf order.
    pub leaves: Vec<(usize, LeafBound)>,
}

/// Sums certified per-leaf lower bounds after checking the tree structure;
/// by genus additivity over compatible unions this bounds `eg` of the root
/// graph (and of any graph containing it) from below.
pub fn validate_tree_representation(r: &TreeRepresentation, budget: u128) -> Result<TreeBound, TreeError> {
    r.check()?;
    let leaves: Vec<(usize, LeafBound)> = r
        .leaves()
        .into_iter()
        .map(|(_, label, g)| (label, leaf_bound(g, budget)))
        .collect();
    Ok(TreeBound {
        lower_bound: leaves.iter().map(|(_, b)| b.lower_bound()).sum(),
        leaves,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LemmaViolation {
    LowDegree { vertex: usize, degree: usize },
    NeighborhoodLowDegree { vertex: usize, min_degree: usize },
    NeighborhoodPlanar { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveGenusReport {
    pub vertices_checked: usize,
    pub violations: Vec<LemmaViolation>,
}

impl PositiveGenusReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every vertex `v`: `deg(v) >= 4`, `G_v` has minimum degree at least 4,
/// and `G_v` is nonplanar. Violations are collected, not raised.
pub fn check_positive_genus_lemma(t: &Triangulation) -> PositiveGenusReport {
    let mut violations = Vec::new();
    for v in 0..t.vertex_count() {
        let degree = t.deg(v);
        if degree < 4 {
            violations.push(LemmaViolation::LowDegree { vertex: v, degree });
        }
        let gv = t.g_v(v);
        let min_degree = gv.min_degree().unwrap_or(0);
        if min_degree < 4 {
            violations.push(LemmaViolation::NeighborhoodLowDegree { vertex: v, min_degree });
        }
        if is_planar(&gv) {
            violations.push(LemmaViolation::NeighborhoodPlanar { vertex: v });
        }
    }
    PositiveGenusReport {
        vertices_checked: t.vertex_count(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn shifted(g: &SimpleGraph, by: usize) -> SimpleGraph {
        g.relabel(|v| v + by)
    }

    #[test]
    fn compatibility_threshold() {
        let a = SimpleGraph::complete(3);
        assert!(are_compatible(&a, &shifted(&a, 3)));
        let g1 = SimpleGraph::from_edges([(0, 1), (1, 2), (2, 3)]);
        let g2 = SimpleGraph::from_edges([(1, 2), (2, 3), (3, 9)]);
        assert!(!are_compatible(&g1, &g2));
        assert!(!CompatiblePair::new(g1, g2).is_compatible());
        let k7 = catalog::k7_torus();
        assert!(!are_compatible(&k7.g_v(0), &k7.g_v(1)));
        assert_eq!(k7.g_v(0).shared_vertices(&k7.g_v(1)).len(), 7);
    }

    #[test]
    fn planarity() {
        assert!(is_planar(&SimpleGraph::complete(4)));
        assert!(!is_planar(&SimpleGraph::complete(5)));
        assert!(!is_planar(&SimpleGraph::complete_bipartite(3, 3)));
        assert!(is_planar(&catalog::icosahedron().graph()));
    }

    #[test]
    fn oracle_small_graphs() {
        let b = DEFAULT_ORACLE_BUDGET;
        assert_eq!(brute_force_euler_genus(&SimpleGraph::complete(4), b), Ok(0));
        assert_eq!(brute_force_euler_genus(&SimpleGraph::complete(5), b), Ok(1));
        assert_eq!(brute_force_euler_genus(&SimpleGraph::complete_bipartite(3, 3), b), Ok(1));
        assert_eq!(brute_force_euler_genus(&SimpleGraph::new(), b), Ok(0));
    }

    #[test]
    fn oracle_space_sizes() {
        // K5: 3 mirror classes at the root, 3! at the other four, 2^6 signatures
        assert_eq!(oracle_search_space(&SimpleGraph::complete(5)), 3 * 1296 * 64);
        // K3,3: root 1, five vertices with 2 orders each, 2^4 signatures
        assert_eq!(oracle_search_space(&SimpleGraph::complete_bipartite(3, 3)), 32 * 16);
    }

    #[test]
    fn oracle_refuses_over_budget() {
        let k6 = SimpleGraph::complete(6);
        match brute_force_euler_genus(&k6, 50) {
            Err(OracleError::BudgetExceeded { explored, budget }) => {
                assert!(explored >= budget);
                assert_eq!(budget, 50);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn branch_and_bound_matches_plain_enumeration() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};

        let mut graphs = vec![
            SimpleGraph::complete(4),
            SimpleGraph::complete(5),
            SimpleGraph::complete_bipartite(3, 3),
            SimpleGraph::complete_bipartite(2, 4),
            SimpleGraph::from_edges([(0, 1), (1, 2), (2, 0), (2, 3)]),
            SimpleGraph::from_edges([(0, 1), (1, 2)]),
        ];
        let mut k5_minus = SimpleGraph::complete(5);
        k5_minus = SimpleGraph::from_edges(k5_minus.edges().filter(|&e| e != (0, 1)));
        graphs.push(k5_minus);
        graphs.push(catalog::octahedron().graph());
        let mut rng = StdRng::seed_from_u64(11);
        while graphs.len() < 60 {
            let n = rng.gen_range(4..8);
            let p = rng.gen_range(0.3..0.9);
            let mut g = SimpleGraph::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            if g.edge_count() > 0 && oracle_search_space(&g) <= 300_000 {
                graphs.push(g);
            }
        }
        for g in graphs {
            for c in g.components() {
                let comp = Component::from_graph(&c);
                let (faces, _) = comp.max_faces(DEFAULT_ORACLE_BUDGET).unwrap();
                assert_eq!(faces, comp.exhaustive_max_faces(), "{c:?}");
            }
        }
    }

    #[test]
    fn oracle_k6() {
        assert_eq!(brute_force_euler_genus(&SimpleGraph::complete(6), DEFAULT_ORACLE_BUDGET), Ok(1));
    }

    #[test]
    fn tree_bounds() {
        let b = DEFAULT_ORACLE_BUDGET;
        assert_eq!(validate_tree_representation(&TreeRepresentation::new(), b).unwrap().lower_bound, 0);

        let mut single = TreeRepresentation::new();
        let leaf = single.add_leaf(0, SimpleGraph::complete(6));
        single.set_root(leaf);
        let bound = validate_tree_representation(&single, 50).unwrap();
        assert_eq!(bound.lower_bound, 1);
        assert_eq!(bound.leaves, vec![(0, LeafBound::AtLeastOne)]);
        let bound = validate_tree_representation(&single, b).unwrap();
        assert_eq!(bound.leaves, vec![(0, LeafBound::Exact(1))]);

        let k5 = SimpleGraph::complete(5);
        let mut pair = TreeRepresentation::new();
        let l = pair.add_leaf(0, k5.clone());
        let r = pair.add_leaf(1, shifted(&k5, 3));
        let root = pair.add_internal(l, r);
        pair.set_root(root);
        let bound = validate_tree_representation(&pair, b).unwrap();
        assert_eq!(bound.lower_bound, 2);
        assert_eq!(bound.leaves, vec![(0, LeafBound::Exact(1)), (1, LeafBound::Exact(1))]);

        let mut bad = TreeRepresentation::new();
        let l = bad.add_leaf(0, k5.clone());
        let r = bad.add_leaf(1, shifted(&k5, 2));
        let root = bad.add_internal(l, r);
        bad.set_root(root);
        assert_eq!(
            validate_tree_representation(&bad, b),
            Err(TreeError::Incompatible { node: 2, shared: vec![2, 3, 4] })
        );
    }

    #[test]
    fn positive_genus_lemma_on_small_cases() {
        assert!(check_positive_genus_lemma(&catalog::k6_projective()).holds());
        assert!(check_positive_genus_lemma(&catalog::k7_torus()).holds());
        assert!(check_positive_genus_lemma(&catalog::k7_minus_k3()).holds());
        let ico = check_positive_genus_lemma(&catalog::icosahedron());
        let planar = ico
            .violations
            .iter()
            .filter(|v| matches!(v, LemmaViolation::NeighborhoodPlanar { .. }))
            .count();
        assert_eq!(planar, 12);
    }
}
