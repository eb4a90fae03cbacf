//! Betweenness structures: unrooted trees and their betweenness relations,
//! the B1-B8 axiom suite, medians and intervals, rooting against join-trees,
//! induced (partial) structures, and completion of a partial structure back
//! to the unique minimal quasi-tree with a prescribed separation relation.

use crate::axioms::{b_witness, Axiom, AxiomCheck};
use crate::bits::Rel3;
use crate::error::{Error, Result};
use crate::separation::SeparationStructure;
use crate::tree::{fresh_name, NodeId, RootedTree};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A finite undirected tree: connected, acyclic, simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrootedTree {
    ids: Vec<NodeId>,
    adj: Vec<BTreeSet<usize>>,
}

impl UnrootedTree {
    pub fn from_edges(nodes: Vec<NodeId>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut ids = nodes;
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].clone()));
            }
        }
        if ids.is_empty() {
            return Err(Error::TooSmall { need: 1, got: 0 });
        }
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut adj = vec![BTreeSet::new(); ids.len()];
        let mut count = 0usize;
        for (a, b) in edges {
            let i = *pos.get(a).ok_or_else(|| Error::UnknownNode(a.clone()))?;
            let j = *pos.get(b).ok_or_else(|| Error::UnknownNode(b.clone()))?;
            if i == j {
                return Err(Error::NotSimple(format!("loop at `{a}`")));
            }
            if adj[i].insert(j) {
                adj[j].insert(i);
                count += 1;
            }
        }
        if count + 1 != ids.len() {
            return Err(Error::MalformedTree(format!(
                "{} nodes need {} edges, got {count}",
                ids.len(),
                ids.len() - 1
            )));
        }
        let tree = UnrootedTree { ids, adj };
        let mut seen = vec![false; tree.ids.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &tree.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::MalformedTree("disconnected".into()));
        }
        Ok(tree)
    }

    /// Forgets the orientation of a rooted tree.
    pub fn from_rooted(t: &RootedTree) -> Self {
        let nodes: Vec<NodeId> = t.nodes().cloned().collect();
        let edges: Vec<(NodeId, NodeId)> = t
            .nodes()
            .filter_map(|u| t.parent(u).map(|p| (u.clone(), p.clone())))
            .collect();
        UnrootedTree::from_edges(nodes, &edges).expect("rooted trees are trees")
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub(crate) fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|p| p.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_string()))
    }

    pub fn degree(&self, id: &str) -> Result<usize> {
        Ok(self.adj[self.index_of(id)?].len())
    }

    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.push((self.ids[i].clone(), self.ids[j].clone()));
                }
            }
        }
        out
    }

    pub(crate) fn adj(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    /// Nodes of degree at most one.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.ids
            .iter()
            .enumerate()
            .filter(|(i, _)| self.adj[*i].len() <= 1)
            .map(|(_, id)| id.clone())
            .collect()
    }

    /// The unique path between two nodes, inclusive, as indices.
    pub(crate) fn path_idx(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.ids.len()];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in &self.adj[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    pub(crate) fn betweenness_rel(&self) -> Rel3 {
        let n = self.ids.len();
        let mut rel = Rel3::new(n);
        for x in 0..n {
            for z in x + 1..n {
                let path = self.path_idx(x, z);
                for &y in &path[1..path.len().saturating_sub(1)] {
                    rel.set(x, y, z);
                    rel.set(z, y, x);
                }
            }
        }
        rel
    }

    /// The betweenness relation: `Bxyz` iff the three are pairwise distinct
    /// and `y` lies strictly inside the path from `x` to `z`.
    pub fn betweenness(&self) -> QuasiTree {
        QuasiTree::from_dense(self.ids.clone(), &self.betweenness_rel())
    }

    fn canon_rec(&self, u: usize, from: usize, labeled: bool) -> String {
        let mut parts: Vec<String> = self.adj[u]
            .iter()
            .filter(|&&v| v != from)
            .map(|&v| self.canon_rec(v, u, labeled))
            .collect();
        parts.sort();
        if labeled && self.adj[u].len() <= 1 {
            format!("({:?}{})", self.ids[u], parts.join(""))
        } else {
            format!("({})", parts.join(""))
        }
    }

    /// Canonical form under isomorphisms preserving leaf names (`labeled`) or
    /// all-name-blind (`!labeled`). Computed as the least encoding over all
    /// rootings.
    pub fn canonical(&self, labeled: bool) -> String {
        (0..self.ids.len())
            .map(|r| self.canon_rec(r, usize::MAX, labeled))
            .min()
            .unwrap()
    }
}

/// One representative per isomorphism class of trees on `n` unlabeled nodes,
/// nodes named `v0..`, grown by leaf attachment with canonical deduplication.
pub fn enumerate_tree_shapes(n: usize) -> Vec<UnrootedTree> {
    assert!(n >= 1);
    let name = |k: usize| format!("v{k}");
    let mut current = vec![UnrootedTree::from_edges(vec![name(0)], &[]).unwrap()];
    for size in 2..=n {
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for t in &current {
            for host in t.nodes() {
                let mut nodes: Vec<NodeId> = t.nodes().to_vec();
                nodes.push(name(size - 1));
                let mut edges = t.edges();
                edges.push((host.clone(), name(size - 1)));
                let grown = UnrootedTree::from_edges(nodes, &edges).unwrap();
                if seen.insert(grown.canonical(false)) {
                    next.push(grown);
                }
            }
        }
        current = next;
    }
    current
}

/// Every unrooted tree with the given labeled leaves and all internal degrees
/// at least three, each exactly once. Obtained from the rooted enumeration by
/// re-attaching a distinguished leaf above the root.
pub fn enumerate_leafy_unrooted_trees(labels: &BTreeSet<NodeId>) -> Vec<UnrootedTree> {
    assert!(labels.len() >= 2, "need at least two leaves");
    if labels.len() == 2 {
        let v: Vec<NodeId> = labels.iter().cloned().collect();
        return vec![UnrootedTree::from_edges(v.clone(), &[(v[0].clone(), v[1].clone())]).unwrap()];
    }
    let pivot = labels.iter().next_back().unwrap().clone();
    let rest: BTreeSet<NodeId> = labels.iter().filter(|l| **l != pivot).cloned().collect();
    crate::tree::enumerate_leafy_trees(&rest)
        .into_iter()
        .map(|t| {
            let mut nodes: Vec<NodeId> = t.nodes().cloned().collect();
            nodes.push(pivot.clone());
            let mut edges: Vec<(NodeId, NodeId)> = t
                .nodes()
                .filter_map(|u| t.parent(u).map(|p| (u.clone(), p.clone())))
                .collect();
            edges.push((t.root().clone(), pivot.clone()));
            UnrootedTree::from_edges(nodes, &edges).unwrap()
        })
        .collect()
}

/// Which betweenness axioms a structure is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMode {
    /// Full quasi-trees: B1-B7 (B8 follows and is reported as well).
    Full,
    /// Partial quasi-trees (induced substructures): B1-B6 and B8.
    Partial,
}

/// Outcome of a median query on three pairwise distinct nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Median {
    Node(NodeId),
    Aligned { middle: NodeId },
}

/// A ternary betweenness structure. Both orientations of every triple are
/// stored; a missing reversal is reported as a B2 violation by the checker,
/// not repaired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTree {
    ids: Vec<NodeId>,
    triples: BTreeSet<[usize; 3]>,
}

impl QuasiTree {
    pub fn new<I>(nodes: Vec<NodeId>, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = [NodeId; 3]>,
    {
        let mut ids = nodes;
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].clone()));
            }
        }
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut set = BTreeSet::new();
        for [x, y, z] in triples {
            let find = |id: &NodeId| pos.get(id).copied().ok_or_else(|| Error::UnknownNode(id.clone()));
            set.insert([find(&x)?, find(&y)?, find(&z)?]);
        }
        Ok(QuasiTree { ids, triples: set })
    }

    /// Builds from unique names plus a dense relation over their positions.
    pub(crate) fn from_dense(names: Vec<NodeId>, rel: &crate::bits::Rel3) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut newpos = vec![0usize; names.len()];
        for (newi, &old) in order.iter().enumerate() {
            newpos[old] = newi;
        }
        let ids: Vec<NodeId> = order.iter().map(|&o| names[o].clone()).collect();
        let mut triples: Vec<[usize; 3]> = rel
            .iter()
            .map(|[i, j, k]| [newpos[i], newpos[j], newpos[k]])
            .collect();
        triples.sort_unstable();
        QuasiTree {
            ids,
            triples: triples.into_iter().collect(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub(crate) fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|p| p.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_string()))
    }

    pub fn contains(&self, x: &str, y: &str, z: &str) -> bool {
        match (self.index_of(x), self.index_of(y), self.index_of(z)) {
            (Ok(i), Ok(j), Ok(k)) => self.triples.contains(&[i, j, k]),
            _ => false,
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = [&NodeId; 3]> {
        self.triples
            .iter()
            .map(move |&[i, j, k]| [&self.ids[i], &self.ids[j], &self.ids[k]])
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    pub(crate) fn rel3(&self) -> Rel3 {
        let mut rel = Rel3::new(self.ids.len());
        for &[i, j, k] in &self.triples {
            rel.set(i, j, k);
        }
        rel
    }

    fn middle_flags(&self) -> Vec<bool> {
        let mut mid = vec![false; self.ids.len()];
        for t in &self.triples {
            mid[t[1]] = true;
        }
        mid
    }

    /// Nodes that never occur in the middle position.
    pub fn leaves(&self) -> Vec<NodeId> {
        let mid = self.middle_flags();
        (0..self.ids.len())
            .filter(|&j| !mid[j])
            .map(|j| self.ids[j].clone())
            .collect()
    }

    pub fn internal(&self) -> Vec<NodeId> {
        let mid = self.middle_flags();
        (0..self.ids.len())
            .filter(|&j| mid[j])
            .map(|j| self.ids[j].clone())
            .collect()
    }

    /// Evaluates the requested axiom suite with a counterexample per failure.
    pub fn check_b_axioms(&self, mode: BMode) -> Vec<AxiomCheck> {
        let axioms: &[Axiom] = match mode {
            BMode::Full => &Axiom::ALL_B,
            BMode::Partial => &[
                Axiom::B1,
                Axiom::B2,
                Axiom::B3,
                Axiom::B4,
                Axiom::B5,
                Axiom::B6,
                Axiom::B8,
            ],
        };
        let rel = self.rel3();
        axioms
            .iter()
            .map(|&ax| AxiomCheck {
                axiom: ax,
                witness: b_witness(ax, self.ids.len(), &rel)
                    .map(|w| w.into_iter().map(|i| self.ids[i].clone()).collect()),
            })
            .collect()
    }

    pub fn is_quasitree(&self) -> bool {
        self.check_b_axioms(BMode::Full)
            .iter()
            .take(7)
            .all(|c| c.passed())
    }

    pub fn is_partial_quasitree(&self) -> bool {
        self.check_b_axioms(BMode::Partial).iter().all(|c| c.passed())
    }

    fn require_quasitree(&self) -> Result<()> {
        for c in self.check_b_axioms(BMode::Full).iter().take(7) {
            if let Some(w) = &c.witness {
                return Err(Error::AxiomViolation {
                    axiom: c.axiom,
                    witness: w.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn aligned(&self, x: &str, y: &str, z: &str) -> bool {
        self.contains(x, y, z) || self.contains(y, x, z) || self.contains(x, z, y)
    }

    /// The median of three pairwise distinct nodes, or the alignment witness.
    pub fn median(&self, x: &str, y: &str, z: &str) -> Result<Median> {
        if x == y || y == z || x == z {
            return Err(Error::DuplicateNode(format!("median of ({x}, {y}, {z})")));
        }
        let (i, j, k) = (self.index_of(x)?, self.index_of(y)?, self.index_of(z)?);
        if self.triples.contains(&[i, j, k]) {
            return Ok(Median::Aligned { middle: y.to_string() });
        }
        if self.triples.contains(&[j, i, k]) {
            return Ok(Median::Aligned { middle: x.to_string() });
        }
        if self.triples.contains(&[i, k, j]) {
            return Ok(Median::Aligned { middle: z.to_string() });
        }
        for w in 0..self.ids.len() {
            if self.triples.contains(&[i, w, j])
                && self.triples.contains(&[j, w, k])
                && self.triples.contains(&[i, w, k])
            {
                return Ok(Median::Node(self.ids[w].clone()));
            }
        }
        Err(Error::MedianUndefined(x.into(), y.into(), z.into()))
    }

    /// `[x,y]`: the endpoints plus everything between them.
    pub fn interval(&self, x: &str, y: &str) -> Result<BTreeSet<NodeId>> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        let mut out: BTreeSet<NodeId> = [x.to_string(), y.to_string()].into();
        for w in 0..self.ids.len() {
            if self.triples.contains(&[i, w, j]) {
                out.insert(self.ids[w].clone());
            }
        }
        Ok(out)
    }

    /// The restriction of the relation to a node subset.
    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> Result<QuasiTree> {
        let mut idx = Vec::new();
        for id in keep {
            idx.push(self.index_of(id)?);
        }
        let ids: Vec<NodeId> = idx.iter().map(|&i| self.ids[i].clone()).collect();
        let mut back = vec![None; self.ids.len()];
        for (a, &i) in idx.iter().enumerate() {
            back[i] = Some(a);
        }
        let triples = self
            .triples
            .iter()
            .filter_map(|&[i, j, k]| Some([back[i]?, back[j]?, back[k]?]))
            .collect();
        Ok(QuasiTree { ids, triples })
    }

    /// Closes a set of leaves under medians and induces on the result; the
    /// outcome is again a leafy quasi-tree.
    pub fn leafy_closure(&self, xs: &BTreeSet<NodeId>) -> Result<QuasiTree> {
        self.require_quasitree()?;
        let leaves: BTreeSet<NodeId> = self.leaves().into_iter().collect();
        for x in xs {
            self.index_of(x)?;
            if !leaves.contains(x) {
                return Err(Error::NotLeavesOnly(x.clone()));
            }
        }
        let mut closure = xs.clone();
        let v: Vec<&NodeId> = xs.iter().collect();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                for c in b + 1..v.len() {
                    if let Median::Node(m) = self.median(v[a], v[b], v[c])? {
                        closure.insert(m);
                    }
                }
            }
        }
        self.induced(&closure)
    }

    /// Every internal node is the median of three leaves.
    pub fn is_leafy(&self) -> Result<bool> {
        self.require_quasitree()?;
        let leaves = self.leaves();
        'outer: for v in self.internal() {
            for a in 0..leaves.len() {
                for b in a + 1..leaves.len() {
                    for c in b + 1..leaves.len() {
                        if self.median(&leaves[a], &leaves[b], &leaves[c])? == Median::Node(v.clone()) {
                            continue 'outer;
                        }
                    }
                }
            }
            return Ok(false);
        }
        Ok(true)
    }

    /// Orders the nodes below a chosen root: `x <= y` iff `x = y`, `y` is the
    /// root, or `y` lies between `x` and the root.
    pub fn root_at(&self, root: &str) -> Result<RootedTree> {
        let r = self.index_of(root)?;
        let n = self.ids.len();
        let lt = |x: usize, y: usize| (y == r && x != r) || self.triples.contains(&[x, y, r]);
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for x in 0..n {
            children.entry(self.ids[x].clone()).or_default();
            if x == r {
                continue;
            }
            let mut parent: Option<usize> = None;
            for y in 0..n {
                if y != x && lt(x, y) {
                    parent = match parent {
                        None => Some(y),
                        Some(p) if lt(y, p) => Some(y),
                        keep => keep,
                    };
                }
            }
            let p = parent.ok_or_else(|| Error::NotAQuasiTree(format!("`{}` has no ancestor", self.ids[x])))?;
            children
                .entry(self.ids[p].clone())
                .or_default()
                .push(self.ids[x].clone());
        }
        RootedTree::from_children(root.to_string(), children)
            .map_err(|e| Error::NotAQuasiTree(e.to_string()))
    }

    /// The underlying tree of a finite quasi-tree: edges join nodes with
    /// nothing between them. Fails when the relation is not the betweenness
    /// of a tree.
    pub fn to_unrooted(&self) -> Result<UnrootedTree> {
        let n = self.ids.len();
        let rel = self.rel3();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let blocked = (0..n).any(|w| rel.get(i, w, j));
                if !blocked {
                    edges.push((self.ids[i].clone(), self.ids[j].clone()));
                }
            }
        }
        let tree = UnrootedTree::from_edges(self.ids.clone(), &edges)
            .map_err(|e| Error::NotAQuasiTree(e.to_string()))?;
        if tree.betweenness_rel() != rel {
            return Err(Error::NotAQuasiTree(
                "relation is not the betweenness of its own tree".into(),
            ));
        }
        Ok(tree)
    }

    /// Canonical form under isomorphisms fixing leaf names: the encoding of
    /// the tree rooted at its least leaf (leaf names are preserved, so the
    /// anchor is isomorphism-invariant).
    pub fn canonical_fixing_leaves(&self) -> Result<String> {
        let tree = self.to_unrooted()?;
        let anchor = tree
            .leaves()
            .into_iter()
            .min()
            .ok_or_else(|| Error::TooSmall { need: 1, got: 0 })?;
        let r = tree.index_of(&anchor)?;
        Ok(tree.canon_rec(r, usize::MAX, true))
    }
}

/// Leaf-name-preserving isomorphism of tree-based quasi-trees.
pub fn quasitrees_isomorphic(a: &QuasiTree, b: &QuasiTree) -> Result<bool> {
    Ok(a.canonical_fixing_leaves()? == b.canonical_fixing_leaves()?)
}

/// Recovers the betweenness structure from a rooted join-tree: `y` is between
/// `x` and `z` iff it sits on the ascending path from `x` or from `z` to
/// their join. Needs at least three nodes.
pub fn unroot(t: &RootedTree) -> Result<QuasiTree> {
    if t.len() < 3 {
        return Err(Error::TooSmall { need: 3, got: t.len() });
    }
    let ids: Vec<NodeId> = t.nodes().cloned().collect();
    let mut triples = BTreeSet::new();
    for (xi, x) in ids.iter().enumerate() {
        for (zi, z) in ids.iter().enumerate() {
            if xi >= zi {
                continue;
            }
            let join = t.join(x, z)?.clone();
            for (yi, y) in ids.iter().enumerate() {
                if yi == xi || yi == zi {
                    continue;
                }
                let strictly_above_either = (t.le(x, y)? && *y != *x) || (t.le(z, y)? && *y != *z);
                if strictly_above_either && t.le(y, &join)? {
                    triples.insert([xi, yi, zi]);
                    triples.insert([zi, yi, xi]);
                }
            }
        }
    }
    Ok(QuasiTree { ids, triples })
}

/// Rebuilds the unique minimal quasi-tree `Q'` that induces the given partial
/// structure on its node set, has the same leaves, and has separation
/// relation `s`. Internal nodes of `Q'` are either medians of leaves
/// (recovered from `s`) or kept nodes of the partial structure, which may
/// subdivide edges of the median skeleton.
pub fn complete_partial(partial: &QuasiTree, s: &SeparationStructure) -> Result<QuasiTree> {
    for c in partial.check_b_axioms(BMode::Partial) {
        if let Some(w) = c.witness {
            return Err(Error::AxiomViolation {
                axiom: c.axiom,
                witness: w,
            });
        }
    }
    let leaves: BTreeSet<NodeId> = partial.leaves().into_iter().collect();
    let s_leaves: BTreeSet<NodeId> = s.leaves().iter().cloned().collect();
    if leaves != s_leaves {
        return Err(Error::LeafMismatch(format!(
            "partial structure has leaves {leaves:?}, separation relation is on {s_leaves:?}"
        )));
    }

    let core = crate::separation::reconstruct_c54(s)?;
    let core_tree = core.to_unrooted()?;

    // Index space: leaf pairs get bit positions; every node and edge of the
    // skeleton carries the bitmask of leaf pairs whose path runs through it.
    let leaf_vec: Vec<NodeId> = leaves.iter().cloned().collect();
    let pair_count = leaf_vec.len() * (leaf_vec.len().saturating_sub(1)) / 2;
    let words = (pair_count + 63) / 64 + 1;
    let core_n = core_tree.len();
    let core_edges = core_tree.edges();
    let mut node_mask = vec![vec![0u64; words]; core_n];
    let mut edge_mask = vec![vec![0u64; words]; core_edges.len()];
    let edge_index: BTreeMap<(usize, usize), usize> = core_edges
        .iter()
        .enumerate()
        .map(|(e, (a, b))| {
            let (ia, ib) = (core_tree.index_of(a).unwrap(), core_tree.index_of(b).unwrap());
            ((ia.min(ib), ia.max(ib)), e)
        })
        .collect();
    let mut pair_bit = 0usize;
    for a in 0..leaf_vec.len() {
        for b in a + 1..leaf_vec.len() {
            let ia = core_tree.index_of(&leaf_vec[a])?;
            let ib = core_tree.index_of(&leaf_vec[b])?;
            let path = core_tree.path_idx(ia, ib);
            for &v in &path[1..path.len().saturating_sub(1)] {
                node_mask[v][pair_bit >> 6] |= 1 << (pair_bit & 63);
            }
            for w in path.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                edge_mask[edge_index[&key]][pair_bit >> 6] |= 1 << (pair_bit & 63);
            }
            pair_bit += 1;
        }
    }

    // Place every kept internal node: identify it with a skeleton median or
    // assign it to the unique edge it must subdivide.
    let core_leaf_set: BTreeSet<NodeId> = core_tree.leaves().into_iter().collect();
    let mut rename: BTreeMap<NodeId, NodeId> = BTreeMap::new(); // skeleton id -> kept id
    let mut subdividers: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new(); // edge -> kept ids
    for k in partial.internal() {
        let mut pk = vec![0u64; words];
        let mut bit = 0usize;
        let ki = partial.index_of(&k)?;
        for a in 0..leaf_vec.len() {
            for b in a + 1..leaf_vec.len() {
                let ia = partial.index_of(&leaf_vec[a])?;
                let ib = partial.index_of(&leaf_vec[b])?;
                if partial.triples.contains(&[ia, ki, ib]) {
                    pk[bit >> 6] |= 1 << (bit & 63);
                }
                bit += 1;
            }
        }
        if pk.iter().all(|&w| w == 0) {
            return Err(Error::NoCompletion(format!(
                "internal node `{k}` lies on no leaf-to-leaf path"
            )));
        }
        let median_match = (0..core_n)
            .find(|&v| !core_leaf_set.contains(&core_tree.nodes()[v]) && node_mask[v] == pk);
        if let Some(v) = median_match {
            if rename.insert(core_tree.nodes()[v].clone(), k.clone()).is_some() {
                return Err(Error::NoCompletion(format!(
                    "two kept nodes claim the median `{}`",
                    core_tree.nodes()[v]
                )));
            }
            continue;
        }
        let mut hits = (0..core_edges.len()).filter(|&e| edge_mask[e] == pk);
        match (hits.next(), hits.next()) {
            (Some(e), None) => subdividers.entry(e).or_default().push(k),
            (None, _) => {
                return Err(Error::NoCompletion(format!(
                    "no position fits internal node `{k}`"
                )))
            }
            (Some(_), Some(_)) => {
                return Err(Error::NoCompletion(format!(
                    "position of internal node `{k}` is ambiguous"
                )))
            }
        }
    }

    // Order multiple subdividers along their edge using a leaf on the first
    // endpoint's side as the reference point.
    let mut ordered: BTreeMap<(NodeId, NodeId), Vec<NodeId>> = BTreeMap::new();
    for (e, mut ks) in subdividers {
        let (u, v) = core_edges[e].clone();
        let (iu, iv) = (core_tree.index_of(&u)?, core_tree.index_of(&v)?);
        if ks.len() > 1 {
            let anchor = leaf_vec
                .iter()
                .find(|l| {
                    let il = core_tree.index_of(l).unwrap();
                    il == iu || (il != iv && core_tree.path_idx(il, iv).contains(&iu))
                })
                .ok_or_else(|| Error::NoCompletion("edge side without leaves".into()))?
                .clone();
            for a in &ks {
                for b in &ks {
                    if a < b && partial.contains(&anchor, a, b) == partial.contains(&anchor, b, a) {
                        return Err(Error::NoCompletion(
                            "subdividing nodes of one edge are not mutually ordered".into(),
                        ));
                    }
                }
            }
            ks.sort_by(|a, b| {
                if partial.contains(&anchor, a, b) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
        }
        // The stored order runs from the smaller endpoint to the larger.
        if u > v {
            ks.reverse();
        }
        let key = if u < v { (u, v) } else { (v, u) };
        ordered.insert(key, ks);
    }

    // Materialize: rename matched medians, keep fresh names for the rest,
    // splice subdividers into their edges.
    let mut taken: BTreeSet<NodeId> = partial.nodes().iter().cloned().collect();
    let mut final_name: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for id in core_tree.nodes() {
        let name = if let Some(k) = rename.get(id) {
            k.clone()
        } else if leaves.contains(id) {
            id.clone()
        } else {
            let f = fresh_name(id.clone(), &taken);
            taken.insert(f.clone());
            f
        };
        final_name.insert(id.clone(), name);
    }
    let mut nodes: Vec<NodeId> = final_name.values().cloned().collect();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for (a, b) in core_tree.edges() {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        match ordered.get(&key) {
            None => edges.push((final_name[&a].clone(), final_name[&b].clone())),
            Some(ks) => {
                // The stored order runs from key.0 to key.1.
                let mut prev = final_name[&key.0].clone();
                for k in ks {
                    nodes.push(k.clone());
                    edges.push((prev, k.clone()));
                    prev = k.clone();
                }
                edges.push((prev, final_name[&key.1].clone()));
            }
        }
    }
    let completed_tree = UnrootedTree::from_edges(nodes, &edges)?;
    let completed = completed_tree.betweenness();

    // Final verification: the completion induces the partial structure, keeps
    // the leaf set, and carries the prescribed separation relation.
    let partial_nodes: BTreeSet<NodeId> = partial.nodes().iter().cloned().collect();
    let back = completed.induced(&partial_nodes)?;
    if back != *partial {
        return Err(Error::NoCompletion(
            "completion does not induce the given structure".into(),
        ));
    }
    if completed.leaves().into_iter().collect::<BTreeSet<_>>() != leaves {
        return Err(Error::NoCompletion("completion changes the leaf set".into()));
    }
    // Subdividing edges never changes which leaf intervals meet, so the
    // completion keeps the skeleton's separation relation, which the
    // reconstruction already verified against `s`.
    Ok(completed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ex67, qt5};

    fn set(v: &[&str]) -> BTreeSet<NodeId> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn betweenness_examples() {
        let path3 = UnrootedTree::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        let q = path3.betweenness();
        assert_eq!(q.triple_count(), 2);
        assert!(q.contains("a", "b", "c") && q.contains("c", "b", "a"));

        let two = UnrootedTree::from_edges(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into())],
        )
        .unwrap();
        assert_eq!(two.betweenness().triple_count(), 0);
    }

    #[test]
    fn ex67_induced_relation() {
        let q = ex67().betweenness();
        let induced = q.induced(&set(&["a", "b", "d", "f", "g", "h"])).unwrap();
        let mut got: BTreeSet<String> = BTreeSet::new();
        for [x, y, z] in induced.triples() {
            if x < z {
                got.insert(format!("{x}{y}{z}"));
            }
        }
        let want: BTreeSet<String> = ["abd", "abf", "abg", "abh", "agh", "bgh", "dgh", "fgh"]
            .map(String::from)
            .into();
        assert_eq!(got, want);
        assert!(induced.is_partial_quasitree());
        // B7 fails after the deletion: no median is left for (a, d, f).
        let b7 = induced
            .check_b_axioms(BMode::Full)
            .into_iter()
            .find(|c| c.axiom == Axiom::B7)
            .unwrap();
        assert!(!b7.passed());
    }

    #[test]
    fn axiom_soundness_small_trees() {
        for n in 1..=7 {
            for t in enumerate_tree_shapes(n) {
                let q = t.betweenness();
                assert!(q.is_quasitree(), "B1-B7 must hold on tree betweenness");
                assert!(
                    q.check_b_axioms(BMode::Full).iter().all(|c| c.passed()),
                    "B8 follows from B1-B7"
                );
            }
        }
    }

    #[test]
    fn median_examples() {
        let q = qt5().betweenness();
        assert_eq!(q.median("x", "y", "z").unwrap(), Median::Node("a".into()));
        assert_eq!(q.median("x", "u", "v").unwrap(), Median::Node("b".into()));
        assert_eq!(q.median("x", "y", "u").unwrap(), Median::Node("a".into()));

        let path3 = UnrootedTree::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        assert_eq!(
            path3.betweenness().median("a", "b", "c").unwrap(),
            Median::Aligned { middle: "b".into() }
        );
    }

    #[test]
    fn interval_examples() {
        let q = qt5().betweenness();
        assert_eq!(q.interval("x", "y").unwrap(), set(&["x", "a", "y"]));
        assert_eq!(q.interval("x", "x").unwrap(), set(&["x"]));
        assert_eq!(q.interval("x", "v").unwrap(), set(&["x", "a", "b", "v"]));
    }

    #[test]
    fn root_and_unroot_round_trip() {
        let q = qt5().betweenness();
        let t = q.root_at("x").unwrap();
        assert_eq!(t.root(), "x");
        assert!(t.le("b", "a").unwrap());
        for l in ["y", "z", "u", "v"] {
            assert!(t.is_leaf(l));
        }
        let back = unroot(&t).unwrap();
        assert_eq!(back, q);

        // Chain: path rooted at an end.
        let path3 = UnrootedTree::from_edges(
            vec!["a".into(), "b".into(), "c".into()],
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        let t = path3.betweenness().root_at("a").unwrap();
        assert!(t.le("c", "b").unwrap() && t.le("b", "a").unwrap());
        assert!(unroot(&t).unwrap() == path3.betweenness());

        assert!(unroot(&RootedTree::leaf("x")).is_err());
    }

    #[test]
    fn leafy_closure_examples() {
        let q = qt5().betweenness();
        let full = q.leafy_closure(&set(&["x", "y", "z", "u", "v"])).unwrap();
        assert_eq!(full, q);
        let tri = q.leafy_closure(&set(&["x", "y", "z"])).unwrap();
        assert_eq!(tri.nodes().len(), 4);
        assert_eq!(tri.internal(), vec!["a".to_string()]);
        let pair = q.leafy_closure(&set(&["x", "y"])).unwrap();
        assert_eq!(pair.triple_count(), 0);
        assert!(q.leafy_closure(&set(&["x", "a"])).is_err());
    }

    #[test]
    fn complete_partial_restores_ex67() {
        let full = ex67().betweenness();
        let kept = set(&["a", "b", "d", "f", "g", "h"]);
        let partial = full.induced(&kept).unwrap();
        let s = crate::separation::separation_structure(&full).unwrap();
        assert!(s.sep("a", "d", "f", "h"));

        let completed = complete_partial(&partial, &s).unwrap();
        assert!(quasitrees_isomorphic(&completed, &full).unwrap());
        // The kept subdividers are back under their own names, the two
        // deleted medians are synthesized.
        assert_eq!(completed.len(), 8);
        assert!(completed.nodes().contains(&"b".to_string()));
        assert!(completed.nodes().contains(&"g".to_string()));

        // The variant with the two medians fused has E instead of S on
        // (a, d, f, h); completing against its relation yields that tree.
        let fused = UnrootedTree::from_edges(
            ["a", "b", "m", "d", "f", "g", "h"].map(String::from).to_vec(),
            &[
                ("a".into(), "b".into()),
                ("b".into(), "m".into()),
                ("m".into(), "d".into()),
                ("m".into(), "f".into()),
                ("m".into(), "g".into()),
                ("g".into(), "h".into()),
            ],
        )
        .unwrap()
        .betweenness();
        let s_fused = crate::separation::separation_structure(&fused).unwrap();
        assert!(s_fused.e("a", "d", "f", "h"));
        assert!(fused.induced(&kept).unwrap() == partial);
        let completed_fused = complete_partial(&partial, &s_fused).unwrap();
        assert!(quasitrees_isomorphic(&completed_fused, &fused).unwrap());
        assert!(!quasitrees_isomorphic(&completed_fused, &completed).unwrap());
    }

    #[test]
    fn complete_partial_star_cases() {
        // No separation, nonempty betweenness: the structure is already the
        // star and completes to itself.
        let star = UnrootedTree::from_edges(
            ["w", "x", "y", "z"].map(String::from).to_vec(),
            &[
                ("w".into(), "x".into()),
                ("w".into(), "y".into()),
                ("w".into(), "z".into()),
            ],
        )
        .unwrap()
        .betweenness();
        let s = crate::separation::separation_structure(&star).unwrap();
        assert_eq!(s.tuple_count(), 0);
        let completed = complete_partial(&star, &s).unwrap();
        assert_eq!(completed, star);

        // No separation, empty betweenness: the center is synthesized.
        let bare = QuasiTree::new(["x", "y", "z"].map(String::from).to_vec(), []).unwrap();
        let s = crate::separation::SeparationStructure::from_generators(
            ["x", "y", "z"].map(String::from).to_vec(),
            [],
        )
        .unwrap();
        let completed = complete_partial(&bare, &s).unwrap();
        assert_eq!(completed.len(), 4);
        assert_eq!(completed.internal().len(), 1);
        assert_eq!(
            completed.leaves().into_iter().collect::<BTreeSet<_>>(),
            set(&["x", "y", "z"])
        );
    }

    #[test]
    fn complete_partial_rejects_mismatched_relation() {
        // QT5 with an internal node deleted, against an unrelated separation
        // relation on the wrong leaves.
        let q = qt5().betweenness();
        let partial = q.induced(&set(&["x", "y", "z", "u", "v", "a"])).unwrap();
        let wrong = crate::separation::SeparationStructure::from_generators(
            ["p", "q", "r", "s"].map(String::from).to_vec(),
            [],
        )
        .unwrap();
        assert!(matches!(
            complete_partial(&partial, &wrong),
            Err(Error::LeafMismatch(_))
        ));
    }

    #[test]
    fn complete_partial_round_trips_qt5_deletions() {
        let q = qt5().betweenness();
        let s = crate::separation::separation_structure(&q).unwrap();
        let leaves = set(&["x", "y", "z", "u", "v"]);
        for drop in [vec![], vec!["a"], vec!["b"], vec!["a", "b"]] {
            let keep: BTreeSet<NodeId> = q
                .nodes()
                .iter()
                .filter(|n| !drop.contains(&n.as_str()))
                .cloned()
                .collect();
            let partial = q.induced(&keep).unwrap();
            assert_eq!(partial.leaves().into_iter().collect::<BTreeSet<_>>(), leaves);
            let completed = complete_partial(&partial, &s).unwrap();
            assert!(quasitrees_isomorphic(&completed, &q).unwrap(), "drop {drop:?}");
        }
    }

    #[test]
    fn shape_enumeration_counts() {
        // Unlabeled trees on 1..=9 nodes.
        let want = [1usize, 1, 1, 2, 3, 6, 11, 23, 47];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(enumerate_tree_shapes(i + 1).len(), w);
        }
    }

    #[test]
    fn leafy_unrooted_enumeration_counts() {
        let mk = |v: &[&str]| -> BTreeSet<NodeId> { v.iter().map(|s| s.to_string()).collect() };
        assert_eq!(enumerate_leafy_unrooted_trees(&mk(&["a", "b"])).len(), 1);
        assert_eq!(enumerate_leafy_unrooted_trees(&mk(&["a", "b", "c"])).len(), 1);
        assert_eq!(enumerate_leafy_unrooted_trees(&mk(&["a", "b", "c", "d"])).len(), 4);
        assert_eq!(
            enumerate_leafy_unrooted_trees(&mk(&["a", "b", "c", "d", "e"])).len(),
            26
        );
        for t in enumerate_leafy_unrooted_trees(&mk(&["a", "b", "c", "d"])) {
            for n in t.nodes() {
                let d = t.degree(n).unwrap();
                assert!(d == 1 || d >= 3);
            }
        }
    }
}
