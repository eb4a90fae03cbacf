//! Finite rooted trees with named nodes: validation, joins, substitution,
//! contraction, canonical forms, laminar families and exhaustive enumeration.
//!
//! Trees are stored as a root plus a complete child map (leaves map to empty
//! lists). Child order carries no meaning; lists are kept sorted so that equal
//! trees compare equal structurally.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

pub type NodeId = String;

/// Returns `desired` unless taken, otherwise appends primes until free.
pub(crate) fn fresh_name(desired: String, taken: &BTreeSet<NodeId>) -> NodeId {
    let mut name = desired;
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// A rule broken by a tree that is otherwise structurally sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: NodeId,
    children: BTreeMap<NodeId, Vec<NodeId>>,
    parent: BTreeMap<NodeId, NodeId>,
}

impl RootedTree {
    /// The one-node tree.
    pub fn leaf(id: impl Into<NodeId>) -> Self {
        let id = id.into();
        let mut children = BTreeMap::new();
        children.insert(id.clone(), Vec::new());
        RootedTree {
            root: id,
            children,
            parent: BTreeMap::new(),
        }
    }

    /// Builds a tree from its root and child lists. Leaves may be omitted from
    /// the map. Fails on duplicate children, multiple parents, cycles and
    /// nodes unreachable from the root.
    pub fn from_children(root: NodeId, lists: BTreeMap<NodeId, Vec<NodeId>>) -> Result<Self> {
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        for (p, kids) in &lists {
            children.entry(p.clone()).or_default();
            for k in kids {
                if parent.insert(k.clone(), p.clone()).is_some() {
                    return Err(Error::DuplicateNode(k.clone()));
                }
                children.entry(k.clone()).or_default();
            }
        }
        for (p, kids) in lists {
            let mut kids = kids;
            kids.sort();
            children.insert(p, kids);
        }
        children.entry(root.clone()).or_default();
        if parent.contains_key(&root) {
            return Err(Error::MalformedTree(format!("root `{root}` has a parent")));
        }
        // Reachability doubles as the cycle check.
        let mut seen = BTreeSet::new();
        let mut stack = vec![root.clone()];
        while let Some(u) = stack.pop() {
            if !seen.insert(u.clone()) {
                return Err(Error::MalformedTree(format!("`{u}` reached twice")));
            }
            stack.extend(children[&u].iter().cloned());
        }
        if seen.len() != children.len() {
            let stray = children.keys().find(|k| !seen.contains(*k)).unwrap();
            return Err(Error::MalformedTree(format!(
                "`{stray}` is not reachable from the root"
            )));
        }
        Ok(RootedTree {
            root,
            children,
            parent,
        })
    }

    pub fn root(&self) -> &NodeId {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, id: &str) -> bool {
        self.children.contains_key(id)
    }

    /// All node ids in sorted order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.children.keys()
    }

    pub fn children(&self, id: &str) -> Result<&[NodeId]> {
        self.children
            .get(id)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn parent(&self, id: &str) -> Option<&NodeId> {
        self.parent.get(id)
    }

    pub fn is_leaf(&self, id: &str) -> bool {
        self.children.get(id).map_or(false, |c| c.is_empty())
    }

    pub fn leaves(&self) -> impl Iterator<Item = &NodeId> {
        self.children
            .iter()
            .filter(|(_, c)| c.is_empty())
            .map(|(id, _)| id)
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.children
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(id, _)| id)
    }

    /// Distance from the root (root is at depth 0).
    pub fn depth(&self, id: &str) -> Result<usize> {
        if !self.contains(id) {
            return Err(Error::UnknownNode(id.to_string()));
        }
        let mut d = 0;
        let mut cur = id;
        while let Some(p) = self.parent.get(cur) {
            cur = p;
            d += 1;
        }
        Ok(d)
    }

    /// Ancestor order: `a <= b` iff `b` lies on the path from `a` to the root.
    pub fn le(&self, a: &str, b: &str) -> Result<bool> {
        if !self.contains(b) {
            return Err(Error::UnknownNode(b.to_string()));
        }
        let mut cur = a;
        if !self.contains(a) {
            return Err(Error::UnknownNode(a.to_string()));
        }
        loop {
            if cur == b {
                return Ok(true);
            }
            match self.parent.get(cur) {
                Some(p) => cur = p,
                None => return Ok(false),
            }
        }
    }

    /// Lowest common ancestor of `x` and `y`.
    pub fn join(&self, x: &str, y: &str) -> Result<&NodeId> {
        let dx = self.depth(x)?;
        let dy = self.depth(y)?;
        let (mut a, mut b) = (x, y);
        let (mut da, mut db) = (dx, dy);
        while da > db {
            a = self.parent.get(a).unwrap();
            da -= 1;
        }
        while db > da {
            b = self.parent.get(b).unwrap();
            db -= 1;
        }
        while a != b {
            a = self.parent.get(a).unwrap();
            b = self.parent.get(b).unwrap();
        }
        Ok(self.children.get_key_value(a).unwrap().0)
    }

    /// The leaves at or below `u`.
    pub fn leaves_below(&self, u: &str) -> Result<BTreeSet<NodeId>> {
        if !self.contains(u) {
            return Err(Error::UnknownNode(u.to_string()));
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![u.to_string()];
        while let Some(v) = stack.pop() {
            let kids = &self.children[&v];
            if kids.is_empty() {
                out.insert(v);
            } else {
                stack.extend(kids.iter().cloned());
            }
        }
        Ok(out)
    }

    /// Checks the leafiness rule: no internal node may have a single child.
    /// Structural tree-ness is guaranteed by construction, so this is the only
    /// rule that can fail. Violations are data, not errors.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (id, kids) in &self.children {
            if kids.len() == 1 {
                out.push(Violation {
                    node: id.clone(),
                    rule: format!("unique son at {id}"),
                });
            }
        }
        out
    }

    pub fn is_leafy(&self) -> bool {
        self.validate().is_empty()
    }

    fn canon_rec(&self, u: &NodeId, labeled: bool) -> String {
        let kids = &self.children[u];
        if kids.is_empty() {
            return if labeled {
                format!("{:?}", u)
            } else {
                "()".to_string()
            };
        }
        let mut parts: Vec<String> = kids.iter().map(|k| self.canon_rec(k, labeled)).collect();
        parts.sort();
        format!("({})", parts.join(""))
    }

    /// Canonical encoding preserving leaf labels; two trees are related by a
    /// root-preserving isomorphism fixing leaf names iff the encodings match.
    pub fn canonical(&self) -> String {
        self.canon_rec(&self.root, true)
    }

    /// Canonical encoding of the bare shape (all labels ignored).
    pub fn canonical_shape(&self) -> String {
        self.canon_rec(&self.root, false)
    }

    /// Substitutes trees for leaves. A single-node replacement leaves the leaf
    /// in place; a larger replacement takes the leaf's position with its root
    /// and must itself contain the leaf id among its leaves. Replacement node
    /// sets must be disjoint from each other and from the remaining tree
    /// (renaming is the caller's responsibility).
    pub fn substitute(&self, sub: &BTreeMap<NodeId, RootedTree>) -> Result<RootedTree> {
        for (x, u) in sub {
            if !self.contains(x) {
                return Err(Error::UnknownNode(x.clone()));
            }
            if !self.is_leaf(x) {
                return Err(Error::NotALeaf(x.clone()));
            }
            if u.len() > 1 && !u.is_leaf(x) {
                return Err(Error::MalformedTree(format!(
                    "replacement at `{x}` must contain `{x}` as a leaf"
                )));
            }
        }
        let mut taken: BTreeSet<NodeId> = self
            .nodes()
            .filter(|n| !sub.contains_key(*n))
            .cloned()
            .collect();
        let mut children = BTreeMap::new();
        for n in self.nodes() {
            if !sub.contains_key(n) {
                children.insert(n.clone(), self.children[n].clone());
            }
        }
        let mut root = self.root.clone();
        for (x, u) in sub {
            if u.len() == 1 {
                // Identified with the leaf; nothing to do.
                continue;
            }
            for n in u.nodes() {
                if n != x && !taken.insert(n.clone()) {
                    return Err(Error::IdCollision(n.clone()));
                }
            }
            for n in u.nodes() {
                children.insert(n.clone(), u.children[n].clone());
            }
            if *x == self.root {
                root = u.root.clone();
            } else if let Some(p) = self.parent.get(x) {
                let list = children.get_mut(p).unwrap();
                list.retain(|c| c != x);
                list.push(u.root.clone());
            }
        }
        RootedTree::from_children(root, children)
    }

    /// Copy of the subtree rooted at `u`.
    pub fn subtree(&self, u: &str) -> Result<RootedTree> {
        if !self.contains(u) {
            return Err(Error::UnknownNode(u.to_string()));
        }
        let mut children = BTreeMap::new();
        let mut stack = vec![u.to_string()];
        while let Some(v) = stack.pop() {
            children.insert(v.clone(), self.children[&v].clone());
            stack.extend(self.children[&v].iter().cloned());
        }
        RootedTree::from_children(u.to_string(), children)
    }

    /// Contracts the subtrees rooted at the given antichain down to one
    /// representative leaf each (the least leaf below the root). Returns the
    /// contracted tree together with the contracted parts, keyed by their
    /// representative, so `substitute` inverts the operation node-for-node.
    pub fn contract(
        &self,
        roots: &BTreeSet<NodeId>,
    ) -> Result<(RootedTree, BTreeMap<NodeId, RootedTree>)> {
        for r in roots {
            if !self.contains(r) {
                return Err(Error::UnknownNode(r.clone()));
            }
        }
        for a in roots {
            for b in roots {
                if a < b && (self.le(a, b)? || self.le(b, a)?) {
                    return Err(Error::NotAnAntichain(a.clone(), b.clone()));
                }
            }
        }
        let mut parts = BTreeMap::new();
        let mut children = self.children.clone();
        let mut root = self.root.clone();
        for r in roots {
            let part = self.subtree(r)?;
            let rep = part.leaves().next().unwrap().clone();
            for n in part.nodes() {
                children.remove(n);
            }
            children.insert(rep.clone(), Vec::new());
            if *r == self.root {
                root = rep.clone();
            } else {
                let p = self.parent.get(r).unwrap();
                let list = children.get_mut(p).unwrap();
                list.retain(|c| c != r);
                list.push(rep.clone());
            }
            parts.insert(rep, part);
        }
        Ok((RootedTree::from_children(root, children)?, parts))
    }

    /// The family of leaf sets `{ Lf(u) | u node }` over the tree's leaves.
    pub fn to_laminar(&self) -> LaminarFamily {
        let ground: BTreeSet<NodeId> = self.leaves().cloned().collect();
        let mut members = BTreeSet::new();
        for u in self.nodes() {
            members.insert(self.leaves_below(u).unwrap());
        }
        LaminarFamily { ground, members }
    }

    /// Relabels one node. Fails if the new id is already present.
    pub fn rename(&self, from: &str, to: &str) -> Result<RootedTree> {
        if !self.contains(from) {
            return Err(Error::UnknownNode(from.to_string()));
        }
        if self.contains(to) {
            return Err(Error::DuplicateNode(to.to_string()));
        }
        let swap = |id: &NodeId| -> NodeId {
            if id == from {
                to.to_string()
            } else {
                id.clone()
            }
        };
        let children = self
            .children
            .iter()
            .map(|(k, v)| (swap(k), v.iter().map(swap).collect()))
            .collect();
        RootedTree::from_children(swap(&self.root), children)
    }
}

/// Leaf-label-preserving isomorphism (internal names are irrelevant).
pub fn isomorphic(a: &RootedTree, b: &RootedTree) -> bool {
    a.canonical() == b.canonical()
}

/// Shape-only isomorphism (all labels irrelevant).
pub fn isomorphic_shape(a: &RootedTree, b: &RootedTree) -> bool {
    a.canonical_shape() == b.canonical_shape()
}

/// A family of non-overlapping subsets of a ground set, containing the ground
/// set and all singletons; equivalently a leafy rooted tree up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarFamily {
    pub ground: BTreeSet<NodeId>,
    pub members: BTreeSet<BTreeSet<NodeId>>,
}

impl LaminarFamily {
    pub fn validate(&self) -> Result<()> {
        if self.ground.is_empty() {
            return Err(Error::MalformedLaminar("empty ground set".into()));
        }
        if !self.members.contains(&self.ground) {
            return Err(Error::MalformedLaminar("ground set missing".into()));
        }
        for x in &self.ground {
            let singleton: BTreeSet<NodeId> = [x.clone()].into();
            if !self.members.contains(&singleton) {
                return Err(Error::MalformedLaminar(format!("singleton {{{x}}} missing")));
            }
        }
        for m in &self.members {
            if m.is_empty() {
                return Err(Error::MalformedLaminar("empty member".into()));
            }
            if !m.is_subset(&self.ground) {
                return Err(Error::MalformedLaminar(
                    "member not contained in the ground set".into(),
                ));
            }
        }
        for a in &self.members {
            for b in &self.members {
                if a < b && !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a) {
                    return Err(Error::MalformedLaminar(format!(
                        "members {a:?} and {b:?} overlap"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Orders the members by inclusion: singletons become leaves (named by
    /// their element), larger members get synthesized names.
    pub fn to_tree(&self) -> Result<RootedTree> {
        self.validate()?;
        let mut names: BTreeMap<&BTreeSet<NodeId>, NodeId> = BTreeMap::new();
        let mut taken: BTreeSet<NodeId> = self.ground.clone();
        for m in &self.members {
            if m.len() == 1 {
                names.insert(m, m.first().unwrap().clone());
            } else {
                let base = format!(
                    "({})",
                    m.iter().cloned().collect::<Vec<_>>().join(" ")
                );
                let name = fresh_name(base, &taken);
                taken.insert(name.clone());
                names.insert(m, name);
            }
        }
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for m in &self.members {
            children.entry(names[m].clone()).or_default();
            if m == &self.ground {
                continue;
            }
            // Parent: the smallest member strictly containing m.
            let p = self
                .members
                .iter()
                .filter(|c| m.is_subset(c) && *c != m)
                .min_by_key(|c| c.len())
                .ok_or_else(|| Error::MalformedLaminar("no parent member".into()))?;
            children.entry(names[p].clone()).or_default().push(names[m].clone());
        }
        RootedTree::from_children(names[&self.ground].clone(), children)
    }
}

fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    // Restricted growth strings: a[0] = 0, a[i] <= max(a[..i]) + 1.
    let mut out = Vec::new();
    let mut a = vec![0usize; k];
    loop {
        out.push(a.clone());
        // Next RGS.
        let mut i = k;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let max_prefix = a[..i].iter().copied().max().unwrap();
            if a[i] <= max_prefix {
                a[i] += 1;
                for v in a.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                break;
            }
        }
    }
}

#[derive(Clone)]
enum Shape {
    Leaf(NodeId),
    Node(Vec<Shape>),
}

fn enum_shapes(leaves: &[NodeId]) -> Vec<Shape> {
    if leaves.len() == 1 {
        return vec![Shape::Leaf(leaves[0].clone())];
    }
    let mut out = Vec::new();
    for rgs in set_partitions(leaves.len()) {
        let block_count = rgs.iter().copied().max().unwrap() + 1;
        if block_count < 2 {
            continue;
        }
        let mut blocks: Vec<Vec<NodeId>> = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(leaves[i].clone());
        }
        let sub: Vec<Vec<Shape>> = blocks.iter().map(|b| enum_shapes(b)).collect();
        let mut choice = vec![0usize; block_count];
        loop {
            let kids: Vec<Shape> = choice.iter().enumerate().map(|(b, &c)| sub[b][c].clone()).collect();
            out.push(Shape::Node(kids));
            let mut i = block_count;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if choice[i] + 1 < sub[i].len() {
                    choice[i] += 1;
                    for v in choice.iter_mut().skip(i + 1) {
                        *v = 0;
                    }
                    break;
                }
                if i == 0 {
                    choice.clear();
                    break;
                }
            }
            if choice.is_empty() {
                break;
            }
        }
    }
    out
}

fn materialize(shape: &Shape, taken: &BTreeSet<NodeId>) -> RootedTree {
    fn rec(
        shape: &Shape,
        counter: &mut usize,
        taken: &BTreeSet<NodeId>,
        children: &mut BTreeMap<NodeId, Vec<NodeId>>,
    ) -> NodeId {
        match shape {
            Shape::Leaf(id) => {
                children.entry(id.clone()).or_default();
                id.clone()
            }
            Shape::Node(kids) => {
                let id = fresh_name(format!("#{counter}"), taken);
                *counter += 1;
                let kid_ids: Vec<NodeId> = kids.iter().map(|k| rec(k, counter, taken, children)).collect();
                children.insert(id.clone(), kid_ids);
                id
            }
        }
    }
    let mut children = BTreeMap::new();
    let mut counter = 0usize;
    let root = rec(shape, &mut counter, taken, &mut children);
    RootedTree::from_children(root, children).unwrap()
}

/// Every leafy rooted tree on the given labeled leaves, each exactly once, in
/// a deterministic order. Internal nodes get synthesized `#k` names.
pub fn enumerate_leafy_trees(labels: &BTreeSet<NodeId>) -> Vec<RootedTree> {
    assert!(!labels.is_empty(), "need at least one leaf label");
    let leaves: Vec<NodeId> = labels.iter().cloned().collect();
    enum_shapes(&leaves)
        .iter()
        .map(|s| materialize(s, labels))
        .collect()
}

/// A random leafy tree on the given leaves (arbitrary, not uniform, shape
/// distribution). Deterministic for a fixed RNG state.
pub fn random_leafy_tree<R: rand::Rng>(labels: &BTreeSet<NodeId>, rng: &mut R) -> RootedTree {
    fn rec<R: rand::Rng>(leaves: &[NodeId], rng: &mut R) -> Shape {
        if leaves.len() == 1 {
            return Shape::Leaf(leaves[0].clone());
        }
        let max_blocks = leaves.len().min(4);
        loop {
            let m = rng.gen_range(2..=max_blocks);
            let mut blocks: Vec<Vec<NodeId>> = vec![Vec::new(); m];
            for l in leaves {
                blocks[rng.gen_range(0..m)].push(l.clone());
            }
            blocks.retain(|b| !b.is_empty());
            if blocks.len() >= 2 {
                return Shape::Node(blocks.iter().map(|b| rec(b, rng)).collect());
            }
        }
    }
    let leaves: Vec<NodeId> = labels.iter().cloned().collect();
    materialize(&rec(&leaves, rng), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cat3, star3};

    fn ids(v: &[&str]) -> BTreeSet<NodeId> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validate_examples() {
        assert!(cat3().validate().is_empty());
        assert!(RootedTree::leaf("r").validate().is_empty());
        let chain = RootedTree::from_children(
            "r".into(),
            BTreeMap::from([("r".into(), vec!["m".into()]), ("m".into(), vec!["a".into()])]),
        )
        .unwrap();
        let v = chain.validate();
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(|w| w.node == "m"));
    }

    #[test]
    fn join_examples() {
        let t = cat3();
        assert_eq!(t.join("a", "b").unwrap(), "m");
        assert_eq!(t.join("a", "c").unwrap(), "r");
        assert_eq!(t.join("a", "a").unwrap(), "a");
        assert!(t.join("a", "zzz").is_err());
    }

    #[test]
    fn leaves_below_examples() {
        let t = cat3();
        assert_eq!(t.leaves_below("m").unwrap(), ids(&["a", "b"]));
        assert_eq!(t.leaves_below("r").unwrap(), ids(&["a", "b", "c"]));
        assert_eq!(t.leaves_below("c").unwrap(), ids(&["c"]));
    }

    #[test]
    fn substitute_identity() {
        let t = star3();
        let sub: BTreeMap<NodeId, RootedTree> = t
            .leaves()
            .map(|l| (l.clone(), RootedTree::leaf(l.clone())))
            .collect();
        let s = t.substitute(&sub).unwrap();
        assert!(isomorphic(&s, &t));
    }

    #[test]
    fn substitute_grows_and_stays_leafy() {
        // Two-leaf star, one leaf replaced by a caterpillar shape.
        let t = RootedTree::from_children(
            "r".into(),
            BTreeMap::from([("r".into(), vec!["x".into(), "y".into()])]),
        )
        .unwrap();
        let u = RootedTree::from_children(
            "q".into(),
            BTreeMap::from([
                ("q".into(), vec!["m".into(), "x".into()]),
                ("m".into(), vec!["x1".into(), "x2".into()]),
            ]),
        )
        .unwrap();
        let s = t
            .substitute(&BTreeMap::from([("x".to_string(), u)]))
            .unwrap();
        assert!(s.is_leafy());
        assert_eq!(s.leaves().count(), 4);
        assert_eq!(s.join("x1", "x2").unwrap(), "m");
        assert_eq!(s.join("x1", "y").unwrap(), "r");
    }

    #[test]
    fn substitute_rejects_collisions_and_internals() {
        let t = cat3();
        let clash = cat3(); // shares every id with t
        assert!(matches!(
            t.substitute(&BTreeMap::from([("a".to_string(), clash)])),
            Err(Error::MalformedTree(_)) | Err(Error::IdCollision(_))
        ));
        assert!(matches!(
            t.substitute(&BTreeMap::from([("m".to_string(), RootedTree::leaf("m"))])),
            Err(Error::NotALeaf(_))
        ));
    }

    #[test]
    fn contract_round_trip() {
        let s = cat3();
        let (t, parts) = s.contract(&ids(&["m"])).unwrap();
        assert_eq!(t.leaves().count(), 2);
        assert!(t.contains("a") && t.contains("c")); // rep of m's part is `a`
        let back = t.substitute(&parts).unwrap();
        assert_eq!(back, s);

        let (t2, parts2) = s.contract(&BTreeSet::new()).unwrap();
        assert_eq!(t2, s);
        assert!(parts2.is_empty());

        // Contracting at a leaf is the identity.
        let (t3, parts3) = star3().contract(&ids(&["a"])).unwrap();
        assert_eq!(t3, star3());
        assert_eq!(parts3.len(), 1);

        assert!(matches!(
            s.contract(&ids(&["r", "m"])),
            Err(Error::NotAnAntichain(_, _))
        ));
    }

    #[test]
    fn isomorphism_examples() {
        let renamed = cat3().rename("m", "k").unwrap().rename("r", "top").unwrap();
        assert!(isomorphic(&cat3(), &renamed));
        assert!(!isomorphic(&cat3(), &star3()));
        let shape_a = RootedTree::from_children(
            "r".into(),
            BTreeMap::from([
                ("r".into(), vec!["m".into(), "d".into()]),
                ("m".into(), vec!["a".into(), "b".into()]),
            ]),
        )
        .unwrap();
        let shape_b = RootedTree::from_children(
            "R".into(),
            BTreeMap::from([
                ("R".into(), vec!["M".into(), "w".into()]),
                ("M".into(), vec!["u".into(), "v".into()]),
            ]),
        )
        .unwrap();
        assert!(!isomorphic(&shape_a, &shape_b));
        assert!(isomorphic_shape(&shape_a, &shape_b));
    }

    #[test]
    fn laminar_round_trip() {
        let t = cat3();
        let fam = t.to_laminar();
        let expect: BTreeSet<BTreeSet<NodeId>> = [
            ids(&["a"]),
            ids(&["b"]),
            ids(&["c"]),
            ids(&["a", "b"]),
            ids(&["a", "b", "c"]),
        ]
        .into();
        assert_eq!(fam.members, expect);
        assert!(isomorphic(&fam.to_tree().unwrap(), &t));

        let single = LaminarFamily {
            ground: ids(&["x"]),
            members: [ids(&["x"])].into(),
        };
        assert_eq!(single.to_tree().unwrap().len(), 1);
    }

    #[test]
    fn laminar_rejects_overlap() {
        let fam = LaminarFamily {
            ground: ids(&["a", "b", "c"]),
            members: [
                ids(&["a"]),
                ids(&["b"]),
                ids(&["c"]),
                ids(&["a", "b"]),
                ids(&["b", "c"]),
                ids(&["a", "b", "c"]),
            ]
            .into(),
        };
        assert!(fam.validate().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_leafy_trees(&ids(&["a"])).len(), 1);
        assert_eq!(enumerate_leafy_trees(&ids(&["a", "b"])).len(), 1);
        assert_eq!(enumerate_leafy_trees(&ids(&["a", "b", "c"])).len(), 4);
        assert_eq!(enumerate_leafy_trees(&ids(&["a", "b", "c", "d"])).len(), 26);
        // All distinct, all leafy, all on the right leaf set.
        let trees = enumerate_leafy_trees(&ids(&["a", "b", "c", "d"]));
        let mut seen = BTreeSet::new();
        for t in &trees {
            assert!(t.is_leafy());
            assert_eq!(t.leaves().cloned().collect::<BTreeSet<_>>(), ids(&["a", "b", "c", "d"]));
            assert!(seen.insert(t.canonical()));
        }
    }
}
