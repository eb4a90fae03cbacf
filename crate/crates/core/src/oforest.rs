//! Finite hierarchical partial orders (forests of rooted trees given as
//! explicit order pairs), their join completion and the extended leaf
//! structure that characterizes them.

use crate::bits::Rel3;
use crate::error::{Error, Result};
use crate::leaf_structure::LeafStructure;
use crate::tree::{fresh_name, NodeId, RootedTree};
use std::collections::{BTreeMap, BTreeSet};

/// A strict partial order stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OForest {
    ids: Vec<NodeId>,
    lt: Vec<Vec<bool>>,
}

impl OForest {
    /// Builds a forest from strict order pairs; the input is transitively
    /// closed on load and checked to be irreflexive and antisymmetric.
    pub fn from_pairs(nodes: Vec<NodeId>, pairs: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut ids = nodes;
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].clone()));
            }
        }
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let n = ids.len();
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in pairs {
            let i = *pos.get(a).ok_or_else(|| Error::UnknownNode(a.clone()))?;
            let j = *pos.get(b).ok_or_else(|| Error::UnknownNode(b.clone()))?;
            lt[i][j] = true;
        }
        // Transitive closure.
        for k in 0..n {
            for i in 0..n {
                if lt[i][k] {
                    for j in 0..n {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            if lt[i][i] {
                return Err(Error::MalformedOrder(format!("`{}` below itself", ids[i])));
            }
            for j in 0..n {
                if i < j && lt[i][j] && lt[j][i] {
                    return Err(Error::MalformedOrder(format!(
                        "`{}` and `{}` below each other",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        Ok(OForest { ids, lt })
    }

    /// The ancestor orders of a forest of rooted trees, merged.
    pub fn from_trees(trees: &[RootedTree]) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut pairs = Vec::new();
        for t in trees {
            for u in t.nodes() {
                nodes.push(u.clone());
                if let Some(p) = t.parent(u) {
                    pairs.push((u.clone(), p.clone()));
                }
            }
        }
        OForest::from_pairs(nodes, &pairs)
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

    fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_string()))
    }

    pub fn lt(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.lt[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn le(&self, a: &str, b: &str) -> Result<bool> {
        Ok(a == b || self.lt(a, b)?)
    }

    fn le_idx(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        (0..self.ids.len())
            .filter(|&i| (0..self.ids.len()).all(|j| !self.lt[j][i]))
            .map(|i| self.ids[i].clone())
            .collect()
    }

    fn leaf_indices(&self) -> Vec<usize> {
        (0..self.ids.len())
            .filter(|&i| (0..self.ids.len()).all(|j| !self.lt[j][i]))
            .collect()
    }

    /// Common upper bounds of two nodes.
    fn upper_idx(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.ids.len())
            .filter(|&u| self.le_idx(i, u) && self.le_idx(j, u))
            .collect()
    }

    /// Least upper bound, when one exists.
    pub fn join(&self, a: &str, b: &str) -> Result<Option<NodeId>> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.join_idx(i, j).map(|u| self.ids[u].clone()))
    }

    fn join_idx(&self, i: usize, j: usize) -> Option<usize> {
        let ups = self.upper_idx(i, j);
        ups.iter().copied().find(|&u| ups.iter().all(|&v| self.le_idx(u, v)))
    }

    /// Checks the two structural rules: linearity (elements above a node form
    /// a chain) and leafiness (every internal node is the join of two leaves).
    pub fn validate(&self) -> Result<()> {
        let n = self.ids.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.lt[x][y] && self.lt[x][z] && y != z && !self.lt[y][z] && !self.lt[z][y] {
                        return Err(Error::NotHierarchical(
                            self.ids[x].clone(),
                            self.ids[y].clone(),
                            self.ids[z].clone(),
                        ));
                    }
                }
            }
        }
        let leaves = self.leaf_indices();
        for u in 0..n {
            if leaves.contains(&u) {
                continue;
            }
            let witnessed = leaves.iter().any(|&x| {
                leaves
                    .iter()
                    .any(|&y| x != y && self.join_idx(x, y) == Some(u))
            });
            if !witnessed {
                return Err(Error::NotLeafy(self.ids[u].clone()));
            }
        }
        Ok(())
    }

    /// Whether every two nodes have an upper bound (single component).
    pub fn is_otree(&self) -> bool {
        let n = self.ids.len();
        (0..n).all(|i| (0..n).all(|j| !self.upper_idx(i, j).is_empty()))
    }

    /// The ternary leaf relation: `Rxyz` iff `x` sits below every common
    /// upper bound of `y` and `z` (vacuously true when there is none).
    pub fn leaf_structure(&self) -> Result<LeafStructure> {
        self.validate()?;
        let leaves = self.leaf_indices();
        let ids: Vec<NodeId> = leaves.iter().map(|&i| self.ids[i].clone()).collect();
        let m = leaves.len();
        let mut rel = Rel3::new(m);
        for (a, &x) in leaves.iter().enumerate() {
            for (b, &y) in leaves.iter().enumerate() {
                for (c, &z) in leaves.iter().enumerate() {
                    if self.upper_idx(y, z).iter().all(|&u| self.le_idx(x, u)) {
                        rel.set(a, b, c);
                    }
                }
            }
        }
        Ok(LeafStructure::from_parts(ids, rel))
    }

    /// The binary relation marking leaf pairs that have a join.
    pub fn join_witness(&self) -> Result<BTreeSet<(NodeId, NodeId)>> {
        self.validate()?;
        let leaves = self.leaf_indices();
        let mut out = BTreeSet::new();
        for &x in &leaves {
            for &y in &leaves {
                if !self.upper_idx(x, y).is_empty() {
                    out.insert((self.ids[x].clone(), self.ids[y].clone()));
                }
            }
        }
        Ok(out)
    }

    /// Embeds the forest into a join-tree by adding the missing joins. For a
    /// finite leafy forest this adds at most a fresh root, needed exactly when
    /// some pair has no upper bound. Returns the completed tree and the node
    /// embedding.
    pub fn join_completion(&self) -> Result<(RootedTree, BTreeMap<NodeId, NodeId>)> {
        self.validate()?;
        if self.is_empty() {
            return Err(Error::TooSmall { need: 1, got: 0 });
        }
        let n = self.ids.len();
        let taken: BTreeSet<NodeId> = self.ids.iter().cloned().collect();
        let synthetic_root = if self.is_otree() {
            None
        } else {
            Some(fresh_name("()".to_string(), &taken))
        };
        // Parent of u: the least element strictly above it, or the added root.
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        if let Some(r) = &synthetic_root {
            children.entry(r.clone()).or_default();
        }
        let mut root = synthetic_root.clone();
        for u in 0..n {
            children.entry(self.ids[u].clone()).or_default();
            let mut parent: Option<usize> = None;
            for v in 0..n {
                if self.lt[u][v] {
                    parent = match parent {
                        None => Some(v),
                        Some(p) if self.lt[v][p] => Some(v),
                        keep => keep,
                    };
                }
            }
            match parent {
                Some(p) => children
                    .entry(self.ids[p].clone())
                    .or_default()
                    .push(self.ids[u].clone()),
                None => match &synthetic_root {
                    Some(r) => children.entry(r.clone()).or_default().push(self.ids[u].clone()),
                    None => {
                        if root.replace(self.ids[u].clone()).is_some() {
                            return Err(Error::MalformedOrder("two maximal nodes".into()));
                        }
                    }
                },
            }
        }
        let root = root.ok_or_else(|| Error::MalformedOrder("no maximal node".into()))?;
        let tree = RootedTree::from_children(root, children)?;
        let embedding = self.ids.iter().map(|id| (id.clone(), id.clone())).collect();
        Ok((tree, embedding))
    }

    /// The extended leaf structure `(L, R, U)`.
    pub fn extended_structure(&self) -> Result<(LeafStructure, BTreeSet<(NodeId, NodeId)>)> {
        Ok((self.leaf_structure()?, self.join_witness()?))
    }
}

/// Inverts `extended_structure`: rebuilds the join completion from `(L, R)`
/// and drops its root when the root stands for pairs without a join.
pub fn reconstruct_extended(
    ls: &LeafStructure,
    u: &BTreeSet<(NodeId, NodeId)>,
) -> Result<OForest> {
    let q = ls.quotient()?;
    let tree = &q.tree;
    // Pairs whose class is the root and that have no join mark the root as
    // synthetic.
    let mut drop_root = false;
    for x in ls.leaves() {
        for y in ls.leaves() {
            if q.class_of(ls, x, y)? == *tree.root() && !u.contains(&(x.clone(), y.clone())) {
                drop_root = true;
            }
        }
    }
    let mut nodes = Vec::new();
    let mut pairs = Vec::new();
    for v in tree.nodes() {
        if drop_root && v == tree.root() {
            continue;
        }
        nodes.push(v.clone());
        if let Some(p) = tree.parent(v) {
            if !(drop_root && p == tree.root()) {
                pairs.push((v.clone(), p.clone()));
            }
        }
    }
    OForest::from_pairs(nodes, &pairs)
}

/// Isomorphism of forests: equal multisets of leaf-labeled component trees.
pub fn forests_isomorphic(a: &OForest, b: &OForest) -> Result<bool> {
    Ok(forest_canonical(a)? == forest_canonical(b)?)
}

fn forest_canonical(f: &OForest) -> Result<Vec<String>> {
    // Split into components via the join completion's synthetic root.
    let (tree, _) = f.join_completion()?;
    let roots: Vec<NodeId> = if f.is_otree() {
        vec![tree.root().clone()]
    } else {
        tree.children(tree.root())?.to_vec()
    };
    let mut parts: Vec<String> = roots
        .iter()
        .map(|r| tree.subtree(r).map(|t| t.canonical()))
        .collect::<Result<_>>()?;
    parts.sort();
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cat3;
    use crate::tree::isomorphic;

    fn two_stars() -> OForest {
        OForest::from_pairs(
            ["x", "y", "p", "u", "v", "q"].map(String::from).to_vec(),
            &[
                ("x".into(), "p".into()),
                ("y".into(), "p".into()),
                ("u".into(), "q".into()),
                ("v".into(), "q".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn completion_of_a_tree_is_itself() {
        let f = OForest::from_trees(&[cat3()]).unwrap();
        assert!(f.is_otree());
        let (j, emb) = f.join_completion().unwrap();
        assert!(isomorphic(&j, &cat3()));
        assert_eq!(emb.len(), 5);
        let u = f.join_witness().unwrap();
        // U is total on leaves.
        assert_eq!(u.len(), 9);
    }

    #[test]
    fn completion_adds_root_for_two_components() {
        let f = two_stars();
        assert!(!f.is_otree());
        let (j, _) = f.join_completion().unwrap();
        assert_eq!(j.len(), f.len() + 1);
        assert_eq!(j.children(j.root()).unwrap().len(), 2);
        let u = f.join_witness().unwrap();
        assert!(u.contains(&("x".into(), "y".into())));
        assert!(!u.contains(&("x".into(), "u".into())));
    }

    #[test]
    fn vacuous_truth_across_components() {
        let f = two_stars();
        let ls = f.leaf_structure().unwrap();
        // No common upper bound for y,u: every x satisfies Rx y u.
        assert!(ls.contains("v", "y", "u"));
        assert!(ls.check_axioms().iter().take(5).all(|c| c.passed()));
    }

    #[test]
    fn extended_round_trip() {
        for f in [OForest::from_trees(&[cat3()]).unwrap(), two_stars()] {
            let (ls, u) = f.extended_structure().unwrap();
            let back = reconstruct_extended(&ls, &u).unwrap();
            assert!(forests_isomorphic(&f, &back).unwrap());
        }
    }

    #[test]
    fn linearity_violation_detected() {
        // Diamond: d below both b and c, which are incomparable below a.
        let f = OForest::from_pairs(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            &[
                ("d".into(), "b".into()),
                ("d".into(), "c".into()),
                ("b".into(), "a".into()),
                ("c".into(), "a".into()),
            ],
        )
        .unwrap();
        assert!(matches!(f.validate(), Err(Error::NotHierarchical(..))));
    }
}
