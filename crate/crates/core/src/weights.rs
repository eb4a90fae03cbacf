//! Good weight functions on leaves (values 0,1,2 summed mod 3 over subtree
//! leaf sets), representing leaves, and the reconstruction of a tree from its
//! leaf relation with node set tagged into `L x {1,2}`.

use crate::error::{Error, Result};
use crate::leaf_structure::LeafStructure;
use crate::tree::{NodeId, RootedTree};
use std::collections::BTreeMap;

/// Leaf weights in `{0,1,2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    sigma: BTreeMap<NodeId, u8>,
}

impl WeightAssignment {
    pub fn new(sigma: BTreeMap<NodeId, u8>) -> Result<Self> {
        for (id, w) in &sigma {
            if *w > 2 {
                return Err(Error::MalformedTree(format!(
                    "weight of `{id}` must be 0, 1 or 2, got {w}"
                )));
            }
        }
        Ok(WeightAssignment { sigma })
    }

    pub fn get(&self, leaf: &str) -> Result<u8> {
        self.sigma
            .get(leaf)
            .copied()
            .ok_or_else(|| Error::UnknownNode(leaf.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NodeId, u8)> {
        self.sigma.iter().map(|(k, v)| (k, *v))
    }

    /// Sum of the weights over a leaf set, mod 3.
    pub fn weight_of_set<'a, I>(&self, leaves: I) -> Result<u8>
    where
        I: IntoIterator<Item = &'a NodeId>,
    {
        let mut acc = 0u32;
        for l in leaves {
            acc += u32::from(self.get(l)?);
        }
        Ok((acc % 3) as u8)
    }

    /// Weight of a node: the weight of the leaves below it.
    pub fn node_weight(&self, t: &RootedTree, u: &str) -> Result<u8> {
        let below = t.leaves_below(u)?;
        self.weight_of_set(below.iter())
    }
}

/// The child of maximal weight per internal node, when unique everywhere.
/// `None` means some internal node has a tie, i.e. the weights are not good.
pub fn sigma_sons(t: &RootedTree, sigma: &WeightAssignment) -> Result<Option<BTreeMap<NodeId, NodeId>>> {
    let mut out = BTreeMap::new();
    for u in t.internal_nodes() {
        let kids = t.children(u)?;
        let mut best: Option<(&NodeId, u8)> = None;
        let mut tie = false;
        for k in kids {
            let w = sigma.node_weight(t, k)?;
            match best {
                None => best = Some((k, w)),
                Some((_, bw)) if w > bw => {
                    best = Some((k, w));
                    tie = false;
                }
                Some((_, bw)) if w == bw => tie = true,
                _ => {}
            }
        }
        if tie {
            return Ok(None);
        }
        out.insert(u.clone(), best.unwrap().0.clone());
    }
    Ok(Some(out))
}

pub fn is_good(t: &RootedTree, sigma: &WeightAssignment) -> Result<bool> {
    Ok(sigma_sons(t, sigma)?.is_some())
}

/// Builds a good weight assignment with prescribed root weight `i` whose
/// maximal-weight child at each internal node is exactly the preferred one.
/// Child target weights per node weight: 0 -> (2,1,0,...), 1 -> (1,0,...),
/// 2 -> (2,0,...), the first slot going to the preferred child.
pub fn build_good_weights(
    t: &RootedTree,
    preferred: &BTreeMap<NodeId, NodeId>,
    i: u8,
) -> Result<WeightAssignment> {
    if i > 2 {
        return Err(Error::MalformedTree(format!("root weight must be 0, 1 or 2, got {i}")));
    }
    for u in t.internal_nodes() {
        let p = preferred
            .get(u)
            .ok_or_else(|| Error::MalformedTree(format!("no preferred child for `{u}`")))?;
        if !t.children(u)?.contains(p) {
            return Err(Error::MalformedTree(format!("`{p}` is not a child of `{u}`")));
        }
    }
    let mut sigma = BTreeMap::new();
    let mut stack = vec![(t.root().clone(), i)];
    while let Some((u, target)) = stack.pop() {
        let kids = t.children(&u)?;
        if kids.is_empty() {
            sigma.insert(u, target);
            continue;
        }
        let first = &preferred[&u];
        let rest: Vec<&NodeId> = kids.iter().filter(|k| *k != first).collect();
        match target {
            0 => {
                stack.push((first.clone(), 2));
                for (ix, k) in rest.iter().enumerate() {
                    stack.push(((*k).clone(), if ix == 0 { 1 } else { 0 }));
                }
            }
            1 => {
                stack.push((first.clone(), 1));
                for k in &rest {
                    stack.push(((*k).clone(), 0));
                }
            }
            _ => {
                stack.push((first.clone(), 2));
                for k in &rest {
                    stack.push(((*k).clone(), 0));
                }
            }
        }
    }
    WeightAssignment::new(sigma)
}

fn least_child_choice(t: &RootedTree) -> BTreeMap<NodeId, NodeId> {
    t.internal_nodes()
        .map(|u| (u.clone(), t.children(u).unwrap()[0].clone()))
        .collect()
}

/// A pair of good weight assignments whose maximal-weight children differ at
/// every internal node: the first prefers the least child, the second the
/// least child distinct from it.
pub fn build_weight_pair(t: &RootedTree) -> Result<(WeightAssignment, WeightAssignment)> {
    if let Some(v) = t.validate().first() {
        return Err(Error::NotLeafy(v.rule.clone()));
    }
    if t.leaves().count() < 2 {
        return Err(Error::TooSmall { need: 2, got: 1 });
    }
    let pref = least_child_choice(t);
    let pref2: BTreeMap<NodeId, NodeId> = t
        .internal_nodes()
        .map(|u| {
            let kids = t.children(u).unwrap();
            let alt = kids.iter().find(|k| **k != pref[u]).unwrap();
            (u.clone(), alt.clone())
        })
        .collect();
    Ok((
        build_good_weights(t, &pref, 0)?,
        build_good_weights(t, &pref2, 0)?,
    ))
}

/// The representing leaf of an internal node: one step to the maximal child
/// of the first assignment, then maximal children of the second until a leaf.
pub fn rep(
    t: &RootedTree,
    sons: &BTreeMap<NodeId, NodeId>,
    sons2: &BTreeMap<NodeId, NodeId>,
    u: &str,
) -> Result<NodeId> {
    if t.is_leaf(u) {
        return Err(Error::NotALeaf(format!("rep of a leaf `{u}`")));
    }
    let mut cur = sons
        .get(u)
        .ok_or_else(|| Error::UnknownNode(u.to_string()))?
        .clone();
    while !t.is_leaf(&cur) {
        cur = sons2[&cur].clone();
    }
    Ok(cur)
}

/// The table of representing leaves, one per internal node.
pub fn rep_table(t: &RootedTree) -> Result<BTreeMap<NodeId, NodeId>> {
    let (sigma, sigma2) = build_weight_pair(t)?;
    let sons = sigma_sons(t, &sigma)?.expect("constructed weights are good");
    let sons2 = sigma_sons(t, &sigma2)?.expect("constructed weights are good");
    t.internal_nodes()
        .map(|u| Ok((u.clone(), rep(t, &sons, &sons2, u)?)))
        .collect()
}

/// Rebuilds the tree from its leaf relation with the node set drawn from
/// `L x {1,2}`: leaves keep their names (the `1` tag), each internal node is
/// named `(w,2)` for its representing leaf `w`. Agrees with the quotient
/// reconstruction up to isomorphism.
pub fn reconstruct_rep(ls: &LeafStructure) -> Result<RootedTree> {
    let skeleton = ls.reconstruct_quotient()?;
    if skeleton.len() == 1 {
        return Ok(skeleton);
    }
    let reps = rep_table(&skeleton)?;
    let mut renamed = skeleton.clone();
    let internals: Vec<NodeId> = renamed.internal_nodes().cloned().collect();
    for u in internals {
        let w = &reps[&u];
        let tag = format!("({w},2)");
        if renamed.contains(&tag) {
            return Err(Error::DuplicateNode(tag));
        }
        renamed = renamed.rename(&u, &tag)?;
    }
    Ok(renamed)
}

/// Splits a node name produced by `reconstruct_rep` into its leaf-and-tag
/// reading: leaves read as tag 1, internal `(w,2)` names as tag 2.
pub fn rep_node_parts(tree: &RootedTree, id: &str) -> Option<(NodeId, u8)> {
    if tree.is_leaf(id) {
        return Some((id.to_string(), 1));
    }
    let inner = id.strip_prefix('(')?.strip_suffix(",2)")?;
    Some((inner.to_string(), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cat3, star3};
    use crate::tree::{enumerate_leafy_trees, isomorphic};
    use std::collections::BTreeSet;

    fn w(pairs: &[(&str, u8)]) -> WeightAssignment {
        WeightAssignment::new(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()).unwrap()
    }

    #[test]
    fn set_weights() {
        let sigma = w(&[("a", 2), ("b", 1), ("c", 0)]);
        let zero = w(&[("a", 0), ("b", 0), ("c", 0)]);
        let ab = ["a".to_string(), "b".to_string()];
        let ac = ["a".to_string(), "c".to_string()];
        assert_eq!(zero.weight_of_set(ab.iter()).unwrap(), 0);
        assert_eq!(sigma.weight_of_set(ab.iter()).unwrap(), 0);
        assert_eq!(sigma.weight_of_set(ac.iter()).unwrap(), 2);
        assert!(sigma.weight_of_set(["q".to_string()].iter()).is_err());
    }

    #[test]
    fn goodness_examples() {
        let t = cat3();
        let sigma = w(&[("a", 2), ("b", 0), ("c", 0)]);
        let sons = sigma_sons(&t, &sigma).unwrap().expect("good");
        assert_eq!(sons["r"], "m");
        assert_eq!(sons["m"], "a");

        assert!(!is_good(&t, &w(&[("a", 0), ("b", 0), ("c", 0)])).unwrap());

        let two = crate::tree::RootedTree::from_children(
            "r".into(),
            std::collections::BTreeMap::from([("r".into(), vec!["x".into(), "y".into()])]),
        )
        .unwrap();
        assert!(is_good(&two, &w(&[("x", 1), ("y", 0)])).unwrap());
    }

    #[test]
    fn build_good_weights_prescribes_everything() {
        let t = star3();
        for i in 0..3u8 {
            for pref in ["a", "b", "c"] {
                let choice = BTreeMap::from([("r".to_string(), pref.to_string())]);
                let sigma = build_good_weights(&t, &choice, i).unwrap();
                assert_eq!(sigma.node_weight(&t, "r").unwrap(), i);
                let sons = sigma_sons(&t, &sigma).unwrap().expect("good");
                assert_eq!(sons["r"], pref);
            }
        }
        // Root target 0 gives child targets (2,1,0); target 1 gives (1,0,0).
        let choice = BTreeMap::from([("r".to_string(), "a".to_string())]);
        let s0 = build_good_weights(&t, &choice, 0).unwrap();
        assert_eq!((s0.get("a").unwrap(), s0.get("b").unwrap(), s0.get("c").unwrap()), (2, 1, 0));
        let s1 = build_good_weights(&t, &choice, 1).unwrap();
        assert_eq!((s1.get("a").unwrap(), s1.get("b").unwrap(), s1.get("c").unwrap()), (1, 0, 0));
    }

    #[test]
    fn single_node_weight_is_the_target() {
        let t = crate::tree::RootedTree::leaf("x");
        for i in 0..3 {
            let sigma = build_good_weights(&t, &BTreeMap::new(), i).unwrap();
            assert_eq!(sigma.get("x").unwrap(), i);
        }
    }

    #[test]
    fn weight_pair_sons_differ() {
        let t = cat3();
        let (s, s2) = build_weight_pair(&t).unwrap();
        let sons = sigma_sons(&t, &s).unwrap().unwrap();
        let sons2 = sigma_sons(&t, &s2).unwrap().unwrap();
        for u in t.internal_nodes() {
            assert_ne!(sons[u], sons2[u]);
        }
        assert!(build_weight_pair(&crate::tree::RootedTree::leaf("x")).is_err());
    }

    #[test]
    fn rep_walk_examples() {
        let t = cat3();
        // First-assignment sons r->m, m->a; second-assignment sons r->c, m->b.
        let sons = BTreeMap::from([
            ("r".to_string(), "m".to_string()),
            ("m".to_string(), "a".to_string()),
        ]);
        let sons2 = BTreeMap::from([
            ("r".to_string(), "c".to_string()),
            ("m".to_string(), "b".to_string()),
        ]);
        assert_eq!(rep(&t, &sons, &sons2, "r").unwrap(), "b");
        assert_eq!(rep(&t, &sons, &sons2, "m").unwrap(), "a");
    }

    #[test]
    fn rep_is_injective_small() {
        let labels: std::collections::BTreeSet<String> =
            ["a", "b", "c", "d", "e"].map(String::from).into();
        for t in enumerate_leafy_trees(&labels) {
            let reps = rep_table(&t).unwrap();
            let distinct: BTreeSet<&NodeId> = reps.values().collect();
            assert_eq!(distinct.len(), reps.len());
            for (u, w) in &reps {
                assert!(t.leaves_below(u).unwrap().contains(w));
            }
        }
    }

    #[test]
    fn reconstruct_rep_examples() {
        let ls = LeafStructure::of_tree(&cat3()).unwrap();
        let t = reconstruct_rep(&ls).unwrap();
        assert!(isomorphic(&t, &cat3()));
        // Node set lives in L x {1,2}.
        let leaf_set: BTreeSet<String> = ["a", "b", "c"].map(String::from).into();
        for v in t.nodes() {
            let (w, tag) = rep_node_parts(&t, v).expect("taggable");
            assert!(leaf_set.contains(&w));
            assert_eq!(tag == 1, t.is_leaf(v));
        }

        let single = LeafStructure::of_tree(&crate::tree::RootedTree::leaf("x")).unwrap();
        assert_eq!(reconstruct_rep(&single).unwrap().len(), 1);
    }

}
