//! The ternary leaf relation of a leafy rooted tree (`Rxyz` reads "x lies
//! below the join of y and z"), its axiom suite A1-A10, and the quotient
//! reconstruction of the tree from the relation alone.

use crate::axioms::{a_witness, Axiom, AxiomCheck};
use crate::bits::Rel3;
use crate::error::{Error, Result};
use crate::tree::{fresh_name, NodeId, RootedTree};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafStructure {
    ids: Vec<NodeId>,
    rel: Rel3,
}

impl LeafStructure {
    /// Computes the leaf structure of a leafy rooted tree.
    pub fn of_tree(t: &RootedTree) -> Result<Self> {
        if let Some(v) = t.validate().first() {
            return Err(Error::NotLeafy(v.rule.clone()));
        }
        let ids: Vec<NodeId> = t.leaves().cloned().collect();
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let n = ids.len();
        let mut rel = Rel3::new(n);
        for (j, y) in ids.iter().enumerate() {
            for (k, z) in ids.iter().enumerate() {
                let join = t.join(y, z)?;
                for x in t.leaves_below(join)? {
                    rel.set(pos[&x], j, k);
                }
            }
        }
        Ok(LeafStructure { ids, rel })
    }

    /// Builds a structure from explicit triples; with `close` set, the forced
    /// triples `Rxxy`/`Rxyx` and the symmetry `Rxyz -> Rxzy` are added.
    pub fn from_triples<I>(leaves: Vec<NodeId>, triples: I, close: bool) -> Result<Self>
    where
        I: IntoIterator<Item = [NodeId; 3]>,
    {
        let mut ids = leaves;
        ids.sort();
        ids.dedup();
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let n = ids.len();
        let mut rel = Rel3::new(n);
        for [x, y, z] in triples {
            let (i, j, k) = match (pos.get(&x), pos.get(&y), pos.get(&z)) {
                (Some(&i), Some(&j), Some(&k)) => (i, j, k),
                _ => {
                    let missing = [&x, &y, &z]
                        .into_iter()
                        .find(|id| !pos.contains_key(*id))
                        .unwrap();
                    return Err(Error::UnknownNode(missing.clone()));
                }
            };
            rel.set(i, j, k);
            if close {
                rel.set(i, k, j);
            }
        }
        if close {
            for i in 0..n {
                for j in 0..n {
                    rel.set(i, i, j);
                    rel.set(i, j, i);
                }
            }
        }
        Ok(LeafStructure { ids, rel })
    }

    pub(crate) fn from_parts(ids: Vec<NodeId>, rel: Rel3) -> Self {
        LeafStructure { ids, rel }
    }

    pub fn leaves(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).ok()
    }

    /// Membership by name; unknown names simply yield `false`.
    pub fn contains(&self, x: &str, y: &str, z: &str) -> bool {
        match (self.index_of(x), self.index_of(y), self.index_of(z)) {
            (Some(i), Some(j), Some(k)) => self.rel.get(i, j, k),
            _ => false,
        }
    }

    /// All triples in lexicographic index order.
    pub fn triples(&self) -> impl Iterator<Item = [&NodeId; 3]> {
        self.rel
            .iter()
            .map(move |[i, j, k]| [&self.ids[i], &self.ids[j], &self.ids[k]])
    }

    /// The induced substructure on a subset of the leaves.
    pub fn induced(&self, subset: &BTreeSet<NodeId>) -> Result<LeafStructure> {
        let mut keep = Vec::new();
        for id in subset {
            keep.push(self.index_of(id).ok_or_else(|| Error::UnknownNode(id.clone()))?);
        }
        let n = keep.len();
        let mut rel = Rel3::new(n);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                for (c, &k) in keep.iter().enumerate() {
                    if self.rel.get(i, j, k) {
                        rel.set(a, b, c);
                    }
                }
            }
        }
        Ok(LeafStructure {
            ids: keep.iter().map(|&i| self.ids[i].clone()).collect(),
            rel,
        })
    }

    fn witness_ids(&self, w: Vec<usize>) -> Vec<String> {
        w.into_iter().map(|i| self.ids[i].clone()).collect()
    }

    /// Evaluates A1..A10, reporting a counterexample per failing axiom.
    pub fn check_axioms(&self) -> Vec<AxiomCheck> {
        Axiom::ALL_A
            .iter()
            .map(|&ax| AxiomCheck {
                axiom: ax,
                witness: a_witness(ax, self.ids.len(), &self.rel).map(|w| self.witness_ids(w)),
            })
            .collect()
    }

    fn require(&self, axioms: &[Axiom]) -> Result<()> {
        for &ax in axioms {
            if let Some(w) = a_witness(ax, self.ids.len(), &self.rel) {
                return Err(Error::AxiomViolation {
                    axiom: ax,
                    witness: self.witness_ids(w),
                });
            }
        }
        Ok(())
    }

    /// Rebuilds the tree by quotienting leaf pairs: `xy` sits below `zu` iff
    /// `Rxzu` and `Ryzu`. Requires A1-A5; the leaves of the result are the
    /// classes of the diagonal pairs and keep their leaf names, internal
    /// classes are named after their least member pair.
    pub fn reconstruct_quotient(&self) -> Result<RootedTree> {
        Ok(self.quotient()?.tree)
    }

    pub(crate) fn quotient(&self) -> Result<Quotient> {
        self.require(&[Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5])?;
        let n = self.ids.len();
        if n == 0 {
            return Err(Error::TooSmall { need: 1, got: 0 });
        }
        let below =
            |x: usize, y: usize, p: &(usize, usize)| self.rel.get(x, p.0, p.1) && self.rel.get(y, p.0, p.1);

        // Unordered pairs (i <= j); classes of the mutual-order equivalence.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let mut class_of_pair: Vec<usize> = vec![usize::MAX; pairs.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new(); // members as pair indices
        for (pi, p) in pairs.iter().enumerate() {
            let mut found = None;
            for (ci, members) in classes.iter().enumerate() {
                let q = &pairs[members[0]];
                if below(p.0, p.1, q) && below(q.0, q.1, p) {
                    found = Some(ci);
                    break;
                }
            }
            let ci = found.unwrap_or_else(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[ci].push(pi);
            class_of_pair[pi] = ci;
        }

        // Strict order between classes via representatives.
        let cls = classes.len();
        let le = |a: usize, b: usize| {
            let p = &pairs[classes[a][0]];
            let q = &pairs[classes[b][0]];
            below(p.0, p.1, q)
        };

        // Names: diagonal classes keep the leaf name; the rest get pair names.
        let taken: BTreeSet<NodeId> = self.ids.iter().cloned().collect();
        let mut names: Vec<NodeId> = Vec::with_capacity(cls);
        let mut used = taken.clone();
        for members in &classes {
            let (i, j) = pairs[members[0]];
            let name = if i == j {
                self.ids[i].clone()
            } else {
                let f = fresh_name(format!("({} {})", self.ids[i], self.ids[j]), &used);
                used.insert(f.clone());
                f
            };
            names.push(name);
        }

        // Parent of a class: the least class strictly above it.
        let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        let mut root = None;
        for a in 0..cls {
            children.entry(names[a].clone()).or_default();
            let mut parent: Option<usize> = None;
            for b in 0..cls {
                if a != b && le(a, b) {
                    parent = match parent {
                        None => Some(b),
                        Some(p) if le(b, p) => Some(b),
                        keep => keep,
                    };
                }
            }
            match parent {
                Some(p) => children.entry(names[p].clone()).or_default().push(names[a].clone()),
                None => {
                    if root.replace(a).is_some() {
                        return Err(Error::MalformedOrder("two maximal classes".into()));
                    }
                }
            }
        }
        let root = root.ok_or_else(|| Error::MalformedOrder("no maximal class".into()))?;
        let tree = RootedTree::from_children(names[root].clone(), children)?;
        let mut pair_class = BTreeMap::new();
        for (pi, p) in pairs.iter().enumerate() {
            pair_class.insert(*p, names[class_of_pair[pi]].clone());
        }
        Ok(Quotient { tree, pair_class })
    }

    /// Depth of the join of `x` and `y` in the reconstructed tree (root at 0).
    pub fn join_depth(&self, x: &str, y: &str) -> Result<usize> {
        let q = self.quotient()?;
        let node = q.class_of(self, x, y)?;
        q.tree.depth(&node)
    }

    /// Whether the join of `x` and `y` is a child of the join of `z` and `u`.
    pub fn is_son(&self, x: &str, y: &str, z: &str, u: &str) -> Result<bool> {
        let q = self.quotient()?;
        let a = q.class_of(self, x, y)?;
        let b = q.class_of(self, z, u)?;
        Ok(q.tree.parent(&a).map_or(false, |p| *p == b))
    }

    /// Whether the join of `x` and `y` is the root.
    pub fn is_root(&self, x: &str, y: &str) -> Result<bool> {
        let q = self.quotient()?;
        let a = q.class_of(self, x, y)?;
        Ok(a == *q.tree.root())
    }
}

pub(crate) struct Quotient {
    pub tree: RootedTree,
    pair_class: BTreeMap<(usize, usize), NodeId>,
}

impl Quotient {
    pub fn class_of(&self, ls: &LeafStructure, x: &str, y: &str) -> Result<NodeId> {
        let i = ls.index_of(x).ok_or_else(|| Error::UnknownNode(x.into()))?;
        let j = ls.index_of(y).ok_or_else(|| Error::UnknownNode(y.into()))?;
        let key = (i.min(j), i.max(j));
        Ok(self.pair_class[&key].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cat3, star3};
    use crate::tree::{enumerate_leafy_trees, isomorphic, RootedTree};

    fn distinct_triples(ls: &LeafStructure) -> BTreeSet<[String; 3]> {
        ls.triples()
            .filter(|[x, y, z]| x != y && y != z && x != z)
            .map(|[x, y, z]| [x.clone(), y.clone(), z.clone()])
            .collect()
    }

    #[test]
    fn leaf_structure_examples() {
        let single = LeafStructure::of_tree(&RootedTree::leaf("x")).unwrap();
        assert!(single.contains("x", "x", "x"));
        assert_eq!(single.triples().count(), 1);

        let two = RootedTree::from_children(
            "r".into(),
            BTreeMap::from([("r".into(), vec!["x".into(), "y".into()])]),
        )
        .unwrap();
        let ls2 = LeafStructure::of_tree(&two).unwrap();
        assert!(ls2.contains("x", "x", "y"));
        assert!(ls2.contains("y", "x", "y"));
        assert!(!ls2.contains("x", "y", "y"));

        let ls = LeafStructure::of_tree(&cat3()).unwrap();
        let got = distinct_triples(&ls);
        let want: BTreeSet<[String; 3]> = [
            ["a", "b", "c"],
            ["a", "c", "b"],
            ["b", "a", "c"],
            ["b", "c", "a"],
        ]
        .map(|t| t.map(String::from))
        .into();
        assert_eq!(got, want);
    }

    #[test]
    fn axioms_pass_on_real_structures() {
        for t in [cat3(), star3()] {
            let ls = LeafStructure::of_tree(&t).unwrap();
            assert!(ls.check_axioms().iter().all(|c| c.passed()));
        }
    }

    #[test]
    fn empty_relation_fails_a1_with_witness() {
        let ls = LeafStructure::from_triples(vec!["x".into()], [], false).unwrap();
        let report = ls.check_axioms();
        let a1 = report.iter().find(|c| c.axiom == Axiom::A1).unwrap();
        assert_eq!(a1.witness, Some(vec!["x".into(), "x".into()]));
    }

    #[test]
    fn quotient_reconstruction_examples() {
        let ls = LeafStructure::of_tree(&cat3()).unwrap();
        let t = ls.reconstruct_quotient().unwrap();
        assert!(isomorphic(&t, &cat3()));

        let single = LeafStructure::from_triples(
            vec!["x".into()],
            [["x".into(), "x".into(), "x".into()]],
            false,
        )
        .unwrap();
        assert_eq!(single.reconstruct_quotient().unwrap().len(), 1);

        let two = LeafStructure::from_triples(vec!["x".into(), "y".into()], [], true).unwrap();
        let t2 = two.reconstruct_quotient().unwrap();
        assert_eq!(t2.len(), 3);
        assert_eq!(t2.leaves().count(), 2);
    }

    #[test]
    fn reconstruction_rejects_axiom_violations() {
        let bad = LeafStructure::from_triples(vec!["x".into(), "y".into()], [], false).unwrap();
        match bad.reconstruct_quotient() {
            Err(Error::AxiomViolation { axiom, .. }) => assert_eq!(axiom, Axiom::A1),
            other => panic!("expected an axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn depth_son_root_examples() {
        let ls = LeafStructure::of_tree(&cat3()).unwrap();
        assert_eq!(ls.join_depth("a", "b").unwrap(), 1);
        assert_eq!(ls.join_depth("a", "c").unwrap(), 0);
        assert!(ls.is_son("a", "b", "a", "c").unwrap());
        assert!(!ls.is_son("a", "c", "a", "b").unwrap());
        for (x, y) in [("a", "b"), ("a", "c"), ("b", "c")] {
            assert_eq!(ls.is_root(x, y).unwrap(), ls.join_depth(x, y).unwrap() == 0);
        }
    }

    #[test]
    fn round_trip_small_enumeration() {
        let labels: BTreeSet<NodeId> = ["a", "b", "c", "d"].map(String::from).into();
        for t in enumerate_leafy_trees(&labels) {
            let ls = LeafStructure::of_tree(&t).unwrap();
            assert!(ls.check_axioms().iter().all(|c| c.passed()));
            assert!(isomorphic(&ls.reconstruct_quotient().unwrap(), &t));
        }
    }
}
