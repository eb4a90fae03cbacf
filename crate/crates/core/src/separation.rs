//! The 4-ary separation relation on the leaves of a quasi-tree: `Sxyzu` holds
//! when the intervals `[x,y]` and `[z,u]` are disjoint, `Exyzu` (derived) when
//! they meet in exactly one node. Provides the S1-S5 axiom suite and two
//! independent reconstructions of the quasi-tree from `(L, S)`.

use crate::axioms::{e_from_s, s_witness, Axiom};
use crate::bits::{Rel3, Rel4};
use crate::error::{Error, Result};
use crate::leaf_structure::LeafStructure;
use crate::quasitree::{BMode, QuasiTree};
use crate::tree::{fresh_name, NodeId};
use std::collections::{BTreeMap, BTreeSet};

/// Separation tuples are stored closed under their symmetry group: both pairs
/// may be flipped and the pairs swapped, eight images per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationStructure {
    ids: Vec<NodeId>,
    tuples: BTreeSet<[usize; 4]>,
}

impl SeparationStructure {
    pub fn from_generators<I>(leaves: Vec<NodeId>, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = [NodeId; 4]>,
    {
        let mut ids = leaves;
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].clone()));
            }
        }
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut set = BTreeSet::new();
        for [x, y, z, u] in tuples {
            let find = |id: &NodeId| pos.get(id).copied().ok_or_else(|| Error::UnknownNode(id.clone()));
            let (i, j, k, l) = (find(&x)?, find(&y)?, find(&z)?, find(&u)?);
            for t in [
                [i, j, k, l],
                [j, i, k, l],
                [i, j, l, k],
                [j, i, l, k],
                [k, l, i, j],
                [l, k, i, j],
                [k, l, j, i],
                [l, k, j, i],
            ] {
                set.insert(t);
            }
        }
        Ok(SeparationStructure { ids, tuples: set })
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

    fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|p| p.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_string()))
    }

    /// `Sxyzu`: the pairs `{x,y}` and `{z,u}` are separated.
    pub fn sep(&self, x: &str, y: &str, z: &str, u: &str) -> bool {
        match (self.index_of(x), self.index_of(y), self.index_of(z), self.index_of(u)) {
            (Ok(i), Ok(j), Ok(k), Ok(l)) => self.tuples.contains(&[i, j, k, l]),
            _ => false,
        }
    }

    /// `Exyzu`, derived: pairwise distinct and no pairing separates.
    pub fn e(&self, x: &str, y: &str, z: &str, u: &str) -> bool {
        let distinct = x != y && x != z && x != u && y != z && y != u && z != u;
        distinct
            && self.index_of(x).is_ok()
            && self.index_of(y).is_ok()
            && self.index_of(z).is_ok()
            && self.index_of(u).is_ok()
            && !self.sep(x, y, z, u)
            && !self.sep(x, z, y, u)
            && !self.sep(x, u, y, z)
    }

    pub fn tuples(&self) -> impl Iterator<Item = [&NodeId; 4]> {
        self.tuples
            .iter()
            .map(move |&[i, j, k, l]| [&self.ids[i], &self.ids[j], &self.ids[k], &self.ids[l]])
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples.len()
    }

    pub(crate) fn rel4(&self) -> Rel4 {
        let mut rel = Rel4::new(self.ids.len());
        for &[i, j, k, l] in &self.tuples {
            rel.set(i, j, k, l);
        }
        rel
    }

    pub(crate) fn from_parts(ids: Vec<NodeId>, tuples: BTreeSet<[usize; 4]>) -> Self {
        SeparationStructure { ids, tuples }
    }

    /// Restriction to a subset of the leaves.
    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> Result<SeparationStructure> {
        let mut idx = Vec::new();
        for id in keep {
            idx.push(self.index_of(id)?);
        }
        let back: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let tuples = self
            .tuples
            .iter()
            .filter_map(|&[i, j, k, l]| {
                Some([*back.get(&i)?, *back.get(&j)?, *back.get(&k)?, *back.get(&l)?])
            })
            .collect();
        Ok(SeparationStructure {
            ids: idx.iter().map(|&i| self.ids[i].clone()).collect(),
            tuples,
        })
    }

    /// Evaluates S1..S5 plus the two derived forms S'4 and S''4 (reported
    /// under S4's name would lose information, so they get their own rows).
    pub fn check_axioms(&self) -> Vec<SeparationCheck> {
        let n = self.ids.len();
        let rel = self.rel4();
        let mut out: Vec<SeparationCheck> = Axiom::ALL_S
            .iter()
            .map(|&ax| SeparationCheck {
                name: ax.to_string(),
                witness: s_witness(ax, n, &rel)
                    .map(|w| w.into_iter().map(|i| self.ids[i].clone()).collect()),
            })
            .collect();
        out.push(SeparationCheck {
            name: "S'4".into(),
            witness: self.sprime4_witness(&rel),
        });
        out.push(SeparationCheck {
            name: "S''4".into(),
            witness: self.sdouble4_witness(&rel),
        });
        out
    }

    fn sprime4_witness(&self, rel: &Rel4) -> Option<Vec<NodeId>> {
        let n = self.ids.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for u in 0..n {
                        let distinct = x != y && x != z && x != u && y != z && y != u && z != u;
                        let rhs = distinct
                            && !rel.get(x, y, z, u)
                            && !rel.get(x, z, y, u)
                            && !rel.get(x, u, y, z);
                        if e_from_s(rel, x, y, z, u) != rhs {
                            return Some(vec![
                                self.ids[x].clone(),
                                self.ids[y].clone(),
                                self.ids[z].clone(),
                                self.ids[u].clone(),
                            ]);
                        }
                    }
                }
            }
        }
        None
    }

    fn sdouble4_witness(&self, rel: &Rel4) -> Option<Vec<NodeId>> {
        let n = self.ids.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for u in 0..n {
                        if !rel.get(x, y, z, u) {
                            continue;
                        }
                        let distinct = x != y && x != z && x != u && y != z && y != u && z != u;
                        if !distinct || rel.get(x, z, y, u) || rel.get(x, u, y, z) {
                            return Some(vec![
                                self.ids[x].clone(),
                                self.ids[y].clone(),
                                self.ids[z].clone(),
                                self.ids[u].clone(),
                            ]);
                        }
                    }
                }
            }
        }
        None
    }

    fn require(&self, axioms: &[Axiom]) -> Result<()> {
        let rel = self.rel4();
        for &ax in axioms {
            if let Some(w) = s_witness(ax, self.ids.len(), &rel) {
                return Err(Error::AxiomViolation {
                    axiom: ax,
                    witness: w.into_iter().map(|i| self.ids[i].clone()).collect(),
                });
            }
        }
        Ok(())
    }

    /// `S A B`: every pair from `A` is separated from every pair from `B`.
    pub fn set_separation(&self, a: &BTreeSet<NodeId>, b: &BTreeSet<NodeId>) -> Result<bool> {
        if a.len() < 2 || b.len() < 2 {
            return Err(Error::TooSmall {
                need: 2,
                got: a.len().min(b.len()),
            });
        }
        if !a.is_disjoint(b) {
            return Err(Error::LeafMismatch("separated sets must be disjoint".into()));
        }
        let av: Vec<usize> = a.iter().map(|x| self.index_of(x)).collect::<Result<_>>()?;
        let bv: Vec<usize> = b.iter().map(|x| self.index_of(x)).collect::<Result<_>>()?;
        for (ai, &x) in av.iter().enumerate() {
            for &y in &av[ai + 1..] {
                for (bi, &z) in bv.iter().enumerate() {
                    for &u in &bv[bi + 1..] {
                        if !self.tuples.contains(&[x, y, z, u]) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// `E A`: every four distinct leaves of `A` are E-related.
    pub fn set_e(&self, a: &BTreeSet<NodeId>) -> Result<bool> {
        if a.len() < 4 {
            return Err(Error::TooSmall { need: 4, got: a.len() });
        }
        let av: Vec<&NodeId> = a.iter().collect();
        for i in 0..av.len() {
            for j in i + 1..av.len() {
                for k in j + 1..av.len() {
                    for l in k + 1..av.len() {
                        if !self.e(av[i], av[j], av[k], av[l]) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// One row of a separation axiom report; S'4 and S''4 are named checks rather
/// than `Axiom` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCheck {
    pub name: String,
    pub witness: Option<Vec<NodeId>>,
}

impl SeparationCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Classifies every four distinct leaves of a quasi-tree by how the intervals
/// of their three pairings intersect: one empty pairing yields a separation
/// tuple, three singleton intersections yield the derived E case.
pub fn separation_structure(q: &QuasiTree) -> Result<SeparationStructure> {
    for c in q.check_b_axioms(BMode::Full).iter().take(7) {
        if let Some(w) = &c.witness {
            return Err(Error::AxiomViolation {
                axiom: c.axiom,
                witness: w.clone(),
            });
        }
    }
    let leaves: Vec<NodeId> = q.leaves();
    let m = leaves.len();
    let mut intervals: BTreeMap<(usize, usize), BTreeSet<NodeId>> = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            intervals.insert((i, j), q.interval(&leaves[i], &leaves[j])?);
        }
    }
    let iv = |i: usize, j: usize, map: &BTreeMap<(usize, usize), BTreeSet<NodeId>>| {
        map[&(i.min(j), i.max(j))].clone()
    };
    let mut gens: Vec<[NodeId; 4]> = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            for z in y + 1..m {
                for u in z + 1..m {
                    let pairings = [
                        ((x, y), (z, u)),
                        ((x, z), (y, u)),
                        ((x, u), (y, z)),
                    ];
                    let sizes: Vec<usize> = pairings
                        .iter()
                        .map(|&((a, b), (c, d))| {
                            iv(a, b, &intervals).intersection(&iv(c, d, &intervals)).count()
                        })
                        .collect();
                    let zeroes = sizes.iter().filter(|&&s| s == 0).count();
                    if zeroes == 1 {
                        let pos = sizes.iter().position(|&s| s == 0).unwrap();
                        let ((a, b), (c, d)) = pairings[pos];
                        gens.push([
                            leaves[a].clone(),
                            leaves[b].clone(),
                            leaves[c].clone(),
                            leaves[d].clone(),
                        ]);
                    } else if !(zeroes == 0 && sizes.iter().all(|&s| s == 1)) {
                        return Err(Error::NotAQuasiTree(format!(
                            "interval pattern {sizes:?} at ({}, {}, {}, {})",
                            leaves[x], leaves[y], leaves[z], leaves[u]
                        )));
                    }
                }
            }
        }
    }
    SeparationStructure::from_generators(leaves, gens)
}

pub fn same_separation(a: &SeparationStructure, b: &SeparationStructure) -> bool {
    a.leaves() == b.leaves()
        && a.tuples().collect::<BTreeSet<_>>() == b.tuples().collect::<BTreeSet<_>>()
}

/// Triples over the leaf index space: the three components are pairwise
/// distinct (an internal-node description) or all equal (a leaf).
fn distinct_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// Two median descriptions name the same node exactly when no pair from one
/// is separated from a pair of the other.
fn merged(s: &Rel4, m: &[usize; 3], p: &[usize; 3]) -> bool {
    let pairs = |t: &[usize; 3]| [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]];
    for [a, b] in pairs(m) {
        for [c, d] in pairs(p) {
            if a != c && a != d && b != c && b != d && s.get(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

struct TripleClasses {
    /// Class id per unordered distinct triple, indexed as in `distinct_triples`.
    class_of: Vec<usize>,
    /// Members (triple indices) per class.
    members: Vec<Vec<usize>>,
}

fn classify_triples(n: usize, s: &Rel4, triples: &[[usize; 3]]) -> Result<TripleClasses> {
    let _ = n;
    let t = triples.len();
    // Classes are the connected components of the merge relation; the merge
    // relation must be transitive to quotient by it (the EQ check), i.e.
    // every component must be a clique.
    let mut class_of = vec![usize::MAX; t];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..t {
        if class_of[start] != usize::MAX {
            continue;
        }
        let ci = members.len();
        let mut component = vec![start];
        class_of[start] = ci;
        let mut cursor = 0;
        while cursor < component.len() {
            let a = component[cursor];
            cursor += 1;
            for b in 0..t {
                if class_of[b] == usize::MAX && merged(s, &triples[a], &triples[b]) {
                    class_of[b] = ci;
                    component.push(b);
                }
            }
        }
        members.push(component);
    }
    for mem in &members {
        for (ai, &a) in mem.iter().enumerate() {
            for &b in &mem[ai + 1..] {
                if !merged(s, &triples[a], &triples[b]) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Eq,
                        witness: triples[a]
                            .iter()
                            .chain(triples[b].iter())
                            .map(|i| i.to_string())
                            .collect(),
                    });
                }
            }
        }
    }
    Ok(TripleClasses { class_of, members })
}

/// Rebuilds the leafy quasi-tree from a separation structure by quotienting
/// median descriptions. The result is verified: it must satisfy B1-B7, be
/// leafy, and have exactly the given separation relation; any failure means
/// the input was not the separation structure of a leafy quasi-tree.
pub fn reconstruct_c54(ss: &SeparationStructure) -> Result<QuasiTree> {
    let n = ss.len();
    if n == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    ss.require(&[Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4])?;
    let s = ss.rel4();
    let triples = distinct_triples(n);
    let classes = classify_triples(n, &s, &triples)?;
    let cls = classes.members.len();

    // Index map for ordered distinct triples -> class id.
    let mut cls_of = vec![usize::MAX; n * n * n];
    for (ti, t) in triples.iter().enumerate() {
        let perms = [
            [t[0], t[1], t[2]],
            [t[0], t[2], t[1]],
            [t[1], t[0], t[2]],
            [t[1], t[2], t[0]],
            [t[2], t[0], t[1]],
            [t[2], t[1], t[0]],
        ];
        for p in perms {
            cls_of[(p[0] * n + p[1]) * n + p[2]] = classes.class_of[ti];
        }
    }
    let class_at = |a: usize, b: usize, c: usize| -> Option<usize> {
        if a == b || b == c || a == c {
            None
        } else {
            Some(cls_of[(a * n + b) * n + c])
        }
    };

    // Betweenness over the combined index space: leaves 0..n, classes n..n+cls.
    let total = n + cls;
    let mut rel = Rel3::new(total);
    // A leaf between two leaves never happens; a class between two leaves:
    // the class of any description (x, z, y).
    for x in 0..n {
        for z in 0..n {
            for y in 0..n {
                if let Some(c) = class_at(x, z, y) {
                    rel.set(x, n + c, y);
                }
            }
        }
    }
    // A class between a leaf and another class: successive medians along a
    // separated quadruple.
    for x in 0..n {
        for u in 0..n {
            for v in 0..n {
                let Some(m) = class_at(x, u, v) else { continue };
                for w in 0..n {
                    let Some(p) = class_at(x, v, w) else { continue };
                    if m != p && s.get(x, u, v, w) {
                        rel.set(x, n + m, n + p);
                        rel.set(n + p, n + m, x);
                    }
                }
            }
        }
    }
    // A class between two classes: witnessed from some leaf. Only reads
    // leaf-to-class entries, so writing class triples as we go is safe.
    for a in 0..cls {
        for b in 0..cls {
            for c in 0..cls {
                if a == b || b == c || a == c {
                    continue;
                }
                let witnessed = (0..n).any(|x| {
                    rel.get(x, n + a, n + b) && rel.get(x, n + b, n + c) && rel.get(x, n + a, n + c)
                });
                if witnessed {
                    rel.set(n + a, n + b, n + c);
                    rel.set(n + c, n + b, n + a);
                }
            }
        }
    }

    // Semantic validity: the construction decides whether the input really is
    // a separation structure. All checks run on the dense relation.
    for &ax in Axiom::ALL_B[..7].iter() {
        if let Some(w) = crate::axioms::b_witness(ax, total, &rel) {
            return Err(Error::InvalidSeparation(format!(
                "reconstruction violates {ax} at {w:?}"
            )));
        }
    }
    // Leafy: every class is the median of three leaves.
    for c in 0..cls {
        let mut witnessed = false;
        'leafy: for a in 0..n {
            for b in a + 1..n {
                for d in b + 1..n {
                    if rel.get(a, n + c, b) && rel.get(b, n + c, d) && rel.get(a, n + c, d) {
                        witnessed = true;
                        break 'leafy;
                    }
                }
            }
        }
        if !witnessed {
            return Err(Error::InvalidSeparation("reconstruction is not leafy".into()));
        }
    }
    // No leaf may have become internal.
    for [_, mid, _] in rel.iter() {
        if mid < n {
            return Err(Error::InvalidSeparation(format!(
                "leaf `{}` is internal in the reconstruction",
                ss.leaves()[mid]
            )));
        }
    }
    // The reconstruction must carry exactly the given separation relation:
    // classify every leaf quadruple by interval-intersection bitmasks.
    let words = (total + 63) / 64;
    let mut intervals = vec![vec![0u64; words]; n * n];
    for i in 0..n {
        for j in 0..n {
            let mask = &mut intervals[i * n + j];
            mask[i >> 6] |= 1 << (i & 63);
            mask[j >> 6] |= 1 << (j & 63);
            for w in 0..total {
                if rel.get(i, w, j) {
                    mask[w >> 6] |= 1 << (w & 63);
                }
            }
        }
    }
    let meet = |a: usize, b: usize, c: usize, d: usize| -> usize {
        let (p, q) = (&intervals[a * n + b], &intervals[c * n + d]);
        (0..words).map(|w| (p[w] & q[w]).count_ones() as usize).sum()
    };
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                for u in z + 1..n {
                    let sizes = [meet(x, y, z, u), meet(x, z, y, u), meet(x, u, y, z)];
                    let stored = [s.get(x, y, z, u), s.get(x, z, y, u), s.get(x, u, y, z)];
                    let consistent = (0..3).all(|p| stored[p] == (sizes[p] == 0))
                        && (sizes.iter().any(|&v| v == 0) || sizes.iter().all(|&v| v == 1));
                    if !consistent {
                        return Err(Error::InvalidSeparation(format!(
                            "reconstruction disagrees with the input at ({}, {}, {}, {})",
                            ss.leaves()[x],
                            ss.leaves()[y],
                            ss.leaves()[z],
                            ss.leaves()[u]
                        )));
                    }
                }
            }
        }
    }

    // Names: leaves keep theirs, classes get their least description.
    let taken: BTreeSet<NodeId> = ss.leaves().iter().cloned().collect();
    let mut used = taken.clone();
    let mut names: Vec<NodeId> = Vec::with_capacity(total);
    names.extend(ss.leaves().iter().cloned());
    for mem in &classes.members {
        let t = &triples[mem[0]];
        let base = format!(
            "({} {} {})",
            ss.leaves()[t[0]],
            ss.leaves()[t[1]],
            ss.leaves()[t[2]]
        );
        let f = fresh_name(base, &used);
        used.insert(f.clone());
        names.push(f);
    }
    Ok(QuasiTree::from_dense(names, &rel))
}

/// Independent reconstruction through a rooted join-tree: fix the least leaf
/// `r`, read off the ternary leaf relation of the tree rooted there from the
/// separation relation, rebuild that join-tree, re-attach `r` and unroot.
pub fn reconstruct_via_rooting(ss: &SeparationStructure) -> Result<QuasiTree> {
    let n = ss.len();
    if n < 2 {
        return Err(Error::TooSmall { need: 2, got: n });
    }
    if n == 2 {
        return Ok(QuasiTree::new(ss.leaves().to_vec(), [])?);
    }
    ss.require(&[Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4])?;
    let s = ss.rel4();
    let root_leaf = ss.leaves()[0].clone();
    let rest: Vec<NodeId> = ss.leaves()[1..].to_vec();
    let r = 0usize;
    let m = rest.len();
    let mut rel = Rel3::new(m);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let (x, y, z) = (a + 1, b + 1, c + 1);
                let holds = if a == b || a == c {
                    true
                } else if b == c {
                    false
                } else {
                    e_from_s(&s, x, y, z, r) || s.get(x, y, z, r) || s.get(x, z, y, r)
                };
                if holds {
                    rel.set(a, b, c);
                }
            }
        }
    }
    let ls = LeafStructure::from_parts(rest, rel);
    let inner = ls.reconstruct_quotient()?;
    let inner = if inner.contains(&root_leaf) {
        let taken: BTreeSet<NodeId> = inner.nodes().cloned().collect();
        inner.rename(&root_leaf.clone(), &fresh_name(format!("{root_leaf}*"), &taken))?
    } else {
        inner
    };
    let mut children: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for u in inner.nodes() {
        children.insert(u.clone(), inner.children(u)?.to_vec());
    }
    children.insert(root_leaf.clone(), vec![inner.root().clone()]);
    let rooted = crate::tree::RootedTree::from_children(root_leaf, children)?;
    let q = crate::quasitree::unroot(&rooted)?;
    let back = separation_structure(&q)?;
    if !same_separation(&back, ss) {
        return Err(Error::InvalidSeparation(
            "rooting reconstruction has a different separation relation".into(),
        ));
    }
    Ok(q)
}

/// Whether the separation relation induced on a leaf subset equals the
/// separation relation of the leafy closure on that subset.
pub fn heredity_check(q: &QuasiTree, xs: &BTreeSet<NodeId>) -> Result<bool> {
    let full = separation_structure(q)?;
    let lhs = full.induced(xs)?;
    let rhs = separation_structure(&q.leafy_closure(xs)?)?;
    Ok(same_separation(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::qt5;
    use crate::quasitree::quasitrees_isomorphic;

    fn qt5_sep() -> SeparationStructure {
        separation_structure(&qt5().betweenness()).unwrap()
    }

    #[test]
    fn qt5_relation_examples() {
        let ss = qt5_sep();
        assert!(ss.sep("x", "y", "u", "v"));
        assert!(ss.sep("x", "z", "u", "v"));
        assert!(ss.e("x", "y", "z", "u"));
        assert!(!ss.e("y", "z", "u", "v"));
        assert!(ss.sep("y", "z", "u", "v"));
    }

    #[test]
    fn degenerate_relations() {
        // Three leaves: empty relation.
        let star = crate::quasitree::UnrootedTree::from_edges(
            ["c", "p", "q", "r"].map(String::from).to_vec(),
            &[
                ("c".into(), "p".into()),
                ("c".into(), "q".into()),
                ("c".into(), "r".into()),
            ],
        )
        .unwrap();
        assert_eq!(separation_structure(&star.betweenness()).unwrap().tuple_count(), 0);

        // Four-leaf star: S empty, E total.
        let star4 = crate::quasitree::UnrootedTree::from_edges(
            ["c", "p", "q", "r", "s"].map(String::from).to_vec(),
            &[
                ("c".into(), "p".into()),
                ("c".into(), "q".into()),
                ("c".into(), "r".into()),
                ("c".into(), "s".into()),
            ],
        )
        .unwrap();
        let ss = separation_structure(&star4.betweenness()).unwrap();
        assert_eq!(ss.tuple_count(), 0);
        assert!(ss.e("p", "q", "r", "s"));
        let all: BTreeSet<NodeId> = ["p", "q", "r", "s"].map(String::from).into();
        assert!(ss.set_e(&all).unwrap());
    }

    #[test]
    fn axiom_suite_on_qt5() {
        let report = qt5_sep().check_axioms();
        assert!(report.iter().all(|c| c.passed()), "{report:?}");
    }

    #[test]
    fn sdouble4_detects_conflicts() {
        let ss = SeparationStructure::from_generators(
            ["a", "b", "c", "d"].map(String::from).to_vec(),
            [
                ["a", "b", "c", "d"].map(String::from),
                ["a", "c", "b", "d"].map(String::from),
            ],
        )
        .unwrap();
        let report = ss.check_axioms();
        assert!(!report.iter().find(|c| c.name == "S''4").unwrap().passed());
        assert!(!report.iter().find(|c| c.name == "S4").unwrap().passed());
    }

    #[test]
    fn set_separation_examples() {
        let ss = qt5_sep();
        let set = |v: &[&str]| -> BTreeSet<NodeId> { v.iter().map(|s| s.to_string()).collect() };
        assert!(ss.set_separation(&set(&["x", "y"]), &set(&["u", "v"])).unwrap());
        assert!(ss.set_separation(&set(&["y", "z"]), &set(&["u", "v"])).unwrap());
        assert!(!ss.set_separation(&set(&["x", "y"]), &set(&["z", "u"])).unwrap());
        assert!(ss.set_separation(&set(&["x"]), &set(&["u", "v"])).is_err());
    }

    #[test]
    fn c54_rebuilds_qt5() {
        let q = reconstruct_c54(&qt5_sep()).unwrap();
        assert!(quasitrees_isomorphic(&q, &qt5().betweenness()).unwrap());
        assert_eq!(q.internal().len(), 2);
    }

    #[test]
    fn c54_three_leaves_is_a_star() {
        let ss = SeparationStructure::from_generators(["p", "q", "r"].map(String::from).to_vec(), []).unwrap();
        let q = reconstruct_c54(&ss).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.internal().len(), 1);
    }

    #[test]
    fn c54_rejects_garbage() {
        // A lone separation tuple on four leaves cannot come from a tree:
        // its own reconstruction disagrees.
        let ss = SeparationStructure::from_generators(
            ["a", "b", "c", "d", "e"].map(String::from).to_vec(),
            [["a", "b", "c", "d"].map(String::from)],
        )
        .unwrap();
        assert!(reconstruct_c54(&ss).is_err());
    }

    #[test]
    fn rooting_agrees_with_c54() {
        let ss = qt5_sep();
        let a = reconstruct_c54(&ss).unwrap();
        let b = reconstruct_via_rooting(&ss).unwrap();
        assert!(quasitrees_isomorphic(&a, &b).unwrap());

        let star4 = SeparationStructure::from_generators(
            ["p", "q", "r", "s"].map(String::from).to_vec(),
            [],
        )
        .unwrap();
        let a = reconstruct_c54(&star4).unwrap();
        let b = reconstruct_via_rooting(&star4).unwrap();
        assert!(quasitrees_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn heredity_on_qt5() {
        let q = qt5().betweenness();
        let set = |v: &[&str]| -> BTreeSet<NodeId> { v.iter().map(|s| s.to_string()).collect() };
        assert!(heredity_check(&q, &set(&["x", "y", "u", "v"])).unwrap());
        assert!(heredity_check(&q, &set(&["x", "y"])).unwrap());
        assert!(heredity_check(&q, &set(&["x", "y", "z"])).unwrap());
    }
}
