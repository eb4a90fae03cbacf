//! Exhaustive finite-model search over small domains: finds structures that
//! satisfy one set of named axioms while violating another, verifies bounded
//! implications, and builds the real-interval counterexample structure.
//!
//! Searches require the structural closure axioms of their family among the
//! satisfied set (A1-A3 for leaf relations, B1-B2 for betweenness, S1-S2 for
//! separation); the remaining choices are enumerated as bitmasks over the
//! free tuple orbits, pruned modulo domain permutations.

use crate::axioms::{a_witness, b_witness, s_witness, Axiom, AxiomCheck, Family};
use crate::bits::{Rel3, Rel4};
use crate::error::{Error, Result};
use crate::leaf_structure::LeafStructure;
use crate::quasitree::QuasiTree;
use crate::separation::SeparationStructure;
use crate::tree::NodeId;
use std::collections::BTreeSet;

/// A structure found by the search, in the representation of its family.
#[derive(Debug, Clone)]
pub enum FoundModel {
    LeafRelation(LeafStructure),
    Betweenness(QuasiTree),
    Separation(SeparationStructure),
}

#[derive(Debug, Clone)]
pub struct Countermodel {
    pub domain_size: usize,
    pub model: FoundModel,
    pub report: Vec<AxiomCheck>,
}

#[derive(Debug, Clone)]
pub enum ImplicationOutcome {
    /// No countermodel exists up to the stated domain size (exhaustive modulo
    /// isomorphism); says nothing beyond the bound.
    VerifiedUpTo(usize),
    Countermodel(Countermodel),
}

fn domain_ids(n: usize) -> Vec<NodeId> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}

fn search_family(axioms: &BTreeSet<Axiom>, violate: Axiom) -> Result<Family> {
    let fam = violate.family();
    if violate == Axiom::Eq {
        return Err(Error::MixedAxiomFamilies(Axiom::Eq, violate));
    }
    for ax in axioms {
        if ax.family() != fam || *ax == Axiom::Eq {
            return Err(Error::MixedAxiomFamilies(*ax, violate));
        }
    }
    Ok(fam)
}

/// Free slots for the leaf-relation family: triples with pairwise distinct
/// entries, up to swapping the last two components.
fn a_slots(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if x != y && x != z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

fn a_materialize(n: usize, slots: &[[usize; 3]], mask: u64) -> Rel3 {
    let mut rel = Rel3::new(n);
    for x in 0..n {
        for y in 0..n {
            rel.set(x, x, y);
            rel.set(x, y, x);
        }
    }
    for (i, &[x, y, z]) in slots.iter().enumerate() {
        if mask & (1 << i) != 0 {
            rel.set(x, y, z);
            rel.set(x, z, y);
        }
    }
    rel
}

/// Free slots for betweenness: distinct triples up to reversal, stored as
/// `[x, y, z]` with `x < z`, in lexicographic order.
fn b_slots(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in x + 1..n {
                if y != x && y != z {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}

fn b_materialize(n: usize, slots: &[[usize; 3]], mask: u64) -> Rel3 {
    let mut rel = Rel3::new(n);
    for (i, &[x, y, z]) in slots.iter().enumerate() {
        if mask & (1 << i) != 0 {
            rel.set(x, y, z);
            rel.set(z, y, x);
        }
    }
    rel
}

/// Free slots for separation: distinct quadruples up to the pair symmetries.
fn s_slots(n: usize) -> Vec<[usize; 4]> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    let distinct = x != y && x != z && x != u && y != z && y != u && z != u;
                    if !distinct {
                        continue;
                    }
                    let canon = [
                        [x, y, z, u],
                        [y, x, z, u],
                        [x, y, u, z],
                        [y, x, u, z],
                        [z, u, x, y],
                        [u, z, x, y],
                        [z, u, y, x],
                        [u, z, y, x],
                    ]
                    .into_iter()
                    .min()
                    .unwrap();
                    if seen.insert(canon) {
                        out.push(canon);
                    }
                }
            }
        }
    }
    out
}

fn s_materialize(n: usize, slots: &[[usize; 4]], mask: u64) -> Rel4 {
    let mut rel = Rel4::new(n);
    for (i, &[x, y, z, u]) in slots.iter().enumerate() {
        if mask & (1 << i) != 0 {
            rel.set_sym(x, y, z, u);
        }
    }
    rel
}

/// Keep only masks that are lexicographically least in their orbit under
/// domain permutations.
fn is_canonical<T, F>(mask: u64, slots: &[T], perms: &[Vec<usize>], permute_slot: F) -> bool
where
    F: Fn(&T, &[usize]) -> usize,
{
    for perm in perms {
        let mut image = 0u64;
        for (i, slot) in slots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                image |= 1 << permute_slot(slot, perm);
            }
        }
        if image < mask {
            return false;
        }
    }
    true
}

/// Above this many free slots the permutation-canonicity filter costs more
/// than it saves; scans stay exhaustive but unpruned (slow when no model
/// exists, quick to first hit otherwise).
const PRUNE_SLOTS: usize = 26;
const MAX_SLOTS: usize = 30;

fn require_closure(satisfy: &BTreeSet<Axiom>, needed: &[Axiom], label: &'static str) -> Result<()> {
    for ax in needed {
        if !satisfy.contains(ax) {
            return Err(Error::MissingClosureAxiom(label));
        }
    }
    Ok(())
}

/// Searches domain `0..domain_size` exhaustively (modulo isomorphism) for a
/// structure satisfying every axiom of `satisfy` and violating `violate`.
pub fn find_countermodel(
    domain_size: usize,
    satisfy: &BTreeSet<Axiom>,
    violate: Axiom,
) -> Result<Option<Countermodel>> {
    let family = search_family(satisfy, violate)?;
    let n = domain_size;
    let ids = domain_ids(n);
    let perms = permutations(n);
    match family {
        Family::LeafTernary => {
            require_closure(satisfy, &[Axiom::A1, Axiom::A2, Axiom::A3], "A1-A3")?;
            let slots = a_slots(n);
            if slots.len() > MAX_SLOTS {
                return Err(Error::BoundExceeded {
                    what: "leaf-relation search slots",
                    need: slots.len(),
                    limit: MAX_SLOTS,
                });
            }
            let slot_index = |s: &[usize; 3], p: &[usize]| -> usize {
                let [x, y, z] = *s;
                let (py, pz) = (p[y].min(p[z]), p[y].max(p[z]));
                slots.binary_search(&[p[x], py, pz]).unwrap()
            };
            let prune = slots.len() <= PRUNE_SLOTS;
            for mask in 0..(1u64 << slots.len()) {
                if prune && !is_canonical(mask, &slots, &perms, slot_index) {
                    continue;
                }
                let rel = a_materialize(n, &slots, mask);
                if satisfy.iter().any(|&ax| a_witness(ax, n, &rel).is_some()) {
                    continue;
                }
                if a_witness(violate, n, &rel).is_none() {
                    continue;
                }
                let ls = LeafStructure::from_parts(ids.clone(), rel);
                let report = ls.check_axioms();
                return Ok(Some(Countermodel {
                    domain_size: n,
                    model: FoundModel::LeafRelation(ls),
                    report,
                }));
            }
            Ok(None)
        }
        Family::Betweenness => {
            require_closure(satisfy, &[Axiom::B1, Axiom::B2], "B1-B2")?;
            let slots = b_slots(n);
            if slots.len() > MAX_SLOTS {
                return Err(Error::BoundExceeded {
                    what: "betweenness search slots",
                    need: slots.len(),
                    limit: MAX_SLOTS,
                });
            }
            let slot_index = |s: &[usize; 3], p: &[usize]| -> usize {
                let [x, y, z] = *s;
                let (px, pz) = (p[x].min(p[z]), p[x].max(p[z]));
                slots.binary_search(&[px, p[y], pz]).unwrap()
            };
            let prune = slots.len() <= PRUNE_SLOTS;
            for mask in 0..(1u64 << slots.len()) {
                if prune && !is_canonical(mask, &slots, &perms, slot_index) {
                    continue;
                }
                let rel = b_materialize(n, &slots, mask);
                if satisfy.iter().any(|&ax| b_witness(ax, n, &rel).is_some()) {
                    continue;
                }
                if b_witness(violate, n, &rel).is_none() {
                    continue;
                }
                let triples: Vec<[NodeId; 3]> = rel
                    .iter()
                    .map(|[i, j, k]| [ids[i].clone(), ids[j].clone(), ids[k].clone()])
                    .collect();
                let q = QuasiTree::new(ids.clone(), triples)?;
                let report = q.check_b_axioms(crate::quasitree::BMode::Full);
                return Ok(Some(Countermodel {
                    domain_size: n,
                    model: FoundModel::Betweenness(q),
                    report,
                }));
            }
            Ok(None)
        }
        Family::Separation => {
            require_closure(satisfy, &[Axiom::S1, Axiom::S2], "S1-S2")?;
            let slots = s_slots(n);
            if slots.len() > MAX_SLOTS {
                return Err(Error::BoundExceeded {
                    what: "separation search slots",
                    need: slots.len(),
                    limit: MAX_SLOTS,
                });
            }
            let slot_index = |s: &[usize; 4], p: &[usize]| -> usize {
                let [x, y, z, u] = *s;
                let canon = [
                    [p[x], p[y], p[z], p[u]],
                    [p[y], p[x], p[z], p[u]],
                    [p[x], p[y], p[u], p[z]],
                    [p[y], p[x], p[u], p[z]],
                    [p[z], p[u], p[x], p[y]],
                    [p[u], p[z], p[x], p[y]],
                    [p[z], p[u], p[y], p[x]],
                    [p[u], p[z], p[y], p[x]],
                ]
                .into_iter()
                .min()
                .unwrap();
                slots.binary_search(&canon).unwrap()
            };
            let prune = slots.len() <= PRUNE_SLOTS;
            for mask in 0..(1u64 << slots.len()) {
                if prune && !is_canonical(mask, &slots, &perms, slot_index) {
                    continue;
                }
                let rel = s_materialize(n, &slots, mask);
                if satisfy.iter().any(|&ax| s_witness(ax, n, &rel).is_some()) {
                    continue;
                }
                if s_witness(violate, n, &rel).is_none() {
                    continue;
                }
                let tuples: BTreeSet<[usize; 4]> = slots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .flat_map(|(_, &[x, y, z, u])| {
                        [
                            [x, y, z, u],
                            [y, x, z, u],
                            [x, y, u, z],
                            [y, x, u, z],
                            [z, u, x, y],
                            [u, z, x, y],
                            [z, u, y, x],
                            [u, z, y, x],
                        ]
                    })
                    .collect();
                let ss = SeparationStructure::from_parts(ids.clone(), tuples);
                let report: Vec<AxiomCheck> = ss
                    .check_axioms()
                    .into_iter()
                    .filter_map(|c| {
                        c.name.parse::<Axiom>().ok().map(|axiom| AxiomCheck {
                            axiom,
                            witness: c.witness.map(|w| w.into_iter().collect()),
                        })
                    })
                    .collect();
                return Ok(Some(Countermodel {
                    domain_size: n,
                    model: FoundModel::Separation(ss),
                    report,
                }));
            }
            Ok(None)
        }
    }
}

/// Looks for a countermodel at every domain size up to the bound; exhaustion
/// without a hit verifies the implication up to that bound only.
pub fn verify_implication(
    satisfy: &BTreeSet<Axiom>,
    conclude: Axiom,
    max_domain: usize,
) -> Result<ImplicationOutcome> {
    for n in 1..=max_domain {
        if let Some(cm) = find_countermodel(n, satisfy, conclude)? {
            return Ok(ImplicationOutcome::Countermodel(cm));
        }
    }
    Ok(ImplicationOutcome::VerifiedUpTo(max_domain))
}

/// Interprets `Rxyz` as "x lies in the closed interval spanned by y and z" on
/// a set of integer points: satisfies A1-A4 (and A6) but not A5 once four
/// points are present.
pub fn interval_model(points: &[i64]) -> LeafStructure {
    let mut vals: Vec<i64> = points.to_vec();
    vals.sort();
    vals.dedup();
    let ids: Vec<NodeId> = vals.iter().map(|v| v.to_string()).collect();
    // LeafStructure sorts ids lexicographically; index values accordingly.
    let mut sorted_ids = ids.clone();
    sorted_ids.sort();
    let value = |id: &NodeId| -> i64 { id.parse().unwrap() };
    let n = sorted_ids.len();
    let mut rel = Rel3::new(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (value(&sorted_ids[i]), value(&sorted_ids[j]), value(&sorted_ids[k]));
                if y.min(z) <= x && x <= y.max(z) {
                    rel.set(i, j, k);
                }
            }
        }
    }
    LeafStructure::from_parts(sorted_ids, rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axs(list: &[Axiom]) -> BTreeSet<Axiom> {
        list.iter().copied().collect()
    }

    #[test]
    fn interval_model_axioms() {
        let ls = interval_model(&[0, 1, 2, 3]);
        let report = ls.check_axioms();
        let get = |ax: Axiom| report.iter().find(|c| c.axiom == ax).unwrap().passed();
        assert!(get(Axiom::A1) && get(Axiom::A2) && get(Axiom::A3) && get(Axiom::A4));
        assert!(get(Axiom::A6));
        assert!(!get(Axiom::A5));
        assert!(!get(Axiom::A7));

        // Two points: A5 is vacuous.
        let small = interval_model(&[0, 1]);
        assert!(small.check_axioms().iter().all(|c| c.passed() || c.axiom == Axiom::A10));
        assert!(small.contains("1", "0", "1"));
    }

    #[test]
    fn membership_reading() {
        let ls = interval_model(&[0, 1, 2]);
        assert!(ls.contains("1", "0", "2"));
        assert!(!ls.contains("0", "1", "2"));
    }

    #[test]
    fn countermodel_a1a2a3a6_not_a4() {
        // The smallest such structure has five elements.
        let mut found = None;
        for n in 2..=5 {
            if let Some(cm) =
                find_countermodel(n, &axs(&[Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A6]), Axiom::A4)
                    .unwrap()
            {
                found = Some((n, cm));
                break;
            }
        }
        let (n, cm) = found.expect("a countermodel exists at small domain size");
        assert_eq!(n, 5);
        let a4 = cm.report.iter().find(|c| c.axiom == Axiom::A4).unwrap();
        assert!(!a4.passed());
        let a6 = cm.report.iter().find(|c| c.axiom == Axiom::A6).unwrap();
        assert!(a6.passed());
    }

    #[test]
    fn implication_a1a4_gives_a6() {
        match verify_implication(&axs(&[Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4]), Axiom::A6, 3)
            .unwrap()
        {
            ImplicationOutcome::VerifiedUpTo(3) => {}
            other => panic!("expected verification, got {other:?}"),
        }
    }

    #[test]
    fn s5_needs_five_points() {
        let s14 = axs(&[Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4]);
        assert!(find_countermodel(4, &s14, Axiom::S5).unwrap().is_none());
        let cm = find_countermodel(5, &s14, Axiom::S5)
            .unwrap()
            .expect("S5 is independent of S1-S4");
        assert!(matches!(cm.model, FoundModel::Separation(_)));
    }

    #[test]
    fn bound_errors() {
        assert!(matches!(
            find_countermodel(6, &axs(&[Axiom::A1, Axiom::A2, Axiom::A3]), Axiom::A4),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            find_countermodel(3, &axs(&[Axiom::A2, Axiom::A3]), Axiom::A4),
            Err(Error::MissingClosureAxiom(_))
        ));
        assert!(matches!(
            find_countermodel(3, &axs(&[Axiom::A1, Axiom::A2, Axiom::A3]), Axiom::B4),
            Err(Error::MixedAxiomFamilies(..))
        ));
    }
}
