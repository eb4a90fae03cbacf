//! The named axiom suites for the three relation families:
//!
//! * `A1`..`A10` — ternary leaf relations R (Rxyz reads "x lies below the
//!   join of y and z"),
//! * `B1`..`B8` — ternary betweenness relations,
//! * `S1`..`S5` — 4-ary separation relations on leaves (E is derived),
//! * `EQ` — transitivity of the triple equivalence used when rebuilding a
//!   quasi-tree from a separation structure.
//!
//! Each axiom is evaluated by exhaustive tuple iteration over a finite
//! structure and yields a witness tuple on failure.

use crate::bits::{Rel3, Rel4};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    S1,
    S2,
    S3,
    S4,
    S5,
    Eq,
}

/// Which relation family an axiom speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    LeafTernary,
    Betweenness,
    Separation,
}

impl Axiom {
    pub const ALL_A: [Axiom; 10] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A5,
        Axiom::A6,
        Axiom::A7,
        Axiom::A8,
        Axiom::A9,
        Axiom::A10,
    ];
    pub const ALL_B: [Axiom; 8] = [
        Axiom::B1,
        Axiom::B2,
        Axiom::B3,
        Axiom::B4,
        Axiom::B5,
        Axiom::B6,
        Axiom::B7,
        Axiom::B8,
    ];
    pub const ALL_S: [Axiom; 5] = [Axiom::S1, Axiom::S2, Axiom::S3, Axiom::S4, Axiom::S5];

    pub fn family(self) -> Family {
        use Axiom::*;
        match self {
            A1 | A2 | A3 | A4 | A5 | A6 | A7 | A8 | A9 | A10 => Family::LeafTernary,
            B1 | B2 | B3 | B4 | B5 | B6 | B7 | B8 => Family::Betweenness,
            S1 | S2 | S3 | S4 | S5 | Eq => Family::Separation,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Eq => "EQ".to_string(),
            other => format!("{other:?}"),
        };
        f.write_str(&s)
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Axiom::*;
        Ok(match s.to_ascii_uppercase().as_str() {
            "A1" => A1,
            "A2" => A2,
            "A3" => A3,
            "A4" => A4,
            "A5" => A5,
            "A6" => A6,
            "A7" => A7,
            "A8" => A8,
            "A9" => A9,
            "A10" => A10,
            "B1" => B1,
            "B2" => B2,
            "B3" => B3,
            "B4" => B4,
            "B5" => B5,
            "B6" => B6,
            "B7" => B7,
            "B8" => B8,
            "S1" => S1,
            "S2" => S2,
            "S3" => S3,
            "S4" => S4,
            "S5" => S5,
            "EQ" => Eq,
            other => return Err(format!("unknown axiom `{other}`")),
        })
    }
}

/// Result of evaluating one axiom: `witness` is a counterexample tuple when
/// the axiom fails, `None` when it holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<Vec<String>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Finds a counterexample to an A-family axiom, or `None` if it holds.
pub(crate) fn a_witness(ax: Axiom, n: usize, r: &Rel3) -> Option<Vec<usize>> {
    let has = |x: usize, y: usize, z: usize| r.get(x, y, z);
    match ax {
        Axiom::A1 => {
            for x in 0..n {
                for y in 0..n {
                    if !has(x, x, y) {
                        return Some(vec![x, y]);
                    }
                }
            }
            None
        }
        Axiom::A2 => {
            for [x, y, z] in r.iter() {
                if !has(x, z, y) {
                    return Some(vec![x, y, z]);
                }
            }
            None
        }
        Axiom::A3 => {
            for x in 0..n {
                for y in 0..n {
                    if x != y && has(x, y, y) {
                        return Some(vec![x, y]);
                    }
                }
            }
            None
        }
        Axiom::A4 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !has(x, y, z) {
                            continue;
                        }
                        for u in 0..n {
                            for v in 0..n {
                                if has(y, u, v) && has(z, u, v) && !has(x, u, v) {
                                    return Some(vec![x, y, z, u, v]);
                                }
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::A5 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !has(x, y, z) {
                            continue;
                        }
                        for u in 0..n {
                            for v in 0..n {
                                if !has(x, u, v) {
                                    continue;
                                }
                                let left = has(y, u, v) && has(z, u, v);
                                let right = has(u, y, z) && has(v, y, z);
                                if !left && !right {
                                    return Some(vec![x, y, z, u, v]);
                                }
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::A6 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !has(x, y, z) {
                            continue;
                        }
                        for u in 0..n {
                            if has(u, x, y) && !has(u, y, z) {
                                return Some(vec![x, y, z, u]);
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::A7 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !has(x, y, z) && !has(z, x, y) {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
            }
            None
        }
        Axiom::A8 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !has(x, y, z) && !(has(y, x, z) && has(z, x, y)) {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
            }
            None
        }
        Axiom::A9 => {
            for [x, y, z] in r.iter() {
                if !has(y, x, z) && !has(z, x, y) {
                    return Some(vec![x, y, z]);
                }
            }
            None
        }
        Axiom::A10 => {
            // R0/R1 partition on pairwise distinct triples: either all three
            // joins coincide (R0) or exactly one pair joins strictly lower,
            // giving one R1 instance per cyclic shift.
            let r0 = |x: usize, y: usize, z: usize| has(x, y, z) && has(y, x, z) && has(z, x, y);
            let r1 = |x: usize, y: usize, z: usize| has(x, y, z) && has(y, x, z) && !has(z, x, y);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if x == y || y == z || x == z {
                            continue;
                        }
                        let count = [r0(x, y, z), r1(x, y, z), r1(y, z, x), r1(z, x, y)]
                            .iter()
                            .filter(|b| **b)
                            .count();
                        if count != 1 {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
            }
            None
        }
        other => panic!("{other} is not an A-family axiom"),
    }
}

#[inline]
pub(crate) fn aligned(b: &Rel3, x: usize, y: usize, z: usize) -> bool {
    b.get(x, y, z) || b.get(y, x, z) || b.get(x, z, y)
}

/// Finds a counterexample to a B-family axiom, or `None` if it holds.
pub(crate) fn b_witness(ax: Axiom, n: usize, b: &Rel3) -> Option<Vec<usize>> {
    let has = |x: usize, y: usize, z: usize| b.get(x, y, z);
    let distinct3 = |x: usize, y: usize, z: usize| x != y && y != z && x != z;
    match ax {
        Axiom::B1 => {
            for [x, y, z] in b.iter() {
                if !distinct3(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
            None
        }
        Axiom::B2 => {
            for [x, y, z] in b.iter() {
                if !has(z, y, x) {
                    return Some(vec![x, y, z]);
                }
            }
            None
        }
        Axiom::B3 => {
            for [x, y, z] in b.iter() {
                if has(x, z, y) {
                    return Some(vec![x, y, z]);
                }
            }
            None
        }
        Axiom::B4 => {
            for [x, y, z] in b.iter() {
                for u in 0..n {
                    if has(y, z, u) && !(has(x, y, u) && has(x, z, u)) {
                        return Some(vec![x, y, z, u]);
                    }
                }
            }
            None
        }
        Axiom::B5 => {
            for [x, y, z] in b.iter() {
                for u in 0..n {
                    if has(x, u, y) && !(has(x, u, z) && has(u, y, z)) {
                        return Some(vec![x, y, z, u]);
                    }
                }
            }
            None
        }
        Axiom::B6 => {
            for [x, y, z] in b.iter() {
                for u in 0..n {
                    if !has(x, u, z) || y == u {
                        continue;
                    }
                    let chain_yu = has(x, y, u) && has(y, u, z);
                    let chain_uy = has(x, u, y) && has(u, y, z);
                    if !chain_yu && !chain_uy {
                        return Some(vec![x, y, z, u]);
                    }
                }
            }
            None
        }
        Axiom::B7 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if !distinct3(x, y, z) || aligned(b, x, y, z) {
                            continue;
                        }
                        let found =
                            (0..n).any(|w| has(x, w, y) && has(y, w, z) && has(x, w, z));
                        if !found {
                            return Some(vec![x, y, z]);
                        }
                    }
                }
            }
            None
        }
        Axiom::B8 => {
            for [x, y, z] in b.iter() {
                for u in 0..n {
                    if u == x || u == y || u == z {
                        continue;
                    }
                    if !aligned(b, y, z, u) && !has(x, y, u) {
                        return Some(vec![x, y, z, u]);
                    }
                }
            }
            None
        }
        other => panic!("{other} is not a B-family axiom"),
    }
}

/// E derived from S: all four distinct and no pairing separates.
#[inline]
pub(crate) fn e_from_s(s: &Rel4, x: usize, y: usize, z: usize, u: usize) -> bool {
    x != y
        && x != z
        && x != u
        && y != z
        && y != u
        && z != u
        && !s.get(x, y, z, u)
        && !s.get(x, z, y, u)
        && !s.get(x, u, y, z)
}

/// Precomputed derived E over the whole tuple cube.
fn e_table(n: usize, s: &Rel4) -> Rel4 {
    let mut e = Rel4::new(n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for u in 0..n {
                    if e_from_s(s, x, y, z, u) {
                        e.set(x, y, z, u);
                    }
                }
            }
        }
    }
    e
}

/// Finds a counterexample to an S-family axiom, or `None` if it holds.
pub(crate) fn s_witness(ax: Axiom, n: usize, s: &Rel4) -> Option<Vec<usize>> {
    let distinct4 =
        |x: usize, y: usize, z: usize, u: usize| x != y && x != z && x != u && y != z && y != u && z != u;
    match ax {
        Axiom::S1 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for u in 0..n {
                            if s.get(x, y, z, u) && !distinct4(x, y, z, u) {
                                return Some(vec![x, y, z, u]);
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::S2 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for u in 0..n {
                            let a = s.get(x, y, z, u);
                            if a != s.get(z, u, x, y) || a != s.get(y, x, z, u) {
                                return Some(vec![x, y, z, u]);
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::S3 => {
            let e = e_table(n, s);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for u in 0..n {
                            let v = e.get(x, y, z, u);
                            if v != e.get(y, x, z, u) || v != e.get(y, z, u, x) {
                                return Some(vec![x, y, z, u]);
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::S4 => {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for u in 0..n {
                            if !distinct4(x, y, z, u) {
                                continue;
                            }
                            let seps = [s.get(x, y, z, u), s.get(x, z, y, u), s.get(x, u, y, z)];
                            let count = seps.iter().filter(|b| **b).count();
                            // With E derived the disjunction reduces to: at
                            // most one pairing separates.
                            if count > 1 {
                                return Some(vec![x, y, z, u]);
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::S5 => {
            let e = e_table(n, s);
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for u in 0..n {
                            if !e.get(x, y, z, u) {
                                continue;
                            }
                            for v in 0..n {
                                if v != z && s.get(x, y, u, v) && !s.get(x, z, u, v) {
                                    return Some(vec![x, y, z, u, v]);
                                }
                            }
                        }
                    }
                }
            }
            None
        }
        other => panic!("{other} is not an S-family axiom"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_round_trip() {
        for ax in Axiom::ALL_A.iter().chain(&Axiom::ALL_B).chain(&Axiom::ALL_S) {
            assert_eq!(ax.to_string().parse::<Axiom>().unwrap(), *ax);
        }
        assert_eq!("EQ".parse::<Axiom>().unwrap(), Axiom::Eq);
        assert!("C3".parse::<Axiom>().is_err());
    }

    #[test]
    fn empty_relation_fails_a1() {
        let r = Rel3::new(1);
        assert_eq!(a_witness(Axiom::A1, 1, &r), Some(vec![0, 0]));
    }

    #[test]
    fn b3_direct_contradiction() {
        // B = {(x,y,z), (x,z,y)} violates B3.
        let mut b = Rel3::new(3);
        b.set(0, 1, 2);
        b.set(0, 2, 1);
        assert!(b_witness(Axiom::B3, 3, &b).is_some());
    }
}
