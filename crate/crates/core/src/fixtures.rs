//! Small named structures used across the test suites and documentation.

use crate::quasitree::UnrootedTree;
use crate::tree::RootedTree;
use std::collections::BTreeMap;

/// Three-leaf caterpillar: root `r` over internal `m` (leaves `a`, `b`) and
/// leaf `c`.
pub fn cat3() -> RootedTree {
    RootedTree::from_children(
        "r".into(),
        BTreeMap::from([
            ("r".into(), vec!["m".into(), "c".into()]),
            ("m".into(), vec!["a".into(), "b".into()]),
        ]),
    )
    .unwrap()
}

/// Root `r` with leaves `a`, `b`, `c`.
pub fn star3() -> RootedTree {
    RootedTree::from_children("r".into(), BTreeMap::from([("r".into(), vec!["a".into(), "b".into(), "c".into()])]))
        .unwrap()
}

/// Unrooted tree with internal `a` adjacent to leaves `x`, `y`, `z` and to
/// internal `b`, which carries leaves `u`, `v`.
pub fn qt5() -> UnrootedTree {
    UnrootedTree::from_edges(
        ["x", "y", "z", "u", "v", "a", "b"].map(String::from).to_vec(),
        &[
            ("a".into(), "x".into()),
            ("a".into(), "y".into()),
            ("a".into(), "z".into()),
            ("a".into(), "b".into()),
            ("b".into(), "u".into()),
            ("b".into(), "v".into()),
        ],
    )
    .unwrap()
}

/// Unrooted path `a-b-c-e-g-h` with leaf `d` attached at `c` and leaf `f`
/// attached at `e`.
pub fn ex67() -> UnrootedTree {
    UnrootedTree::from_edges(
        ["a", "b", "c", "d", "e", "f", "g", "h"].map(String::from).to_vec(),
        &[
            ("a".into(), "b".into()),
            ("b".into(), "c".into()),
            ("c".into(), "d".into()),
            ("c".into(), "e".into()),
            ("e".into(), "f".into()),
            ("e".into(), "g".into()),
            ("g".into(), "h".into()),
        ],
    )
    .unwrap()
}
