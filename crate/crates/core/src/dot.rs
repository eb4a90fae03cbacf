//! Graphviz text export for the structures in this crate.

use crate::quasitree::{QuasiTree, UnrootedTree};
use crate::rankwidth::{cuts_of_layout, Layout, SimpleGraph};
use crate::tree::RootedTree;
use std::collections::BTreeSet;
use std::fmt::Write;

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn rooted_tree(t: &RootedTree) -> String {
    let mut out = String::from("digraph tree {\n");
    for u in t.nodes() {
        let shape = if t.is_leaf(u) { "ellipse" } else { "box" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(u));
    }
    for u in t.nodes() {
        for c in t.children(u).unwrap() {
            let _ = writeln!(out, "  {} -> {};", quote(u), quote(c));
        }
    }
    out.push_str("}\n");
    out
}

pub fn unrooted_tree(t: &UnrootedTree) -> String {
    let mut out = String::from("graph tree {\n");
    let leaves: BTreeSet<_> = t.leaves().into_iter().collect();
    for u in t.nodes() {
        let shape = if leaves.contains(u) { "ellipse" } else { "point" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(u));
    }
    for (a, b) in t.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}

/// The Gaifman graph of the betweenness relation: nodes are adjacent when
/// they occur in a common triple.
pub fn quasitree_gaifman(q: &QuasiTree) -> String {
    let mut edges: BTreeSet<(String, String)> = BTreeSet::new();
    for [x, y, z] in q.triples() {
        for (a, b) in [(x, y), (y, z), (x, z)] {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            edges.insert((a.clone(), b.clone()));
        }
    }
    let mut out = String::from("graph gaifman {\n");
    for n in q.nodes() {
        let _ = writeln!(out, "  {};", quote(n));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  {} -- {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}

pub fn simple_graph(g: &SimpleGraph) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {};", quote(&a), quote(&b));
    }
    out.push_str("}\n");
    out
}

/// The layout tree with each edge labeled by the GF(2) rank of its cut.
pub fn layout_with_ranks(g: &SimpleGraph, layout: &Layout) -> crate::error::Result<String> {
    let tree = layout.tree();
    let mut out = String::from("graph layout {\n");
    let leaves: BTreeSet<_> = tree.leaves().into_iter().collect();
    for u in tree.nodes() {
        let shape = if leaves.contains(u) { "ellipse" } else { "point" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(u));
    }
    for cut in cuts_of_layout(layout)? {
        let verts: BTreeSet<String> = g.vertices().iter().cloned().collect();
        let a: Vec<Vec<u8>> = cut
            .side_x
            .iter()
            .filter(|v| verts.contains(*v))
            .map(|r| {
                cut.side_y
                    .iter()
                    .filter(|v| verts.contains(*v))
                    .map(|c| u8::from(g.adjacent(r, c).unwrap_or(false)))
                    .collect()
            })
            .collect();
        let rank = crate::rankwidth::gf2_rank(&a)?;
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{rank}\"];",
            quote(&cut.x),
            quote(&cut.y)
        );
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cat3, qt5};

    #[test]
    fn exports_are_wellformed() {
        let t = rooted_tree(&cat3());
        assert!(t.starts_with("digraph") && t.ends_with("}\n"));
        assert!(t.contains("\"r\" -> \"m\""));
        let u = unrooted_tree(&qt5());
        assert!(u.contains("\"a\" -- \"b\"") || u.contains("\"b\" -- \"a\""));
        let g = quasitree_gaifman(&qt5().betweenness());
        assert!(g.starts_with("graph gaifman"));
    }
}
