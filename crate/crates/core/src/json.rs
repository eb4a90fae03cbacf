//! The on-disk JSON formats, one schema per structure kind, all carrying a
//! `"format": "leafbridge/v1"` tag. Output is pretty-printed with sorted keys
//! and a trailing newline so identical inputs produce identical bytes.

use crate::error::Error;
use crate::leaf_structure::LeafStructure;
use crate::oforest::OForest;
use crate::quasitree::{QuasiTree, UnrootedTree};
use crate::rankwidth::SimpleGraph;
use crate::separation::SeparationStructure;
use crate::tree::{LaminarFamily, NodeId, RootedTree};
use crate::weights::WeightAssignment;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error as ThisError;

pub const FORMAT_TAG: &str = "leafbridge/v1";

#[derive(Debug, ThisError)]
pub enum JsonError {
    #[error("json syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported format tag `{0}` (expected `{FORMAT_TAG}`)")]
    BadTag(String),
    #[error("unrecognized document shape (expected one of: tree, oforest, leafstructure, quasitree, unrooted, separation, graph, laminar, sigma)")]
    UnknownShape,
    #[error(transparent)]
    Semantic(#[from] Error),
}

fn check_tag(tag: &Option<String>) -> Result<(), JsonError> {
    match tag {
        Some(t) if t != FORMAT_TAG => Err(JsonError::BadTag(t.clone())),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    format: Option<String>,
    root: NodeId,
    children: BTreeMap<NodeId, Vec<NodeId>>,
}

pub fn tree_to_json(t: &RootedTree) -> String {
    let children: BTreeMap<NodeId, Vec<NodeId>> = t
        .internal_nodes()
        .map(|u| (u.clone(), t.children(u).unwrap().to_vec()))
        .collect();
    emit(&TreeDoc {
        format: Some(FORMAT_TAG.into()),
        root: t.root().clone(),
        children,
    })
}

pub fn tree_from_json(s: &str) -> Result<RootedTree, JsonError> {
    let doc: TreeDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(RootedTree::from_children(doc.root, doc.children)?)
}

#[derive(Serialize, Deserialize)]
struct OForestDoc {
    format: Option<String>,
    nodes: Vec<NodeId>,
    lt: Vec<(NodeId, NodeId)>,
}

pub fn oforest_to_json(f: &OForest) -> String {
    let mut lt = Vec::new();
    for a in f.nodes() {
        for b in f.nodes() {
            if f.lt(a, b).unwrap() {
                lt.push((a.clone(), b.clone()));
            }
        }
    }
    emit(&OForestDoc {
        format: Some(FORMAT_TAG.into()),
        nodes: f.nodes().to_vec(),
        lt,
    })
}

pub fn oforest_from_json(s: &str) -> Result<OForest, JsonError> {
    let doc: OForestDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(OForest::from_pairs(doc.nodes, &doc.lt)?)
}

#[derive(Serialize, Deserialize)]
struct LeafStructureDoc {
    format: Option<String>,
    leaves: Vec<NodeId>,
    #[serde(rename = "R")]
    r: Vec<[NodeId; 3]>,
}

pub fn leaf_structure_to_json(ls: &LeafStructure) -> String {
    emit(&LeafStructureDoc {
        format: Some(FORMAT_TAG.into()),
        leaves: ls.leaves().to_vec(),
        r: ls.triples().map(|[x, y, z]| [x.clone(), y.clone(), z.clone()]).collect(),
    })
}

/// `close` adds the forced triples and the last-two-components symmetry.
pub fn leaf_structure_from_json(s: &str, close: bool) -> Result<LeafStructure, JsonError> {
    let doc: LeafStructureDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(LeafStructure::from_triples(doc.leaves, doc.r, close)?)
}

#[derive(Serialize, Deserialize)]
struct QuasiTreeDoc {
    format: Option<String>,
    nodes: Vec<NodeId>,
    #[serde(rename = "B")]
    b: Vec<[NodeId; 3]>,
}

pub fn quasitree_to_json(q: &QuasiTree) -> String {
    emit(&QuasiTreeDoc {
        format: Some(FORMAT_TAG.into()),
        nodes: q.nodes().to_vec(),
        b: q.triples().map(|[x, y, z]| [x.clone(), y.clone(), z.clone()]).collect(),
    })
}

pub fn quasitree_from_json(s: &str) -> Result<QuasiTree, JsonError> {
    let doc: QuasiTreeDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(QuasiTree::new(doc.nodes, doc.b)?)
}

#[derive(Serialize, Deserialize)]
struct UnrootedDoc {
    format: Option<String>,
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

pub fn unrooted_to_json(t: &UnrootedTree) -> String {
    emit(&UnrootedDoc {
        format: Some(FORMAT_TAG.into()),
        nodes: t.nodes().to_vec(),
        edges: t.edges(),
    })
}

pub fn unrooted_from_json(s: &str) -> Result<UnrootedTree, JsonError> {
    let doc: UnrootedDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(UnrootedTree::from_edges(doc.nodes, &doc.edges)?)
}

#[derive(Serialize, Deserialize)]
struct SeparationDoc {
    format: Option<String>,
    leaves: Vec<NodeId>,
    #[serde(rename = "S")]
    s: Vec<[NodeId; 4]>,
}

/// Tuples are emitted in full symmetry closure; the loader re-closes, so
/// generator-only files load identically.
pub fn separation_to_json(ss: &SeparationStructure) -> String {
    emit(&SeparationDoc {
        format: Some(FORMAT_TAG.into()),
        leaves: ss.leaves().to_vec(),
        s: ss
            .tuples()
            .map(|[x, y, z, u]| [x.clone(), y.clone(), z.clone(), u.clone()])
            .collect(),
    })
}

pub fn separation_from_json(s: &str) -> Result<SeparationStructure, JsonError> {
    let doc: SeparationDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(SeparationStructure::from_generators(doc.leaves, doc.s)?)
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    format: Option<String>,
    vertices: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

pub fn graph_to_json(g: &SimpleGraph) -> String {
    emit(&GraphDoc {
        format: Some(FORMAT_TAG.into()),
        vertices: g.vertices().to_vec(),
        edges: g.edges(),
    })
}

pub fn graph_from_json(s: &str) -> Result<SimpleGraph, JsonError> {
    let doc: GraphDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(SimpleGraph::from_edges(doc.vertices, &doc.edges)?)
}

#[derive(Serialize, Deserialize)]
struct LaminarDoc {
    format: Option<String>,
    ground: Vec<NodeId>,
    members: Vec<Vec<NodeId>>,
}

pub fn laminar_to_json(f: &LaminarFamily) -> String {
    emit(&LaminarDoc {
        format: Some(FORMAT_TAG.into()),
        ground: f.ground.iter().cloned().collect(),
        members: f.members.iter().map(|m| m.iter().cloned().collect()).collect(),
    })
}

pub fn laminar_from_json(s: &str) -> Result<LaminarFamily, JsonError> {
    let doc: LaminarDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    let fam = LaminarFamily {
        ground: doc.ground.into_iter().collect(),
        members: doc.members.into_iter().map(|m| m.into_iter().collect()).collect(),
    };
    fam.validate()?;
    Ok(fam)
}

#[derive(Serialize, Deserialize)]
struct SigmaDoc {
    format: Option<String>,
    sigma: BTreeMap<NodeId, u8>,
}

pub fn sigma_to_json(w: &WeightAssignment) -> String {
    emit(&SigmaDoc {
        format: Some(FORMAT_TAG.into()),
        sigma: w.iter().map(|(k, v)| (k.clone(), v)).collect(),
    })
}

pub fn sigma_from_json(s: &str) -> Result<WeightAssignment, JsonError> {
    let doc: SigmaDoc = serde_json::from_str(s)?;
    check_tag(&doc.format)?;
    Ok(WeightAssignment::new(doc.sigma)?)
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    format: Option<String>,
    rep: BTreeMap<NodeId, NodeId>,
}

pub fn rep_to_json(rep: &BTreeMap<NodeId, NodeId>) -> String {
    emit(&RepDoc {
        format: Some(FORMAT_TAG.into()),
        rep: rep.clone(),
    })
}

/// A parsed document of any supported kind, detected by its fields.
pub enum AnyDoc {
    Tree(RootedTree),
    OForest(OForest),
    LeafStructure(LeafStructure),
    QuasiTree(QuasiTree),
    Unrooted(UnrootedTree),
    Separation(SeparationStructure),
    Graph(SimpleGraph),
    Laminar(LaminarFamily),
}

/// Sniffs the document kind from its distinguishing fields.
pub fn sniff(s: &str) -> Result<AnyDoc, JsonError> {
    let value: serde_json::Value = serde_json::from_str(s)?;
    let obj = value.as_object().ok_or(JsonError::UnknownShape)?;
    let has = |k: &str| obj.contains_key(k);
    if has("children") {
        return Ok(AnyDoc::Tree(tree_from_json(s)?));
    }
    if has("lt") {
        return Ok(AnyDoc::OForest(oforest_from_json(s)?));
    }
    if has("R") {
        return Ok(AnyDoc::LeafStructure(leaf_structure_from_json(s, false)?));
    }
    if has("B") {
        return Ok(AnyDoc::QuasiTree(quasitree_from_json(s)?));
    }
    if has("S") {
        return Ok(AnyDoc::Separation(separation_from_json(s)?));
    }
    if has("vertices") {
        return Ok(AnyDoc::Graph(graph_from_json(s)?));
    }
    if has("ground") {
        return Ok(AnyDoc::Laminar(laminar_from_json(s)?));
    }
    if has("edges") && has("nodes") {
        return Ok(AnyDoc::Unrooted(unrooted_from_json(s)?));
    }
    Err(JsonError::UnknownShape)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cat3, qt5};

    #[test]
    fn tree_round_trip_and_tag() {
        let s = tree_to_json(&cat3());
        assert!(s.contains("leafbridge/v1"));
        assert_eq!(tree_from_json(&s).unwrap(), cat3());
        assert!(tree_from_json(&s.replace("leafbridge/v1", "other/v9")).is_err());
    }

    #[test]
    fn deterministic_bytes() {
        let a = quasitree_to_json(&qt5().betweenness());
        let b = quasitree_to_json(&qt5().betweenness());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn sniffing() {
        assert!(matches!(sniff(&tree_to_json(&cat3())).unwrap(), AnyDoc::Tree(_)));
        let q = qt5().betweenness();
        assert!(matches!(sniff(&quasitree_to_json(&q)).unwrap(), AnyDoc::QuasiTree(_)));
        let u = unrooted_to_json(&qt5());
        assert!(matches!(sniff(&u).unwrap(), AnyDoc::Unrooted(_)));
        assert!(sniff("{\"x\": 1}").is_err());
    }

    #[test]
    fn close_flag_applies_forced_triples() {
        let raw = r#"{"leaves": ["x", "y"], "R": []}"#;
        let open = leaf_structure_from_json(raw, false).unwrap();
        assert_eq!(open.triples().count(), 0);
        let closed = leaf_structure_from_json(raw, true).unwrap();
        assert!(closed.contains("x", "x", "y"));
        assert!(closed.contains("x", "y", "x"));
    }
}
