//! Exact rank-width of small graphs: GF(2) ranks of cut submatrices, cubic
//! layout enumeration and exhaustive minimization, the separation-relation
//! reformulation, and the bounded-width decision on `(graph, separation)`
//! inputs.

use crate::error::{Error, Result};
use crate::quasitree::UnrootedTree;
use crate::separation::{reconstruct_c54, separation_structure, SeparationStructure};
use crate::tree::{fresh_name, NodeId};
use std::collections::{BTreeMap, BTreeSet};

/// Ceiling for exhaustive enumerations (layout counts grow as (2n-5)!!).
/// Overridable through the `LEAFBRIDGE_MAX_ENUM` environment variable.
pub fn max_enum_bound() -> usize {
    std::env::var("LEAFBRIDGE_MAX_ENUM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

/// An undirected simple graph over at most 64 named vertices, kept as bitset
/// adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    ids: Vec<NodeId>,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn from_edges(vertices: Vec<NodeId>, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut ids = vertices;
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateNode(w[0].clone()));
            }
        }
        if ids.len() > 64 {
            return Err(Error::BoundExceeded {
                what: "graph vertices",
                need: ids.len(),
                limit: 64,
            });
        }
        let pos: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut adj = vec![0u64; ids.len()];
        for (a, b) in edges {
            let i = *pos.get(a).ok_or_else(|| Error::UnknownNode(a.clone()))?;
            let j = *pos.get(b).ok_or_else(|| Error::UnknownNode(b.clone()))?;
            if i == j {
                return Err(Error::NotSimple(format!("loop at `{a}`")));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(SimpleGraph { ids, adj })
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .binary_search_by(|p| p.as_str().cmp(id))
            .map_err(|_| Error::UnknownNode(id.to_string()))
    }

    pub fn adjacent(&self, a: &str, b: &str) -> Result<bool> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self.adj[i] & (1 << j) != 0)
    }

    pub fn degree(&self, a: &str) -> Result<usize> {
        Ok(self.adj[self.index_of(a)?].count_ones() as usize)
    }

    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for i in 0..self.ids.len() {
            for j in i + 1..self.ids.len() {
                if self.adj[i] & (1 << j) != 0 {
                    out.push((self.ids[i].clone(), self.ids[j].clone()));
                }
            }
        }
        out
    }

    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> Result<SimpleGraph> {
        let vertices: Vec<NodeId> = keep.iter().cloned().collect();
        let edges: Vec<(NodeId, NodeId)> = self
            .edges()
            .into_iter()
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .collect();
        for v in &vertices {
            self.index_of(v)?;
        }
        SimpleGraph::from_edges(vertices, &edges)
    }

    /// Bitset row of the submatrix `M[a, cols]` in column order `cols`.
    fn row_bits(&self, a: usize, cols: &[usize]) -> u64 {
        let mut row = 0u64;
        for (bit, &c) in cols.iter().enumerate() {
            if self.adj[a] & (1 << c) != 0 {
                row |= 1 << bit;
            }
        }
        row
    }
}

/// Rank over GF(2) of bit rows by word-parallel elimination.
fn rank_bits(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for col in 0..64 {
        let mask = 1u64 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank];
        for row in rows.iter_mut().skip(rank + 1) {
            if *row & mask != 0 {
                *row ^= lead;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over GF(2) of a rectangular 0/1 matrix.
pub fn gf2_rank(matrix: &[Vec<u8>]) -> Result<usize> {
    if matrix.is_empty() {
        return Ok(0);
    }
    let width = matrix[0].len();
    if width > 64 {
        return Err(Error::BoundExceeded {
            what: "matrix columns",
            need: width,
            limit: 64,
        });
    }
    let mut rows = Vec::with_capacity(matrix.len());
    for row in matrix {
        if row.len() != width {
            return Err(Error::MalformedMatrix(format!(
                "ragged rows: {} and {width}",
                row.len()
            )));
        }
        let mut bits = 0u64;
        for (i, &v) in row.iter().enumerate() {
            match v {
                0 => {}
                1 => bits |= 1 << i,
                other => {
                    return Err(Error::MalformedMatrix(format!("entry {other} is not 0/1")))
                }
            }
        }
        rows.push(bits);
    }
    Ok(rank_bits(rows))
}

/// A cubic tree whose leaves name graph vertices. Degrees are 1 or 3 (a
/// single node or a lone edge for the degenerate vertex counts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    tree: UnrootedTree,
}

impl Layout {
    pub fn new(tree: UnrootedTree) -> Result<Self> {
        for v in tree.nodes() {
            let d = tree.degree(v)?;
            if d != 1 && d != 3 && tree.len() > 1 {
                return Err(Error::NotCubic(v.clone(), d));
            }
        }
        Ok(Layout { tree })
    }

    pub fn tree(&self) -> &UnrootedTree {
        &self.tree
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.tree.leaves()
    }

    fn check_for(&self, g: &SimpleGraph) -> Result<()> {
        let leaves: BTreeSet<NodeId> = self.tree.leaves().into_iter().collect();
        let verts: BTreeSet<NodeId> = g.vertices().iter().cloned().collect();
        if leaves != verts {
            return Err(Error::LeafMismatch(format!(
                "layout leaves {leaves:?} vs graph vertices {verts:?}"
            )));
        }
        Ok(())
    }
}

/// The bipartition of the layout nodes at one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub x: NodeId,
    pub y: NodeId,
    pub side_x: BTreeSet<NodeId>,
    pub side_y: BTreeSet<NodeId>,
}

/// One cut per edge of the layout tree; each side induces a subtree.
pub fn cuts_of_layout(layout: &Layout) -> Result<Vec<Cut>> {
    let tree = &layout.tree;
    let mut out = Vec::new();
    for (x, y) in tree.edges() {
        let ix = tree.index_of(&x)?;
        let iy = tree.index_of(&y)?;
        let mut side = vec![false; tree.len()];
        side[ix] = true;
        let mut stack = vec![ix];
        while let Some(u) = stack.pop() {
            for &v in tree.adj(u) {
                if !(u == ix && v == iy) && !side[v] {
                    side[v] = true;
                    stack.push(v);
                }
            }
        }
        let mut side_x = BTreeSet::new();
        let mut side_y = BTreeSet::new();
        for (i, id) in tree.nodes().iter().enumerate() {
            if side[i] {
                side_x.insert(id.clone());
            } else {
                side_y.insert(id.clone());
            }
        }
        out.push(Cut { x, y, side_x, side_y });
    }
    Ok(out)
}

fn cut_rank(g: &SimpleGraph, cut: &Cut) -> Result<usize> {
    let rows_of: Vec<usize> = cut
        .side_x
        .iter()
        .filter_map(|v| g.index_of(v).ok())
        .collect();
    let cols: Vec<usize> = cut
        .side_y
        .iter()
        .filter_map(|v| g.index_of(v).ok())
        .collect();
    let rows: Vec<u64> = rows_of.iter().map(|&a| g.row_bits(a, &cols)).collect();
    Ok(rank_bits(rows))
}

/// Max over the layout's cuts of the GF(2) rank of the cut submatrix.
pub fn rwd_relative(g: &SimpleGraph, layout: &Layout) -> Result<usize> {
    layout.check_for(g)?;
    let mut best = 0;
    for cut in cuts_of_layout(layout)? {
        best = best.max(cut_rank(g, &cut)?);
    }
    Ok(best)
}

/// Every cubic tree over the given leaves, grown by edge subdivision
/// ((2n-5)!! of them for n >= 3).
pub fn enumerate_cubic_layouts(leaves: &[NodeId]) -> Result<Vec<Layout>> {
    let mut labels = leaves.to_vec();
    labels.sort();
    labels.dedup();
    if labels.len() != leaves.len() {
        return Err(Error::DuplicateNode("repeated leaf label".into()));
    }
    if labels.is_empty() {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    let taken: BTreeSet<NodeId> = labels.iter().cloned().collect();
    if labels.len() == 1 {
        return Ok(vec![Layout::new(UnrootedTree::from_edges(labels, &[])?)?]);
    }
    let mut partial: Vec<Vec<(NodeId, NodeId)>> =
        vec![vec![(labels[0].clone(), labels[1].clone())]];
    for (extra, leaf) in labels[2..].iter().enumerate() {
        let hub = fresh_name(format!("#{extra}"), &taken);
        let mut next = Vec::new();
        for edges in &partial {
            for split in 0..edges.len() {
                let mut grown = Vec::with_capacity(edges.len() + 2);
                for (i, (a, b)) in edges.iter().enumerate() {
                    if i == split {
                        grown.push((a.clone(), hub.clone()));
                        grown.push((hub.clone(), b.clone()));
                    } else {
                        grown.push((a.clone(), b.clone()));
                    }
                }
                grown.push((hub.clone(), leaf.clone()));
                next.push(grown);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|edges| {
            let mut nodes: BTreeSet<NodeId> = BTreeSet::new();
            for (a, b) in &edges {
                nodes.insert(a.clone());
                nodes.insert(b.clone());
            }
            Layout::new(UnrootedTree::from_edges(nodes.into_iter().collect(), &edges)?)
        })
        .collect()
}

/// Exact rank-width with an optimal witness layout, by exhaustive layout
/// enumeration. Ties are broken by the canonical layout encoding.
pub fn rank_width_bounded(g: &SimpleGraph, bound: usize) -> Result<(usize, Layout)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "rank-width enumeration",
            need: n,
            limit: bound,
        });
    }
    let mut best: Option<(usize, String, Layout)> = None;
    for layout in enumerate_cubic_layouts(g.vertices())? {
        let w = rwd_relative(g, &layout)?;
        let key = layout.tree().canonical(true);
        let better = match &best {
            None => true,
            Some((bw, bk, _)) => w < *bw || (w == *bw && key < *bk),
        };
        if better {
            best = Some((w, key, layout));
        }
    }
    let (w, _, layout) = best.unwrap();
    Ok((w, layout))
}

/// `rank_width_bounded` at the default enumeration ceiling.
pub fn rank_width(g: &SimpleGraph) -> Result<(usize, Layout)> {
    rank_width_bounded(g, max_enum_bound())
}

/// The separation-relation reading of the relative rank-width: maximize the
/// rank of `M[A, B]` over separated leaf-pair sets. Pendant cuts have a
/// single leaf on one side and are outside the 4-ary relation, so their ranks
/// (0 or 1) are folded in directly.
pub fn rwd_relative_via_s(g: &SimpleGraph, layout: &Layout) -> Result<usize> {
    layout.check_for(g)?;
    let n = g.n();
    if n > 12 {
        return Err(Error::BoundExceeded {
            what: "separated-pair enumeration",
            need: n,
            limit: 12,
        });
    }
    let ss = separation_structure(&layout.tree().betweenness())?;
    let mut best = 0;
    for v in g.vertices() {
        if g.degree(v)? > 0 {
            best = 1;
        }
    }
    // Ternary assignment per vertex: in A, in B, in neither.
    let mut assign = vec![0u8; n];
    loop {
        let a: BTreeSet<NodeId> = (0..n)
            .filter(|&i| assign[i] == 1)
            .map(|i| g.vertices()[i].clone())
            .collect();
        let b: BTreeSet<NodeId> = (0..n)
            .filter(|&i| assign[i] == 2)
            .map(|i| g.vertices()[i].clone())
            .collect();
        if a.len() >= 2 && b.len() >= 2 && ss.set_separation(&a, &b)? {
            let cols: Vec<usize> = b.iter().map(|v| g.index_of(v)).collect::<Result<_>>()?;
            let rows: Vec<u64> = a
                .iter()
                .map(|v| Ok(g.row_bits(g.index_of(v)?, &cols)))
                .collect::<Result<_>>()?;
            best = best.max(rank_bits(rows));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(best);
            }
            if assign[i] < 2 {
                assign[i] += 1;
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Decides `rwd(G, layout) <= k` for a layout given only by its separation
/// relation. The relation must describe a cubic layout: valid as a separation
/// structure and with empty derived E.
pub fn check_rwd_leq(g: &SimpleGraph, ss: &SeparationStructure, k: usize) -> Result<bool> {
    let verts: BTreeSet<NodeId> = g.vertices().iter().cloned().collect();
    let leaves: BTreeSet<NodeId> = ss.leaves().iter().cloned().collect();
    if verts != leaves {
        return Err(Error::LeafMismatch(format!(
            "separation leaves {leaves:?} vs graph vertices {verts:?}"
        )));
    }
    let ids = ss.leaves();
    for x in 0..ids.len() {
        for y in x + 1..ids.len() {
            for z in y + 1..ids.len() {
                for u in z + 1..ids.len() {
                    if ss.e(&ids[x], &ids[y], &ids[z], &ids[u]) {
                        return Err(Error::InvalidSeparation(format!(
                            "derived E is nonempty at ({}, {}, {}, {}): not a cubic layout",
                            ids[x], ids[y], ids[z], ids[u]
                        )));
                    }
                }
            }
        }
    }
    let q = reconstruct_c54(ss)?;
    let layout = Layout::new(q.to_unrooted()?)?;
    Ok(rwd_relative(g, &layout)? <= k)
}
