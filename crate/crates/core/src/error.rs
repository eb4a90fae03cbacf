use crate::axioms::Axiom;
use thiserror::Error;

/// Errors shared by all structure kinds in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),

    #[error("node id `{0}` appears on both sides of a substitution")]
    IdCollision(String),

    #[error("`{0}` is not a leaf")]
    NotALeaf(String),

    #[error("`{0}` is an internal node; expected leaves only")]
    NotLeavesOnly(String),

    #[error("nodes `{0}` and `{1}` are comparable; an antichain was expected")]
    NotAnAntichain(String, String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("tree is not leafy: {0}")]
    NotLeafy(String),

    #[error("malformed order: {0}")]
    MalformedOrder(String),

    #[error("order is not hierarchical: `{0}` lies below incomparable `{1}` and `{2}`")]
    NotHierarchical(String, String, String),

    #[error("malformed laminar family: {0}")]
    MalformedLaminar(String),

    #[error("axiom {axiom} fails with witness {witness:?}")]
    AxiomViolation { axiom: Axiom, witness: Vec<String> },

    #[error("structure is not a quasi-tree: {0}")]
    NotAQuasiTree(String),

    #[error("no median and not aligned: ({0}, {1}, {2})")]
    MedianUndefined(String, String, String),

    #[error("need at least {need} nodes, got {got}")]
    TooSmall { need: usize, got: usize },

    #[error("invalid separation structure: {0}")]
    InvalidSeparation(String),

    #[error("no consistent completion ({0})")]
    NoCompletion(String),

    #[error("leaf sets differ: {0}")]
    LeafMismatch(String),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("layout is not cubic: node `{0}` has degree {1}")]
    NotCubic(String, usize),

    #[error("enumeration bound exceeded: {what} needs {need}, limit is {limit}")]
    BoundExceeded {
        what: &'static str,
        need: usize,
        limit: usize,
    },

    #[error("model search needs {0} among the satisfied axioms (structural closure)")]
    MissingClosureAxiom(&'static str),

    #[error("axiom families cannot be mixed in one search: {0} vs {1}")]
    MixedAxiomFamilies(Axiom, Axiom),
}

pub type Result<T> = std::result::Result<T, Error>;
