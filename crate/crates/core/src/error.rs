use thiserror::Error;

use crate::roommates::{Edge, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} lists {neighbor}, which is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, neighbor: Vertex, n: usize },
    #[error("vertex {vertex} lists itself as a neighbor")]
    SelfLoop { vertex: Vertex },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("vertex {vertex} lists {neighbor} but {neighbor} does not list {vertex}")]
    AsymmetricAdjacency { vertex: Vertex, neighbor: Vertex },
    #[error("{other} is neither a neighbor of {vertex} nor {vertex} itself")]
    NotANeighbor { vertex: Vertex, other: Vertex },

    #[error("{edge} is not an edge of the instance")]
    NotAnEdge { edge: Edge },
    #[error("matching edges overlap at vertex {vertex}")]
    NotDisjoint { vertex: Vertex },
    #[error("matching is sized for {found} vertices, instance has {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{edge} belongs to the matching and carries no label")]
    EdgeInMatching { edge: Edge },
    #[error("invalid witness: {reason}")]
    InvalidWitness { reason: String },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("invalid graph edge {u}-{v}")]
    InvalidGraphEdge { u: Vertex, v: Vertex },
    #[error("vertex {vertex} is not covered by any pair or triple")]
    NotPartition { vertex: Vertex },
    #[error("pair {u}-{v} is not an edge of the graph")]
    PairNotEdge { u: Vertex, v: Vertex },
    #[error("triple {0:?} does not induce a triangle")]
    TripleNotTriangle([Vertex; 3]),
    #[error("vertex {vertex} appears in more than one pair or triple")]
    Overlap { vertex: Vertex },

    #[error("literal refers to variable {var}, formula has {num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("assignment covers {found} variables, formula has {expected}")]
    AssignmentArity { expected: usize, found: usize },
    #[error("assignment leaves clause {clause} unsatisfied")]
    Unsatisfied { clause: usize },
    #[error("vertex set is not a solution: {reason}")]
    NotASolution { reason: String },

    #[error("gadget map is inconsistent with the instance: {reason}")]
    InconsistentMap { reason: String },
    #[error("rule {rule} fired but the vote margin was {delta}")]
    InternalNonImprovement { rule: String, delta: i64 },
}
