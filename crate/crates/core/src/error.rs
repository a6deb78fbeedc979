use thiserror::Error;

/// Structural problems with a diagram or a requested diagram operation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("half-edge {0} appears in more than one slot")]
    DuplicateSlot(u32),
    #[error("half-edge {0} does not sit at a vertex, loop or leg")]
    MissingSlot(u32),
    #[error("half-edge {0} is not covered exactly once by the edge matching")]
    BadMatching(u32),
    #[error("diagram has both Wilson loops and free legs")]
    MixedKind,
    #[error("leg index {0} out of range")]
    LegOutOfRange(usize),
    #[error("leg {0} paired more than once")]
    LegPairedTwice(usize),
    #[error("expected {expected} diagram, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("half-edge {0} does not lie on an edge joining two internal vertices")]
    NotInternalEdge(u32),
    #[error("expected exactly one Wilson loop, found {0}")]
    LoopCount(usize),
    #[error("diagram has internal vertices; resolve to chord diagrams first")]
    NotChordDiagram,
    #[error("wheel size must be a positive even number, got {0}")]
    OddWheel(usize),
    #[error("half-edge {0} is not attached to a Wilson loop")]
    NotOnLoop(u32),
    #[error("internal vertices are not connected to any Wilson loop")]
    DetachedVertices,
    #[error("no bubble in the diagram")]
    NoBubble,
    #[error("malformed diagram key")]
    BadKey,
    #[error("json: {0}")]
    Json(String),
}

/// Failures of weight-system evaluation and universal fitting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("contraction exceeds the tensor budget of {budget} entries")]
    Resource { budget: usize },
    #[error("integer overflow during contraction")]
    Overflow,
    #[error("no universal polynomial matches every family (residual rank {rank})")]
    Inconsistent { rank: usize },
    #[error("universal fit is underdetermined: rank {rank} of {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("degenerate Vogel point: {0}")]
    DegeneratePoint(&'static str),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("bad registry entry: {0}")]
    Registry(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type DiagramResult<T> = Result<T, DiagramError>;
pub type EvalResult<T> = Result<T, EvalError>;
