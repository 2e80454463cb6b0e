use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex set must be non-empty")]
    EmptyVertexSet,
    #[error("contraction parts overlap at vertex {0}")]
    OverlappingParts(usize),
    #[error("contraction part containing vertex {0} does not induce a connected subgraph")]
    DisconnectedPart(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("only {found} internally disjoint paths between {u1} and {u2}, {wanted} requested")]
    InsufficientPaths { u1: usize, u2: usize, wanted: usize, found: usize },
    #[error("endpoints of a path system must differ")]
    SameEndpoints,
    #[error("coloring is partial: edge {{{0}, {1}}} is uncolored")]
    PartialColoring(usize, usize),
    #[error("coloring covers {got} edges but graph has {expected}")]
    ColoringShape { expected: usize, got: usize },
    #[error("palette of {0} colors exceeds the verifier cap of {cap}", cap = crate::coloring::MAX_PALETTE)]
    PaletteTooLarge(usize),
    #[error("cycle must have at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("vertex sequence is not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("vertex connectivity {found} is below the required {required}")]
    ConnectivityTooLow { required: usize, found: usize },
    #[error("vertex {vertex} cannot reach the base set under the spine constraint")]
    UnreachableVertex { vertex: usize },
    #[error("construction failed verification: no rainbow path between {0} and {1}")]
    VerificationFailed(usize, usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("Euler check failed: n - m + f = {n} - {m} + {f} != 2")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("graph is not maximal planar ({faces} faces, {edges} edges)")]
    NotMaximalPlanar { faces: usize, edges: usize },
    #[error("vertex set {0:?} is not a face of the embedding")]
    FaceNotFound(Vec<usize>),
    #[error("unsupported connectivity {0} for the planar construction (expected 3..=5)")]
    UnsupportedKappa(usize),
    #[error("vertex {vertex} is at distance {distance} from the dominating set, radius {radius} required")]
    NotDominating { vertex: usize, distance: usize, radius: usize },
    #[error("dominating set does not induce a connected subgraph")]
    DominatingSetDisconnected,
    #[error("unknown instance name `{0}`")]
    UnknownInstance(String),
    #[error("{message} (line {line}, column {column})")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid instance parameters: {0}")]
    InvalidParameters(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
