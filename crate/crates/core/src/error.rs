use thiserror::Error;

/// Errors raised by graph construction, soft-set building, approximation,
/// and the census engine.
///
/// `Invariant` is reserved for conditions that hold by construction; seeing
/// one means a bug inside this crate, and the CLI maps it to a distinct exit
/// status.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("labels must be non-empty")]
    EmptyLabel,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge label `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` is a loop at vertex `{vertex}`")]
    LoopEdge { edge: String, vertex: String },
    #[error("edges `{first}` and `{second}` join the same pair of vertices")]
    MultiEdge { first: String, second: String },
    #[error("edge `{edge}` references `{vertex}`, which is not a vertex of the graph")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("vertex label sets must be disjoint for {operation}: `{label}` appears in both operands")]
    LabelCollision { operation: String, label: String },
    #[error("parameter `{0}` does not name a vertex of the host graph")]
    ParameterNotAVertex(String),
    #[error("the diameter-distance relation requires a connected host graph")]
    DisconnectedHost,
    #[error("relation kind `{kind}` does not take a table")]
    UnexpectedTable { kind: String },
    #[error("explicit relation table names parameter `{0}`, which is not in the parameter set")]
    TableParameterUnknown(String),
    #[error("soft rough graph requires a non-empty set of parameters")]
    EmptyParameterSet,
    #[error("target must be a non-empty subset of the host vertex set")]
    EmptyTarget,
    #[error("the two soft rough graphs are built over different host graphs")]
    HostMismatch,
    #[error("edge soft set was not derived from the given soft set")]
    ProvenanceMismatch,
    #[error("corona product requires a non-empty base graph")]
    CoronaEmptyBase,
    #[error("host has {vertices} vertices, above the census enumeration cap of {cap}")]
    VertexCapExceeded { vertices: usize, cap: usize },
    #[error("max_params {max_params} exceeds the host vertex count {vertices}")]
    MaxParamsExceeded { max_params: usize, vertices: usize },
    #[error("unknown census check `{0}`")]
    UnknownCheck(String),
    #[error("the census cannot enumerate parameter sets for an explicit relation table")]
    ExplicitRelationInCensus,
    #[error("unknown relation kind `{0}`")]
    UnknownRelationKind(String),
    #[error("unknown product kind `{0}`")]
    UnknownProductKind(String),
    #[error("partition blocks must be disjoint: `{0}` appears twice")]
    OverlappingBlocks(String),
    #[error("partition blocks must be non-empty")]
    EmptyBlock,
    #[error("set member `{member}` is outside the partition universe")]
    OutsideUniverse { member: String },
    #[error("document error: {0}")]
    Document(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
