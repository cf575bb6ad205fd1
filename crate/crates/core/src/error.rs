use thiserror::Error;

/// Errors produced by the library. Every constructive routine either returns a
/// labeling that passed validation or one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group spec `{0}`")]
    GroupSpec(String),
    #[error("cyclic factor Z{0} is too small (need k >= 2)")]
    FactorTooSmall(u64),
    #[error("element has {found} residues, group has {expected} factors")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("labeling is not bound to this graph")]
    UnboundLabeling,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no valid labeling: {0}")]
    Infeasible(String),
    #[error("{what} exceeds cap {limit}")]
    CapExceeded { what: String, limit: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    /// A counting argument that should make a choice possible failed. Seeing
    /// this means the implementation disagrees with the construction it follows.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable code used by the CLI's `ERR <code>: <detail>` line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GroupSpec(_) | Error::FactorTooSmall(_) => "group-spec",
            Error::DimensionMismatch { .. } => "dimension",
            Error::Parse { .. } => "parse",
            Error::SelfLoop(_) | Error::DuplicateEdge(..) | Error::VertexOutOfRange { .. } => {
                "graph"
            }
            Error::UnboundLabeling => "unbound",
            Error::Precondition(_) => "precondition",
            Error::Infeasible(_) => "infeasible",
            Error::CapExceeded { .. } => "cap",
            Error::OutOfRange(_) => "range",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
