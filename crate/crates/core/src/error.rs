use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge id {0} already present")]
    DuplicateEdgeId(u32),
    #[error("cannot contract an empty vertex set")]
    EmptyContraction,
    #[error("graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("search budget exceeded in {0}")]
    BudgetExceeded(&'static str),
    #[error("cover is not canonical: {0}")]
    NotCanonical(String),
    #[error("no bridge-reducing move exists for component {component}")]
    Stuck { component: usize },
    #[error("structured precondition violated: {0}")]
    StructuredViolation(String),
    #[error("no gluing case applies: {0}")]
    CaseLadderExhausted(String),
    #[error("solution restricted to the small side has no valid type")]
    Untypeable,
    #[error("no patch of size at most {bound} restores 2-edge-connectivity")]
    PatchNotFound { bound: usize },
    #[error("credit invariant violated: {0}")]
    CreditInvariant(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator gave up after {0} rejected samples")]
    RejectionLimit(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// Errors raised by the structured phases on inputs that do not meet
    /// their preconditions. The pipeline may recover from these.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Error::NotCanonical(_)
                | Error::Stuck { .. }
                | Error::StructuredViolation(_)
                | Error::CaseLadderExhausted(_)
                | Error::Untypeable
                | Error::BudgetExceeded(_)
                | Error::PatchNotFound { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::DuplicateEdgeId(_) => "DuplicateEdgeId",
            Error::EmptyContraction => "EmptyContraction",
            Error::NotTwoEdgeConnected => "NotTwoEdgeConnected",
            Error::Infeasible(_) => "Infeasible",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotCanonical(_) => "NotCanonical",
            Error::Stuck { .. } => "Stuck",
            Error::StructuredViolation(_) => "StructuredViolation",
            Error::CaseLadderExhausted(_) => "CaseLadderExhausted",
            Error::Untypeable => "Untypeable",
            Error::PatchNotFound { .. } => "PatchNotFound",
            Error::CreditInvariant(_) => "CreditInvariant",
            Error::Invariant(_) => "Invariant",
            Error::Parse { .. } => "Parse",
            Error::RejectionLimit(_) => "RejectionLimit",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
