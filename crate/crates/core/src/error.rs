use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Variant names double as the machine-readable error codes of the HTTP
/// facade, see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no rows to load")]
    EmptyInput,
    #[error("duplicate code {0}")]
    DuplicateCode(String),
    #[error("node {code} has no parent {parent}")]
    OrphanNode { code: String, parent: String },
    #[error("malformed code {code:?}: {reason}")]
    MalformedCode { code: String, reason: &'static str },
    #[error("blank name for code {0}")]
    BlankName(String),
    #[error("invalid level configuration: {0}")]
    InvalidLevels(String),
    #[error("malformed csv: {0}")]
    Csv(String),
    #[error("unknown code {0}")]
    UnknownCode(String),
    #[error("code {0} is not at the leaf level")]
    NotLeaf(String),
    #[error("query is empty after normalization")]
    QueryTooShort,
    #[error("limit must be at least 1")]
    InvalidLimit,
    #[error("gazetteer has no top-level nodes")]
    EmptyGazetteer,
    #[error("{0} is not among the current options")]
    InvalidChoice(String),
    #[error("session is already complete")]
    SessionComplete,
    #[error("session is not complete")]
    Incomplete,
    #[error("no candidates match the query")]
    NoMatches,
    #[error("pick {pick} is out of range for {count} candidates")]
    PickOutOfRange { pick: usize, count: usize },
    #[error("typed prefix length {len} is outside 1..={max}")]
    InvalidPrefixLength { len: usize, max: usize },
    #[error("target {0} is not among the suggestions for the typed prefix")]
    TargetNotSuggested(String),
    #[error("baseline total must be positive")]
    ZeroBaseline,
    #[error("invalid count: {0}")]
    InvalidCount(&'static str),
}

impl Error {
    /// Stable variant name, e.g. `"UnknownCode"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::DuplicateCode(_) => "DuplicateCode",
            Error::OrphanNode { .. } => "OrphanNode",
            Error::MalformedCode { .. } => "MalformedCode",
            Error::BlankName(_) => "BlankName",
            Error::InvalidLevels(_) => "InvalidLevels",
            Error::Csv(_) => "Csv",
            Error::UnknownCode(_) => "UnknownCode",
            Error::NotLeaf(_) => "NotLeaf",
            Error::QueryTooShort => "QueryTooShort",
            Error::InvalidLimit => "InvalidLimit",
            Error::EmptyGazetteer => "EmptyGazetteer",
            Error::InvalidChoice(_) => "InvalidChoice",
            Error::SessionComplete => "SessionComplete",
            Error::Incomplete => "Incomplete",
            Error::NoMatches => "NoMatches",
            Error::PickOutOfRange { .. } => "PickOutOfRange",
            Error::InvalidPrefixLength { .. } => "InvalidPrefixLength",
            Error::TargetNotSuggested(_) => "TargetNotSuggested",
            Error::ZeroBaseline => "ZeroBaseline",
            Error::InvalidCount(_) => "InvalidCount",
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
