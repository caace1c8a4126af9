use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("D = {0} is not a squarefree integer >= 2")]
    InvalidField(i64),
    #[error("matrix is not unimodular over the integers")]
    NotUnimodular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the two preorders are equal")]
    EqualPreorders,
    #[error("preorder is standard; no non-standardness witness exists")]
    StandardPreorder,
    #[error("operation requires a bi-invariant preorder")]
    NotBiInvariant,
    #[error("enumeration cap exceeded: at least {estimate} nodes (cap {cap})")]
    CapExceeded { estimate: u128, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("zero group-algebra element")]
    ZeroElement,
    #[error("invalid open set: {0}")]
    InvalidOpen(String),
    #[error("no witness found within the search bound {0}")]
    SearchExhausted(usize),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }

    /// Stable machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::GroupMismatch(_) => "group_mismatch",
            Error::InvalidField(_) => "invalid_field",
            Error::NotUnimodular => "not_unimodular",
            Error::Parse(_) => "malformed_input",
            Error::EqualPreorders => "equal_preorders",
            Error::StandardPreorder => "standard_preorder",
            Error::NotBiInvariant => "not_bi_invariant",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Precondition(_) => "precondition_failed",
            Error::ZeroElement => "zero_element",
            Error::InvalidOpen(_) => "invalid_open",
            Error::SearchExhausted(_) => "search_exhausted",
        }
    }
}
