use thiserror::Error;

/// Errors raised by the library. Every variant carries a stable machine code
/// (see [`Error::code`]) used by the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ill-formed homomorphism: {0}")]
    IllFormed(String),
    #[error("infinite enumeration: group has free rank {0}")]
    InfiniteEnumeration(usize),
    #[error("boundary condition violated: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("invalid quadratic module: {0}")]
    InvalidModule(String),
    #[error("truncation too small: need degree {needed}, have {have}")]
    Truncation { needed: usize, have: usize },
    #[error("not defined in source: {0}")]
    NotDefined(String),
    #[error("open in source: {0}")]
    OpenInSource(String),
    #[error("search truncated after {0} candidates")]
    SearchTruncated(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("serialization: {0}")]
    Serde(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::IllFormed(_) => "ill_formed",
            Error::InfiniteEnumeration(_) => "infinite_enumeration",
            Error::NotAComplex(_) => "not_a_complex",
            Error::NotAChainMap(_) => "not_a_chain_map",
            Error::InvalidModule(_) => "invalid_module",
            Error::Truncation { .. } => "truncation",
            Error::NotDefined(_) => "not_defined",
            Error::OpenInSource(_) => "open_in_source",
            Error::SearchTruncated(_) => "search_truncated",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse { .. } => "parse",
            Error::Serde(_) => "serde",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serde(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
