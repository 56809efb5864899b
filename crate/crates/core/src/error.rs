use thiserror::Error;

/// Every failure surfaced by the library. Each variant carries a stable
/// short code (see [`Error::code`]) that the CLI prints alongside the message.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group has at least {order} elements, above the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("unsupported component {component}: {reason}")]
    UnsupportedComponent { component: usize, reason: String },
    #[error("prime {prime} is bad for component {component}")]
    BadPrime { prime: u64, component: usize },
    #[error("module is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("search too large: {0}")]
    TooLarge(String),
    #[error("|G|^u is not an integral power: {0}")]
    NonIntegralPower(String),
    #[error("singular moment system: {0}")]
    SingularSystem(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("no lift found: {0}")]
    NotFound(String),
    #[error("lift is not unique: {0}")]
    NotUnique(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("unbounded truncation: {0}")]
    Unbounded(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "E_PARSE",
            Error::CapExceeded { .. } => "E_CAP",
            Error::NotAGroup(_) => "E_NOT_GROUP",
            Error::NotASubgroup(_) => "E_NOT_SUBGROUP",
            Error::NotNormal(_) => "E_NOT_NORMAL",
            Error::UnsupportedComponent { .. } => "E_UNSUPPORTED",
            Error::BadPrime { .. } => "E_BAD_PRIME",
            Error::NotHomogeneous(_) => "E_NOT_HOMOGENEOUS",
            Error::TooLarge(_) => "E_TOO_LARGE",
            Error::NonIntegralPower(_) => "E_NON_INTEGRAL",
            Error::SingularSystem(_) => "E_SINGULAR",
            Error::InvariantViolated(_) => "E_INVARIANT",
            Error::NotFound(_) => "E_NOT_FOUND",
            Error::NotUnique(_) => "E_NOT_UNIQUE",
            Error::Format(_) => "E_FORMAT",
            Error::Unbounded(_) => "E_UNBOUNDED",
            Error::Usage(_) => "E_USAGE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
