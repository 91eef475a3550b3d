use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures reported by the library.
///
/// Every variant maps to a stable machine-readable [`Error::kind`] string,
/// which the command-line front end prints as the `kind` field of its error
/// payloads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("relation `{0}` must have positive arity")]
    InvalidArity(String),

    #[error("relation `{0}` is not declared in the schema")]
    UndeclaredRelation(String),

    #[error("fact over `{relation}` has {found} entries, expected {expected}")]
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },

    #[error("element `{0}` occurs in a fact but is not listed among the elements")]
    UnknownElement(String),

    #[error("instances are over different schemas")]
    SchemaMismatch,

    #[error("element `{0}` occurs in no fact")]
    IsolatedElement(String),

    #[error("{0} must not be empty")]
    EmptyList(&'static str),

    #[error("{what} would have {requested} entries, limit is {limit}")]
    SizeCap {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("element `{0}` is not an element of the target")]
    NotSubset(String),

    #[error("a surjective homomorphism exists")]
    SurjectionExists,

    #[error("coordinate {coordinate} is zero in every vector")]
    NoPositiveEntry { coordinate: usize },

    #[error("coordinates {first} and {second} are not separated by any vector")]
    Unseparated { first: usize, second: usize },

    #[error("entries must be distinct and positive")]
    NotDistinctPositive,

    #[error("target entry {value} at coordinate {coordinate} is not divisible by {divisor}")]
    Divisibility {
        coordinate: usize,
        value: String,
        divisor: String,
    },

    #[error("{what} has length {found}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("polynomial has a negative coefficient")]
    NegativeCoefficient,

    #[error("answer set is not simple")]
    NotSimple,

    #[error("profiles have different zero patterns")]
    ZeroPatternMismatch,

    #[error("instance `{0}` is not connected")]
    NotConnected(usize),

    #[error("instances {0} and {1} are isomorphic")]
    DuplicateQuery(usize, usize),

    #[error("invalid query algorithm: {0}")]
    InvalidAlgorithm(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no query instance lies outside the target's upward closure")]
    EmptyCandidate,

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidArity(_) => "invalid_arity",
            Error::UndeclaredRelation(_) => "undeclared_relation",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::UnknownElement(_) => "unknown_element",
            Error::SchemaMismatch => "schema_mismatch",
            Error::IsolatedElement(_) => "isolated_element",
            Error::EmptyList(_) => "empty_list",
            Error::SizeCap { .. } => "size_cap",
            Error::NotSubset(_) => "not_subset",
            Error::SurjectionExists => "surjection_exists",
            Error::NoPositiveEntry { .. } => "no_positive_entry",
            Error::Unseparated { .. } => "unseparated",
            Error::NotDistinctPositive => "not_distinct_positive",
            Error::Divisibility { .. } => "divisibility",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NegativeCoefficient => "negative_coefficient",
            Error::NotSimple => "not_simple",
            Error::ZeroPatternMismatch => "zero_pattern_mismatch",
            Error::NotConnected(_) => "not_connected",
            Error::DuplicateQuery(..) => "duplicate_query",
            Error::InvalidAlgorithm(_) => "invalid_algorithm",
            Error::Unsupported(_) => "unsupported",
            Error::EmptyCandidate => "empty_candidate",
            Error::Overflow(_) => "overflow",
            Error::VerificationFailed(_) => "verification_failed",
        }
    }
}
