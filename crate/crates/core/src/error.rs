use thiserror::Error;

/// Errors produced while parsing cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleParseError {
    #[error("point {point} in `{token}` is outside 1..={degree}")]
    PointOutOfRange { token: String, point: u64, degree: usize },
    #[error("point {point} repeated in `{token}`")]
    RepeatedPoint { token: String, point: u64 },
    #[error("malformed cycle notation near `{token}`")]
    Malformed { token: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Cycle(#[from] CycleParseError),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order {order} exceeds the element-table cap {cap}")]
    OverCap { order: u128, cap: usize },

    #[error("subgroup enumeration incomplete: join budget of {budget} exhausted")]
    IncompleteEnumeration { budget: u64 },

    #[error("unsupported group `{0}`")]
    Unsupported(String),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },

    #[error("catalog group {name} has order {found}, expected {expected}")]
    CatalogOrder { name: String, expected: u128, found: u128 },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("normal subgroup has no proper supplement (it lies in the Frattini subgroup)")]
    NoSupplement,

    #[error("abelian minimal normal subgroup has no complement")]
    NoComplement,

    #[error("the group is cyclic; it has no cover")]
    Cyclic,

    #[error("permutation {0} is not an element of the group")]
    NotInGroup(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no elements of order {0}")]
    NoElementsOfOrder(u32),

    #[error("node budget exhausted; sigma lies in [{lower}, {upper}]")]
    NodeBudget { lower: u64, upper: u64 },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
