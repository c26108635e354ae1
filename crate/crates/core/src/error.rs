use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible elementary move at index {index} on {monomial}")]
    InadmissibleMove { monomial: String, index: usize },

    #[error("degree mismatch: {left} has degree {left_degree}, {right} has degree {right_degree}")]
    DegreeMismatch {
        left: String,
        left_degree: u32,
        right: String,
        right_degree: u32,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial {0} is not an admissible Hilbert polynomial")]
    NotAdmissible(String),

    #[error("Hilbert polynomial {poly} has degree {degree}, must be below the ambient dimension {n}")]
    DegreeTooLarge { poly: String, degree: i64, n: usize },

    #[error("stratum cardinalities are not consistent with a polynomial of degree < {0}")]
    InconsistentStrata(usize),

    #[error("not a Borel set: {0}")]
    NotBorel(String),

    #[error("{monomial} is not a minimal element of stratum {stratum}")]
    PivotNotMinimal { monomial: String, stratum: usize },

    #[error("deformations do not share the same source")]
    MismatchedSource,

    #[error("deformations are not compatible")]
    Incompatible,

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computed object violates an invariant that the construction guarantees.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
