use thiserror::Error;

/// Errors raised by the library layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subgroups live in different ambients")]
    AmbientMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("subgroup is not contained in the {n}-torsion")]
    NotInTorsion { n: String },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("subgroup is not cyclic")]
    NotCyclic,

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },

    #[error("algebra element belongs to a different parent polynomial")]
    ParentMismatch,

    #[error("polynomials share a common factor (resultant vanishes)")]
    NotCoprime,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("point ({x}, {t}) does not lie on the cover")]
    PointNotOnCover { x: String, t: String },

    #[error("spectral cover is singular over x = {0}")]
    SingularFibre(String),

    #[error("candidate factor does not divide the spectral polynomial")]
    DoesNotDivide,

    #[error("incompatible line bundle degrees: {0} vs {1}")]
    IncompatibleDegM(usize, usize),

    #[error("pushforward retains a y-dependent coefficient")]
    ResidualY,

    #[error("spectral polynomial has odd degree {0}")]
    OddDegree(usize),

    #[error("coefficient a_{index} has degree {degree}, exceeding bound {bound}")]
    DegreeBound {
        index: usize,
        degree: usize,
        bound: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
