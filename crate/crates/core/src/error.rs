use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("degree must be positive")]
    ZeroDegree,

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),

    #[error("malformed cycle notation: {0}")]
    MalformedCycles(String),

    #[error("image table is not a bijection of 1..{0}")]
    NotABijection(usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(&'static str),

    #[error("not a normal subgroup: {0}")]
    NotNormal(&'static str),

    #[error("{what} exceeds the configured limit of {limit}")]
    CapExceeded { what: &'static str, limit: u64 },

    #[error("random search for {0}-elements exhausted the retry bound")]
    SylowSearchExhausted(u32),

    #[error("chief series not found: {0}")]
    ChiefSeriesNotFound(&'static str),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition ground {found} does not match the required prime set {expected}")]
    GroundMismatch { expected: String, found: String },

    #[error("element order has prime {0} outside the partition ground")]
    PrimeOutsideGround(u32),

    #[error("section is not sigma-soluble at {0}; sigma-permutability is undefined here")]
    NotSigmaSoluble(String),

    #[error("{0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that report a desk-scale limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::SylowSearchExhausted(_)
                | Error::ChiefSeriesNotFound(_)
        )
    }
}
