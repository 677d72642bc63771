use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable x_{i}_{j} out of range for shape n={n}, d={d}")]
    VariableOutOfRange { i: usize, j: usize, n: usize, d: usize },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("polynomial is not totally symmetric")]
    NotSymmetric,

    #[error("polynomial is not antisymmetric")]
    NotAntisymmetric,

    #[error("polynomial is not invariant under the group")]
    NotInvariant,

    #[error(
        "feasibility guard exceeded at degree {degree}: {monomials} monomials (limit {limit})"
    )]
    GuardExceeded {
        degree: u32,
        monomials: u128,
        limit: u128,
    },

    #[error("design matrix is rank deficient: rank {rank} of {columns} columns (deficiency {deficiency})")]
    RankDeficient {
        rank: usize,
        columns: usize,
        deficiency: usize,
    },

    #[error("sample grid is not closed under the group action")]
    GridNotClosed,

    #[error("target supplies no derivative for multi-index {0}")]
    MissingDerivative(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn shape(expected: (usize, usize), found: (usize, usize)) -> Self {
        Error::ShapeMismatch {
            expected: format!("n={}, d={}", expected.0, expected.1),
            found: format!("n={}, d={}", found.0, found.1),
        }
    }
}
