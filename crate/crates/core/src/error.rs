use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("modulus {0} is out of range (supported primes are below 2^16)")]
    ModulusTooLarge(u32),

    #[error("inverse of zero requested")]
    ZeroInverse,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("field polynomial is reducible over F_{p}")]
    ReduciblePolynomial { p: u32 },

    #[error("invalid field polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("bilinear form is degenerate (rank {rank} < {m})")]
    DegenerateForm { rank: usize, m: usize },

    #[error("bilinear form matrix is not symmetric")]
    AsymmetricForm,

    #[error(
        "code is not self-orthogonal: rows {0} and {1} have non-zero symplectic inner product"
    )]
    NotSelfOrthogonal(usize, usize),

    #[error("code is not self-dual: dimension {dim} but length {n}")]
    NotSelfDual { dim: usize, n: usize },

    #[error("local symplectic move on coordinate {coord} has determinant {det}, expected 1")]
    NotSymplectic { coord: usize, det: u32 },

    #[error("transcript move refers to row {row} but the matrix has {rows} rows")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("invalid coordinate permutation")]
    InvalidPermutation,

    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    AsymmetricAdjacency(usize, usize),

    #[error("adjacency matrix has a loop at vertex {0}")]
    NonZeroDiagonal(usize),

    #[error(
        "input block M_x is non-zero at ({0}, {1}); the input vertices must be totally isotropic \
         (q(x) = 0 on inputs only changes the global phase of each basis state, so remove the \
         edges among input vertices)"
    )]
    NonZeroInputBlock(usize, usize),

    #[error("rank of the input/output block B is {rank}, expected k = {k}")]
    RankDeficientB { rank: usize, k: usize },

    #[error("enumeration of {required} codewords exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("state-vector oracle needs {required} amplitudes, budget is {budget}")]
    OracleBudgetExceeded { required: u128, budget: u64 },

    #[error("GF(4) view requires p = 2, got p = {0}")]
    WrongCharacteristic(u32),

    #[error("MacWilliams transform produced a non-integral coefficient at weight {0}")]
    InconsistentEnumerator(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Variant name, used by front ends to name the failed invariant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ModulusTooLarge(_) => "ModulusTooLarge",
            Error::ZeroInverse => "ZeroInverse",
            Error::ModulusMismatch { .. } => "ModulusMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ReduciblePolynomial { .. } => "ReduciblePolynomial",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::DegenerateForm { .. } => "DegenerateForm",
            Error::AsymmetricForm => "AsymmetricForm",
            Error::NotSelfOrthogonal(..) => "NotSelfOrthogonal",
            Error::NotSelfDual { .. } => "NotSelfDual",
            Error::NotSymplectic { .. } => "NotSymplectic",
            Error::RowOutOfRange { .. } => "RowOutOfRange",
            Error::InvalidPermutation => "InvalidPermutation",
            Error::AsymmetricAdjacency(..) => "AsymmetricAdjacency",
            Error::NonZeroDiagonal(_) => "NonZeroDiagonal",
            Error::NonZeroInputBlock(..) => "NonZeroInputBlock",
            Error::RankDeficientB { .. } => "RankDeficientB",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::OracleBudgetExceeded { .. } => "OracleBudgetExceeded",
            Error::WrongCharacteristic(_) => "WrongCharacteristic",
            Error::InconsistentEnumerator(_) => "InconsistentEnumerator",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
