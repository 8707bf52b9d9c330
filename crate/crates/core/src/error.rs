use thiserror::Error;

/// Errors raised by the library.
///
/// Evaluation points are carried as `(re, im)` pairs in `f64` so the enum
/// does not depend on the scalar type.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("polynomial degree {0} is below the minimum of 2")]
    DegreeTooLow(usize),
    #[error("evaluation point ({0}, {1}) is a pole")]
    PoleAt(f64, f64),
    #[error("realization is not minimal (controllability rank {ctrb}, observability rank {obsv}, order {n})")]
    NotMinimal { ctrb: usize, obsv: usize, n: usize },
    #[error("transfer function is not symmetric (defect {0:e})")]
    NotSymmetricTransfer(f64),
    #[error("transfer function is not Hermitian (defect {0:e})")]
    NotHermitianTransfer(f64),
    #[error("Hankel rank {found} does not match the expected order {expected}")]
    RankMismatch { found: usize, expected: usize },
    #[error("duplicate pole ({0}, {1})")]
    DuplicatePole(f64, f64),
    #[error("ansatz matrix [v (x) I, H] is singular")]
    SingularAnsatz,
    #[error("state-space multipliers X, Y must be nonsingular")]
    SingularXY,
    #[error("leading coefficient D_k is singular")]
    SingularLeadingCoefficient,
    #[error("rational matrix is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("rational matrix is not Hermitian: {0}")]
    NotHermitian(String),
    #[error("scaling mu must be real")]
    NonRealMu,
    #[error("basis has non-real recurrence coefficients")]
    NonRealBasis,
    #[error("degree {0} is even; the block Kronecker construction needs odd degree")]
    EvenDegree(usize),
    #[error("transform factor {0} is singular")]
    SingularTransform(&'static str),
    #[error("linear system for the block-symmetric pencil is numerically singular")]
    NumericallySingularSystem,
    #[error("(1,1) block pencil has identically zero determinant")]
    DegenerateABlock,
    #[error("(1,1) block is singular at ({0}, {1})")]
    SingularABlock(f64, f64),
    #[error("eigenvalue ({0}, {1}) coincides with a pole")]
    PoleEigenvalue(f64, f64),
    #[error("vector is not an eigenvector at ({0}, {1}), residual {2:e}")]
    NotAnEigenpair(f64, f64, f64),
    #[error("no infinite eigenvalue present")]
    NoInfiniteEigenvalue,
    #[error("pencil is singular (det is identically zero)")]
    SingularPencil,
    #[error("rational matrix is not regular")]
    NonRegular,
    #[error("determinant interpolation is ill conditioned (cross-check error {0:e})")]
    IllConditionedInterpolation(f64),
    #[error("operation not supported: {0}")]
    Unsupported(String),
    #[error("numerical backend failed: {0}")]
    BackendFailure(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
