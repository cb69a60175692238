use thiserror::Error;

/// Every failure the library can report.
///
/// Index fields are 1-based so they can be shown to users unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("space mismatch: cannot combine a {left} and a {right} multivector")]
    SpaceMismatch { left: &'static str, right: &'static str },

    #[error("degree {degree} exceeds ambient dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid degree: {0}")]
    InvalidDegree(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("bracket table is not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("metric not symmetric at ({i},{j})")]
    MetricNotSymmetric { i: usize, j: usize },

    #[error("metric not positive definite: leading minor of order {order} is {value}")]
    MetricNotPositive { order: usize, value: String },

    #[error("matrix is singular")]
    Singular,

    #[error("the metric Lie algebra is not a Milnor algebra")]
    NotMilnor,

    #[error("argument {position} does not lie in the subalgebra S")]
    ArgumentNotInS { position: usize },

    #[error("normal form did not converge (residual {residual})")]
    FailedToConverge { residual: String },

    #[error("not a Lie bialgebra: {axiom} fails at {witness}")]
    NotABialgebra { axiom: String, witness: String },

    #[error("endomorphism J is not skew with respect to the metric at ({i},{j})")]
    NotSkew { i: usize, j: usize },

    #[error("endomorphism J does not annihilate the central vector z")]
    CentralNotKilled,

    #[error("metric is not ad-invariant at ({i},{j},{k})")]
    NotAdInvariant { i: usize, j: usize, k: usize },

    #[error("unknown catalog entry or family: {0}")]
    UnknownName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid specification: {0}")]
    InvalidGrid(String),

    #[error("invalid rational '{0}'")]
    InvalidRational(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
