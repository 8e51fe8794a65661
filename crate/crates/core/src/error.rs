use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not antisymmetric for the split pairing")]
    NotSplitAntisymmetric,
    #[error("spin action is not nilpotent; an exact exponential needs a term bound")]
    NotNilpotent,
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("twist H is not closed: d_H squares to dH∧ which is nonzero ({0})")]
    TwistNotClosed(String),
    #[error("derived bracket is not Clifford multiplication by a generalized vector")]
    NotGeneralizedVector,
    #[error("endomorphism does not square to -1")]
    NotComplex,
    #[error("structure is not orthogonal for the split pairing")]
    NotOrthogonal,
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("2-form is not closed")]
    NotClosed,
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("metric is not symmetric positive-definite")]
    NotPositiveDefinite,
    #[error("frame is not unimodular: trace of ad(e{0}) is nonzero")]
    NotUnimodular(usize),
    #[error("the Clifford formula for the Hodge star only holds for b = 0")]
    NonzeroB,
    #[error("structure is not integrable: {0}")]
    NotIntegrable(String),
    #[error("generalized complex structures do not commute")]
    NotCommuting,
    #[error("spin action is not diagonalizable with eigenvalues i·k")]
    NotDiagonalizable,
    #[error("structure is not of complex type")]
    NotComplexType,
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("cochains belong to different complexes")]
    MismatchedComplex,
    #[error("differential does not preserve the multivector degree")]
    NotBigraded,
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
