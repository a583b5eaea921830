use thiserror::Error;

/// Errors raised by the algebra modules and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("invariant factor chain violated at position {0}")]
    ChainViolation(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix has nonzero trace")]
    TraceNonzero,
    #[error("invariant triple lies outside the locus g != 0")]
    NotInY,
    #[error("required square roots do not exist in the field")]
    RootsMissingInField,
    #[error("eigenvalues do not exist in the field")]
    EigenvaluesMissingInField,
    #[error("diagonal entries 1..{0} collide in GF({1})")]
    DegenerateDiagonal(usize, u64),
    #[error("hom dimensions with the simple pair are ({0}, {1}), expected (1, 1)")]
    NotInW(usize, usize),
    #[error("composite g.f of the intertwiners vanishes")]
    DegenerateComposite,
    #[error("kernel vectors fail to complete a basis")]
    BasisFailure,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in reports and exit diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::SingularMatrix => "SingularMatrix",
            Error::NonSquare(..) => "NonSquare",
            Error::EmptyInput(_) => "EmptyInput",
            Error::NotMonic => "NotMonic",
            Error::DegreeZero => "DegreeZero",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::ChainViolation(_) => "ChainViolation",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::TraceNonzero => "TraceNonzero",
            Error::NotInY => "NotInY",
            Error::RootsMissingInField => "RootsMissingInField",
            Error::EigenvaluesMissingInField => "EigenvaluesMissingInField",
            Error::DegenerateDiagonal(..) => "DegenerateDiagonal",
            Error::NotInW(..) => "NotInW",
            Error::DegenerateComposite => "DegenerateComposite",
            Error::BasisFailure => "BasisFailure",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
