use thiserror::Error;

use crate::point::Point;
use crate::scalar::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("variable x{index} out of range for {nvars} variables (at byte {pos})")]
    VariableOutOfRange { index: usize, nvars: usize, pos: usize },
    #[error("polynomial needs at least one variable")]
    NoVariables,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous: terms {first:?} and {second:?} differ in degree")]
    NotHomogeneous { first: Vec<u32>, second: Vec<u32> },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("spanning vectors are linearly dependent")]
    DependentVectors,
    #[error("polynomial vanishes identically on the plane")]
    DegenerateRestriction,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("{base} is not a hyperbolic direction: restriction along {witness} has non-real roots")]
    InvalidDirection {
        base: Point<Rational>,
        witness: Point<Rational>,
    },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("no hyperbolic direction found among {samples} samples")]
    NotFoundAtThisResolution { samples: usize },
    #[error("curve point is singular (gradient vanishes)")]
    SingularPoint,
    #[error("projection centre lies on the tangent line")]
    RamifiedConfiguration,
    #[error("screen line is degenerate for this configuration: {0}")]
    DegenerateScreen(String),
    #[error("sign could not be resolved within the refinement budget")]
    UnresolvableSign,
    #[error("no certified smooth points among {sampled} samples")]
    InsufficientSmoothSamples { sampled: usize },
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("no admissible plane found within {retries} retries")]
    DegenerateSectionFamily { retries: usize },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "E_SYNTAX",
            Error::VariableOutOfRange { .. } => "E_VARIABLE_RANGE",
            Error::NoVariables => "E_NO_VARIABLES",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::NotHomogeneous { .. } => "E_NOT_HOMOGENEOUS",
            Error::ZeroPolynomial => "E_ZERO_POLYNOMIAL",
            Error::DegreeMismatch { .. } => "E_DEGREE",
            Error::DependentVectors => "E_DEPENDENT",
            Error::DegenerateRestriction => "E_DEGENERATE_RESTRICTION",
            Error::NotApplicable(_) => "E_NOT_APPLICABLE",
            Error::NotRealRooted => "E_NOT_REAL_ROOTED",
            Error::InvalidDirection { .. } => "E_INVALID_DIRECTION",
            Error::InternalInconsistency(_) => "E_INTERNAL",
            Error::NotFoundAtThisResolution { .. } => "E_NOT_FOUND",
            Error::SingularPoint => "E_SINGULAR_POINT",
            Error::RamifiedConfiguration => "E_RAMIFIED",
            Error::DegenerateScreen(_) => "E_DEGENERATE_SCREEN",
            Error::UnresolvableSign => "E_UNRESOLVABLE_SIGN",
            Error::InsufficientSmoothSamples { .. } => "E_INSUFFICIENT_SMOOTH",
            Error::ConstructionFailure(_) => "E_CONSTRUCTION",
            Error::DegenerateSectionFamily { .. } => "E_DEGENERATE_SECTIONS",
        }
    }
}
