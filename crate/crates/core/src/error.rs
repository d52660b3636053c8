use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error codes printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroVector: a nonzero lattice vector is required")]
    ZeroVector,
    #[error("EmptyGenerators: at least one generator is required")]
    EmptyGenerators,
    #[error("NotInSpan: point is outside the rational span of the basis")]
    NotInSpan,
    #[error("NotInLattice: point has fractional coordinates in the basis")]
    NotInLattice,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("NotStronglyConvex: the cone contains a line")]
    NotStronglyConvex,
    #[error("NotFullDimensional: the cone does not span the ambient space")]
    NotFullDimensional,
    #[error("SupportOutsideCone: support point {0} is outside the recession face")]
    SupportOutsideCone(String),
    #[error("UnboundedBelow: the weight is negative on a recession ray")]
    UnboundedBelow,
    #[error("FaceMissesNewtonPolygon: the function has no support on face {0}")]
    FaceMissesNewtonPolygon(usize),
    #[error("OriginInSupport: the function does not vanish at the origin")]
    OriginInSupport,
    #[error("EulerTableIncomplete: no Euler obstruction value for face {0}")]
    EulerTableIncomplete(usize),
    #[error("GenericityFailure: linear-form draws disagree ({0} vs {1})")]
    GenericityFailure(String, String),
    #[error("NotCoprime: gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("RangeError: expected 0 < q < p (or p = 1, q = 0), got p = {0}, q = {1}")]
    RangeError(i64, i64),
    #[error("LengthMismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("NotPrepolar: {0}")]
    NotPrepolar(String),
    #[error("CommonComponent: the two functions share a component on orbit {0}")]
    CommonComponent(usize),
    #[error("ConditionViolated: deformation {0} does not preserve the Newton polygon")]
    ConditionViolated(String),
    #[error("NotConstant: {invariant} differs between samples {first} and {second}")]
    NotConstant {
        invariant: String,
        first: String,
        second: String,
    },
    #[error("ParseError at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("UnknownVariable: {0}")]
    UnknownVariable(String),
    #[error("NegativeExponent at position {0}")]
    NegativeExponent(usize),
    #[error("ZeroPolynomial: {0} is identically zero on the variety")]
    ZeroPolynomial(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
