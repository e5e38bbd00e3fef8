//! Engine-wide error type.

use thiserror::Error;

/// Errors produced by the algebra engine.
///
/// Frontend (script) errors live in [`crate::script::ScriptError`]; everything
/// the mathematical core can reject is represented here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// Division by the zero element of a field.
    #[error("division by zero")]
    DivisionByZero,

    /// A prime field was requested with a modulus that is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Two operands live over different rings (field, variables, weights or order differ).
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// Matrix or module shapes are incompatible for the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The ideal contains a unit, so the quotient is the zero ring.
    #[error("unit ideal: quotient is the zero ring")]
    UnitIdeal,

    /// A map between presented modules does not send relations into relations.
    #[error("ill-defined map: {0}")]
    IllDefinedMap(String),

    /// Consecutive differentials do not compose to zero.
    #[error("not a complex: composition at spot {spot} is nonzero")]
    NotAComplex { spot: usize },

    /// A stable-range Tor length needed by theta has positive-dimensional support.
    #[error("theta undefined: Tor_{index} has support of dimension {dim}")]
    UndefinedTheta { index: usize, dim: usize },

    /// The two stabilization windows for theta disagree.
    #[error("theta stabilization failed: {0}")]
    StabilizationFailed(String),

    /// A partial Euler characteristic ran into an infinite-length Tor module.
    #[error("infinite length at index {index}")]
    InfiniteLengthAt { index: usize },

    /// The zero module was passed where a nonzero module is required.
    #[error("zero module")]
    ZeroModule,

    /// A stated hypothesis of the requested check fails on the given input.
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// The tensor product does not have finite length, so the check is undefined.
    #[error("tensor product does not have finite length")]
    NotFiniteIntersection,

    /// The operation needs positive characteristic (or a different one).
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),

    /// No repetition was found within the inspected window of a resolution.
    #[error("window too short: {0}")]
    WindowTooShort(String),

    /// A candidate matrix factorization failed the exact A*B = B*A = f*I check.
    #[error("matrix factorization check failed: {0}")]
    FactorizationCheckFailed(String),

    /// Homogeneous input is required for this operation.
    #[error("inhomogeneous input: {0}")]
    InhomogeneousInput(String),

    /// Input polynomial does not belong to the expected ring.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    /// A bounded computation ran past its configured step budget.
    #[error("computation exceeded the step budget of {0}")]
    StepBudgetExceeded(u64),
}

/// Convenient result alias used across the engine.
pub type Result<T> = std::result::Result<T, EngineError>;
