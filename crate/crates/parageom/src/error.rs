use thiserror::Error;

/// Crate-wide error type.
///
/// Every fallible operation in the library funnels through this enum so that
/// callers (including the CLI) can distinguish user errors, mathematical
/// preconditions, and resource caps without string matching.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation that requires degree-0 (constant) entries was handed a
    /// genuinely parametric polynomial.
    #[error("parametric entries where scalars are required: {0}")]
    ParametricEntries(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not symmetric; inertia is only defined for symmetric matrices")]
    NotSymmetric,

    /// Resource cap exceeded; the payload names the cap so the CLI can map it
    /// to its dedicated exit code.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("division by zero (scalar or leading coefficient)")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    /// Killing form degenerate where a semisimple algebra was required.
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),

    /// A candidate cocycle failed the cocycle identity; carries a sample of
    /// the nonzero residual components for diagnosis.
    #[error("cocycle condition violated: {0}")]
    CocycleCondition(String),

    /// A span that must be linearly independent or bracket-closed is not.
    #[error("invalid span: {0}")]
    InvalidSpan(String),

    /// Representation matrices fail the homomorphism property.
    #[error("not a representation: {0}")]
    NotRepresentation(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown catalog case `{0}`")]
    UnknownCase(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
