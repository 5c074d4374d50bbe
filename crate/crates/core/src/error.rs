use thiserror::Error;

/// Errors raised by the algebra kernels and the curve/descent layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("exponent {exponent} is not a unit modulo {order}")]
    InvalidExponent { exponent: i64, order: u32 },
    #[error("Q(zeta_{from}) is not a subfield of Q(zeta_{to})")]
    NotASubfield { from: u32, to: u32 },
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u32),

    #[error("variable count mismatch: expected {expected}, got {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("singular matrix")]
    SingularMatrix,
    #[error("curve degree {0} is below 3")]
    DegreeTooSmall(u32),

    #[error("group closure exceeded bound {0}")]
    BoundExceeded(usize),

    #[error("map is scalar (identity in PGL3)")]
    ScalarMap,
    #[error("scalar is not a root of unity up to sign")]
    NonUnitScalar,
    #[error("map is not an automorphism of the curve")]
    NotAnAutomorphism,
    #[error("map is not of finite order: {0}")]
    NotFiniteOrder(String),
    #[error("non-integer branch count for index {index}: {numerator}/{denominator}")]
    NonIntegerBranchCount { index: u64, numerator: i64, denominator: i64 },
    #[error("non-integer quotient genus: ({numerator})/{denominator}")]
    NonIntegerGenus { numerator: i64, denominator: i64 },
    #[error("negative quotient genus {0}")]
    NegativeGenus(i64),
    #[error("negative stabilizer count at subgroup of order {order}")]
    NegativeStabilizerCount { order: usize },

    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("genus {0} is below 2")]
    GenusTooSmall(i64),
    #[error("table shape violated: {0}")]
    ShapeViolation(String),
    #[error("non-integer count: {0}")]
    NonIntegerCount(String),
    #[error("family property violated: {0}")]
    PropertyViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("map is not an isomorphism onto the conjugate curve")]
    NotAnIsomorphism,
    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),
    #[error("impossible case: {0}")]
    ImpossibleCase(String),
    #[error("cocycle condition fails: {0}")]
    CocycleFailure(String),
    #[error("Galois image leaves <g1, g2>: {0}")]
    ImageTooLarge(String),
    #[error("conjugate triple is not in the G-orbit: {0}")]
    NotInOrbit(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
