use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("field of order {order} is not a quadratic extension of GF({base})")]
    NotAQuadraticExtension { order: u32, base: u32 },
    #[error("square classes are meaningless in even characteristic")]
    EvenCharacteristic,
    #[error("no compatible field tower: {0}")]
    IncompatibleTower(String),
    #[error("unsupported field GF({p}^{k})")]
    UnsupportedField { p: u32, k: u32 },
    #[error("polynomial is not irreducible over GF({0})")]
    Reducible(u32),

    #[error("dimension mismatch: {0}")]
    AmbientMismatch(String),
    #[error("vector length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("generator meets Pi_1")]
    MeetsPi1,
    #[error("subspace is not a generator")]
    NotAGenerator,
    #[error("subspaces are not pairwise disjoint generators")]
    NotPairwiseDisjoint,
    #[error("point lies on one of the two special generators")]
    OnSpecialGenerator,
    #[error("line is not disjoint from Pi_1 and Pi_2")]
    NotDisjointLine,
    #[error("induced correlation is not reflexive")]
    NotReflexive,
    #[error("operation needs a {0} polar space")]
    WrongKind(&'static str),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("bad spread provider: {0}")]
    BadProvider(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("unsupported q = {0}")]
    UnsupportedQ(u32),
    #[error("code needs at least two words")]
    TooSmall,
    #[error("ambient space too large to enumerate ({0} matrices)")]
    AmbientTooLarge(u128),
    #[error("graph too large ({0} vertices)")]
    TooLarge(u128),
    #[error("partition does not match the graph: {0}")]
    SizeMismatch(String),

    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("multiplicity is not an integer: {0}")]
    NonIntegerMultiplicity(String),
    #[error("inconsistent linear system: {0}")]
    InconsistentSystem(String),
    #[error("characteristic polynomial has a non-integral root")]
    NonIntegralRoot,

    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
