use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid exchange matrix: {0}")]
    InvalidMatrix(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is frozen and cannot be mutated")]
    FrozenVertex(String),
    #[error("graph is not bipartite: {0}")]
    NotBipartite(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("division is not exact: ({dividend}) / ({divisor}) leaves remainder {remainder}")]
    InexactDivision {
        dividend: String,
        divisor: String,
        remainder: String,
    },
    #[error("substitution value for `{0}` is not an invertible monomial")]
    NonInvertibleSubstitution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expression is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("expected a subtraction-free polynomial: {0}")]
    NotSubtractionFree(String),
    #[error("vertex `{vertex}` is neither a sink nor a source")]
    NotSinkOrSource { vertex: String },
    #[error("enumeration bound {bound} exceeds budget {budget}")]
    BudgetExceeded { bound: u128, budget: u128 },
    #[error("counts are not polynomial in p: {0}")]
    NonPolynomial(String),
    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),
    #[error("counting polynomial has negative coefficients: {0}")]
    NegativeCoefficient(String),
    #[error("endomorphism does not split over F_{p}; its characteristic polynomial has an irreducible factor")]
    SplitsOverExtension { p: u32 },
    #[error("no stable modal decomposition across samples: {0}")]
    UnstableDecomposition(String),
    #[error("decomposition postcondition failed: {0}")]
    DecompositionCheck(String),
    #[error("could not sample a generic representation: {0}")]
    GenericityFailure(String),
    #[error("dimension vector violates the grading condition: {0}")]
    GradingCondition(String),
    #[error("modulus {0} is not a supported prime")]
    BadPrime(u64),
    #[error("{0}")]
    Other(String),
}
