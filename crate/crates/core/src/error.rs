use thiserror::Error;

/// Errors surfaced by every layer of the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("tensor shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("axiom violation: {name} (witness {witness})")]
    AxiomViolation { name: String, witness: String },
    #[error("elements belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("antipode matrix is singular")]
    SingularAntipode,
    #[error("smash multiplication is not associative (witness {0})")]
    AssociativityFailure(String),
    #[error("image of the modified trace has dimension {0}, expected 1")]
    DegenerateImage(usize),
    #[error("projector solution space has dimension {0}, expected 1")]
    DegenerateSolutionSpace(usize),
    #[error("projector candidate squares to zero")]
    NilpotentCandidate,
    #[error("theta matrix is identically zero")]
    AllZeroTheta,
    #[error("q-identity failed to vanish for A = {0}")]
    IdentityFailure(u32),
    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),
    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),
    #[error("syntax error at line {line}, col {col}: expected {expected}")]
    SyntaxError {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("rewriting of `{word}` did not terminate within {budget} steps")]
    NonTerminatingRewrite { word: String, budget: usize },
    #[error("product `{0}` leaves the declared basis span")]
    BasisEscape(String),
    #[error("algebra has no monomial basis labeling: {0}")]
    NotPresentable(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("bad builtin parameter: {0}")]
    BadParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
