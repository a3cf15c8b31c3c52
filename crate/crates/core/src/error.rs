use thiserror::Error;

/// Unified error type for the whole library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("exponent at position {pos} is not an integer")]
    NonIntegerExponent { pos: usize },
    #[error("expression contains a transcendental (ln) node")]
    ContainsTranscendental,
    #[error("division by an identically zero polynomial or function")]
    DivisionByZero,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("unknown variable `{name}`")]
    UnknownVariable { name: String },
    #[error("degenerate web: {detail}")]
    DegenerateWeb { detail: String },
    #[error("degenerate basic invariant: {detail}")]
    BasicInvariantDegenerate { detail: String },
    #[error("unsupported web size d = {d}")]
    UnsupportedD { d: usize },
    #[error("unsupported 3-subweb triple {triple:?}")]
    UnsupportedTriple { triple: [usize; 3] },
    #[error("operator weight mismatch: expected {expected}, found {found}")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("elimination pivot vanishes identically: {pivot}")]
    EliminationSingular { pivot: String },
    #[error("missing symbol `{name}` in symbol table")]
    MissingSymbol { name: String },
    #[error("criterion not applicable: {condition}")]
    NotApplicable { condition: String },
    #[error("foliation index {index} out of range")]
    IndexOutOfRange { index: usize },
    #[error("no valid sample points found in region")]
    RegionEmpty,
    #[error("domain violation during numeric evaluation: {detail}")]
    DomainViolation { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
