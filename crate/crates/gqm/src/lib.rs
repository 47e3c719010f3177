//! Exact arithmetic for quantum-like models built on vector spaces over
//! finite fields.
//!
//! States live in `GF(q)^N` modulo nonzero scalars, measurement outcomes are
//! dual vectors, and outcome probabilities come from a 0/1 absolute value on
//! brackets. Everything downstream of that rule is an exact rational number,
//! so spin probability tables, correlation bounds, and subspace counts are
//! reproduced with zero tolerance. The `q = 1` degeneration is built
//! separately on a multiplication-only monoid where superposition is a typed
//! error rather than a representable state.
//!
//! Module map:
//! - [`gf`]: arithmetic in `GF(p^n)` with deterministic field construction
//! - [`qcount`]: q-analogs, Gaussian binomials, subspace counts and a
//!   brute-force enumeration oracle
//! - [`projective`]: projective points, kets/bras of the two-level model
//! - [`measurement`]: observables, the Born-like rule, expectations
//! - [`composite`]: two-particle systems, the singlet, correlation tables,
//!   CHSH sweeps
//! - [`lhv`]: exact local-hidden-variable feasibility with rational
//!   certificates
//! - [`fun_limit`]: the `q = 1` monoid limit and its consistency checks
//! - [`report`], [`cli`]: reproducible table/JSON output and the command-line
//!   front end

pub mod cli;
pub mod composite;
pub mod fun_limit;
pub mod gf;
pub mod lhv;
pub mod measurement;
pub mod projective;
pub mod qcount;
pub mod rat;
pub mod report;

pub use rat::Rat;

/// Errors shared across the crate. Variant names follow the operation
/// contracts; every error is recoverable and carries enough context to be
/// reported verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    InvalidPrime(u64),
    #[error("extension degree must be >= 1, got {0}")]
    InvalidDegree(u32),
    #[error("field order {0} exceeds the implementation cap {1}")]
    FieldTooLarge(u64, u64),
    #[error("operands belong to different field contexts")]
    FieldMismatch,
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("the zero vector does not represent a projective point")]
    ZeroVector,
    #[error("index {index} out of range [0, {max}]")]
    BadIndex { index: u64, max: u64 },
    #[error("dual vectors do not form a basis candidate: {0}")]
    BadBasis(&'static str),
    #[error("outcome dual vector is not part of the observable")]
    OutcomeNotInObservable,
    #[error("spin observable requires two distinct directions")]
    DegenerateObservable,
    #[error("observable outcome values must be distinct")]
    DuplicateOutcomeValue,
    #[error("singlet requires two distinct state indices")]
    DegenerateSinglet,
    #[error("expected a two-outcome +1/-1 observable")]
    BadObservable,
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("q = {0} is not a prime power")]
    InvalidField(u64),
    #[error("problem size exceeds the documented cap: {0}")]
    TooLarge(String),
    #[error("joint table is malformed: {0}")]
    BadTable(String),
    #[error("addition of nonzero monoid elements is not defined")]
    AdditionForbidden,
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
