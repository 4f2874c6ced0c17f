//! Shared error type for the whole engine.
//!
//! Every validator reports the *first* witness it finds in a deterministic
//! sweep order, so failures are reproducible and small enough to check by
//! hand.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An algebraic law failed. `law` is a stable dotted name
    /// (e.g. `tensor.distributive`) and `witness` lists the offending
    /// elements by label.
    #[error("law `{law}` violated at ({})", witness.join(", "))]
    LawViolation {
        law: &'static str,
        witness: Vec<String>,
    },

    /// A standard quantale kind we deliberately do not model (the product
    /// t-norm has no faithful finite chain submodel).
    #[error("unsupported standard quantale kind `{0}`")]
    UnsupportedKind(String),

    /// Two operands live on different point sets.
    #[error("operands live on different point sets")]
    SpaceMismatch,

    /// An enumeration would exceed its configured cap. `flag` names the
    /// CLI flag / environment variable that raises the cap.
    #[error("{what} exceeds the cap of {cap} (raise via {flag})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        flag: &'static str,
    },

    #[error("relation is not reflexive at `{point}`")]
    NotReflexive { point: String },

    #[error("relation is not transitive at (`{x}`, `{y}`, `{z}`)")]
    NotTransitive { x: String, y: String, z: String },

    /// The fuzzy set handed to an operation that requires a closed set is
    /// not a member of the cotopology.
    #[error("fuzzy set is not closed in the cotopology")]
    NotClosed,

    /// The operation is only defined on stratified spaces.
    #[error("cotopology is not stratified")]
    NotStratified,

    /// Extension along the sobrification unit requires a sober target.
    #[error("target space is not sober")]
    TargetNotSober,

    /// Extension along the sobrification unit requires a stratified source.
    #[error("source cotopology is not stratified")]
    SourceNotStratified,

    /// The check is only meaningful over linearly ordered quantales.
    #[error("quantale is not linearly ordered")]
    NonLinearQuantale,

    /// The construction needs every element to be a join of coprimes.
    #[error("quantale does not have enough coprimes")]
    NotEnoughCoprimes,

    /// The duality needs `¬¬p = p`; `witness` is a `p` where it fails.
    #[error("quantale fails the law of double negation at `{witness}`")]
    NoDoubleNegation { witness: String },

    /// Malformed or unresolvable input (bad JSON, unknown label, shape
    /// mismatch, ...).
    #[error("bad input: {0}")]
    BadInput(String),
}
