//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arrows are not composable: {0}")]
    NotComposable(String),
    #[error("arrows lie in different fibers: {0}")]
    FiberMismatch(String),
    #[error("argument outside the deformation domain: {0}")]
    NotInDomain(String),
    #[error("operation unsupported by this model: {0}")]
    Unsupported(String),
    #[error("not a groupoid morphism: {0}")]
    NotAMorphism(String),
    #[error("fiber distances are not right-invariant: {0}")]
    RightInvarianceViolated(String),
    #[error("group action is not free; no norm can be derived from the point distance")]
    NotFree,
    #[error("iterate index must be nonzero")]
    ZeroIndex,
    #[error("invalid model spec: {0}")]
    InvalidModelSpec(String),
    #[error("axiom {axiom} violated: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("invalid sampler: {0}")]
    InvalidSampler(String),
    #[error("induced composition undefined: {0}")]
    NotComposableInduced(String),
    #[error("net evaluation failed along the schedule: {0}")]
    DomainExhausted(String),
    #[error("limit did not converge: {0}")]
    NotConverging(String),
    #[error("deformation fails the weak tangent axioms on samples: {0}")]
    NotGw(String),
    #[error("unknown check suite: {0}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
