use thiserror::Error;

/// Errors raised by constructions in this crate.
///
/// Axiom failures of user supplied structures are not errors: they are
/// collected in a [`ValidationReport`](crate::ValidationReport).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("arrows are not composable: {0}")]
    NotComposable(String),
    #[error("groupoid is not connected: {0}")]
    NotConnected(String),
    #[error("diagram shape is disconnected ({0} components); fibre coproducts differ from total coproducts, refusing to compute")]
    DisconnectedDiagram(usize),
    #[error("not a vertex arrow: {0}")]
    NotVertexArrow(String),
    #[error("subgroupoid is not normal: {0}")]
    NotNormal(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("base groupoid is infinite; only structural reports are available ({generators} generators, {relations} relations)")]
    InfiniteBase { generators: usize, relations: usize },
    #[error("integer overflow during exact arithmetic")]
    Overflow,
    #[error("morphism is not over the expected base map: {0}")]
    NotOver(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
