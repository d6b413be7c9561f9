use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed PD token `{0}`")]
    MalformedToken(String),
    #[error("arc {arc} appears {count} times (expected exactly 2)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("no consistent orientation: {0}")]
    Orientation(String),
    #[error("vertex has {got} bits but the diagram has {expected} crossings")]
    VertexLength { expected: usize, got: usize },
    #[error("malformed edge: {0}")]
    MalformedEdge(String),
    #[error("move does not match the diagram: {0}")]
    PatternMismatch(String),
    #[error("unimplemented move variant: {0}")]
    UnimplementedVariant(String),
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("resolution has {0} circles, above the supported 63")]
    TooManyCircles(usize),
    #[error("generator does not live on this complex")]
    ForeignGenerator,
    #[error("homology over Z[t] is not supported; specialize to khovanov or lee")]
    TheoryUnsupported,
    #[error("movie invalid at event {index}: {reason}")]
    InvalidMovie { index: usize, reason: String },
    #[error("movie endpoints do not match: {0}")]
    Endpoint(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("movie file: {0}")]
    MovieFormat(String),
}
