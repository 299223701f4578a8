use thiserror::Error;

/// Errors raised by the soft-bitopology kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe size mismatch: expected {expected}, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("universe size {0} is outside the supported range 1..=64")]
    UnsupportedUniverse(usize),

    #[error("element {element} is outside a universe of size {universe_size}")]
    OutOfUniverse {
        element: usize,
        universe_size: usize,
    },

    #[error("soft sets have different shapes ({left_params}x{left_universe} vs {right_params}x{right_universe})")]
    ShapeMismatch {
        left_params: usize,
        left_universe: usize,
        right_params: usize,
        right_universe: usize,
    },

    #[error("parameter index {param} out of range (parameter count {count})")]
    ParamOutOfRange { param: usize, count: usize },

    #[error("{what}: requested {requested}, limit {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("not a topology: {0}")]
    NotATopology(String),

    #[error("not a soft topology: {0}")]
    NotASoftTopology(String),

    #[error("member {index} is not a soft subset of the ambient soft set")]
    NotASoftSubset { index: usize },

    #[error("section at parameter {param} is empty, so there are no soft elements")]
    EmptySection { param: usize },

    #[error(
        "the empty subset of SE(F) has no representation by a soft set with nonempty sections"
    )]
    EmptyRepresentation,

    #[error("family does not cover the target: {0}")]
    NotACover(String),

    #[error("set {set} is not open in the component topology at parameter {param}")]
    NotComponentOpen { param: usize, set: String },

    #[error("truncation length {m} must exceed every exception label (largest is {max_label})")]
    TruncationTooSmall { m: u64, max_label: u64 },

    #[error("a template family admits at most one indexed template")]
    MultipleTemplates,

    #[error("{0}")]
    Input(String),
}

impl Error {
    /// Capacity guards map to their own exit status in the CLI and FFI.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
