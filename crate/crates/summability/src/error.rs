//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by sequence algebra, quadrature, transforms, and the runner.
#[derive(Debug, Error)]
pub enum Error {
    /// A weight evaluated to a non-finite or negative value.
    #[error("invalid weight at index {index}: {value}")]
    InvalidWeight { index: usize, value: f64 },

    /// A sequence value of zero appeared where a denominator is required.
    #[error("degenerate sequence: c[{index}] = 0 appears in a denominator")]
    DegenerateSequence { index: usize },

    /// A sequence required to tend to zero does not do so over the tail horizon.
    #[error("sequence does not tend to zero over the tail horizon: c[{index}] = {value}")]
    NotVanishing { index: usize, value: f64 },

    /// The convolution normalizer vanished.
    #[error("zero normalizer: R_{n} = 0")]
    ZeroNormalizer { n: usize },

    /// Coefficient grid too coarse for the requested truncation order.
    #[error("aliasing: {grid_points} grid points cannot resolve order {order} (need >= {needed})")]
    Aliasing {
        grid_points: usize,
        order: usize,
        needed: usize,
    },

    /// Requested index exceeds the expansion truncation order.
    #[error("truncation order exceeded: requested {requested}, expansion holds {available}")]
    TruncationOrder { requested: usize, available: usize },

    /// The principal-value cutoff sequence failed to settle.
    #[error("principal-value cutoffs diverge: |delta| grew from {previous:e} to {last:e}")]
    PvDivergence { previous: f64, last: f64 },

    /// Kernel evaluated at its singular point.
    #[error("conjugate kernel is singular at t = 0")]
    KernelSingularity,

    /// A scalar argument was outside its admissible range.
    #[error("parameter out of range: {0}")]
    Parameter(String),

    /// A slice was shorter than an operation requires.
    #[error("insufficient entries: need {needed}, have {have}")]
    InsufficientEntries { needed: usize, have: usize },

    /// Too few usable data points for a fit or experiment.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A name did not resolve against the signal or sequence registries.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// Configuration document rejected.
    #[error("config error: {0}")]
    Config(String),

    /// Filesystem failure while emitting reports.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for config/input problems, 3 for
    /// numeric failures. Exit codes 0/1 are reserved for pass/fail outcomes.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::UnknownName(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}
