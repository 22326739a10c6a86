use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Each variant maps onto one of the CLI exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} = {value} is out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        limit: f64,
    },

    #[error("no zeros in table")]
    NoZeros,

    #[error("line {line}: cannot parse {content:?} as an ordinate")]
    Parse { line: usize, content: String },

    #[error("line {line}: ordinate {value} does not exceed the previous one")]
    NonMonotone { line: usize, value: f64 },

    #[error("line {line}: ordinate {value} is below the first zero (14)")]
    OrdinateTooSmall { line: usize, value: f64 },

    #[error("zero not simple or ordinate inaccurate at gamma = {gamma} (|Z| = {z_abs:e}, |Z'| = {dz_abs:e})")]
    NotSimple { gamma: f64, z_abs: f64, dz_abs: f64 },

    #[error("characteristic function has not decayed below {threshold:e} (|nu_hat| = {value:e} at xi = {xi})")]
    InsufficientDecay { threshold: f64, value: f64, xi: f64 },

    #[error("grid too coarse: xi_step * x_max = {product} must be below pi")]
    GridTooCoarse { product: f64 },

    #[error("series too coarse: stride {stride} but unit resolution is required")]
    SeriesTooCoarse { stride: u64 },

    #[error("delta {delta} too large for V = {v}: sum of (r - delta) over r > delta is {mass}")]
    DeltaTooLarge { delta: f64, v: f64, mass: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed checkpoint file: {0}")]
    Checkpoint(String),

    #[error("missing input file {}", .0.display())]
    MissingFile(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::OutOfRange { .. } | Error::Degenerate(_) => 3,
            Error::MissingFile(_) => 4,
            Error::NoZeros
            | Error::Parse { .. }
            | Error::NonMonotone { .. }
            | Error::OrdinateTooSmall { .. }
            | Error::Checkpoint(_) => 5,
            Error::NotSimple { .. } => 6,
            Error::InsufficientDecay { .. }
            | Error::GridTooCoarse { .. }
            | Error::SeriesTooCoarse { .. } => 7,
            Error::DeltaTooLarge { .. } => 8,
            Error::Io(_) | Error::Json(_) => 9,
        }
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::OutOfRange { .. } => "out_of_range",
            Error::NoZeros => "no_zeros",
            Error::Parse { .. } => "parse",
            Error::NonMonotone { .. } => "non_monotone",
            Error::OrdinateTooSmall { .. } => "ordinate_too_small",
            Error::NotSimple { .. } => "not_simple",
            Error::InsufficientDecay { .. } => "insufficient_decay",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::SeriesTooCoarse { .. } => "series_too_coarse",
            Error::DeltaTooLarge { .. } => "delta_too_large",
            Error::Degenerate(_) => "degenerate",
            Error::Checkpoint(_) => "checkpoint",
            Error::MissingFile(_) => "missing_file",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn out_of_range<T>(what: &'static str, value: f64, limit: f64) -> Result<T> {
    Err(Error::OutOfRange { what, value, limit })
}
