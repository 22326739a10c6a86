//! Mertens function laboratory: M(x) from a segmented sieve, its
//! reconstruction from zeta zeros, the limiting distribution of
//! e^{−y/2} M(e^y), and Monte Carlo probes of that distribution's tails.

pub mod cli;
pub mod error;
pub mod explicit;
pub mod limiting;
pub mod numeric;
pub mod random_model;
pub mod sieve;
pub mod stats;
pub mod zeta;

pub use error::{Error, Result};
pub use sieve::{mertens_series, MertensSeries, SeriesKind};
pub use zeta::{load_zeros, ZeroRecord, ZeroSet};

/// Format a float with 17 significant digits so that it parses back exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
