//! Classification of monic real polynomials as spectrally Perron, weakly
//! spectrally Perron, or neither.
//!
//! Two independent routes are provided. [`classify::classify_by_theorem`]
//! reads the verdict off the gcd of the indices of the nonzero coefficients,
//! valid when the polynomial is written `t^n - c_1 t^(n-1) - ... - c_n` with
//! every `c_k >= 0`. [`spectral::spectral_classification`] computes all roots
//! numerically and applies the definition directly. [`classify::cross_check`]
//! runs both and reports whether they agree.

pub mod classify;
pub mod cli;
pub mod digraph;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod spectral;

pub use error::{Error, Result};
pub use poly::{index_profile, parse_polynomial, IndexProfile, Polynomial};
pub use spectral::{PerronClass, SpectrumReport, Verdict};

/// Significant digits used for every float written to JSON or text reports.
pub const REPORT_DIGITS: usize = 12;

/// Rounds to [`REPORT_DIGITS`] significant digits (round-half-even on the
/// exact binary value). Negative zero becomes zero.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    let text = format!("{:.*e}", REPORT_DIGITS - 1, x);
    text.parse::<f64>().expect("formatted float parses") + 0.0
}
