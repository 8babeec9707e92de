//! Continued fractions in Q((1/T)) of the power series attached to the
//! Thue-Morse-type words W(i).
//!
//! The crate builds the words ([`words`]), expands
//! `θ_i = sum w_{i,n} T^-n` into a continued fraction by exact Euclidean
//! division with a certified prefix ([`cfengine`]), generates the predicted
//! expansion from its recursive laws ([`conjecture`]), and compares the two
//! ([`verify`]).
//!
//! ```
//! use thue_cf::{verify::verify_expansion, words::FamilyIndex};
//!
//! let report = verify_expansion(FamilyIndex::new(1)?, 12)?;
//! assert!(report.all_match());
//! assert_eq!(report.matches[0].computed.to_string(), "T + 1");
//! # Ok::<(), thue_cf::Error>(())
//! ```

pub mod cfengine;
pub mod conjecture;
mod error;
pub mod exactalg;
pub mod exec;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use exactalg::{Degree, LaurentSeries, Polynomial, Rational};
pub use words::FamilyIndex;
