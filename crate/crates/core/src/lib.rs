//! Exact determinants of matrices that commute or anti-commute with an
//! anti-involution, the sum-of-two-squares certificates they carry, and the
//! lattice matching counts built on them.
//!
//! ```
//! use centro::fixtures::example_matrix;
//! use centro::alt_centro::det_via_complementary;
//!
//! let d = det_via_complementary(&example_matrix(), false).unwrap();
//! assert_eq!(d.det.to_string(), "10");
//! ```

pub mod alt_centro;
pub mod commands;
pub mod error;
pub mod factor;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod regions;
pub mod report;
pub mod sample;
pub mod structure;
pub mod two_squares;

pub use error::{Error, Result};
pub use field::{Field, Fp, Gaussian, PrimeModulus, Rational};
pub use matrix::Matrix;
