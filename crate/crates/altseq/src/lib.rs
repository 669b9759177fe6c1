//! Exact distribution, exact-rational moments, and asymptotic-series fits
//! for the longest-alternating-subsequence statistic on uniform random
//! permutations.
//!
//! The pipeline is exact end to end: counts are arbitrary-precision
//! integers, moments are rationals, and the inverse-power fits solve exact
//! Vandermonde systems, with square roots rounded to a configurable number
//! of significant digits at the last moment.

pub mod dist;
pub mod error;
pub mod fit;
pub mod io;
pub mod mc;
pub mod moment;
pub mod perm;
pub mod verify;

pub use error::Error;
