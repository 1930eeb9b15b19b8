//! Incomplete gamma function Q(a, x) in and around the transition region
//! x ≈ a, its inverse in x, and the negative zero of γ*(a, x).
//!
//! Coefficients are generated exactly in rational arithmetic; evaluation is
//! binary64; an extended-precision oracle backs every accuracy check.

// `!(x > 0.0)` style guards are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coeffs;
pub mod error;
pub mod expansions;
pub mod figure;
pub mod golden;
pub mod inversion;
pub mod oracle;
pub mod special;

pub use error::{Error, Result};
