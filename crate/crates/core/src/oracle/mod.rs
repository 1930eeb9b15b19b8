//! Extended-precision reference implementations. Only convergent algorithms
//! live here; nothing in this module uses an asymptotic expansion.

pub mod bigfloat;
pub mod contour;
pub mod gamma;

pub use bigfloat::{BigFloat, DEFAULT_PREC};
pub use contour::oracle_c_contour;
pub use gamma::{gamma_positive, oracle_gamma_upper, oracle_gammastar, oracle_p, oracle_pq, oracle_q, rgamma};

use crate::error::Result;

pub fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, DEFAULT_PREC)
}

/// Q(a,x) at binary64 inputs, rounded back to binary64.
pub fn q_f64(a: f64, x: f64) -> Result<f64> {
    Ok(oracle_q(&bf(a), &bf(x))?.to_f64())
}

/// Q(a, a+τ√a) with the argument formed in extended precision.
pub fn q_at_tau(a: f64, tau: f64) -> Result<BigFloat> {
    let a = bf(a);
    let x = a.add(&bf(tau).mul(&a.sqrt()));
    oracle_q(&a, &x)
}
