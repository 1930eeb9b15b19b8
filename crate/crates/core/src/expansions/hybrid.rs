//! Regime selection for Q(a,x) on a > 0.

use super::{outer_q_series, q_transition_auto, q_uniform_auto, EvalReport, Regime};
use crate::error::{domain, Error, Result};
use crate::oracle::{oracle_q, BigFloat};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HybridConfig {
    /// Transition expansion when |τ| ≤ transition_factor·a^{1/6}.
    pub transition_factor: f64,
    /// Below this a the extended-precision reference is used.
    pub reference_below: f64,
    pub max_terms: usize,
    /// Re-evaluate with the uniform expansion when the chosen regime's
    /// estimate exceeds this relative level.
    pub uniform_fallback: Option<f64>,
}

impl Default for HybridConfig {
    fn default() -> Self {
        Self {
            transition_factor: 0.9,
            reference_below: 5.0,
            max_terms: 100,
            uniform_fallback: Some(1e-12),
        }
    }
}

const UNIFORM_MAX_TERMS: usize = 40;

// about 29 decimal digits, plenty for a binary64 result
const REFERENCE_PREC: u32 = 96;

fn reference(a: f64, x: f64) -> Result<EvalReport> {
    let q = oracle_q(
        &BigFloat::from_f64(a, REFERENCE_PREC),
        &BigFloat::from_f64(x, REFERENCE_PREC),
    )?
    .to_f64();
    let mut r = EvalReport::new(q, 0, 0.0, Regime::Reference);
    r.error_estimate = q.abs() * f64::EPSILON;
    Ok(r)
}

pub fn hybrid_q(a: f64, x: f64) -> Result<EvalReport> {
    hybrid_q_with(a, x, &HybridConfig::default())
}

pub fn hybrid_q_with(a: f64, x: f64, cfg: &HybridConfig) -> Result<EvalReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("need finite a > 0, got {a}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("need finite x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(EvalReport::new(1.0, 0, 0.0, Regime::Reference));
    }
    if a < cfg.reference_below {
        return reference(a, x);
    }
    let tau = (x - a) / a.sqrt();
    let mut r = if tau.abs() <= cfg.transition_factor * a.powf(1.0 / 6.0) {
        q_transition_auto(a, tau, cfg.max_terms)?
    } else {
        match outer_q_series(a, x, None) {
            Err(Error::Degenerate(_)) => q_transition_auto(a, tau, cfg.max_terms)?,
            other => other?,
        }
    };
    if let Some(level) = cfg.uniform_fallback {
        if r.error_estimate > level * r.value.abs() {
            let u = q_uniform_auto(a, x / a, UNIFORM_MAX_TERMS)?;
            if u.error_estimate < r.error_estimate {
                r = u;
            }
        }
    }
    r.value = r.value.clamp(0.0, 1.0);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::q_f64;

    #[test]
    fn dispatch() {
        assert_eq!(hybrid_q(100.0, 0.0).unwrap().value, 1.0);
        assert_eq!(hybrid_q(100.0, 200.0).unwrap().regime, Regime::OuterUpper);
        assert_eq!(hybrid_q(100.0, 40.0).unwrap().regime, Regime::OuterLower);
        let r = hybrid_q(100.0, 105.0).unwrap();
        assert_eq!(r.regime, Regime::Transition);
        let q = q_f64(100.0, 105.0).unwrap();
        assert!((r.value - q).abs() < 1e-10 * q);
        assert_eq!(hybrid_q(2.0, 1.0).unwrap().regime, Regime::Reference);
        assert!(hybrid_q(-1.0, 1.0).is_err());
    }
}
