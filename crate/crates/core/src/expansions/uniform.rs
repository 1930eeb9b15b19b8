use super::{cut_enveloped, EvalReport, Regime};
use crate::coeffs::tables::{c_eta_series, c_lambda_closed};
use crate::error::{domain, Result};
use crate::special::{eta_of_lambda, half_erfc, CompensatedSum};
use std::f64::consts::PI;

/// Beyond this |η| the Taylor table gives way to the closed form.
pub const ETA_SWITCH: f64 = 2.5;

/// c_n(η); `lambda` must be the λ with η = η(λ).
pub fn c_eta(n: usize, eta: f64, lambda: f64) -> f64 {
    if eta.abs() <= ETA_SWITCH {
        c_eta_series(n, eta)
    } else {
        c_lambda_closed(n, lambda, eta)
    }
}

/// Terms (2πa)^{−½}e^{−η²a/2}c_n(η)a^{−n}, n = 0..count.
pub fn uniform_terms(a: f64, lambda: f64, count: usize) -> Vec<f64> {
    let eta = eta_of_lambda(lambda);
    let pref = (-0.5 * eta * eta * a).exp() / (2.0 * PI * a).sqrt();
    let mut scale = pref;
    (0..count)
        .map(|n| {
            let t = scale * c_eta(n, eta, lambda);
            scale /= a;
            t
        })
        .collect()
}

/// Q(a, λa) from the uniform expansion summed over n < N.
pub fn q_uniform(a: f64, lambda: f64, n: usize) -> Result<EvalReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("need finite a > 0, got {a}")));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(format!("need finite λ > 0, got {lambda}")));
    }
    let eta = eta_of_lambda(lambda);
    let terms = uniform_terms(a, lambda, n + 1);
    let mut s = CompensatedSum::new();
    s.add(half_erfc(eta * a.sqrt()));
    for t in &terms[..n] {
        s.add(*t);
    }
    Ok(EvalReport::new(s.value(), n, terms[n].abs(), Regime::Uniform))
}

/// The uniform expansion stopped at its least term, at most `max_terms` terms.
pub fn q_uniform_auto(a: f64, lambda: f64, max_terms: usize) -> Result<EvalReport> {
    let r = q_uniform(a, lambda, 0)?;
    let eta = eta_of_lambda(lambda);
    let base = half_erfc(eta * a.sqrt());
    let mut terms = Vec::with_capacity(max_terms);
    let mut converged = false;
    let pref = (-0.5 * eta * eta * a).exp() / (2.0 * PI * a).sqrt();
    let mut scale = pref;
    let mut acc = base;
    for n in 0..max_terms.max(1) {
        let t = scale * c_eta(n, eta, lambda);
        terms.push(t);
        acc += t;
        scale /= a;
        if n > 0 && t.abs() < 1e-18 * acc.abs() && terms[n - 1].abs() < 1e-18 * acc.abs() {
            converged = true;
            break;
        }
    }
    let cut = cut_enveloped(&terms, converged);
    let mut s = CompensatedSum::new();
    s.add(base);
    for t in &terms[..cut.n] {
        s.add(*t);
    }
    let mut out = EvalReport::new(s.value(), cut.n, cut.first_neglected, r.regime);
    out.error_estimate = cut.error_estimate;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::q_transition;
    use super::*;

    #[test]
    fn agrees_with_transition_at_lambda_one() {
        let a = 7.0;
        let u = q_uniform(a, 1.0, 1).unwrap().value;
        let t = q_transition(a, 0.0, 1).unwrap().value;
        assert!((u - t).abs() < 1e-16);
        assert!(q_uniform(a, 0.0, 1).is_err());
    }
}
