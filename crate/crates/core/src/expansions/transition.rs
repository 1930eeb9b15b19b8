use super::{cut_grouped, EvalReport, Regime};
use crate::coeffs::f64cache;
use crate::coeffs::poly::horner;
use crate::error::{domain, Result};
use crate::special::{half_erfc, CompensatedSum};
use std::f64::consts::PI;

fn check(a: f64, tau: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() || !tau.is_finite() {
        return Err(domain(format!("need finite a > 0 and τ, got a = {a}, τ = {tau}")));
    }
    if a + tau * a.sqrt() <= 0.0 {
        return Err(domain(format!("z = a + τ√a is not positive for a = {a}, τ = {tau}")));
    }
    Ok(())
}

/// Terms (2πa)^{−½}e^{−τ²/2}C_n(τ)a^{−n/2}, n = 0..count.
pub fn transition_terms(a: f64, tau: f64, count: usize) -> Vec<f64> {
    let pref = (-0.5 * tau * tau).exp() / (2.0 * PI * a).sqrt();
    let rs = 1.0 / a.sqrt();
    let mut scale = pref;
    (0..count)
        .map(|n| {
            let t = scale * horner(&f64cache::c(n), tau);
            scale *= rs;
            t
        })
        .collect()
}

/// Q(a, a+τ√a) from the transition expansion summed over n < N.
pub fn q_transition(a: f64, tau: f64, n: usize) -> Result<EvalReport> {
    check(a, tau)?;
    let terms = transition_terms(a, tau, n + 1);
    let mut s = CompensatedSum::new();
    s.add(half_erfc(tau));
    for t in &terms[..n] {
        s.add(*t);
    }
    Ok(EvalReport::new(s.value(), n, terms[n].abs(), Regime::Transition))
}

/// The transition expansion stopped near its least term; at most `max_terms` terms.
pub fn q_transition_auto(a: f64, tau: f64, max_terms: usize) -> Result<EvalReport> {
    check(a, tau)?;
    let base = half_erfc(tau);
    let terms = transition_terms(a, tau, max_terms.max(2));
    // converged once two consecutive terms sit below rounding level
    let mut len = terms.len();
    let mut converged = false;
    let floor = 1e-18 * base.max(terms[0].abs());
    for i in 1..terms.len() {
        if terms[i].abs() < floor && terms[i - 1].abs() < floor {
            len = i + 1;
            converged = true;
            break;
        }
    }
    let cut = cut_grouped(&terms[..len], converged);
    let mut s = CompensatedSum::new();
    s.add(base);
    for t in &terms[..cut.n] {
        s.add(*t);
    }
    let mut r = EvalReport::new(s.value(), cut.n, cut.first_neglected, Regime::Transition);
    r.error_estimate = cut.error_estimate;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term_at_zero() {
        for a in [2.0, 30.0, 1e4] {
            let r = q_transition(a, 0.0, 1).unwrap();
            let want = 0.5 - 1.0 / 3.0 / (2.0 * PI * a).sqrt();
            assert!((r.value - want).abs() < 1e-16);
        }
        assert!(q_transition(4.0, -2.0, 3).is_err());
    }
}
