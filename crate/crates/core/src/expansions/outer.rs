//! Outer expansions in b_n(λ) and the expansion at the transition point in a_n(ε).

use super::{cut_plain, EvalReport, LogScaled, Regime};
use crate::coeffs::f64cache;
use crate::coeffs::poly::horner;
use crate::error::{domain, Error, Result};
use crate::special::{lambda_phi, ln_scaled_gamma, CompensatedSum};
use std::f64::consts::PI;

/// Exact b_n are generated up to this index for the optimally truncated sums.
pub const OUTER_MAX_TERMS: usize = 80;

/// A Γ-type series value·exp(ln_prefactor) with its own truncation data.
#[derive(Debug, Clone)]
pub struct OuterSeries {
    pub ln_prefactor: f64,
    pub terms: Vec<f64>,
    pub sum: f64,
    pub terms_used: usize,
    /// Both relative to exp(ln_prefactor).
    pub first_neglected: f64,
    pub error_estimate: f64,
}

// T_n = t0·rⁿ·b_n(μ)·sⁿ, generated until the tail is below rounding level.
fn b_series(t0: f64, r: f64, mu: f64, sgn: f64, count: usize) -> (Vec<f64>, bool) {
    let mut out = Vec::with_capacity(count);
    let mut scale = t0;
    let mut acc = 0.0f64;
    let mut small = 0;
    for n in 0..count {
        let t = scale * horner(&f64cache::b(n), mu);
        if !t.is_finite() {
            break;
        }
        out.push(t);
        acc += t;
        if t.abs() < 1e-18 * acc.abs() {
            small += 1;
            if small >= 2 {
                return (out, true);
            }
        } else {
            small = 0;
        }
        scale *= sgn * r;
    }
    (out, false)
}

fn finish(ln_prefactor: f64, terms: Vec<f64>, n: Option<usize>, converged: bool) -> OuterSeries {
    let (used, fneg, est) = match n {
        Some(n) => {
            let f = terms.get(n).map_or(0.0, |t| t.abs());
            (n.min(terms.len()), f, f)
        }
        None => {
            let c = cut_plain(&terms, converged);
            (c.n, c.first_neglected, c.error_estimate)
        }
    };
    let sum: CompensatedSum = terms[..used].iter().copied().collect();
    OuterSeries {
        ln_prefactor,
        sum: sum.value(),
        terms,
        terms_used: used,
        first_neglected: fneg,
        error_estimate: est,
    }
}

fn check_az(a: f64, z: f64) -> Result<()> {
    if !(a > 0.0 && z > 0.0) || !a.is_finite() || !z.is_finite() {
        return Err(domain(format!("need finite a > 0 and z > 0, got a = {a}, z = {z}")));
    }
    Ok(())
}

/// Σ (−a)ⁿb_n(λ)/(z−a)^{2n+1} with z^a e^{−z} split off. `n` fixes the number
/// of terms; None truncates at the least term.
fn tricomi_mahler(a: f64, z: f64, n: Option<usize>) -> Result<OuterSeries> {
    check_az(a, z)?;
    if (z - a).abs() <= a.sqrt() {
        return Err(Error::Degenerate(format!(
            "|z − a| = {} is within √a; the outer series has no decreasing terms",
            (z - a).abs()
        )));
    }
    let lam = z / a;
    let count = n.map_or(OUTER_MAX_TERMS, |n| n + 1);
    let (terms, conv) = b_series(1.0 / (z - a), 1.0 / (a * (lam - 1.0) * (lam - 1.0)), lam, -1.0, count);
    Ok(finish(a * z.ln() - z, terms, n, conv))
}

fn gamma_report(s: &OuterSeries, regime: Regime, negate: bool) -> EvalReport {
    let sum = if negate { -s.sum } else { s.sum };
    let scale = s.ln_prefactor.exp();
    let ls = LogScaled {
        ln_abs: s.ln_prefactor + sum.abs().ln(),
        sign: sum.signum(),
    };
    let mut r = EvalReport::new(ls.value(), s.terms_used, s.first_neglected * scale, regime);
    r.error_estimate = s.error_estimate * scale;
    r.log_scaled = Some(ls);
    r
}

/// Γ(a,z) for λ = z/a > 1 from the outer series; `n` = None picks the least term.
pub fn gamma_outer_upper(a: f64, z: f64, n: Option<usize>) -> Result<EvalReport> {
    if !(z > a) {
        return Err(domain(format!("upper outer series needs z > a, got a = {a}, z = {z}")));
    }
    Ok(gamma_report(&tricomi_mahler(a, z, n)?, Regime::OuterUpper, false))
}

/// γ(a,z) for 0 < λ < 1 from the outer series.
pub fn gamma_outer_lower(a: f64, z: f64, n: Option<usize>) -> Result<EvalReport> {
    if !(z < a) {
        return Err(domain(format!("lower outer series needs z < a, got a = {a}, z = {z}")));
    }
    Ok(gamma_report(&tricomi_mahler(a, z, n)?, Regime::OuterLower, true))
}

/// Γ(−a,z) for a > 0, z > 0: z^{−a}e^{−z}Σ aⁿb_n(−λ)/(z+a)^{2n+1}.
pub fn gamma_outer_neg(a: f64, z: f64, n: Option<usize>) -> Result<EvalReport> {
    check_az(a, z)?;
    if (z + a).abs() <= a.sqrt() {
        return Err(Error::Degenerate(format!("|z + a| is within √a for a = {a}, z = {z}")));
    }
    let lam = z / a;
    let count = n.map_or(OUTER_MAX_TERMS, |n| n + 1);
    let (terms, conv) = b_series(1.0 / (z + a), 1.0 / (a * (1.0 + lam) * (1.0 + lam)), -lam, 1.0, count);
    let s = finish(-a * z.ln() - z, terms, n, conv);
    Ok(gamma_report(&s, Regime::OuterNegative, false))
}

/// Q(a,x) from the outer series (upper for x > a, lower for x < a), summing
/// n < N terms or, with None, stopping at the least term.
pub fn outer_q_series(a: f64, x: f64, n: Option<usize>) -> Result<EvalReport> {
    let s = tricomi_mahler(a, x, n)?;
    let lam = x / a;
    // z^a e^{−z}/Γ(a) = e^{−a(λ−1−ln λ)}·√a/(√(2π)Γ*(a))
    let ln_f = -a * lambda_phi(lam) + 0.5 * (a / (2.0 * PI)).ln() - ln_scaled_gamma(a)?;
    let f = ln_f.exp();
    let (q, regime) = if x > a {
        (f * s.sum, Regime::OuterUpper)
    } else {
        (1.0 + f * s.sum, Regime::OuterLower)
    };
    let mut r = EvalReport::new(q, s.terms_used, f * s.first_neglected, regime);
    r.error_estimate = f * s.error_estimate;
    Ok(r)
}

/// Γ(a,z) near z = a from the a_n(ε) expansion, ε = z − a, summing n < N in both sums.
pub fn gamma_transition_point(a: f64, z: f64, n: usize) -> Result<EvalReport> {
    check_az(a, z)?;
    let eps = z - a;
    let c = (PI / (2.0 * z)).sqrt();
    let term = |k: usize| {
        let zk = z.powi(-(k as i32));
        (
            c * horner(&f64cache::a(2 * k), eps) * zk,
            horner(&f64cache::a(2 * k + 1), eps) * zk / z,
        )
    };
    let mut s = CompensatedSum::new();
    for k in 0..n {
        let (e, o) = term(k);
        s.add(e);
        s.add(-o);
    }
    let (e, o) = term(n);
    let ln_pref = a * z.ln() - z;
    let sum = s.value();
    let ls = LogScaled {
        ln_abs: ln_pref + sum.abs().ln(),
        sign: sum.signum(),
    };
    let mut r = EvalReport::new(
        ls.value(),
        n,
        (e.abs() + o.abs()) * ln_pref.exp(),
        Regime::TransitionPoint,
    );
    r.log_scaled = Some(ls);
    r.out_of_range = eps.abs() > z.powf(0.25);
    Ok(r)
}
