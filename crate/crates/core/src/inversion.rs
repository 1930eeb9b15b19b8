//! Inversion of Q(a,x) = q for x, and the negative zero x₋(a) of γ*(a,x).

use crate::coeffs::f64cache;
use crate::coeffs::poly::horner;
use crate::error::{domain, Error, Result};
use crate::expansions::negative::{check_negative, rotate_real, sin_cos_pi};
use crate::expansions::{cut_grouped, hybrid_q};
use crate::special::{inv_half_erfc, ln_gamma, normal_antitail, CompensatedSum};
use serde::Serialize;
use std::f64::consts::PI;

/// Deepest d_n used when the number of terms is chosen automatically.
pub const MAX_AUTO_TERMS: usize = 10;
/// |τ| must stay below this multiple of √|a|.
pub const VALIDITY_FACTOR: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileResult {
    pub x: f64,
    pub tau0: f64,
    pub terms_used: usize,
    /// |first omitted term| in x.
    pub first_neglected: f64,
    /// The x-error estimate carried over to Q through dQ/dx.
    pub q_error_estimate: f64,
    /// |Q(a,x) − q|, filled in by `verify_quantile`.
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroResult {
    pub x_minus: f64,
    pub tau1: f64,
    pub terms_used: usize,
    pub first_neglected: f64,
}

fn d_terms(a: f64, tau0: f64, count: usize) -> Vec<f64> {
    let rs = 1.0 / a.sqrt();
    let mut scale = 1.0;
    (0..count)
        .map(|n| {
            let t = scale * horner(&f64cache::d(n), tau0);
            scale *= rs;
            t
        })
        .collect()
}

fn quantile_parts(a: f64, q: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("need finite a > 0, got {a}")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("need 0 < q < 1, got {q}")));
    }
    let tau0 = inv_half_erfc(q)?;
    if tau0.abs() >= VALIDITY_FACTOR * a.sqrt() {
        return Err(Error::Validity(format!(
            "τ₀ = {tau0} is not small against √a = {}; q is too close to 0 or 1",
            a.sqrt()
        )));
    }
    Ok(tau0)
}

fn assemble(a: f64, tau0: f64, terms: &[f64], n: usize, neglected: f64) -> QuantileResult {
    let mut s = CompensatedSum::new();
    s.add(a);
    s.add(tau0 * a.sqrt());
    for t in &terms[..n] {
        s.add(*t);
    }
    let x = s.value();
    // |dQ/dx| = x^{a−1}e^{−x}/Γ(a)
    let dens = ln_gamma(a).map_or(0.0, |lg| ((a - 1.0) * x.ln() - x - lg).exp());
    QuantileResult {
        x,
        tau0,
        terms_used: n,
        first_neglected: neglected,
        q_error_estimate: dens * neglected,
        residual: None,
    }
}

/// x(a,q) = a + τ₀√a + Σ_{n<N} d_n(τ₀)a^{−n/2}.
pub fn quantile(a: f64, q: f64, n: usize) -> Result<QuantileResult> {
    let tau0 = quantile_parts(a, q)?;
    let terms = d_terms(a, tau0, n + 1);
    Ok(assemble(a, tau0, &terms, n, terms[n].abs()))
}

/// As `quantile` with N at the least group of d_0..d_10.
pub fn quantile_auto(a: f64, q: f64) -> Result<QuantileResult> {
    let tau0 = quantile_parts(a, q)?;
    let terms = d_terms(a, tau0, MAX_AUTO_TERMS + 1);
    let cut = cut_grouped(&terms, false);
    Ok(assemble(a, tau0, &terms, cut.n, cut.error_estimate))
}

/// Fill in `residual` with |Q(a,x) − q| from the hybrid evaluator.
pub fn verify_quantile(a: f64, q: f64, r: &mut QuantileResult) -> Result<f64> {
    let res = (hybrid_q(a, r.x)?.value - q).abs();
    r.residual = Some(res);
    Ok(res)
}

/// The unique τ₁ with √(2/π)∫₀^{τ₁}e^{t²/2}dt = cot(−πa).
pub fn solve_tau1(a: f64) -> Result<f64> {
    check_negative(a)?;
    let (s, c) = sin_cos_pi(a);
    let target = -c / s;
    if target == 0.0 {
        return Ok(0.0);
    }
    let g = |t: f64| normal_antitail(t) - target;
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    while g(lo) > 0.0 {
        lo *= 2.0;
    }
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    // bisect to a bracket where Newton is safe, then polish
    while hi - lo > 1e-3 {
        let m = 0.5 * (lo + hi);
        if g(m) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let mut t = 0.5 * (lo + hi);
    let scale = target.abs().max(1.0);
    for _ in 0..50 {
        let r = g(t);
        if r.abs() <= 1e-15 * scale {
            break;
        }
        let next = t - r / ((2.0 / PI).sqrt() * (0.5 * t * t).exp());
        let next = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
        if r < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if next == t {
            break;
        }
        t = next;
    }
    Ok(t)
}

fn zero_parts(a: f64) -> Result<f64> {
    let tau1 = solve_tau1(a)?;
    if tau1.abs() >= VALIDITY_FACTOR * (-a).sqrt() {
        return Err(Error::Validity(format!(
            "τ₁ = {tau1} is not small against √(−a) = {}; a is too close to an integer",
            (-a).sqrt()
        )));
    }
    Ok(tau1)
}

fn zero_terms(a: f64, tau1: f64, count: usize) -> Vec<f64> {
    let rs = 1.0 / (-a).sqrt();
    let mut scale = 1.0;
    (0..count)
        .map(|n| {
            let t = scale * rotate_real(&f64cache::d(n), n, tau1);
            scale *= rs;
            t
        })
        .collect()
}

fn zero_assemble(a: f64, tau1: f64, terms: &[f64], n: usize, neglected: f64) -> ZeroResult {
    let mut s = CompensatedSum::new();
    s.add(a);
    s.add(-tau1 * (-a).sqrt());
    for t in &terms[..n] {
        s.add(*t);
    }
    ZeroResult {
        x_minus: s.value(),
        tau1,
        terms_used: n,
        first_neglected: neglected,
    }
}

/// x₋(a) = a − τ₁√(−a) + Σ_{n<N}(−i)ⁿd_n(iτ₁)(−a)^{−n/2}.
pub fn negative_zero(a: f64, n: usize) -> Result<ZeroResult> {
    let tau1 = zero_parts(a)?;
    let terms = zero_terms(a, tau1, n + 1);
    Ok(zero_assemble(a, tau1, &terms, n, terms[n].abs()))
}

pub fn negative_zero_auto(a: f64) -> Result<ZeroResult> {
    let tau1 = zero_parts(a)?;
    let terms = zero_terms(a, tau1, MAX_AUTO_TERMS + 1);
    let cut = cut_grouped(&terms, false);
    Ok(zero_assemble(a, tau1, &terms, cut.n, cut.error_estimate))
}

/// a − τ₁√(−a) − τ₁²/3 − 1/3.
pub fn thompson_approx(a: f64) -> Result<f64> {
    let t = solve_tau1(a)?;
    Ok(a - t * (-a).sqrt() - t * t / 3.0 - 1.0 / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_terms() {
        let r = quantile(10.0, 0.5, 3).unwrap();
        let want = 10.0 - 1.0 / 3.0 + 8.0 / 405.0 / 10.0;
        assert!((r.x - want).abs() < 1e-15, "{} {want}", r.x);
        assert!(quantile(10.0, 1.5, 3).is_err());
        assert!(matches!(quantile(4.0, 1e-10, 3), Err(Error::Validity(_))));
    }

    #[test]
    fn tau1_cases() {
        assert_eq!(solve_tau1(-7.5).unwrap(), 0.0);
        let t = solve_tau1(-20.25).unwrap();
        assert!(t > 0.0);
        assert!((normal_antitail(t) - 1.0).abs() < 1e-12);
        assert!(solve_tau1(-7.0).is_err());
        assert!(solve_tau1(1.5).is_err());
        // near a pole τ₁ grows like √(−2 log|a − k|)
        let t = solve_tau1(-5.0 + 1e-4).unwrap();
        let want = (-2.0 * 1e-4f64.ln()).sqrt();
        assert!((t.abs() / want - 1.0).abs() < 0.25, "{t} {want}");
    }

    #[test]
    fn zero_at_half_integers() {
        let r = negative_zero(-10.5, 1).unwrap();
        assert_eq!(r.x_minus, -10.5 - 1.0 / 3.0);
        let r = negative_zero(-10.5, 3).unwrap();
        let want = -10.5 - 1.0 / 3.0 - 8.0 / 405.0 / 10.5;
        assert!((r.x_minus - want).abs() < 1e-14);
        for a in [-25.5, -30.3, -100.25] {
            assert_eq!(thompson_approx(a).unwrap(), negative_zero(a, 1).unwrap().x_minus);
        }
    }
}
