//! Real form of the transition expansion continued to a < 0.

use super::{EvalReport, Regime};
use crate::coeffs::f64cache;
use crate::error::{domain, Result};
use crate::special::{normal_antitail, CompensatedSum};
use std::f64::consts::PI;

/// Distance below which a is treated as a non-positive integer.
pub const INTEGER_GUARD: f64 = 1e-6;

pub(crate) fn check_negative(a: f64) -> Result<()> {
    if !(a < 0.0) || !a.is_finite() {
        return Err(domain(format!("need finite a < 0, got {a}")));
    }
    if (a - a.round()).abs() < INTEGER_GUARD {
        return Err(domain(format!("a = {a} is too close to a non-positive integer")));
    }
    Ok(())
}

/// (sin πa, cos πa) with the reduction done on a − round(a).
pub(crate) fn sin_cos_pi(a: f64) -> (f64, f64) {
    let k = a.round();
    let r = a - k;
    // exact at half-integers, where cot(πa) must vanish
    let (s, c) = if r.abs() == 0.5 {
        (r.signum(), 0.0)
    } else {
        (PI * r).sin_cos()
    };
    if (k as i64) % 2 == 0 {
        (s, c)
    } else {
        (-s, -c)
    }
}

/// (−i)ⁿp(iτ) for a polynomial p of parity n. Coefficient k carries (−1)^{(k−n)/2}.
pub(crate) fn rotate_real(coeffs: &[f64], n: usize, tau: f64) -> f64 {
    let mut acc = 0.0;
    let mut p = 1.0;
    for (k, c) in coeffs.iter().enumerate() {
        if (k + n).is_multiple_of(2) && *c != 0.0 {
            let sign = if ((k as i64 - n as i64) / 2).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            acc += sign * c * p;
        }
        p *= tau;
    }
    acc
}

/// Terms (sin πa/π)√(2π/(−a))e^{τ²/2}(−i)ⁿC_n(iτ)(−a)^{−n/2}, n = 0..count.
pub fn gammastar_terms(a: f64, tau: f64, count: usize) -> Vec<f64> {
    let b = -a;
    let (s, _) = sin_cos_pi(a);
    let mut scale = s / PI * (2.0 * PI / b).sqrt() * (0.5 * tau * tau).exp();
    let rs = 1.0 / b.sqrt();
    (0..count)
        .map(|n| {
            let t = scale * rotate_real(&f64cache::c(n), n, tau);
            scale *= rs;
            t
        })
        .collect()
}

/// (−x)^a γ*(a,x) for a < 0, x = a − τ√(−a) < 0, summed over n < N.
pub fn gammastar_asym(a: f64, x: f64, n: usize) -> Result<EvalReport> {
    check_negative(a)?;
    if !(x < 0.0) || !x.is_finite() {
        return Err(domain(format!("need finite x < 0, got {x}")));
    }
    let tau = (a - x) / (-a).sqrt();
    let (s, c) = sin_cos_pi(a);
    let terms = gammastar_terms(a, tau, n + 1);
    let mut sum = CompensatedSum::new();
    sum.add(c);
    sum.add(s * normal_antitail(tau));
    for t in &terms[..n] {
        sum.add(*t);
    }
    let mut r = EvalReport::new(sum.value(), n, terms[n].abs(), Regime::Transition);
    r.out_of_range = tau.abs() >= 0.9 * (-a).sqrt();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_signs() {
        // C_0 = -τ²/3 - 1/3 style: (−i)⁰ p(iτ) flips the τ² sign
        assert_eq!(rotate_real(&[1.0, 0.0, 2.0], 0, 3.0), 1.0 - 18.0);
        // n = 1, p = τ: (−i)(iτ) = τ
        assert_eq!(rotate_real(&[0.0, 1.0], 1, 3.0), 3.0);
        // n = 1, p = τ³: (−i)(iτ)³ = −τ³
        assert_eq!(rotate_real(&[0.0, 0.0, 0.0, 1.0], 1, 2.0), -8.0);
        // n = 2, p = 1: (−i)² = −1
        assert_eq!(rotate_real(&[1.0], 2, 5.0), -1.0);
    }

    #[test]
    fn half_integer_root_condition() {
        // cos πa = 0 and τ = 0 kills the Dawson part
        let a = -20.5;
        let r = gammastar_asym(a, a, 0).unwrap();
        assert!(r.value.abs() < 1e-15);
        assert!(gammastar_asym(-3.0000001, -3.0, 2).is_err());
        assert!(gammastar_asym(-3.5, 1.0, 2).is_err());
    }

    #[test]
    fn rotation_matches_complex_evaluation() {
        // plain complex Horner for (−i)ⁿ d_n(iτ)
        fn complex(coeffs: &[f64], n: usize, tau: f64) -> (f64, f64) {
            let (mut re, mut im) = (0.0, 0.0);
            for c in coeffs.iter().rev() {
                // (re + i·im)(iτ) + c
                let (r, i) = (-im * tau + c, re * tau);
                re = r;
                im = i;
            }
            for _ in 0..n % 4 {
                let (r, i) = (im, -re);
                re = r;
                im = i;
            }
            (re, im)
        }
        for n in 0..=10 {
            let d = f64cache::d(n);
            for tau in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                let real = rotate_real(&d, n, tau);
                let (re, im) = complex(&d, n, tau);
                let scale = re.abs().max(f64::MIN_POSITIVE);
                assert!((real - re).abs() <= 1e-13 * scale, "n={n} τ={tau}: {real} {re}");
                assert!(im.abs() <= 1e-15 * scale.max(1.0), "n={n} τ={tau}: {im}");
            }
        }
    }
}
