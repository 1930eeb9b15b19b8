//! Binary64 special functions used by every evaluator.

use crate::error::{domain, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// ½·erfc(τ/√2), the upper tail of the standard normal.
pub fn half_erfc(tau: f64) -> f64 {
    0.5 * erfc(tau * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(tau: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * tau * tau).exp()
}

/// The τ₀ solving ½·erfc(τ₀/√2) = q.
pub fn inv_half_erfc(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("q = {q} is not in (0, 1)")));
    }
    if q == 0.5 {
        return Ok(0.0);
    }
    // The tail below q ~ 1e-308 underflows long before |τ| = 40.
    let (mut lo, mut hi) = (-40.0_f64, 40.0_f64);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        if half_erfc(mid) > q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut tau = 0.5 * (lo + hi);
    for _ in 0..60 {
        let f = half_erfc(tau) - q;
        if f.abs() <= 1e-16 * q {
            break;
        }
        let step = f / normal_pdf(tau);
        // f' = -pdf, so the Newton update is τ + f/pdf; keep it inside the bracket
        let next = (tau + step).clamp(lo, hi);
        if (next - tau).abs() <= 1e-16 * tau.abs().max(1e-300) {
            tau = next;
            break;
        }
        tau = next;
    }
    Ok(tau)
}

/// e^{x²}F(x) = Σ x^{2n+1}/(n!(2n+1)), every term positive for x > 0.
fn dawson_scaled_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let x2 = x * x;
    let mut pow = x;
    let mut sum = CompensatedSum::new();
    let mut n = 0u32;
    loop {
        let term = pow / f64::from(2 * n + 1);
        sum.add(term);
        if term < 1e-17 * sum.value() && f64::from(n) > x2 {
            break;
        }
        n += 1;
        pow *= x2 / f64::from(n);
    }
    sum.value()
}

/// 1/(2x)·Σ (2n−1)!!/(2x²)ⁿ, stopped at the smallest term.
fn dawson_asymptotic(x: f64) -> f64 {
    let r = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = CompensatedSum::new();
    sum.add(term);
    for n in 1..200 {
        let next = term * f64::from(2 * n - 1) * r;
        if next >= term || next < 1e-18 {
            break;
        }
        term = next;
        sum.add(term);
    }
    sum.value() / (2.0 * x)
}

const DAWSON_SWITCH: f64 = 7.0;

/// Dawson's integral F(x) = e^{−x²}∫₀ˣ e^{t²}dt.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax == 0.0 {
        0.0
    } else if ax <= DAWSON_SWITCH {
        (-ax * ax).exp() * dawson_scaled_series(ax)
    } else {
        dawson_asymptotic(ax)
    };
    v.copysign(x)
}

/// √(2/π)∫₀^τ e^{t²/2}dt = (2/√π)·e^{τ²/2}F(τ/√2). Odd and strictly increasing.
pub fn normal_antitail(tau: f64) -> f64 {
    let x = tau.abs() * FRAC_1_SQRT_2;
    let scaled = if x <= DAWSON_SWITCH {
        dawson_scaled_series(x)
    } else {
        (x * x).exp() * dawson_asymptotic(x)
    };
    (2.0 / PI.sqrt() * scaled).copysign(tau)
}

// B_{2k}/(2k(2k−1)) for k = 1..10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// ln Γ*(a).
pub fn ln_scaled_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(format!("scaled gamma needs a > 0, got {a}")));
    }
    let mut shift = 0.0;
    let mut b = a;
    while b < 8.0 {
        shift += (b + 0.5) * (1.0 / b).ln_1p() - 1.0;
        b += 1.0;
    }
    let inv = 1.0 / b;
    let inv2 = inv * inv;
    let mut p = inv;
    let mut s = CompensatedSum::new();
    for c in STIRLING {
        s.add(c * p);
        p *= inv2;
    }
    Ok(s.value() + shift)
}

/// Γ*(a) = Γ(a)eᵃa^{½−a}/√(2π).
pub fn scaled_gamma(a: f64) -> Result<f64> {
    Ok(ln_scaled_gamma(a)?.exp())
}

/// ln Γ(a) for a > 0, assembled from Γ*.
pub fn ln_gamma(a: f64) -> Result<f64> {
    let ls = ln_scaled_gamma(a)?;
    Ok(ls - a + (a - 0.5) * a.ln() + 0.5 * (2.0 * PI).ln())
}

/// λ − 1 − ln λ without cancellation near λ = 1.
pub fn lambda_phi(lambda: f64) -> f64 {
    let x = lambda - 1.0;
    if x.abs() < 0.1 {
        // Σ_{k≥2} (−x)^k/k
        let mut p = x * x;
        let mut s = CompensatedSum::new();
        for k in 2..40 {
            let t = p / k as f64;
            s.add(if k % 2 == 0 { t } else { -t });
            if t.abs() < 1e-18 * s.value().abs() {
                break;
            }
            p *= x;
        }
        s.value()
    } else {
        x - x.ln_1p()
    }
}

/// η(λ) = sign(λ−1)·√(2(λ−1−ln λ)).
pub fn eta_of_lambda(lambda: f64) -> f64 {
    (2.0 * lambda_phi(lambda)).sqrt().copysign(lambda - 1.0)
}

/// Inverse of [`eta_of_lambda`] by Newton on ½η² = λ−1−ln λ.
pub fn lambda_of_eta(eta: f64) -> f64 {
    if eta == 0.0 {
        return 1.0;
    }
    // dη/dλ = (λ−1)/(λη); start from the small-η series, or the tail forms.
    let mut l = if eta.abs() < 1.0 {
        1.0 + eta + eta * eta / 3.0 + eta.powi(3) / 36.0
    } else if eta > 0.0 {
        let h = 0.5 * eta * eta;
        1.0 + h + (1.0 + h).ln()
    } else {
        (-0.5 * eta * eta - 1.0).exp().max(1e-300)
    };
    for _ in 0..100 {
        let f = eta_of_lambda(l) - eta;
        let d = (l - 1.0) / (l * eta_of_lambda(l));
        if !d.is_finite() || d == 0.0 {
            break;
        }
        let mut next = l - f / d;
        if next <= 0.0 {
            next = 0.5 * l;
        }
        if (next - l).abs() <= 1e-16 * l {
            l = next;
            break;
        }
        l = next;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = CompensatedSum::new();
        s.add(f(a));
        s.add(f(b));
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s.add(w * f(a + i as f64 * h));
        }
        s.value() * h / 3.0
    }

    #[test]
    fn erfc_basics() {
        assert_eq!(erfc(0.0), 1.0);
        assert!((erfc(-1.5) - (2.0 - erfc(1.5))).abs() < 4.0 * f64::EPSILON);
        // (2/√π)∫₁^∞ e^{−t²}dt, tail past 9 is below 1e-36
        let q = 2.0 / PI.sqrt() * simpson(|t| (-t * t).exp(), 1.0, 7.0, 60_000);
        assert!((erfc(1.0) - q).abs() < 1e-14 * q, "{} {q}", erfc(1.0));
    }

    #[test]
    fn half_inverse() {
        assert_eq!(inv_half_erfc(0.5).unwrap(), 0.0);
        let t = inv_half_erfc(0.2).unwrap();
        assert!((t + inv_half_erfc(0.8).unwrap()).abs() < 1e-14);
        let t = inv_half_erfc(0.1).unwrap();
        assert!(t > 0.0);
        assert!((half_erfc(t) - 0.1).abs() <= 1e-14 * 0.1);
        assert!(inv_half_erfc(0.0).is_err());
        assert!(inv_half_erfc(1.0).is_err());
        let t = inv_half_erfc(1e-300).unwrap();
        assert!((half_erfc(t) / 1e-300 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dawson_values() {
        assert_eq!(dawson(0.0), 0.0);
        assert_eq!(dawson(-2.0), -dawson(2.0));
        let q = (-1.0f64).exp() * simpson(|t| (t * t).exp(), 0.0, 1.0, 4000);
        assert!((dawson(1.0) - q).abs() < 1e-13 * q);
        for x in [0.5, 1.0, 2.0] {
            let h = 1e-5;
            let d = (dawson(x + h) - dawson(x - h)) / (2.0 * h);
            assert!((d - (1.0 - 2.0 * x * dawson(x))).abs() < 1e-10);
        }
        // both sides of the series/asymptotic switch
        let x = DAWSON_SWITCH;
        let series = (-x * x).exp() * dawson_scaled_series(x);
        assert!((series - dawson_asymptotic(x)).abs() < 1e-15);
    }

    #[test]
    fn antitail_matches_quadrature() {
        let tau = 1.7;
        let q = (2.0 / PI).sqrt() * simpson(|t| (0.5 * t * t).exp(), 0.0, tau, 4000);
        assert!((normal_antitail(tau) - q).abs() < 1e-13 * q);
        assert_eq!(normal_antitail(-tau), -normal_antitail(tau));
    }

    #[test]
    fn scaled_gamma_values() {
        assert!((scaled_gamma(1e6).unwrap() - 1.0).abs() < 1e-6);
        let g1 = std::f64::consts::E / (2.0 * PI).sqrt();
        assert!((scaled_gamma(1.0).unwrap() - g1).abs() < 1e-14 * g1);
        assert!(scaled_gamma(0.0).is_err());
        let mut fact = 1.0f64;
        for n in 2..=12 {
            fact *= (n - 1) as f64;
            let a = n as f64;
            let g = scaled_gamma(a).unwrap() * (2.0 * PI).sqrt() * a.powf(a - 0.5) * (-a).exp();
            assert!((g / fact - 1.0).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn eta_roundtrip() {
        for l in [0.05, 0.5, 0.99, 1.0, 1.01, 1.7, 5.0, 40.0] {
            let e = eta_of_lambda(l);
            assert!((lambda_of_eta(e) - l).abs() < 1e-13 * l, "λ={l}");
        }
        for k in 2..=6 {
            for s in [1.0, -1.0] {
                let d = s * 10f64.powi(-k);
                let r = eta_of_lambda(1.0 + d) / d;
                assert!((r - 1.0).abs() < 2.0 * 10f64.powi(-k));
            }
        }
    }
}
