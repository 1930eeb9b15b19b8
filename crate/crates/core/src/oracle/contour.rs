//! Trapezoidal contour sum for the uniform-expansion coefficients c_n(η(λ)).

use super::bigfloat::{pi, BigFloat};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Cx {
    re: BigFloat,
    im: BigFloat,
}

impl Cx {
    fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }
    fn real(re: BigFloat) -> Self {
        let p = re.prec();
        Self {
            re,
            im: BigFloat::zero(p),
        }
    }
    fn add(&self, o: &Cx) -> Cx {
        Cx::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &Cx) -> Cx {
        Cx::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &Cx) -> Cx {
        Cx::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    fn div(&self, o: &Cx) -> Cx {
        let d = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        Cx::new(
            self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&d),
            self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&d),
        )
    }
    fn powi(&self, n: usize) -> Cx {
        let mut acc = Cx::real(BigFloat::one(self.re.prec()));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
    /// Principal square root (branch cut on the negative real axis).
    fn sqrt(&self) -> Cx {
        let p = self.re.prec();
        let r = self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt();
        if r.is_zero() {
            return Cx::real(BigFloat::zero(p));
        }
        let u = r.add(&self.re.abs()).ldexp(-1).sqrt();
        let v = self.im.abs().div(&u).ldexp(-1);
        if !self.re.is_negative() {
            Cx::new(u, if self.im.is_negative() { v.neg() } else { v })
        } else {
            Cx::new(v, if self.im.is_negative() { u.neg() } else { u })
        }
    }
    /// Principal atanh by its Maclaurin series, |z| < 1.
    fn atanh(&self) -> Cx {
        let p = self.re.prec();
        let z2 = self.mul(self);
        let mut pw = self.clone();
        let mut sum = self.clone();
        for k in 1..100_000i64 {
            pw = pw.mul(&z2);
            let t = Cx::new(pw.re.div_i64(2 * k + 1), pw.im.div_i64(2 * k + 1));
            sum = sum.add(&t);
            let mag = t.re.abs().top().max(t.im.abs().top());
            if (t.re.is_zero() && t.im.is_zero()) || mag < -i64::from(p) - 8 {
                break;
            }
        }
        sum
    }
}

/// Γ(n+½) = (2n)!√π/(4ⁿn!).
fn gamma_half(n: usize, w: u32) -> BigFloat {
    let mut g = pi(w).sqrt();
    for k in 0..n {
        g = g.mul(&BigFloat::from_i64(2 * k as i64 + 1, w)).ldexp(-1);
    }
    g
}

/// c_n(η(λ)) ≈ Γ(n+½)/(2M√(2π)) Σ_{m=1−M}^{M} √(ω²/(ω−log(1+ω))) / ((λ−ω−1)(log(1+ω)−ω)ⁿ),
/// ω_m = r·e^{πim/M}. Returns the real part.
pub fn oracle_c_contour(n: usize, lambda: &BigFloat, r: f64, m: usize) -> Result<BigFloat> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Parameter(format!("contour radius r = {r} must lie in (0,1)")));
    }
    if m < 8 {
        return Err(Error::Parameter(format!("M = {m} must be at least 8")));
    }
    let prec = lambda.prec();
    let w = prec + 32;
    let lam = lambda.with_prec(w);
    let one = BigFloat::one(w);
    let rb = BigFloat::from_f64(r, w);
    if lam.sub(&one).abs().cmp_value(&rb).is_ge() {
        return Err(Error::Parameter(format!("|λ−1| must be below r = {r}")));
    }
    let two = Cx::real(BigFloat::from_i64(2, w));
    let lm1 = Cx::real(lam.sub(&one));
    let pi_w = pi(w);
    let mut sum = Cx::real(BigFloat::zero(w));
    let mm = m as i64;
    for j in (1 - mm)..=mm {
        let theta = pi_w.mul(&BigFloat::from_i64(j, w)).div_i64(mm);
        let (s, c) = theta.sin_cos();
        let om = Cx::new(rb.mul(&c), rb.mul(&s));
        // log(1+ω) = 2·atanh(ω/(2+ω))
        let lg = om.div(&two.add(&om)).atanh();
        let lg = Cx::new(lg.re.ldexp(1), lg.im.ldexp(1));
        let root = om.mul(&om).div(&om.sub(&lg)).sqrt();
        let den = lm1.sub(&om).mul(&lg.sub(&om).powi(n));
        sum = sum.add(&root.div(&den));
    }
    let scale = gamma_half(n, w).div(&pi_w.ldexp(1).sqrt().mul_i64(2 * mm));
    Ok(sum.re.mul(&scale).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::super::bigfloat::DEFAULT_PREC;
    use super::*;

    #[test]
    fn square_root_branch() {
        let z = Cx::new(BigFloat::from_f64(-4.0, 128), BigFloat::from_f64(0.0, 128));
        let s = z.sqrt();
        assert_eq!((s.re.to_f64(), s.im.to_f64()), (0.0, 2.0));
        let z = Cx::new(BigFloat::from_f64(3.0, 128), BigFloat::from_f64(-4.0, 128));
        let s = z.sqrt();
        assert_eq!((s.re.to_f64(), s.im.to_f64()), (2.0, -1.0));
    }

    #[test]
    fn first_coefficients_at_one() {
        let one = BigFloat::one(DEFAULT_PREC);
        let c0 = oracle_c_contour(0, &one, 0.5, 64).unwrap().to_f64();
        assert!((c0 + 1.0 / 3.0).abs() < 1e-12, "{c0}");
        let c1 = oracle_c_contour(1, &one, 0.5, 64).unwrap().to_f64();
        assert!((c1 + 1.0 / 540.0).abs() < 1e-14, "{c1}");
        assert!(oracle_c_contour(0, &BigFloat::from_f64(1.6, 128), 0.5, 64).is_err());
    }
}
