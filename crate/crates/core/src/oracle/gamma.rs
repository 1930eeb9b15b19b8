//! Convergent reference algorithms for the incomplete gamma family.

use super::bigfloat::{pi, BigFloat};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 1_000_000;

fn stop(term: &BigFloat, sum: &BigFloat, w: u32) -> bool {
    term.is_zero() || (!sum.is_zero() && term.top() < sum.top() - i64::from(w) - 2)
}

/// Σ_{n≥0} xⁿ/((a+1)…(a+n)), so that γ(a,x) = x^a e^{−x}/a · this.
fn lower_sum(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let w = a.prec().max(x.prec());
    let mut term = BigFloat::one(w);
    let mut sum = BigFloat::one(w);
    let mut ap = a.clone();
    for _ in 0..MAX_TERMS {
        ap = ap.add(&BigFloat::one(w));
        term = term.mul(x).div(&ap);
        sum = sum.add(&term);
        if stop(&term, &sum, w) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(MAX_TERMS))
}

/// Modified Lentz for Γ(a,x) = x^a e^{−x} · 1/(x+1−a− 1(1−a)/(x+3−a− …)); returns the fraction.
fn upper_cf(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let w = a.prec().max(x.prec());
    let tiny = BigFloat::from_f64(1e-60, w);
    let one = BigFloat::one(w);
    let fix = |v: BigFloat| {
        if v.abs().cmp_value(&tiny).is_lt() {
            tiny.clone()
        } else {
            v
        }
    };
    let mut b = x.add(&one).sub(a);
    let mut c = one.div(&tiny);
    let mut d = fix(b.clone()).recip();
    let mut h = d.clone();
    let two = BigFloat::from_i64(2, w);
    for i in 1..MAX_TERMS as i64 {
        let an = BigFloat::from_i64(i, w).mul(&BigFloat::from_i64(i, w).sub(a)).neg();
        b = b.add(&two);
        d = fix(an.mul(&d).add(&b)).recip();
        c = fix(b.add(&an.div(&c)));
        let delta = c.mul(&d);
        h = h.mul(&delta);
        let dev = delta.sub(&one);
        if dev.is_zero() || dev.top() < -i64::from(w) + 3 {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence(MAX_TERMS))
}

/// ln(x^a e^{−x}).
fn log_prefactor(a: &BigFloat, x: &BigFloat) -> BigFloat {
    a.mul(&x.ln()).sub(x)
}

/// Γ(b) for b > 0, as γ(b,s) + Γ(b,s) at s = b+1 where both routes converge.
pub fn gamma_positive(b: &BigFloat) -> Result<BigFloat> {
    let w = b.prec() + 32;
    let bw = b.with_prec(w);
    let s = bw.add(&BigFloat::one(w));
    let lower = lower_sum(&bw, &s)?.div(&bw);
    let upper = upper_cf(&bw, &s)?;
    Ok(log_prefactor(&bw, &s).exp().mul(&lower.add(&upper)).with_prec(b.prec()))
}

/// 1/Γ(z) for any real z; exactly zero at the poles.
pub fn rgamma(z: &BigFloat) -> Result<BigFloat> {
    let p = z.prec();
    if !z.is_negative() && !z.is_zero() {
        return Ok(gamma_positive(z)?.recip());
    }
    if z.is_integer() {
        return Ok(BigFloat::zero(p));
    }
    // 1/Γ(z) = Γ(1−z)·sin(πz)/π, with z reduced mod 2 before the sine
    let w = p + 32;
    let zw = z.with_prec(w);
    let k = zw.ldexp(-1).round_int();
    let r = zw.sub(&BigFloat::from_bigint(&k, w).ldexp(1));
    let (s, _) = r.mul(&pi(w)).sin_cos();
    let g = gamma_positive(&BigFloat::one(w).sub(&zw))?;
    Ok(g.mul(&s).div(&pi(w)).with_prec(p))
}

/// Q(a,x) = Γ(a,x)/Γ(a) for a > 0, x ≥ 0.
pub fn oracle_q(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let (p, q) = oracle_pq(a, x)?;
    let _ = p;
    Ok(q)
}

/// P(a,x) = γ(a,x)/Γ(a).
pub fn oracle_p(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    Ok(oracle_pq(a, x)?.0)
}

/// (P, Q), each computed from its own convergent route where possible.
pub fn oracle_pq(a: &BigFloat, x: &BigFloat) -> Result<(BigFloat, BigFloat)> {
    let prec = a.prec().max(x.prec());
    if a.is_negative() || a.is_zero() {
        return Err(Error::Domain("oracle Q needs a > 0".into()));
    }
    if x.is_negative() {
        return Err(Error::Domain("oracle Q needs x >= 0".into()));
    }
    let one = BigFloat::one(prec);
    if x.is_zero() {
        return Ok((BigFloat::zero(prec), one));
    }
    let w = prec + 32;
    let (a, x) = (a.with_prec(w), x.with_prec(w));
    // Γ(a) = s^a e^{−s}(lower/a + cf) at s = a+1
    let s = a.add(&BigFloat::one(w));
    let lower_s = lower_sum(&a, &s)?.div(&a);
    let upper_s = upper_cf(&a, &s)?;
    let g_scaled = lower_s.add(&upper_s);
    let ratio = log_prefactor(&a, &x).sub(&log_prefactor(&a, &s)).exp();
    if x.cmp_value(&s).is_le() {
        let pval = ratio.mul(&lower_sum(&a, &x)?.div(&a)).div(&g_scaled);
        let qval = BigFloat::one(w).sub(&pval);
        Ok((pval.with_prec(prec), qval.with_prec(prec)))
    } else {
        let qval = ratio.mul(&upper_cf(&a, &x)?).div(&g_scaled);
        let pval = BigFloat::one(w).sub(&qval);
        Ok((pval.with_prec(prec), qval.with_prec(prec)))
    }
}

/// Γ(a,x) for x > 0 and any real a.
pub fn oracle_gamma_upper(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let prec = a.prec().max(x.prec());
    if x.is_negative() || x.is_zero() {
        return Err(Error::Domain("oracle Γ(a,x) needs x > 0".into()));
    }
    if !a.is_negative() && !a.is_zero() {
        let w = prec + 32;
        let (a, x) = (a.with_prec(w), x.with_prec(w));
        let s = a.add(&BigFloat::one(w));
        if x.cmp_value(&s).is_gt() {
            return Ok(log_prefactor(&a, &x).exp().mul(&upper_cf(&a, &x)?).with_prec(prec));
        }
        // the fraction stalls near x = 0: take Γ(a) − γ(a,x) instead
        let lower = log_prefactor(&a, &x).exp().mul(&lower_sum(&a, &x)?).div(&a);
        return Ok(gamma_positive(&a)?.sub(&lower).with_prec(prec));
    }
    // shift up to s₀ ∈ [0,1), then Γ(s,x) = (Γ(s+1,x) − xˢe^{−x})/s downwards
    let m = a.neg().round_int() + num_bigint::BigInt::from(1);
    let steps: i64 = m.try_into().map_err(|_| Error::Domain("a too negative".into()))?;
    let w = prec + 64 + 4 * (64 - steps.unsigned_abs().leading_zeros());
    let (aw, xw) = (a.with_prec(w), x.with_prec(w));
    let mut s = aw.add(&BigFloat::from_i64(steps, w));
    let mut k = steps;
    while s.cmp_value(&BigFloat::one(w)).is_ge() {
        s = s.sub(&BigFloat::one(w));
        k -= 1;
    }
    while s.is_negative() {
        s = s.add(&BigFloat::one(w));
        k += 1;
    }
    let mut g = log_prefactor(&s, &xw).exp().mul(&upper_cf(&s, &xw)?);
    let lnx = xw.ln();
    for _ in 0..k {
        let sm = s.sub(&BigFloat::one(w));
        let pref = sm.mul(&lnx).sub(&xw).exp();
        g = g.sub(&pref).div(&sm);
        s = sm;
    }
    Ok(g.with_prec(prec))
}

/// γ*(a,x) = e^{−x}Σ xⁿ/Γ(a+n+1), entire in a and x. Working precision grows
/// until the cancellation between terms is covered.
pub fn oracle_gammastar(a: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let prec = a.prec().max(x.prec());
    let mut guard: u32 = 64;
    loop {
        let w = prec + guard;
        let (aw, xw) = (a.with_prec(w), x.with_prec(w));
        // first index with a+n+1 > 0 when a is a negative integer; earlier terms vanish
        let mut n0: i64 = 0;
        if aw.is_integer() && aw.is_negative() {
            n0 = i64::try_from(aw.neg().round_int()).map_err(|_| Error::Domain("a too negative".into()))?;
        }
        let one = BigFloat::one(w);
        let mut denom = aw.add(&BigFloat::from_i64(n0 + 1, w));
        let mut term = xw.powi(n0.unsigned_abs()).mul(&rgamma(&denom)?);
        let mut sum = term.clone();
        let mut max_top = if term.is_zero() { i64::MIN } else { term.top() };
        let mut converged = false;
        for _ in 0..MAX_TERMS {
            term = term.mul(&xw).div(&denom);
            denom = denom.add(&one);
            sum = sum.add(&term);
            if !term.is_zero() {
                max_top = max_top.max(term.top());
            }
            // terms decay once a+n exceeds |x|
            let past = denom.abs().cmp_value(&xw.abs().add(&one)).is_gt() && !denom.is_negative();
            if past && (term.is_zero() || term.top() < max_top - i64::from(w) - 2) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence(MAX_TERMS));
        }
        let lost = if sum.is_zero() {
            i64::from(w)
        } else {
            max_top - sum.top()
        };
        if lost + 16 < i64::from(guard) || guard >= 8192 {
            return Ok(xw.neg().exp().mul(&sum).with_prec(prec));
        }
        guard = (lost as u32 + 64).max(2 * guard).min(8192);
    }
}
