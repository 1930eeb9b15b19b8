//! Truncated formal power series over a ring, stored as coefficient vectors.

use super::poly::{rat_int, Ring};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Series = Vec<BigRational>;

pub fn mul_trunc<T: Ring>(a: &[T], b: &[T], len: usize) -> Vec<T> {
    let mut out = vec![T::rzero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.ris_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.ris_zero() {
                out[i + j] = out[i + j].radd(&x.rmul(y));
            }
        }
    }
    out
}

/// a^m truncated to `len` coefficients, by binary powering.
pub fn pow_trunc<T: Ring>(a: &[T], mut m: usize, len: usize) -> Vec<T> {
    let mut result = vec![T::rzero(); len];
    if len == 0 {
        return result;
    }
    result[0] = T::rone();
    let mut base: Vec<T> = a.iter().take(len).cloned().collect();
    base.resize(len, T::rzero());
    while m > 0 {
        if m & 1 == 1 {
            result = mul_trunc(&result, &base, len);
        }
        m >>= 1;
        if m > 0 {
            base = mul_trunc(&base, &base, len);
        }
    }
    result
}

/// 1/a for a rational series with a₀ ≠ 0.
pub fn inv(a: &Series, len: usize) -> Series {
    let a0inv = a[0].recip();
    let mut out: Series = Vec::with_capacity(len);
    out.push(a0inv.clone());
    for k in 1..len {
        let mut s = BigRational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out.push(-s * &a0inv);
    }
    out
}

/// a^p for a rational series with a₀ = 1 and rational exponent p.
/// Uses the J.C.P. Miller recurrence k·a₀·w_k = Σ_{j=1}^k ((p+1)j − k)·a_j·w_{k−j}.
pub fn pow_rational(a: &Series, p: &BigRational, len: usize) -> Series {
    debug_assert!(a[0].is_one());
    let mut w: Series = Vec::with_capacity(len);
    w.push(BigRational::one());
    for k in 1..len {
        let mut s = BigRational::zero();
        for j in 1..=k.min(a.len() - 1) {
            let f = (p + BigRational::one()) * rat_int(j) - rat_int(k);
            s += f * &a[j] * &w[k - j];
        }
        w.push(s / rat_int(k));
    }
    w
}

/// exp(a) for a series with zero constant term, coefficients in any ring that
/// can be scaled by rationals.
pub fn exp_series<T: Ring>(a: &[T], len: usize, scale: impl Fn(&T, &BigRational) -> T) -> Vec<T> {
    let mut e: Vec<T> = Vec::with_capacity(len);
    e.push(T::rone());
    for k in 1..len {
        let mut s = T::rzero();
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            if a[j].ris_zero() {
                continue;
            }
            s = s.radd(&scale(&a[j].rmul(&e[k - j]), &rat_int(j)));
        }
        e.push(scale(&s, &BigRational::new(1.into(), (k as i64).into())));
    }
    e
}

#[cfg(test)]
mod tests {
    use super::super::poly::rat;
    use super::*;

    #[test]
    fn inverse_and_powers() {
        // 1/(1-x) = Σ xᵏ
        let a = vec![rat(1, 1), rat(-1, 1)];
        assert!(inv(&a, 6).iter().all(|c| *c == rat(1, 1)));
        // (1+x)^{1/2}: 1, 1/2, -1/8, 1/16
        let b = vec![rat(1, 1), rat(1, 1)];
        let s = pow_rational(&b, &rat(1, 2), 4);
        assert_eq!(s, vec![rat(1, 1), rat(1, 2), rat(-1, 8), rat(1, 16)]);
        let sq = mul_trunc(&s, &s, 4);
        assert_eq!(sq, vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(
            pow_trunc(&b, 3, 5),
            vec![rat(1, 1), rat(3, 1), rat(3, 1), rat(1, 1), rat(0, 1)]
        );
        // exp(x) = Σ xᵏ/k!
        let e = exp_series(&[rat(0, 1), rat(1, 1)], 5, |x, c| x * c);
        assert_eq!(e[4], rat(1, 24));
    }
}
