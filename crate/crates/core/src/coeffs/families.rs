//! The polynomial coefficient families b_n, a_n, C_n, P_k and d_n.

use super::cache::SeqCache;
use super::poly::{rat, rat_int, RationalPoly, Ring};
use super::series::{exp_series, mul_trunc, pow_rational, pow_trunc};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Arc, Mutex};

static B_CACHE: SeqCache<RationalPoly> = SeqCache::new();
static C_CACHE: SeqCache<RationalPoly> = SeqCache::new();
static P_CACHE: SeqCache<RationalPoly> = SeqCache::new();
static D_CACHE: SeqCache<RationalPoly> = SeqCache::new();
static A_CACHE: Mutex<Vec<Arc<RationalPoly>>> = Mutex::new(Vec::new());

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// b_n(λ): b₀ = 1, b_k = λ(1−λ)b′_{k−1} + (2k−1)λb_{k−1}.
pub fn gen_b(n: usize) -> Arc<RationalPoly> {
    B_CACHE.get(n, |k, prev| {
        if k == 0 {
            return RationalPoly::one();
        }
        let p = &prev[k - 1];
        let lam_one_minus = RationalPoly::new(vec![rat(0, 1), rat(1, 1), rat(-1, 1)]);
        let lam = RationalPoly::monomial(rat(1, 1), 1);
        &(&lam_one_minus * &p.derivative()) + &(&lam * p).scale(&rat_int(2 * k - 1))
    })
}

/// C_n(τ), built top-down in k from the seeds c_{n,3n+2} = 1/(3^{n+1}(n+1)!), c_{n,3n+1} = 0.
pub fn gen_c(n: usize) -> Arc<RationalPoly> {
    C_CACHE.get(n, |n, prev| {
        if n == 0 {
            return RationalPoly::new(vec![rat(-1, 3), rat(0, 1), rat(1, 3)]);
        }
        let deg = 3 * n + 2;
        let p = &prev[n - 1];
        let g = |k: isize| {
            if k < 0 {
                BigRational::zero()
            } else {
                p.coeff(k as usize)
            }
        };
        let mut c = vec![BigRational::zero(); deg + 1];
        c[deg] = BigRational::new(BigInt::one(), BigInt::from(3).pow(n as u32 + 1) * factorial(n + 1));
        for k in (0..deg - 1).rev() {
            let ki = k as isize;
            let k1 = rat_int(k + 1);
            let mut v = rat_int(k + 2) * &c[k + 2] + &k1 * g(ki + 1);
            v -= rat_int(2 * k) / &k1 * g(ki - 1);
            v += g(ki - 3) / &k1;
            c[k] = v;
        }
        RationalPoly::new(c)
    })
}

/// P_k(τ₀): P₁ = 1, P₂ = τ₀/2, kP_k = τ₀P_{k−1} + P_{k−2}. P₀ = 0 is consistent
/// with the recurrence and returned for k = 0.
pub fn gen_p(k: usize) -> Arc<RationalPoly> {
    P_CACHE.get(k, |k, prev| match k {
        0 => RationalPoly::zero(),
        1 => RationalPoly::one(),
        _ => {
            let t = RationalPoly::monomial(rat(1, 1), 1);
            (&(&t * &prev[k - 1]) + &prev[k - 2]).scale(&rat(1, k as i64))
        }
    })
}

/// Coefficients g_k(ε) of e^{−εt(s)}·t′(s), where s = √(2(eᵗ−t−1)) and t(s) is
/// the reverted series. Returns g_0..g_{len−1}.
fn steepest_descent_series(len: usize) -> Vec<RationalPoly> {
    // q(t) = 2(eᵗ−t−1)/t² = Σ 2tʲ/(j+2)!
    let mut q = Vec::with_capacity(len + 1);
    let mut fact = BigInt::from(2);
    for j in 0..=len {
        q.push(BigRational::new(BigInt::from(2), fact.clone()));
        fact *= BigInt::from(j + 3);
    }
    // s = t·q^{1/2}; Lagrange: r_m = (1/m)[t^{m−1}] q^{−m/2}
    let mut r = vec![BigRational::zero(); len + 1];
    for m in 1..=len {
        let w = pow_rational(&q, &rat(-(m as i64), 2), m);
        r[m] = &w[m - 1] / rat_int(m);
    }
    // t′(s)
    let tprime: Vec<RationalPoly> = (0..len)
        .map(|k| RationalPoly::constant(&r[k + 1] * rat_int(k + 1)))
        .collect();
    // −ε·t(s)
    let arg: Vec<RationalPoly> = r.iter().map(|c| RationalPoly::monomial(-c, 1)).collect();
    let e = exp_series(&arg, len, |p, c| p.scale(c));
    mul_trunc(&e, &tprime, len)
}

/// a_n(ε) of the transition-point expansion.
pub fn gen_a(n: usize) -> Arc<RationalPoly> {
    let mut cache = A_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if n >= cache.len() {
        let len = (n + 1).max(2 * cache.len()).max(12);
        let g = steepest_descent_series(len);
        let mut out = Vec::with_capacity(len);
        for (k, gk) in g.iter().enumerate() {
            let m = k / 2;
            let w = if k % 2 == 0 {
                // (2m−1)!!
                let df = (1..=m).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1));
                rat_int(df)
            } else {
                -rat_int(BigInt::from(2).pow(m as u32) * factorial(m))
            };
            out.push(Arc::new(gk.scale(&w)));
        }
        *cache = out;
    }
    Arc::clone(&cache[n])
}

/// Partial ordinary Bell polynomial 𝗕_{k,m}(α₁, …, α_{k−m+1}) = [xᵏ](Σ αₙxⁿ)ᵐ.
/// `alpha[0]` is α₁; entries past α_{k−m+1} are ignored.
pub fn bell_partial<T: Ring>(k: usize, m: usize, alpha: &[T]) -> Result<T> {
    if m > k {
        return Err(Error::Index(format!("Bell polynomial needs m <= k, got k={k}, m={m}")));
    }
    if m == 0 {
        return Ok(if k == 0 { T::rone() } else { T::rzero() });
    }
    let need = k - m + 1;
    if alpha.len() < need {
        return Err(Error::Index(format!(
            "Bell polynomial B_{{{k},{m}}} needs {need} arguments, got {}",
            alpha.len()
        )));
    }
    let p = pow_trunc(&alpha[..need], m, need);
    Ok(p[need - 1].clone())
}

/// d_n(τ₀) of the quantile expansion, via the Bell-polynomial recurrence.
pub fn gen_d(n: usize) -> Arc<RationalPoly> {
    D_CACHE.get(n, |k, prev| {
        if k == 0 {
            return RationalPoly::new(vec![rat(-1, 3), rat(0, 1), rat(1, 3)]);
        }
        let d: Vec<RationalPoly> = prev.iter().map(|p| (**p).clone()).collect();
        let t0 = RationalPoly::monomial(rat(1, 1), 1);

        // −Σ_{m=2}^{k+1} P_m 𝗕_{k+1,m}(d₀, …): [x^{k+1−m}] A^m with A = d₀ + d₁x + …
        let mut acc = RationalPoly::zero();
        let alen = k; // degrees 0..k−1
        let a_series: Vec<RationalPoly> = d[..alen].to_vec();
        let mut apow = a_series.clone();
        for m in 2..=k + 1 {
            apow = mul_trunc(&apow, &a_series, alen);
            let b = &apow[k + 1 - m];
            if !b.is_zero() {
                acc = &acc - &(&*gen_p(m) * b);
            }
        }

        // Σ_{n=0}^k Σ_{m=0}^{3n+2} c_{n,m} [x^{k−n}] T^m with T = τ₀ + d₀x + d₁x² + …
        let tlen = k + 1;
        let mut t_series = Vec::with_capacity(tlen);
        t_series.push(t0);
        t_series.extend(d[..k].iter().cloned());
        let max_m = 3 * k + 2;
        let mut tpow: Vec<Vec<RationalPoly>> = Vec::with_capacity(max_m + 1);
        let mut cur = vec![RationalPoly::zero(); tlen];
        cur[0] = RationalPoly::one();
        tpow.push(cur.clone());
        for _ in 1..=max_m {
            cur = mul_trunc(&cur, &t_series, tlen);
            tpow.push(cur.clone());
        }
        for nn in 0..=k {
            let c = gen_c(nn);
            for (m, cnm) in c.coeffs().iter().enumerate() {
                if cnm.is_zero() {
                    continue;
                }
                let b = &tpow[m][k - nn];
                if !b.is_zero() {
                    acc = &acc + &b.scale(cnm);
                }
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn b_polys() {
        assert_eq!(*gen_b(0), RationalPoly::one());
        assert_eq!(*gen_b(1), p(&[(0, 1), (1, 1)]));
        assert_eq!(*gen_b(4), p(&[(0, 1), (1, 1), (22, 1), (58, 1), (24, 1)]));
        for n in 0..15 {
            assert_eq!(gen_b(n).degree(), Some(n));
        }
    }

    #[test]
    fn a_polys() {
        assert_eq!(*gen_a(0), RationalPoly::one());
        assert_eq!(*gen_a(1), p(&[(1, 3), (1, 1)]));
        assert_eq!(*gen_a(3), p(&[(4, 135), (1, 3), (2, 3), (1, 3)]));
        assert_eq!(*gen_a(4), p(&[(1, 288), (1, 8), (5, 12), (5, 12), (1, 8)]));
        for n in 0..14 {
            assert_eq!(gen_a(n).degree(), Some(n), "n={n}");
        }
    }

    #[test]
    fn c_polys() {
        assert_eq!(*gen_c(0), p(&[(-1, 3), (0, 1), (1, 3)]));
        assert_eq!(
            *gen_c(2),
            p(&[
                (-1, 540),
                (0, 1),
                (-23, 540),
                (0, 1),
                (133, 540),
                (0, 1),
                (-29, 324),
                (0, 1),
                (1, 162)
            ])
        );
        assert_eq!(gen_c(8).coeff(0), rat(-3184811, 3695155200));
    }

    #[test]
    fn p_polys() {
        assert_eq!(*gen_p(1), RationalPoly::one());
        assert_eq!(*gen_p(2), p(&[(0, 1), (1, 2)]));
        assert_eq!(*gen_p(3), p(&[(1, 3), (0, 1), (1, 6)]));
        for k in 1..12 {
            assert!(gen_p(k).vanishes_on_parity(k), "k={k}");
        }
    }

    #[test]
    fn bell_small() {
        let alpha: Vec<BigRational> = (1..=8).map(|i| rat(i, 1)).collect();
        assert_eq!(bell_partial(0, 0, &alpha).unwrap(), rat(1, 1));
        assert_eq!(bell_partial(4, 0, &alpha).unwrap(), rat(0, 1));
        assert_eq!(bell_partial(3, 3, &alpha).unwrap(), rat(1, 1));
        assert_eq!(bell_partial(5, 1, &alpha).unwrap(), rat(5, 1));
        // 2α₁α₃ + α₂² = 6 + 4
        assert_eq!(bell_partial(4, 2, &alpha).unwrap(), rat(10, 1));
        assert!(bell_partial(2, 3, &alpha).is_err());
    }

    #[test]
    fn d_polys() {
        assert_eq!(*gen_d(0), p(&[(-1, 3), (0, 1), (1, 3)]));
        assert_eq!(*gen_d(1), p(&[(0, 1), (-7, 36), (0, 1), (1, 36)]));
        assert_eq!(*gen_d(2), p(&[(8, 405), (0, 1), (-7, 810), (0, 1), (-1, 270)]));
    }
}
