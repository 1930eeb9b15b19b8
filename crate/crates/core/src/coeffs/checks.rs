//! Exact cross-checks on the d_n family.

use super::families::{bell_partial, gen_d};
use super::poly::{rat, rat_int, RationalPoly};
use super::series::pow_rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Bernoulli numbers B_0..=B_n with B_1 = −1/2, from Σ_{j=0}^{m} C(m+1, j)B_j = 0.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, j)
        for (j, bj) in b.iter().enumerate() {
            s += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / rat_int(m + 1));
    }
    b
}

/// Right side of the alternative d-recurrence at index k.
pub fn altdrec_rhs(k: usize) -> BigRational {
    if k >= 2 && (k + 2).is_multiple_of(4) {
        let n = (k + 2) / 4;
        let b = bernoulli(2 * n);
        -&b[2 * n] / rat_int(2 * n * (2 * n - 1))
    } else {
        BigRational::zero()
    }
}

/// Left side of the alternative d-recurrence at index k ≥ 1; uses d₀..d_{k−1}.
pub fn altdrec_lhs(k: usize) -> RationalPoly {
    let d: Vec<RationalPoly> = (0..k).map(|i| (*gen_d(i)).clone()).collect();
    let dp: Vec<RationalPoly> = d.iter().map(RationalPoly::derivative).collect();
    let mut with_tau = vec![RationalPoly::monomial(rat(1, 1), 1)];
    with_tau.extend(d.iter().cloned());

    let weight = |m: usize| {
        let s = if m.is_multiple_of(2) { 1 } else { -1 };
        rat(s, m as i64)
    };
    let mut acc = RationalPoly::zero();
    for m in 2..=k + 2 {
        let b = bell_partial(k + 2, m, &with_tau).expect("arguments supplied");
        acc = &acc + &b.scale(&weight(m));
    }
    for m in 1..=k {
        let b1 = bell_partial(k, m, &dp).expect("arguments supplied");
        let b2 = bell_partial(k, m, &with_tau).expect("arguments supplied");
        acc = &acc + &(&b1 - &b2).scale(&weight(m));
    }
    acc
}

/// True when d₀..d_{k−1} satisfy the alternative recurrence exactly.
pub fn check_altdrec(k: usize) -> bool {
    if k == 0 {
        return false;
    }
    altdrec_lhs(k) == RationalPoly::constant(altdrec_rhs(k))
}

/// δ_k from (1/k)[x^{k−1}]((x²/2)/(eˣ−x−1))^{k/2}, with δ₂ = 1/3 set directly.
pub fn delta_formula(k: usize) -> BigRational {
    if k == 2 {
        return rat(1, 3);
    }
    // (eˣ−x−1)/(x²/2) = Σ 2xʲ/(j+2)!, so h^{k/2} = that^{−k/2}
    let mut q = Vec::with_capacity(k);
    let mut fact = BigInt::from(2);
    for j in 0..k {
        q.push(BigRational::new(BigInt::from(2), fact.clone()));
        fact *= BigInt::from(j + 3);
    }
    let w = pow_rational(&q, &rat(-(k as i64), 2), k);
    &w[k - 1] / rat_int(k)
}

/// True when the leading coefficient of d_{k−2} equals δ_k.
pub fn check_delta(k: usize) -> bool {
    if k < 2 {
        return false;
    }
    let d = gen_d(k - 2);
    d.degree() == Some(k) && d.leading() == delta_formula(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(6);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn altdrec_cases() {
        assert_eq!(altdrec_rhs(2), rat(-1, 12));
        assert_eq!(altdrec_rhs(6), rat(1, 360));
        assert_eq!(altdrec_rhs(3), rat(0, 1));
        for k in 1..=6 {
            assert!(check_altdrec(k), "k={k}");
        }
    }

    #[test]
    fn delta_cases() {
        assert_eq!(delta_formula(3), rat(1, 36));
        assert_eq!(delta_formula(6), rat(1, 17010));
        for k in 2..=6 {
            assert!(check_delta(k), "k={k}");
        }
    }
}
