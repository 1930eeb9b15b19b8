use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `num/den` text, integers written `n/1`.
pub fn fmt_rat(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Dense univariate polynomial with exact rational coefficients; index = power.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c·xᵏ.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by xᵏ.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k))
                .collect(),
        )
    }

    /// p(−x).
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Truncate to terms of degree < n.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients rounded to binary64.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// True when every coefficient of parity `p` (mod 2) vanishes.
    pub fn vanishes_on_parity(&self, p: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 != p % 2 || c.is_zero())
    }
}

/// Horner evaluation of f64 coefficients.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write!(f, "{}", c.abs())?;
            match k {
                0 => {}
                1 => write!(f, "*x")?,
                _ => write!(f, "*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        RationalPoly::new(v)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Minimal ring interface so Bell polynomials work over numbers and polynomials alike.
pub trait Ring: Clone {
    fn rzero() -> Self;
    fn rone() -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn ris_zero(&self) -> bool;
}

impl Ring for BigRational {
    fn rzero() -> Self {
        Zero::zero()
    }
    fn rone() -> Self {
        One::one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn ris_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for RationalPoly {
    fn rzero() -> Self {
        RationalPoly::zero()
    }
    fn rone() -> Self {
        RationalPoly::one()
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn ris_zero(&self) -> bool {
        RationalPoly::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(v.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(1, 1), (1, 2)]);
        let b = p(&[(-1, 1), (1, 2)]);
        assert_eq!(&a * &b, p(&[(-1, 1), (0, 1), (1, 4)]));
        assert_eq!((&a + &b).degree(), Some(1));
        assert!((&a - &a).is_zero());
        assert_eq!(p(&[(3, 1), (2, 1), (5, 1)]).derivative(), p(&[(2, 1), (10, 1)]));
        assert_eq!(a.reflect(), p(&[(1, 1), (-1, 2)]));
        assert_eq!(a.eval(&rat(2, 1)), rat(2, 1));
        assert_eq!(p(&[(1, 1), (0, 1), (0, 1)]).degree(), Some(0));
        assert_eq!(RationalPoly::zero().degree(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(-1, 3), (0, 1), (1, 3)]).to_string(), "1/3*x^2 - 1/3");
    }
}
