//! Arbitrary-precision binary floating point: ±mant·2^exp with the mantissa
//! held at exactly `prec` bits and round-to-nearest-even after every operation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

pub const DEFAULT_PREC: u32 = 192;

#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    neg: bool,
    mant: BigUint,
    exp: i64,
    prec: u32,
}

fn round_to(neg: bool, mant: BigUint, exp: i64, prec: u32, sticky: bool) -> BigFloat {
    let bits = mant.bits();
    if bits == 0 {
        return BigFloat::zero(prec);
    }
    let p = u64::from(prec);
    if bits <= p {
        let s = p - bits;
        return BigFloat {
            neg,
            mant: mant << s,
            exp: exp - s as i64,
            prec,
        };
    }
    let s = bits - p;
    let mut q = &mant >> s;
    let rem = &mant - (&q << s);
    let half = BigUint::one() << (s - 1);
    let up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sticky || q.is_odd(),
    };
    let mut e = exp + s as i64;
    if up {
        q += 1u32;
        if q.bits() > p {
            q >>= 1;
            e += 1;
        }
    }
    BigFloat {
        neg,
        mant: q,
        exp: e,
        prec,
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        Self {
            neg: false,
            mant: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        round_to(self.neg, self.mant.clone(), self.exp, prec, false)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        round_to(v < 0, BigUint::from(v.unsigned_abs()), 0, prec, false)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        round_to(v.sign() == Sign::Minus, v.magnitude().clone(), 0, prec, false)
    }

    /// Exact conversion (rounded only if prec < 53).
    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "BigFloat::from_f64 needs a finite value");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        round_to(neg, BigUint::from(m), e, prec, false)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let n = Self::from_bigint(r.numer(), prec + 8);
        let d = Self::from_bigint(r.denom(), prec + 8);
        n.div(&d).with_prec(prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg && !self.is_zero()
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        if !r.is_zero() {
            r.neg = !r.neg;
        }
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        r.neg = false;
        r
    }

    /// Exponent of the leading bit: |x| ∈ [2^t, 2^{t+1}).
    pub fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64 - 1
    }

    /// x·2^k, exact.
    pub fn ldexp(&self, k: i64) -> Self {
        let mut r = self.clone();
        if !r.is_zero() {
            r.exp += k;
        }
        r
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = round_to(self.neg, self.mant.clone(), self.exp, 53, false);
        let m = r.mant.to_u64().unwrap_or(0) as f64;
        let e = r.exp.clamp(-2000, 2000) as i32;
        let v = libm::ldexp(m, e);
        if r.neg {
            -v
        } else {
            v
        }
    }

    /// Natural log of |x| as f64, usable for values far outside binary64 range.
    pub fn ln_abs_f64(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let t = self.top();
        let m = self.ldexp(-t).to_f64().abs();
        m.ln() + t as f64 * std::f64::consts::LN_2
    }

    fn signed_mant(&self) -> BigInt {
        let m = BigInt::from(self.mant.clone());
        if self.neg {
            -m
        } else {
            m
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if o.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return o.with_prec(prec);
        }
        let (hi, lo) = if self.top() >= o.top() { (self, o) } else { (o, self) };
        // A far smaller addend only matters through the rounding direction.
        let gap = hi.top() - lo.top();
        let lo_owned;
        let lo = if gap > i64::from(prec) + 4 {
            lo_owned = BigFloat {
                neg: lo.neg,
                mant: BigUint::one(),
                exp: hi.top() - i64::from(prec) - 4,
                prec,
            };
            &lo_owned
        } else {
            lo
        };
        let e = hi.exp.min(lo.exp);
        let a = hi.signed_mant() << (hi.exp - e) as usize;
        let b = lo.signed_mant() << (lo.exp - e) as usize;
        let s = a + b;
        round_to(s.is_negative(), s.magnitude().clone(), e, prec, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        round_to(self.neg != o.neg, &self.mant * &o.mant, self.exp + o.exp, prec, false)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "BigFloat division by zero");
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let shift = (u64::from(prec) + o.mant.bits() + 2).saturating_sub(self.mant.bits());
        let num = &self.mant << shift;
        let (q, r) = num.div_rem(&o.mant);
        round_to(
            self.neg != o.neg,
            q,
            self.exp - o.exp - shift as i64,
            prec,
            !r.is_zero(),
        )
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.prec))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.prec))
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec).div(self)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let want = 2 * u64::from(self.prec) + 4;
        let mut t = want.saturating_sub(self.mant.bits()) as i64;
        if (self.exp - t) % 2 != 0 {
            t += 1;
        }
        let m = &self.mant << t as usize;
        let s = m.sqrt();
        let sticky = &s * &s != m;
        round_to(false, s, (self.exp - t) / 2, self.prec, sticky)
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return if o.neg { Ordering::Greater } else { Ordering::Less },
            (false, true) => return if self.neg { Ordering::Less } else { Ordering::Greater },
            _ => {}
        }
        if self.neg != o.neg {
            return if self.neg { Ordering::Less } else { Ordering::Greater };
        }
        let mag = self.sub(o);

        if mag.is_zero() {
            Ordering::Equal
        } else if mag.neg {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Nearest integer, as a BigInt (ties away from zero).
    pub fn round_int(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let half = BigFloat::from_f64(0.5, self.prec);
        let a = self.abs().add(&half);
        let m = if a.exp >= 0 {
            BigInt::from(a.mant.clone()) << a.exp as usize
        } else {
            BigInt::from(&a.mant >> (-a.exp) as usize)
        };
        if self.neg {
            -m
        } else {
            m
        }
    }

    /// True when the value is an integer.
    pub fn is_integer(&self) -> bool {
        if self.is_zero() || self.exp >= 0 {
            return true;
        }
        let s = (-self.exp) as u64;
        s <= self.mant.bits() && (&self.mant % (BigUint::one() << s)).is_zero()
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        let k = (self.to_f64() / std::f64::consts::LN_2).round();
        assert!(k.abs() < 4.0e18, "BigFloat exp argument out of range");
        let k = k as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let w = prec + 40 + kbits;
        let x = self.with_prec(w);
        let r = x.sub(&ln2(w).mul(&Self::from_i64(k, w)));
        let halvings = 16;
        let r = r.ldexp(-halvings);
        // Taylor
        let mut sum = Self::one(w);
        let mut term = Self::one(w);
        for n in 1..1000 {
            term = term.mul(&r).div_i64(n);
            sum = sum.add(&term);
            if term.is_zero() || term.top() < sum.top() - i64::from(w) - 2 {
                break;
            }
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum.ldexp(k).with_prec(prec)
    }

    pub fn ln(&self) -> Self {
        assert!(
            !self.is_negative() && !self.is_zero(),
            "BigFloat ln of a non-positive number"
        );
        let prec = self.prec;
        let w = prec + 40;
        // x = m·2^e with m ∈ [1/√2, √2)
        let mut e = self.top();
        let mut m = self.with_prec(w).ldexp(-e);
        if m.to_f64() > std::f64::consts::SQRT_2 {
            m = m.ldexp(-1);
            e += 1;
        }
        let one = Self::one(w);
        let z = m.sub(&one).div(&m.add(&one));
        let lnm = atanh_series(&z).ldexp(1);
        ln2(w + 64)
            .with_prec(w)
            .mul(&Self::from_i64(e, w))
            .add(&lnm)
            .with_prec(prec)
    }

    /// x^y for x > 0.
    pub fn pow(&self, y: &Self) -> Self {
        let w = self.prec.max(y.prec) + 32;
        self.with_prec(w)
            .ln()
            .mul(&y.with_prec(w))
            .exp()
            .with_prec(self.prec.max(y.prec))
    }

    /// (sin x, cos x).
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        let k = (self.to_f64() / std::f64::consts::FRAC_PI_2).round() as i64;
        let kbits = 64 - k.unsigned_abs().leading_zeros();
        let w = prec + 40 + kbits;
        let r = self.with_prec(w).sub(&pi(w).ldexp(-1).mul(&Self::from_i64(k, w)));
        let r2 = r.mul(&r);
        let mut s = r.clone();
        let mut c = Self::one(w);
        let mut ts = r.clone();
        let mut tc = Self::one(w);
        for n in 1..1000i64 {
            ts = ts.mul(&r2).div_i64((2 * n) * (2 * n + 1)).neg();
            tc = tc.mul(&r2).div_i64((2 * n - 1) * (2 * n)).neg();
            s = s.add(&ts);
            c = c.add(&tc);
            if ts.is_zero() || ts.top() < -i64::from(w) - 4 {
                break;
            }
        }
        let (s, c) = match k.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        (s.with_prec(prec), c.with_prec(prec))
    }

    /// Decimal scientific notation with `sig` significant digits.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return format!("{:.*}e0", sig.saturating_sub(1), 0.0);
        }
        let log10 = self.ln_abs_f64() / std::f64::consts::LN_10;
        let mut d = log10.floor() as i64;
        for _ in 0..3 {
            let digits = self.scaled_digits(sig as i64 - 1 - d);
            let s = digits.to_string();
            if s.len() > sig {
                d += 1;
                continue;
            }
            if s.len() < sig {
                d -= 1;
                continue;
            }
            let sign = if self.neg { "-" } else { "" };
            let (head, tail) = s.split_at(1);
            return if tail.is_empty() {
                format!("{sign}{head}e{d}")
            } else {
                format!("{sign}{head}.{tail}e{d}")
            };
        }
        format!("{:e}", self.to_f64())
    }

    // round(|x|·10^s) as an integer
    fn scaled_digits(&self, s: i64) -> BigUint {
        let ten = BigUint::from(10u32);
        let mut num = self.mant.clone();
        let mut den = BigUint::one();
        if s >= 0 {
            num *= ten.pow(s as u32);
        } else {
            den *= ten.pow((-s) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        let (q, r) = num.div_rem(&den);
        if r << 1 >= den {
            q + 1u32
        } else {
            q
        }
    }
}

/// Σ z^{2k+1}/(2k+1) = atanh z for |z| < 1.
pub(crate) fn atanh_series(z: &BigFloat) -> BigFloat {
    let w = z.prec;
    let z2 = z.mul(z);
    let mut p = z.clone();
    let mut sum = z.clone();
    for k in 1..100_000i64 {
        p = p.mul(&z2);
        let t = p.div_i64(2 * k + 1);
        sum = sum.add(&t);
        if t.is_zero() || t.top() < sum.top() - i64::from(w) - 4 {
            break;
        }
    }
    sum
}

/// Σ (−1)^k /((2k+1)n^{2k+1}) = atan(1/n).
fn atan_inv(n: i64, w: u32) -> BigFloat {
    let x = BigFloat::one(w).div_i64(n);
    let x2 = x.mul(&x);
    let mut p = x.clone();
    let mut sum = x.clone();
    for k in 1..100_000i64 {
        p = p.mul(&x2).neg();
        let t = p.div_i64(2 * k + 1);
        sum = sum.add(&t);
        if t.is_zero() || t.top() < -i64::from(w) - 4 {
            break;
        }
    }
    sum
}

static CONSTS: Mutex<Option<HashMap<(u8, u32), BigFloat>>> = Mutex::new(None);

fn cached(tag: u8, prec: u32, f: impl FnOnce(u32) -> BigFloat) -> BigFloat {
    let mut g = CONSTS.lock().unwrap_or_else(|e| e.into_inner());
    let map = g.get_or_insert_with(HashMap::new);
    if let Some(v) = map.get(&(tag, prec)) {
        return v.clone();
    }
    let v = f(prec);
    map.insert((tag, prec), v.clone());
    v
}

/// ln 2 = 2·atanh(1/3).
pub fn ln2(prec: u32) -> BigFloat {
    cached(0, prec, |p| {
        let w = p + 32;
        atanh_series(&BigFloat::one(w).div_i64(3)).ldexp(1).with_prec(p)
    })
}

/// π by Machin's formula.
pub fn pi(prec: u32) -> BigFloat {
    cached(1, prec, |p| {
        let w = p + 32;
        atan_inv(5, w)
            .mul_i64(16)
            .sub(&atan_inv(239, w).mul_i64(4))
            .with_prec(p)
    })
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(30))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(25))
    }
}
