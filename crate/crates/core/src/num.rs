//! Dyadic fixed-point values, a round-up error tracker, and rational helpers.

use num_bigint::{BigInt, BigUint, Sign};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exact dyadic rational: `mant * 2^exp`.
///
/// All arithmetic is exact; rounding happens only through [`Dyadic::round_to`]
/// and the constructors that take a precision argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub mant: BigInt,
    pub exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic { mant: BigInt::from(n), exp: 0 }
    }

    /// 2^e.
    pub fn pow2(e: i64) -> Self {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Round to the nearest multiple of 2^-prec (ties toward even mantissa).
    /// The result differs from `self` by at most 2^-(prec+1).
    pub fn round_to(&self, prec: u32) -> Dyadic {
        let target = -(prec as i64);
        if self.exp >= target || self.mant.is_zero() {
            return self.clone();
        }
        let shift = (target - self.exp) as u64;
        let (q, r) = num_integer::Integer::div_rem(&self.mant, &(BigInt::one() << shift));
        let half = BigInt::one() << (shift - 1);
        let mut q = q;
        // div_rem truncates toward zero; fix up to round-to-nearest.
        let r_abs = r.abs();
        match r_abs.cmp(&half) {
            Ordering::Greater => {
                if r.is_negative() {
                    q -= 1;
                } else {
                    q += 1;
                }
            }
            Ordering::Equal => {
                if num_integer::Integer::is_odd(&q) {
                    if r.is_negative() {
                        q -= 1;
                    } else {
                        q += 1;
                    }
                }
            }
            Ordering::Less => {}
        }
        Dyadic { mant: q, exp: target }
    }

    /// Nearest dyadic with denominator 2^prec; error ≤ 2^-(prec+1).
    pub fn from_ratio(r: &BigRational, prec: u32) -> Dyadic {
        let scaled = r * BigRational::from_integer(BigInt::one() << prec);
        let rounded = scaled.round().to_integer();
        Dyadic { mant: rounded, exp: -(prec as i64) }
    }

    /// Exact conversion when the rational is dyadic; error otherwise.
    pub fn from_ratio_exact(r: &BigRational) -> Option<Dyadic> {
        let den = r.denom();
        if den.is_zero() {
            return None;
        }
        let bits = den.bits();
        if den.magnitude() == &(BigUint::one() << (bits - 1)) {
            return Some(Dyadic { mant: r.numer().clone(), exp: -((bits - 1) as i64) });
        }
        None
    }

    pub fn from_f64(x: f64) -> Option<Dyadic> {
        let r = BigRational::from_float(x)?;
        Some(Dyadic::from_ratio_exact(&r).expect("binary float is dyadic"))
    }

    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant * (BigInt::one() << self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        // Keep ~64 mantissa bits so the conversion never overflows BigInt→f64.
        let drop = (bits - 64).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        m * exp2i(e)
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b) = (self, other);
        if a.mant.is_zero() {
            return b.clone();
        }
        if b.mant.is_zero() {
            return a.clone();
        }
        let exp = a.exp.min(b.exp);
        let am = &a.mant << (a.exp - exp) as u64;
        let bm = &b.mant << (b.exp - exp) as u64;
        Dyadic { mant: am + bm, exp }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        Dyadic { mant: self.mant.clone(), exp: self.exp + e }
    }

    pub fn cmp_val(&self, other: &Dyadic) -> Ordering {
        let d = self.sub(other);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_val(other))
    }
}

/// 2^e as f64, saturating instead of overflowing.
pub fn exp2i(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        f64::powi(2.0, e as i32)
    }
}

/// Upper bound on a nonnegative quantity, tracked in the log2 domain so that
/// magnitudes like 2^-50000 stay representable. Every operation rounds up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpBound {
    log2: f64,
}

const UP_PAD: f64 = 1e-9;

impl UpBound {
    pub fn zero() -> Self {
        UpBound { log2: f64::NEG_INFINITY }
    }

    pub fn pow2(e: i64) -> Self {
        UpBound { log2: e as f64 }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0);
        if x == 0.0 {
            UpBound::zero()
        } else {
            UpBound { log2: x.log2() + UP_PAD }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log2 == f64::NEG_INFINITY
    }

    pub fn log2(&self) -> f64 {
        self.log2
    }

    pub fn mul(&self, other: &UpBound) -> UpBound {
        if self.is_zero() || other.is_zero() {
            return UpBound::zero();
        }
        UpBound { log2: self.log2 + other.log2 + UP_PAD }
    }

    pub fn add(&self, other: &UpBound) -> UpBound {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.log2 >= other.log2 {
            (self.log2, other.log2)
        } else {
            (other.log2, self.log2)
        };
        let d = lo - hi; // ≤ 0
        UpBound { log2: hi + (1.0 + d.exp2()).log2() + UP_PAD }
    }

    pub fn max(&self, other: &UpBound) -> UpBound {
        if self.log2 >= other.log2 {
            *self
        } else {
            *other
        }
    }

    /// True when the bound certifies value ≤ 2^e.
    pub fn le_pow2(&self, e: i64) -> bool {
        self.log2 <= e as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.log2.exp2()
        }
    }
}

/// Parse "p/q", "0.25", or "3" into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad rational numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad rational denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Usage(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| Error::Usage(format!("bad decimal {s:?}")))?
        };
        let digits = frac.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Usage(format!("bad decimal {s:?}")));
        }
        let frac_num: BigInt =
            digits.parse().map_err(|_| Error::Usage(format!("bad decimal {s:?}")))?;
        let scale = num_traits::pow(BigInt::from(10), digits.len());
        let frac_val = BigRational::new(frac_num, scale);
        let whole = BigRational::from_integer(int_part);
        return Ok(if s.starts_with('-') { whole - frac_val } else { whole + frac_val });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Usage(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

pub fn ratio_from_u64(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // Shift both into f64-safe range; the ratio of the shifted parts is exact
    // enough (relative error ~2^-52).
    let drop_n = (nb - 63).max(0) as u64;
    let drop_d = (db - 63).max(0) as u64;
    let nf = (n >> drop_n).to_f64().unwrap_or(0.0);
    let df = (d >> drop_d).to_f64().unwrap_or(1.0);
    if df == 0.0 {
        return f64::NAN;
    }
    (nf / df) * exp2i(drop_n as i64 - drop_d as i64)
}

/// floor(2^(prec*e) / n)^(1/e) as an integer: the mantissa of n^(-1/e) at
/// precision `prec` bits, accurate within 2 ulp.
pub fn inv_root_mantissa(n: &BigUint, root: u32, prec: u32) -> BigUint {
    assert!(root >= 1 && !n.is_zero());
    if root == 1 {
        return (BigUint::one() << prec as u64) / n;
    }
    let scaled = (BigUint::one() << (prec as u64 * root as u64)) / n;
    scaled.nth_root(root)
}

/// floor(2^prec / n): exact reciprocal mantissa.
pub fn inv_mantissa(n: &BigUint, prec: u32) -> BigUint {
    (BigUint::one() << prec as u64) / n
}
