//! Exact rationals, digit expansions and interval-certified continued
//! fractions.
//!
//! A real number known to finite precision is a [`RationalInterval`]
//! `[lo, hi]`. Digit prefixes give intervals whose upper end is never attained
//! (an expansion may not end in an infinite tail of `b - 1`), and irrational
//! enclosures never attain a rational endpoint, so digit extraction treats
//! `hi` as excluded whenever `lo < hi`. Continued-fraction certification and
//! the Legendre test treat the interval as closed, which is conservative.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("base {0} must be at least 2")]
    InvalidBase(u32),
    #[error("digit {digit} at position {position} is not below base {base}")]
    InvalidDigit { digit: u8, base: u32, position: usize },
    #[error("{0}")]
    Domain(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

fn check_base(base: u32) -> Result<(), ArithError> {
    if base >= 2 {
        Ok(())
    } else {
        Err(ArithError::InvalidBase(base))
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Result<BigRational, ArithError> {
    let err = || ArithError::Parse(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `"p/q"` (always with a denominator).
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// A closed interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self, ArithError> {
        if lo > hi {
            return Err(ArithError::Domain(format!(
                "empty interval [{}, {}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `max |xi - c|` over the interval.
    pub fn max_distance(&self, c: &BigRational) -> BigRational {
        let a = (&self.lo - c).abs();
        let b = (&self.hi - c).abs();
        a.max(b)
    }

    /// `min |xi - c|` over the interval.
    pub fn min_distance(&self, c: &BigRational) -> BigRational {
        if self.contains(c) {
            BigRational::zero()
        } else {
            let a = (&self.lo - c).abs();
            let b = (&self.hi - c).abs();
            a.min(b)
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// The first `count` base-`b` digits of `x` in `[0, 1)`, never ending in an
/// infinite tail of `b - 1`.
pub fn digits_from_rational(x: &BigRational, base: u32, count: usize) -> Result<Vec<u8>, ArithError> {
    check_base(base)?;
    if x.is_negative() || x >= &BigRational::one() {
        return Err(ArithError::Domain(format!(
            "{} is not in [0, 1)",
            format_rational(x)
        )));
    }
    let den = x.denom();
    let mut rem = x.numer().clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        rem *= base;
        let (digit, r) = rem.div_rem(den);
        out.push(small_digit(&digit));
        rem = r;
    }
    Ok(out)
}

fn small_digit(d: &BigInt) -> u8 {
    let (_, digits) = d.to_u32_digits();
    digits.first().copied().unwrap_or(0) as u8
}

/// The interval `[S, S + b^-L]` of reals whose expansion starts with `digits`,
/// where `S = sum a_k b^-k`.
pub fn real_from_digits(digits: &[u8], base: u32) -> Result<RationalInterval, ArithError> {
    check_base(base)?;
    let mut num = BigInt::zero();
    for (position, &digit) in digits.iter().enumerate() {
        if u32::from(digit) >= base {
            return Err(ArithError::InvalidDigit {
                digit,
                base,
                position,
            });
        }
        num = num * base + digit;
    }
    let den = BigInt::from(base).pow(digits.len() as u32);
    let hi = BigRational::new(&num + 1u32, den.clone());
    Ok(RationalInterval {
        lo: BigRational::new(num, den),
        hi,
    })
}

/// The longest base-`b` digit prefix shared by every real in `x`, at most
/// `max_count` digits. See the module notes on the upper endpoint.
pub fn rebase_digits(x: &RationalInterval, base: u32, max_count: usize) -> Result<Vec<u8>, ArithError> {
    check_base(base)?;
    let one = BigRational::one();
    if x.lo.is_negative() || x.hi > one || (x.is_point() && x.lo == one) {
        return Err(ArithError::Domain(format!("{x} is not inside [0, 1)")));
    }
    // common denominator keeps every step to integer arithmetic
    let den = x.lo.denom().lcm(x.hi.denom());
    let mut lo = x.lo.numer() * (&den / x.lo.denom());
    let mut hi = x.hi.numer() * (&den / x.hi.denom());
    let point = x.is_point();
    let mut out = Vec::new();
    while out.len() < max_count {
        lo *= base;
        hi *= base;
        let d_lo = lo.div_floor(&den);
        let d_hi = if point {
            d_lo.clone()
        } else {
            // last digit reached strictly below hi
            (&hi - 1u32).div_floor(&den)
        };
        if d_lo != d_hi {
            break;
        }
        let shift = &d_lo * &den;
        lo -= &shift;
        hi -= &shift;
        out.push(small_digit(&d_lo));
    }
    Ok(out)
}

/// A convergent `p/q` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    #[serde(serialize_with = "ser_bigint")]
    pub p: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

pub(crate) fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Certified partial quotients `a_0; a_1, ..` and their convergents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CfExpansion {
    quotients: Vec<BigInt>,
    convergents: Vec<Convergent>,
}

impl CfExpansion {
    pub fn from_quotients(quotients: Vec<BigInt>) -> Self {
        let mut convergents = Vec::with_capacity(quotients.len());
        let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
        let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
        for a in &quotients {
            let p2 = a * &p1 + &p0;
            let q2 = a * &q1 + &q0;
            convergents.push(Convergent {
                p: p2.clone(),
                q: q2.clone(),
            });
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        CfExpansion {
            quotients,
            convergents,
        }
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    pub fn convergents(&self) -> &[Convergent] {
        &self.convergents
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// `{"a":[..],"convergents":[["p","q"],..]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.quotients.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "convergents": self
                .convergents
                .iter()
                .map(|c| [c.p.to_string(), c.q.to_string()])
                .collect::<Vec<_>>(),
        })
    }
}

/// Canonical continued fraction of a rational (last quotient `>= 2` unless
/// the expansion has a single term).
pub fn rational_cf(x: &BigRational) -> Vec<BigInt> {
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    let mut out = Vec::new();
    while !q.is_zero() {
        let a = p.div_floor(&q);
        let r = &p - &a * &q;
        out.push(a);
        p = q;
        q = r;
    }
    out
}

/// Partial quotients shared by every real in `x`.
///
/// For a point interval this is the full canonical expansion. Otherwise it is
/// the common prefix of the endpoint expansions, minus the last agreeing
/// quotient when an endpoint's expansion stops there on the side where the
/// interval could change it: an expansion `[.., a_k]` is approached by
/// `[.., a_k, large]` from above when `k` is even and from below when `k` is
/// odd, and by `[.., a_k - 1, 1, large]` from the other side.
pub fn certified_cf(x: &RationalInterval) -> CfExpansion {
    if x.is_point() {
        return CfExpansion::from_quotients(rational_cf(&x.lo));
    }
    let lo = rational_cf(&x.lo);
    let hi = rational_cf(&x.hi);
    let mut k = lo.iter().zip(&hi).take_while(|(a, b)| a == b).count();
    if k > 0 {
        let last = k - 1;
        let lo_ends = lo.len() == k && last % 2 == 1;
        let hi_ends = hi.len() == k && last % 2 == 0;
        if lo_ends || hi_ends {
            k -= 1;
        }
    }
    let mut quotients = lo;
    quotients.truncate(k);
    CfExpansion::from_quotients(quotients)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LegendreVerdict {
    /// `|xi - p/q| <= 1/(2q^2)` for every `xi` in the interval, so `p/q` is a
    /// convergent of each of them.
    ForcedConvergent,
    Inconclusive,
}

/// Legendre's criterion, checked at both endpoints.
pub fn legendre_check(x: &RationalInterval, p: &BigInt, q: &BigInt) -> Result<LegendreVerdict, ArithError> {
    if q.sign() != Sign::Plus {
        return Err(ArithError::Domain("denominator must be positive".into()));
    }
    let c = BigRational::new(p.clone(), q.clone());
    let bound = BigRational::new(BigInt::one(), BigInt::from(2) * q * q);
    Ok(if x.max_distance(&c) <= bound {
        LegendreVerdict::ForcedConvergent
    } else {
        LegendreVerdict::Inconclusive
    })
}
