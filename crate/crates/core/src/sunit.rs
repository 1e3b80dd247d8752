//! Multiplicative dependence of bases and the S-unit equation
//!
//! ```text
//! (m2/m1) r^z1 s^-z4 - (m2/m1) r^z2 s^-z4 + s^z3 = 1
//! ```
//!
//! which arises when an approximant denominator `r^u1 (r^v1 - 1) / m1` in
//! base `r` coincides with one of the form `s^u2 (s^v2 - 1) / m2` in base `s`.
//! The search is exhaustive inside a box `0 <= z_i <= zmax`; it proves
//! nothing about solutions outside the box.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::approx::ApproximantRecord;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SunitError {
    #[error("bases must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("cannot factor {0} by trial division up to 10^6")]
    Factorization(u64),
    #[error("coefficients m1, m2 must be positive")]
    InvalidCoefficient,
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>, SunitError> {
    let original = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT && p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        // a cofactor with no factor up to the limit is prime below limit^2
        if p > TRIAL_DIVISION_LIMIT && n / TRIAL_DIVISION_LIMIT >= TRIAL_DIVISION_LIMIT {
            return Err(SunitError::Factorization(original));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// Whether `r, s` are multiplicatively independent; if not, the least
/// positive `(m, l)` with `r^m = s^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DependencyWitness {
    pub independent: bool,
    pub exponents: Option<(u32, u32)>,
}

/// Exponent vectors of dependent integers are parallel; `(m, l)` is their
/// reduced ratio.
pub fn multiplicative_independence(r: u64, s: u64) -> Result<DependencyWitness, SunitError> {
    for b in [r, s] {
        if b < 2 {
            return Err(SunitError::InvalidBase(b));
        }
    }
    let fr = factorize(r)?;
    let fs = factorize(s)?;
    let independent = DependencyWitness {
        independent: true,
        exponents: None,
    };
    if fr.len() != fs.len() || fr.iter().zip(&fs).any(|(a, b)| a.0 != b.0) {
        return Ok(independent);
    }
    // r^m = s^l  <=>  m e_r(p) = l e_s(p) for every p
    let (er, es) = (fr[0].1, fs[0].1);
    let g = er.gcd(&es);
    let (m, l) = (es / g, er / g);
    if fr.iter().zip(&fs).all(|(a, b)| m * a.1 == l * b.1) {
        Ok(DependencyWitness {
            independent: false,
            exponents: Some((m, l)),
        })
    } else {
        Ok(independent)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SUnitEquation {
    pub m1: u64,
    pub m2: u64,
    pub r: u64,
    pub s: u64,
}

/// A solution `(z1, z2, z3, z4)` of the equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SUnitSolution {
    pub z: [u32; 4],
    /// Some proper subsum of `{T1, -T2, T3, -1}` vanishes.
    pub degenerate: bool,
    /// `(m2/m1) r^z2 s^-z4 = s^z3`, the family the dependence of `r, s`
    /// would make infinite.
    pub special_family: bool,
}

impl SUnitEquation {
    pub fn new(m1: u64, m2: u64, r: u64, s: u64) -> Result<Self, SunitError> {
        if m1 == 0 || m2 == 0 {
            return Err(SunitError::InvalidCoefficient);
        }
        for b in [r, s] {
            if b < 2 {
                return Err(SunitError::InvalidBase(b));
            }
        }
        Ok(SUnitEquation { m1, m2, r, s })
    }

    /// The three left-hand terms `T1, -T2, T3`.
    pub fn terms(&self, z: [u32; 4]) -> [BigRational; 3] {
        let ratio = BigRational::new(BigInt::from(self.m2), BigInt::from(self.m1));
        let s_neg = BigRational::new(1.into(), Pow::pow(BigInt::from(self.s), z[3]));
        let rz = |e: u32| BigRational::from_integer(Pow::pow(BigInt::from(self.r), e));
        [
            &ratio * rz(z[0]) * &s_neg,
            -(&ratio * rz(z[1]) * &s_neg),
            BigRational::from_integer(Pow::pow(BigInt::from(self.s), z[2])),
        ]
    }

    /// Exact rational evaluation of the equation.
    pub fn holds(&self, z: [u32; 4]) -> bool {
        let [a, b, c] = self.terms(z);
        a + b + c == BigRational::from_integer(1.into())
    }

    fn classify(&self, z: [u32; 4]) -> SUnitSolution {
        let terms = self.terms(z);
        let one = BigRational::from_integer(1.into());
        // proper subsums of {T1, -T2, T3, -1}: the complement of a vanishing
        // subsum also vanishes, so subsets of the three terms summing to 0 or
        // 1 cover every case
        let mut degenerate = false;
        for mask in 1u8..7 {
            let sum: BigRational = (0..3)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| terms[i].clone())
                .sum();
            if sum.is_zero() || sum == one {
                degenerate = true;
            }
        }
        SUnitSolution {
            z,
            degenerate,
            special_family: (&terms[1] + &terms[2]).is_zero(),
        }
    }
}

/// Every solution with `0 <= z_i <= zmax` and `z3 >= 1`, sorted by `z`.
///
/// Clearing denominators gives `m2 (r^z2 - r^z1) = m1 s^z4 (s^z3 - 1)`; the
/// two sides are tabulated separately and joined on their value.
pub fn sunit_enumerate(eq: &SUnitEquation, zmax: u32) -> Vec<SUnitSolution> {
    let r_pow: Vec<BigInt> = (0..=zmax).map(|e| Pow::pow(BigInt::from(eq.r), e)).collect();
    let s_pow: Vec<BigInt> = (0..=2 * zmax).map(|e| Pow::pow(BigInt::from(eq.s), e)).collect();

    let mut right: HashMap<BigInt, Vec<(u32, u32)>> = HashMap::new();
    for z3 in 1..=zmax {
        for z4 in 0..=zmax {
            let value = BigInt::from(eq.m1) * &s_pow[z4 as usize] * (&s_pow[z3 as usize] - 1u32);
            right.entry(value).or_default().push((z3, z4));
        }
    }
    let mut out = Vec::new();
    for z1 in 0..=zmax {
        for z2 in 0..=zmax {
            let value = BigInt::from(eq.m2) * (&r_pow[z2 as usize] - &r_pow[z1 as usize]);
            if let Some(hits) = right.get(&value) {
                for &(z3, z4) in hits {
                    out.push(eq.classify([z1, z2, z3, z4]));
                }
            }
        }
    }
    out.sort();
    out
}

/// A pair of approximants from two bases with the same reduced denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorMatch {
    pub u1: usize,
    pub v1: usize,
    pub u2: usize,
    pub v2: usize,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub m1: BigInt,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub m2: BigInt,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub q: BigInt,
}

/// All pairs with equal reduced denominators `r^u1 (r^v1 - 1) / m1 =
/// s^u2 (s^v2 - 1) / m2`, keeping `m1, m2 <= m_max`.
pub fn cross_base_match(
    records_r: &[ApproximantRecord],
    records_s: &[ApproximantRecord],
    m_max: &BigInt,
) -> Vec<DenominatorMatch> {
    let mut out = Vec::new();
    for a in records_r {
        let m1 = a.gcd();
        if &m1 > m_max {
            continue;
        }
        for b in records_s {
            let m2 = b.gcd();
            if &m2 > m_max || a.reduced_denominator() != b.reduced_denominator() {
                continue;
            }
            out.push(DenominatorMatch {
                u1: a.w,
                v1: a.period,
                u2: b.w,
                v2: b.period,
                m1: m1.clone(),
                m2,
                q: a.reduced_denominator().clone(),
            });
        }
    }
    out
}
