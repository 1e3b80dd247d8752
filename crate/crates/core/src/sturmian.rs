//! Sturmian and quasi-Sturmian word generators.
//!
//! Mechanical words are computed exactly: the slope is given by its partial
//! quotients and every floor `⌊nα + ρ⌋` is certified between two consecutive
//! convergents of `α`, refining until the bracket no longer straddles an
//! integer. For irrational `α` and rational `ρ` the value `nα + ρ` (`n >= 1`)
//! is never an integer, so refinement terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::word::{WordError, WordStream};

#[derive(Debug, Error)]
pub enum SturmianError {
    #[error("partial quotients must be positive")]
    ZeroQuotient,
    #[error("a periodic slope needs a non-empty period")]
    EmptyPeriod,
    #[error("intercept must lie in [0, 1)")]
    InterceptOutOfRange,
    #[error("morphism image of {0} is empty")]
    EmptyImage(u8),
    #[error("morphism image symbol {symbol} is not below the target base {base}")]
    ImageOutOfRange { symbol: u8, base: u32 },
    #[error("source alphabet of size {source_base} exceeds the morphism domain of size {domain}")]
    OutsideDomain { source_base: u32, domain: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone)]
enum Quotients {
    Periodic { head: Vec<u64>, period: Vec<u64> },
    Explicit(Vec<u64>),
    Rule(Arc<dyn Fn(usize) -> u64 + Send + Sync>),
}

/// An irrational slope `α = [0; a_1, a_2, ..]` in `(0, 1)`.
#[derive(Clone)]
pub struct Slope {
    quotients: Quotients,
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<_> = (1..=8).map_while(|i| self.quotient(i)).collect();
        write!(f, "Slope[0; {head:?}..]")
    }
}

impl Slope {
    /// `[0; head.., period, period, ..]`
    pub fn periodic(head: Vec<u64>, period: Vec<u64>) -> Result<Self, SturmianError> {
        if period.is_empty() {
            return Err(SturmianError::EmptyPeriod);
        }
        if head.iter().chain(&period).any(|&a| a == 0) {
            return Err(SturmianError::ZeroQuotient);
        }
        Ok(Slope {
            quotients: Quotients::Periodic { head, period },
        })
    }

    /// A known prefix of the expansion. Words generated from it stop once
    /// the prefix no longer certifies the next symbol.
    pub fn explicit(quotients: Vec<u64>) -> Result<Self, SturmianError> {
        if quotients.contains(&0) {
            return Err(SturmianError::ZeroQuotient);
        }
        Ok(Slope {
            quotients: Quotients::Explicit(quotients),
        })
    }

    /// `a_i = rule(i)` for `i >= 1`; values of 0 are read as 1.
    pub fn from_rule<F>(rule: F) -> Self
    where
        F: Fn(usize) -> u64 + Send + Sync + 'static,
    {
        Slope {
            quotients: Quotients::Rule(Arc::new(move |i| rule(i).max(1))),
        }
    }

    /// `1/φ = [0; 1, 1, 1, ..]`
    pub fn inverse_golden() -> Self {
        Slope::periodic(vec![], vec![1]).expect("valid slope")
    }

    /// `1/φ² = [0; 2, 1, 1, ..]`, the slope of the Fibonacci word.
    pub fn inverse_golden_squared() -> Self {
        Slope::periodic(vec![2], vec![1]).expect("valid slope")
    }

    /// Partial quotient `a_i`, `i >= 1`.
    pub fn quotient(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return Some(0);
        }
        let k = i - 1;
        match &self.quotients {
            Quotients::Periodic { head, period } => Some(if k < head.len() {
                head[k]
            } else {
                period[(k - head.len()) % period.len()]
            }),
            Quotients::Explicit(list) => list.get(k).copied(),
            Quotients::Rule(rule) => Some(rule(i)),
        }
    }
}

/// Mechanical word variant: floors (lower) or ceilings (upper).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Lower,
    Upper,
}

/// Convergents `p_j/q_j` of a slope, walked forward on demand.
struct ConvergentWalk {
    slope: Slope,
    index: usize,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
}

impl ConvergentWalk {
    fn new(slope: Slope) -> Self {
        // (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (0, 1) since a_0 = 0
        ConvergentWalk {
            slope,
            index: 0,
            prev: (BigInt::one(), BigInt::zero()),
            cur: (BigInt::zero(), BigInt::one()),
        }
    }

    fn advance(&mut self) -> bool {
        let Some(a) = self.slope.quotient(self.index + 1) else {
            return false;
        };
        let p = &self.cur.0 * a + &self.prev.0;
        let q = &self.cur.1 * a + &self.prev.1;
        self.prev = std::mem::replace(&mut self.cur, (p, q));
        self.index += 1;
        true
    }

    /// `⌊nα + ρ⌋` where `ρ = rho_num / rho_den`.
    fn certified_floor(&mut self, n: u64, rho_num: &BigInt, rho_den: &BigInt) -> Option<BigInt> {
        if self.index == 0 && !self.advance() {
            return None;
        }
        loop {
            // α lies strictly between the last two convergents
            let a = floor_affine(n, &self.prev, rho_num, rho_den);
            let b = floor_affine(n, &self.cur, rho_num, rho_den);
            if let (Some(fa), Some(fb)) = (a, b) {
                if fa.0 == fb.0 {
                    return Some(fa.0);
                }
                let (lo, hi) = if fa.0 < fb.0 { (&fa, &fb) } else { (&fb, &fa) };
                // the open bracket may end exactly on the next integer
                if hi.1 && &lo.0 + 1 == hi.0 {
                    return Some(lo.0.clone());
                }
            }
            if !self.advance() {
                return None;
            }
        }
    }
}

/// `(⌊n p/q + ρ⌋, exact)` where `exact` says the value is an integer.
/// `None` for the convergent `1/0`.
fn floor_affine(n: u64, conv: &(BigInt, BigInt), rho_num: &BigInt, rho_den: &BigInt) -> Option<(BigInt, bool)> {
    let (p, q) = conv;
    if q.is_zero() {
        return None;
    }
    let num = p * n * rho_den + rho_num * q;
    let den = q * rho_den;
    let (f, r) = num.div_mod_floor(&den);
    Some((f, r.is_zero()))
}

struct MechanicalSymbols {
    walk: ConvergentWalk,
    rho_num: BigInt,
    rho_den: BigInt,
    variant: Variant,
    n: u64,
    previous: Option<BigInt>,
}

impl MechanicalSymbols {
    fn edge(&mut self, n: u64) -> Option<BigInt> {
        let f = self.walk.certified_floor(n, &self.rho_num, &self.rho_den)?;
        Some(match self.variant {
            Variant::Lower => f,
            // never an integer, so the ceiling is one more
            Variant::Upper => f + 1,
        })
    }
}

impl Iterator for MechanicalSymbols {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        let current = match self.previous.take() {
            Some(v) => v,
            None => self.edge(self.n)?,
        };
        let next = self.edge(self.n + 1)?;
        let symbol = (&next - &current).is_one() as u8;
        self.previous = Some(next);
        self.n += 1;
        Some(symbol)
    }
}

/// The mechanical word `x_n = ⌊(n+1)α + ρ⌋ - ⌊nα + ρ⌋`, `n >= 1` (ceilings
/// for [`Variant::Upper`]).
pub fn mechanical_word(slope: Slope, intercept: &BigRational, variant: Variant) -> Result<WordStream, SturmianError> {
    if intercept.is_negative() || intercept >= &BigRational::one() {
        return Err(SturmianError::InterceptOutOfRange);
    }
    let symbols = MechanicalSymbols {
        walk: ConvergentWalk::new(slope),
        rho_num: intercept.numer().clone(),
        rho_den: intercept.denom().clone(),
        variant,
        n: 1,
        previous: None,
    };
    Ok(WordStream::new(2, symbols)?)
}

/// A morphism from `{0, .., k-1}*` into `{0, .., b-1}*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Vec<u8>>,
    target_base: u32,
}

impl Morphism {
    pub fn new(images: Vec<Vec<u8>>, target_base: u32) -> Result<Self, SturmianError> {
        crate::word::check_base(target_base)?;
        for (a, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(SturmianError::EmptyImage(a as u8));
            }
            if let Some(&symbol) = image.iter().find(|&&s| u32::from(s) >= target_base) {
                return Err(SturmianError::ImageOutOfRange {
                    symbol,
                    base: target_base,
                });
            }
        }
        Ok(Morphism {
            images,
            target_base,
        })
    }

    /// Builds from a symbol → image map with keys `0..k`.
    pub fn from_map(map: &BTreeMap<u8, Vec<u8>>, target_base: u32) -> Result<Self, SturmianError> {
        let mut images = Vec::with_capacity(map.len());
        for (expected, (&key, image)) in map.iter().enumerate() {
            if usize::from(key) != expected {
                return Err(SturmianError::EmptyImage(expected as u8));
            }
            images.push(image.clone());
        }
        Morphism::new(images, target_base)
    }

    pub fn identity(base: u32) -> Result<Self, SturmianError> {
        Morphism::new((0..base).map(|a| vec![a as u8]).collect(), base)
    }

    pub fn image(&self, a: u8) -> Option<&[u8]> {
        self.images.get(usize::from(a)).map(Vec::as_slice)
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_base(&self) -> u32 {
        self.target_base
    }

    pub fn apply(&self, word: &[u8]) -> Option<Vec<u8>> {
        let mut out = Vec::new();
        for &a in word {
            out.extend_from_slice(self.image(a)?);
        }
        Some(out)
    }
}

/// `φ(01) ≠ φ(10)`; false when `φ` is not defined on both letters.
pub fn validate_morphism_nondegenerate(phi: &Morphism) -> bool {
    match (phi.apply(&[0, 1]), phi.apply(&[1, 0])) {
        (Some(a), Some(b)) => a != b,
        _ => false,
    }
}

/// The word `W φ(s_1) φ(s_2) ..`.
pub fn apply_morphism(phi: &Morphism, source: WordStream, prefix: &[u8]) -> Result<WordStream, SturmianError> {
    if source.base() as usize > phi.domain_size() {
        return Err(SturmianError::OutsideDomain {
            source_base: source.base(),
            domain: phi.domain_size(),
        });
    }
    let images = phi.images.clone();
    // owned so the stream does not borrow `prefix`
    let head = prefix.to_vec();
    let symbols = head.into_iter().chain(
        source
            .into_symbols()
            .flat_map(move |a| images[usize::from(a)].clone()),
    );
    Ok(WordStream::new(phi.target_base(), symbols)?)
}

/// Fixed point `σ^∞(a)` of a substitution with `σ(a)` starting with `a`.
struct FixedPoint {
    images: Vec<Vec<u8>>,
    word: Vec<u8>,
    read: usize,
    emitted: usize,
}

impl Iterator for FixedPoint {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        while self.emitted >= self.word.len() {
            let a = *self.word.get(self.read)?;
            self.word.extend_from_slice(&self.images[usize::from(a)]);
            self.read += 1;
        }
        self.emitted += 1;
        Some(self.word[self.emitted - 1])
    }
}

/// The fixed point of `σ` starting with `start`. `σ(start)` must begin with
/// `start` and have length at least 2.
pub fn substitution_fixed_point(sigma: &Morphism, start: u8) -> Result<WordStream, SturmianError> {
    let first = sigma
        .image(start)
        .ok_or(SturmianError::OutsideDomain {
            source_base: u32::from(start) + 1,
            domain: sigma.domain_size(),
        })?;
    if first.len() < 2 || first[0] != start {
        return Err(WordError::Domain("substitution is not prolongable on the start letter".into()).into());
    }
    let symbols = FixedPoint {
        images: sigma.images.clone(),
        word: first.to_vec(),
        read: 1,
        emitted: 0,
    };
    Ok(WordStream::new(sigma.target_base(), symbols)?)
}

/// The Fibonacci word, fixed point of `0 → 01, 1 → 0`.
pub fn fibonacci_word() -> WordStream {
    let sigma = Morphism::new(vec![vec![0, 1], vec![0]], 2).expect("valid substitution");
    substitution_fixed_point(&sigma, 0).expect("prolongable on 0")
}
