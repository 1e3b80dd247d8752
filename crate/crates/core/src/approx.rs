//! Rational approximation of numbers whose expansion has low complexity.
//!
//! A short return time `r(n) < 2n` forces the prefix of length `r(n)` to be
//! `W (UV)^{t+1} U` with `t(|U|+|V|) + |U| = n`. The rational number whose
//! expansion is `W (UV)^∞` then has denominator `b^|W| (b^{|UV|} - 1)` and
//! agrees with the word on `r(n)` digits, which is close enough for
//! Legendre's criterion when `r(n) <= 2n - 1`. Convergents that are that good
//! have denominators of the shape `b^r (b^s - 1) / m` with bounded `m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{legendre_check, CfExpansion, Convergent, LegendreVerdict, RationalInterval};
use crate::word::{check_window, return_times, ComplexityProfile, WordError};

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("r({n}) is not determined by a prefix of length {len}")]
    ReturnTimeUnknown { n: usize, len: usize },
    #[error("certificate does not reproduce the prefix: {0}")]
    Unsound(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Witness of `r(n) < 2n`: the prefix of length `r(n)` equals
/// `W (UV)^{t+1} U` and `t(u+v) + u = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionCertificate {
    n: usize,
    return_time: usize,
    w: Vec<u8>,
    u: Vec<u8>,
    v: Vec<u8>,
    t: usize,
}

impl RepetitionCertificate {
    /// Builds a certificate from its words; `n` and the return time follow
    /// from the lengths. `U V` must be non-empty and `t >= 1`.
    pub fn from_parts(w: Vec<u8>, u: Vec<u8>, v: Vec<u8>, t: usize) -> Result<Self, ApproxError> {
        if u.len() + v.len() == 0 || t == 0 {
            return Err(ApproxError::Unsound("need |UV| >= 1 and t >= 1".into()));
        }
        let period = u.len() + v.len();
        let n = t * period + u.len();
        let return_time = w.len() + (t + 1) * period + u.len();
        Ok(RepetitionCertificate {
            n,
            return_time,
            w,
            u,
            v,
            t,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn return_time(&self) -> usize {
        self.return_time
    }

    pub fn w(&self) -> &[u8] {
        &self.w
    }

    pub fn u(&self) -> &[u8] {
        &self.u
    }

    pub fn v(&self) -> &[u8] {
        &self.v
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `|UV|`
    pub fn period(&self) -> usize {
        self.u.len() + self.v.len()
    }

    /// `α = r(n) / n`
    pub fn alpha(&self) -> Ratio<u64> {
        Ratio::new(self.return_time as u64, self.n as u64)
    }

    /// `W (UV)^{t+1} U`
    pub fn reconstruct(&self) -> Vec<u8> {
        let mut out = self.w.clone();
        for _ in 0..=self.t {
            out.extend_from_slice(&self.u);
            out.extend_from_slice(&self.v);
        }
        out.extend_from_slice(&self.u);
        out
    }

    /// Whether the certificate reproduces the start of `word` and satisfies
    /// its length equation.
    pub fn is_sound_for(&self, word: &[u8]) -> bool {
        let rebuilt = self.reconstruct();
        rebuilt.len() == self.return_time
            && word.len() >= rebuilt.len()
            && word[..rebuilt.len()] == rebuilt[..]
            && self.t * self.period() + self.u.len() == self.n
    }
}

/// The repetition forced by `r(n) < 2n` in `word`, or `None` when
/// `r(n) >= 2n`.
///
/// The length-`n` factor ending at `r(n)` has exactly one earlier occurrence
/// (otherwise a repeat would have appeared sooner). Its shift `π` is the
/// minimal period of the overlap, and the block before the first occurrence
/// cannot be extended leftwards, so the decomposition `|W| = i`,
/// `|UV| = π`, `t = n div π`, `|U| = n mod π` is the only one with these
/// occurrences.
pub fn repetition_prefix(word: &[u8], n: usize) -> Result<Option<RepetitionCertificate>, ApproxError> {
    check_window(n, word.len())?;
    let r = return_times(word, n)[n - 1].ok_or(ApproxError::ReturnTimeUnknown { n, len: word.len() })?;
    if r >= 2 * n {
        return Ok(None);
    }
    let second = r - n;
    let target = &word[second..r];
    let first = (0..second)
        .rev()
        .find(|&i| &word[i..i + n] == target)
        .ok_or_else(|| ApproxError::Unsound(format!("no earlier occurrence for n = {n}")))?;
    let period = second - first;
    let (t, u_len) = (n / period, n % period);
    let cert = RepetitionCertificate {
        n,
        return_time: r,
        w: word[..first].to_vec(),
        u: word[first..first + u_len].to_vec(),
        v: word[first + u_len..first + period].to_vec(),
        t,
    };
    if !cert.is_sound_for(word) {
        return Err(ApproxError::Unsound(format!("n = {n}, r = {r}, period = {period}")));
    }
    Ok(Some(cert))
}

/// The rational number with expansion `W (UV)^∞` in base `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximantRecord {
    pub base: u32,
    pub n: usize,
    pub return_time: usize,
    /// `|W|`
    pub w: usize,
    /// `|UV|`
    pub period: usize,
    /// `r_k`, possibly sharing factors with the denominator.
    pub numerator: BigInt,
    /// `b^w (b^{u+v} - 1)`
    pub denominator: BigInt,
    pub value: BigRational,
    /// `b^{-r(n)}`, i.e. `b^{-αn}`.
    pub error_bound: BigRational,
}

fn digits_value(digits: &[u8], base: u32) -> BigInt {
    digits
        .iter()
        .fold(BigInt::zero(), |acc, &d| acc * base + d)
}

fn pow(base: u32, exp: usize) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

/// Turns a certificate over base-`b` digits into its approximant.
pub fn approximant_from_certificate(cert: &RepetitionCertificate, base: u32) -> ApproximantRecord {
    let period = cert.period();
    let mut block = cert.u.clone();
    block.extend_from_slice(&cert.v);
    let repunit = pow(base, period) - 1u32;
    let numerator = digits_value(&cert.w, base) * &repunit + digits_value(&block, base);
    let denominator = pow(base, cert.w.len()) * &repunit;
    ApproximantRecord {
        base,
        n: cert.n,
        return_time: cert.return_time,
        w: cert.w.len(),
        period,
        value: BigRational::new(numerator.clone(), denominator.clone()),
        numerator,
        denominator,
        error_bound: BigRational::new(BigInt::one(), pow(base, cert.return_time)),
    }
}

impl ApproximantRecord {
    pub fn gcd(&self) -> BigInt {
        self.numerator.gcd(&self.denominator)
    }

    pub fn reduced_denominator(&self) -> &BigInt {
        self.value.denom()
    }

    /// `|ξ - value| <= b^{-αn}` for every `ξ` in `x`.
    pub fn error_bound_holds(&self, x: &RationalInterval) -> bool {
        x.max_distance(&self.value) <= self.error_bound
    }

    /// `b^w (b^{u+v} - 1) <= b^{(α-1)n}`.
    pub fn denominator_bound_holds(&self) -> bool {
        self.denominator <= pow(self.base, self.return_time - self.n)
    }

    /// `αn <= 2n - 1`, the condition under which Legendre applies.
    pub fn legendre_applies(&self) -> bool {
        self.return_time < 2 * self.n
    }
}

/// Checks of one approximant against an enclosure and its certified
/// convergents.
#[derive(Clone, Debug)]
pub struct ApproximantCheck {
    pub record: ApproximantRecord,
    pub error_bound_holds: bool,
    pub denominator_bound_holds: bool,
    pub legendre: LegendreVerdict,
    /// `None` when the reduced denominator exceeds the certified range.
    pub among_convergents: Option<bool>,
}

impl ApproximantCheck {
    pub fn new(record: ApproximantRecord, x: &RationalInterval, cf: &CfExpansion) -> Self {
        let reduced = Convergent {
            p: record.value.numer().clone(),
            q: record.value.denom().clone(),
        };
        let legendre =
            legendre_check(x, &reduced.p, &reduced.q).unwrap_or(LegendreVerdict::Inconclusive);
        let within = cf.convergents().last().is_some_and(|c| c.q >= reduced.q);
        let among_convergents = within.then(|| cf.convergents().contains(&reduced));
        ApproximantCheck {
            error_bound_holds: record.error_bound_holds(x),
            denominator_bound_holds: record.denominator_bound_holds(),
            legendre,
            among_convergents,
            record,
        }
    }

    /// All of the approximant bounds hold, and when Legendre applies the
    /// approximant is forced and found among the convergents (if in range).
    pub fn is_consistent(&self) -> bool {
        let promoted = !self.record.legendre_applies()
            || (self.legendre == LegendreVerdict::ForcedConvergent
                && self.among_convergents != Some(false));
        self.error_bound_holds && self.denominator_bound_holds && promoted
    }
}

/// `α_k = r(n_k)/n_k` at a branching index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchAlpha {
    pub n: usize,
    pub return_time: usize,
    pub rho: usize,
    pub below_two: bool,
}

impl BranchAlpha {
    pub fn alpha(&self) -> Ratio<u64> {
        Ratio::new(self.return_time as u64, self.n as u64)
    }
}

/// `α_k` for every branching index in the profile.
pub fn branch_alphas(profile: &ComplexityProfile) -> Vec<BranchAlpha> {
    profile
        .branching()
        .points
        .iter()
        .map(|b| BranchAlpha {
            n: b.n,
            return_time: b.return_time,
            rho: b.rho,
            below_two: b.return_time < 2 * b.n,
        })
        .collect()
}

/// For each branching index with `α_k < 2`, the smallest `ℓ >= 1` such that
/// `α_{k+ℓ} < 2`, when it lies inside the list.
pub fn alpha_gaps(alphas: &[BranchAlpha]) -> Vec<(usize, usize)> {
    let good: Vec<usize> = alphas
        .iter()
        .enumerate()
        .filter(|(_, a)| a.below_two)
        .map(|(k, _)| k)
        .collect();
    good.windows(2)
        .map(|w| (alphas[w[0]].n, w[1] - w[0]))
        .collect()
}

/// Certificates and approximants at every branching index with `α_k < 2`.
pub fn approximants_at_branch_points(
    word: &[u8],
    base: u32,
    profile: &ComplexityProfile,
) -> Result<Vec<ApproximantRecord>, ApproxError> {
    let mut out = Vec::new();
    for alpha in branch_alphas(profile).into_iter().filter(|a| a.below_two) {
        if let Some(cert) = repetition_prefix(&word[..alpha.return_time], alpha.n)? {
            out.push(approximant_from_certificate(&cert, base));
        }
    }
    Ok(out)
}

/// Convergents with `|ξ - p/q| < q^{-5/2}` for every `ξ` in `x`.
pub fn exponent_five_halves_witnesses(x: &RationalInterval, cf: &CfExpansion) -> Vec<Convergent> {
    cf.convergents()
        .iter()
        .filter(|c| {
            // d < q^{-5/2}  <=>  d^2 q^5 < 1
            let d = x.max_distance(&c.value());
            let q5 = BigRational::from_integer(Pow::pow(&c.q, 5u32));
            &d * &d * q5 < BigRational::one()
        })
        .cloned()
        .collect()
}

/// `q = b^r (b^s - 1) / m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeDecomposition {
    pub r: u32,
    pub s: u32,
    #[serde(serialize_with = "crate::arith::ser_bigint")]
    pub m: BigInt,
}

impl ShapeDecomposition {
    pub fn recompute(&self, base: u32) -> Option<BigInt> {
        let num = pow(base, self.r as usize) * (pow(base, self.s as usize) - 1u32);
        let (q, rem) = num.div_rem(&self.m);
        rem.is_zero().then_some(q)
    }
}

/// Smallest `n >= 0` with `g | b^n`, or `None` if no power works.
fn power_exponent_dividing(mut g: BigInt, base: &BigInt) -> Option<u32> {
    let mut r = 0;
    while !g.is_one() {
        let h = g.gcd(base);
        if h.is_one() {
            return None;
        }
        g /= h;
        r += 1;
    }
    Some(r)
}

/// The decomposition `q = b^r (b^s - 1) / m` with `1 <= m <= m_bound` and
/// `s <= s_max`, taking the smallest `s`, then the smallest `r`.
pub fn shape_decompose(q: &BigInt, base: u32, m_bound: &BigInt, s_max: u32) -> Option<ShapeDecomposition> {
    if q < &BigInt::one() || m_bound < &BigInt::one() {
        return None;
    }
    let b = BigInt::from(base);
    let limit = q * m_bound;
    let mut power = BigInt::one();
    for s in 1..=s_max {
        power *= &b;
        let repunit = &power - 1u32;
        if repunit > limit {
            break;
        }
        // q | b^r X  <=>  (q / gcd(q, X)) | b^r
        let rest = q / q.gcd(&repunit);
        let Some(r) = power_exponent_dividing(rest, &b) else {
            continue;
        };
        // the least r gives the least m for this s
        let m = pow(base, r as usize) * &repunit / q;
        if &m <= m_bound {
            return Some(ShapeDecomposition { r, s, m });
        }
    }
    None
}

/// `M = 2 (b^{2(ρ+1)} + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MConstant {
    pub rho: usize,
    pub base: u32,
    pub value: BigInt,
}

pub fn estimate_m(rho: usize, base: u32) -> MConstant {
    MConstant {
        rho,
        base,
        value: (pow(base, 2 * (rho + 1)) + 1u32) * 2u32,
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyConfig {
    /// Convergents with `q` below this are exempt from the shape law.
    pub q_cutoff: BigInt,
    pub s_max: u32,
}

impl ClassifyConfig {
    /// Defaults: `q >= 100`, `s_max = 4 L log b` for `L` digits.
    pub fn for_digits(digits: usize, base: u32) -> Self {
        let s_max = (4.0 * digits.max(1) as f64 * f64::from(base).ln()).ceil() as u32;
        ClassifyConfig {
            q_cutoff: BigInt::from(100),
            s_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergentStatus {
    /// Not within `1/(M q^2)`; outside the shape law's scope.
    NotGood,
    Shaped,
    /// Good, above the cutoff, and no decomposition exists.
    Violation,
    /// Good, below the cutoff, and no decomposition exists.
    SmallUnclassified,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedConvergent {
    pub index: usize,
    #[serde(flatten)]
    pub convergent: Convergent,
    pub passes_mq2: bool,
    pub shape: Option<ShapeDecomposition>,
    pub status: ConvergentStatus,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub entries: Vec<ClassifiedConvergent>,
    pub passing: usize,
    pub violations: usize,
    pub small_q_unclassified: usize,
    pub max_m: Option<BigInt>,
}

/// Shape-classifies every certified convergent with `|ξ - p/q| < 1/(M q^2)`.
pub fn classify_good_convergents(
    x: &RationalInterval,
    base: u32,
    m: &BigInt,
    cf: &CfExpansion,
    config: &ClassifyConfig,
) -> ClassificationReport {
    let mut entries = Vec::with_capacity(cf.len());
    for (index, c) in cf.convergents().iter().enumerate() {
        let bound = BigRational::new(BigInt::one(), m * &c.q * &c.q);
        let passes = x.max_distance(&c.value()) < bound;
        let shape = if passes {
            shape_decompose(&c.q, base, m, config.s_max)
        } else {
            None
        };
        let status = match (passes, &shape) {
            (false, _) => ConvergentStatus::NotGood,
            (true, Some(_)) => ConvergentStatus::Shaped,
            (true, None) if c.q >= config.q_cutoff => ConvergentStatus::Violation,
            (true, None) => ConvergentStatus::SmallUnclassified,
        };
        entries.push(ClassifiedConvergent {
            index,
            convergent: c.clone(),
            passes_mq2: passes,
            shape,
            status,
        });
    }
    let count = |s: ConvergentStatus| entries.iter().filter(|e| e.status == s).count();
    ClassificationReport {
        passing: entries.iter().filter(|e| e.passes_mq2).count(),
        violations: count(ConvergentStatus::Violation),
        small_q_unclassified: count(ConvergentStatus::SmallUnclassified),
        max_m: entries
            .iter()
            .filter_map(|e| e.shape.as_ref().map(|s| s.m.clone()))
            .max(),
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{certified_cf, real_from_digits};

    fn fibonacci(len: usize) -> Vec<u8> {
        let mut w = vec![0u8];
        while w.len() < len {
            w = w
                .iter()
                .flat_map(|&a| if a == 0 { vec![0, 1] } else { vec![0] })
                .collect();
        }
        w.truncate(len);
        w
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn no_certificate_when_return_time_is_long() {
        let fib = fibonacci(50);
        // r(2) = 5 >= 4
        assert_eq!(repetition_prefix(&fib, 2).unwrap(), None);
        assert_eq!(repetition_prefix(&fib, 1).unwrap(), None);
    }

    #[test]
    fn periodic_certificate() {
        let word: Vec<u8> = [0u8, 0, 1].iter().copied().cycle().take(60).collect();
        let cert = repetition_prefix(&word, 6).unwrap().unwrap();
        assert_eq!(cert.return_time(), 9);
        assert_eq!(cert.period(), 3);
        assert_eq!(cert.alpha(), Ratio::new(3, 2));
        assert!(cert.w().is_empty());
        assert_eq!(cert.t() * cert.period() + cert.u().len(), 6);
        assert!(cert.is_sound_for(&word));
    }

    #[test]
    fn unknown_return_time_is_an_error() {
        assert!(matches!(
            repetition_prefix(&[0, 1, 2, 3], 2),
            Err(ApproxError::ReturnTimeUnknown { n: 2, len: 4 })
        ));
    }

    #[test]
    fn approximant_examples() {
        let cert = RepetitionCertificate::from_parts(vec![], vec![], vec![0, 1], 1).unwrap();
        assert_eq!(approximant_from_certificate(&cert, 2).value, rat(1, 3));
        let cert = RepetitionCertificate::from_parts(vec![1], vec![], vec![0], 1).unwrap();
        let rec = approximant_from_certificate(&cert, 2);
        assert_eq!(rec.value, rat(1, 2));
        assert_eq!(rec.denominator, BigInt::from(2));
        assert!(RepetitionCertificate::from_parts(vec![], vec![], vec![], 1).is_err());
    }

    #[test]
    fn fibonacci_approximants_obey_their_bounds() {
        let fib = fibonacci(400);
        let x = real_from_digits(&fib, 2).unwrap();
        let cf = certified_cf(&x);
        let profile = ComplexityProfile::compute(&fib, 100).unwrap();
        let records = approximants_at_branch_points(&fib, 2, &profile).unwrap();
        assert!(!records.is_empty());
        for rec in records {
            let check = ApproximantCheck::new(rec, &x, &cf);
            assert!(check.is_consistent(), "{:?}", check);
        }
    }

    #[test]
    fn shape_examples() {
        let shape = |q: i64, m: i64, s_max| shape_decompose(&q.into(), 2, &m.into(), s_max);
        assert_eq!(
            shape(12, 3, 30),
            Some(ShapeDecomposition { r: 2, s: 2, m: 1.into() })
        );
        assert_eq!(
            shape(5, 3, 30),
            Some(ShapeDecomposition { r: 0, s: 4, m: 3.into() })
        );
        assert_eq!(
            shape(1, 1, 5),
            Some(ShapeDecomposition { r: 0, s: 1, m: 1.into() })
        );
        assert_eq!(shape(5, 2, 30), None);
    }

    /// Exhaustive enumeration over all (s, r) pairs in the box.
    fn shape_brute(q: u64, b: u64, m_bound: u64, s_max: u32) -> Option<(u32, u32, u64)> {
        for s in 1..=s_max {
            let x = b.checked_pow(s)? - 1;
            for r in 0..40 {
                let Some(num) = b.checked_pow(r).and_then(|p| p.checked_mul(x)) else {
                    break;
                };
                if num % q == 0 && (1..=m_bound).contains(&(num / q)) {
                    return Some((r, s, num / q));
                }
            }
        }
        None
    }

    #[test]
    fn shape_matches_enumeration() {
        for b in [2u32, 3, 10] {
            for q in 1u64..400 {
                for m_bound in [1u64, 3, 34] {
                    let fast = shape_decompose(&q.into(), b, &m_bound.into(), 12)
                        .map(|d| (d.r, d.s, u64::try_from(&d.m).unwrap()));
                    assert_eq!(fast, shape_brute(q, u64::from(b), m_bound, 12), "q={q} b={b} M={m_bound}");
                }
            }
        }
    }

    #[test]
    fn m_constant_examples() {
        assert_eq!(estimate_m(1, 2).value, BigInt::from(34));
        assert_eq!(estimate_m(1, 3).value, BigInt::from(164));
        assert_eq!(estimate_m(2, 2).value, BigInt::from(130));
    }

    #[test]
    fn one_third_convergents() {
        let x = RationalInterval::point(rat(1, 3));
        let cf = certified_cf(&x);
        let witnesses = exponent_five_halves_witnesses(&x, &cf);
        assert!(witnesses.iter().any(|c| c.q == BigInt::from(3)));
        let report = classify_good_convergents(&x, 2, &BigInt::from(34), &cf, &ClassifyConfig::for_digits(10, 2));
        let last = report.entries.last().unwrap();
        assert_eq!(last.shape, Some(ShapeDecomposition { r: 0, s: 2, m: 1.into() }));
    }

    #[test]
    fn alpha_gap_bookkeeping() {
        let a = |n, below_two| BranchAlpha {
            n,
            return_time: 0,
            rho: 2,
            below_two,
        };
        let alphas = [a(1, false), a(2, true), a(4, false), a(7, true), a(9, true)];
        assert_eq!(alpha_gaps(&alphas), vec![(2, 2), (7, 1)]);
    }
}
