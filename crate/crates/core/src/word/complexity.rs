use std::collections::{BTreeMap, BTreeSet};

use super::automaton::SuffixAutomaton;
use super::{check_window, Side, WordError};

/// Return times `r(1), .., r(n_max)` of `word`.
pub fn return_times(word: &[u8], n_max: usize) -> Vec<Option<usize>> {
    SuffixAutomaton::build(word).return_times(n_max)
}

/// A branching index `n_k` (one with `r(n+1) >= r(n) + 2`) together with
/// `rho_k = r(n_k + 1) - 2 n_k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub n: usize,
    pub return_time: usize,
    pub next_return_time: usize,
    pub rho: usize,
}

/// Branching indices found inside a certified range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branching {
    pub points: Vec<BranchPoint>,
    /// Every `n <= certified_through` was decided.
    pub certified_through: usize,
    /// True when the requested range extended past `certified_through`.
    pub truncated: bool,
}

impl Branching {
    pub fn indices(&self) -> Vec<usize> {
        self.points.iter().map(|b| b.n).collect()
    }
}

/// Per-`n` table of `p(n)` and `r(n)` computed on one prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    prefix_length: usize,
    n_max: usize,
    p: Vec<usize>,
    r: Vec<Option<usize>>,
    branching: Vec<BranchPoint>,
    r_known_through: usize,
}

impl ComplexityProfile {
    /// Computes `p(n)` for `1 <= n <= n_max` and `r(n)` for
    /// `1 <= n <= n_max + 1` on `word`.
    ///
    /// Fails if a jump `r(n+1) >= r(n) + 2` is found that does not reach
    /// `2n + 3`, since that cannot happen on any word.
    pub fn compute(word: &[u8], n_max: usize) -> Result<Self, WordError> {
        if n_max == 0 {
            return Err(WordError::Domain("n_max must be at least 1".into()));
        }
        check_window(n_max, word.len())?;
        let sam = SuffixAutomaton::build(word);
        let p = sam.factor_counts(n_max);
        let r = sam.return_times(n_max + 1);
        let r_known_through = r.iter().take_while(|v| v.is_some()).count();

        let mut branching = Vec::new();
        for n in 1..=n_max {
            let (Some(rn), Some(rn1)) = (r[n - 1], r[n]) else {
                break;
            };
            if rn1 < rn + 1 {
                return Err(WordError::InvariantViolated(format!(
                    "r({}) = {rn1} < r({n}) + 1 = {}",
                    n + 1,
                    rn + 1
                )));
            }
            if rn1 >= rn + 2 {
                if rn1 < 2 * n + 3 {
                    return Err(WordError::InvariantViolated(format!(
                        "jump at n = {n} reaches only r(n+1) = {rn1} < 2n + 3"
                    )));
                }
                branching.push(BranchPoint {
                    n,
                    return_time: rn,
                    next_return_time: rn1,
                    rho: rn1 - 2 * n - 1,
                });
            }
        }
        Ok(ComplexityProfile {
            prefix_length: word.len(),
            n_max,
            p,
            r,
            branching,
            r_known_through,
        })
    }

    pub fn prefix_length(&self) -> usize {
        self.prefix_length
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `p(n)` on the prefix, for `1 <= n <= n_max`.
    pub fn p(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.p.get(i)).copied()
    }

    /// `r(n)` for `1 <= n <= n_max + 1`; `None` when unknown or out of range.
    pub fn r(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.r.get(i)).copied().flatten()
    }

    /// Largest `n` such that `r(1), .., r(n)` are all known.
    pub fn r_known_through(&self) -> usize {
        self.r_known_through
    }

    pub fn is_branching(&self, n: usize) -> bool {
        self.branch_point(n).is_some()
    }

    pub fn branch_point(&self, n: usize) -> Option<&BranchPoint> {
        self.branching
            .binary_search_by_key(&n, |b| b.n)
            .ok()
            .map(|i| &self.branching[i])
    }

    /// The branching indices with their certified range.
    pub fn branching(&self) -> Branching {
        // n is decided once both r(n) and r(n+1) are known
        let certified_through = self.r_known_through.saturating_sub(1).min(self.n_max);
        Branching {
            points: self.branching.clone(),
            certified_through,
            truncated: certified_through < self.n_max,
        }
    }

    /// Writes the `n,p,r,is_branching,rho` table; unknown return times are
    /// left empty.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,p,r,is_branching,rho")?;
        for n in 1..=self.n_max {
            let r = self.r(n).map(|v| v.to_string()).unwrap_or_default();
            let (flag, rho) = match self.branch_point(n) {
                Some(b) => ("true", b.rho.to_string()),
                None => ("false", String::new()),
            };
            writeln!(out, "{n},{},{r},{flag},{rho}", self.p[n - 1])?;
        }
        Ok(())
    }
}

/// Evidence that `p(n) = n + k` on `[n0, verified_up_to]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuasiSturmianFit {
    pub k: usize,
    pub n0: usize,
    pub verified_up_to: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FitConfig {
    /// Minimum `n_max - n0`; `None` means half of `n_max`.
    pub min_tail: Option<usize>,
}

/// Fits `p(n) = n + k` on the longest tail of the profile.
pub fn fit_quasi_sturmian(profile: &ComplexityProfile, config: FitConfig) -> Option<QuasiSturmianFit> {
    let n_max = profile.n_max();
    let excess = |n: usize| profile.p(n).map(|p| p as i64 - n as i64);
    let k = excess(n_max)?;
    if k < 1 {
        return None;
    }
    let mut n0 = n_max;
    while n0 > 1 && excess(n0 - 1) == Some(k) {
        n0 -= 1;
    }
    let margin = config.min_tail.unwrap_or(n_max / 2);
    (n_max - n0 >= margin).then_some(QuasiSturmianFit {
        k: k as usize,
        n0,
        verified_up_to: n_max,
    })
}

/// `log p(n_max) / n_max`, the finite-`n` estimate of the entropy.
pub fn entropy_estimate(profile: &ComplexityProfile) -> f64 {
    let n = profile.n_max();
    let p = profile.p(n).unwrap_or(1).max(1);
    (p as f64).ln() / n as f64
}

/// Length-`n` factors of `word` that extend by at least two distinct
/// letters on `side` within `word`.
pub fn special_factors(word: &[u8], n: usize, side: Side) -> Result<BTreeSet<Vec<u8>>, WordError> {
    check_window(n + 1, word.len())?;
    let mut extensions: BTreeMap<&[u8], BTreeSet<u8>> = BTreeMap::new();
    for w in word.windows(n + 1) {
        let (core, letter) = match side {
            Side::Right => (&w[..n], w[n]),
            Side::Left => (&w[1..], w[0]),
        };
        extensions.entry(core).or_default().insert(letter);
    }
    Ok(extensions
        .into_iter()
        .filter(|(_, letters)| letters.len() >= 2)
        .map(|(core, _)| core.to_vec())
        .collect())
}

/// The unique right-special factor `Z_n` of a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightSpecial {
    pub factor: Vec<u8>,
    /// When `n` is a branching index: whether `Z_n` is the length-`n` factor
    /// ending at position `r(n)`.
    pub location_check: Option<bool>,
}

/// Returns `Z_n` when exactly one right-special factor of length `n` exists.
pub fn unique_right_special(word: &[u8], n: usize) -> Result<RightSpecial, WordError> {
    let specials = special_factors(word, n, Side::Right)?;
    if specials.len() != 1 {
        return Err(WordError::Domain(format!(
            "not unique: {} right-special factors of length {n}",
            specials.len()
        )));
    }
    let factor = specials.into_iter().next().unwrap_or_default();
    let r = return_times(word, n + 1);
    let location_check = match (r[n - 1], r[n]) {
        (Some(rn), Some(rn1)) if rn1 >= rn + 2 => Some(word[rn - n..rn] == factor[..]),
        _ => None,
    };
    Ok(RightSpecial {
        factor,
        location_check,
    })
}

/// Answer of [`bounded_power_exponent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerBound {
    /// Least `t` such that `W^t` does not occur in the prefix.
    Absent(usize),
    /// `W^t_cutoff` occurs; nothing can be concluded.
    Cutoff,
}

/// Least `t <= t_cutoff` with `factor^t` absent from `word`.
pub fn bounded_power_exponent(word: &[u8], factor: &[u8], t_cutoff: usize) -> Result<PowerBound, WordError> {
    if factor.is_empty() {
        return Err(WordError::Domain("factor must be non-empty".into()));
    }
    let sam = SuffixAutomaton::build(word);
    if !sam.contains(factor) {
        return Err(WordError::NotAFactor);
    }
    let mut power = factor.to_vec();
    for t in 2..=t_cutoff {
        power.extend_from_slice(factor);
        if !sam.contains(&power) {
            return Ok(PowerBound::Absent(t));
        }
    }
    Ok(PowerBound::Cutoff)
}

/// Smallest `p >= 1` with `word[i] == word[i + p]` for all valid `i`.
pub fn minimal_period(word: &[u8]) -> usize {
    if word.is_empty() {
        return 0;
    }
    // prefix function; the longest border gives the smallest period
    let mut border = vec![0usize; word.len()];
    for i in 1..word.len() {
        let mut k = border[i - 1];
        while k > 0 && word[i] != word[k] {
            k = border[k - 1];
        }
        if word[i] == word[k] {
            k += 1;
        }
        border[i] = k;
    }
    word.len() - border[word.len() - 1]
}
