//! Finite and lazily extended words over a digit alphabet `{0, .., b-1}`.
//!
//! Every quantity here is computed on a materialised prefix of length `L`.
//! Factor counts are therefore lower bounds for the counts of the infinite
//! word, while return times are exact whenever they are found inside the
//! prefix (and [`None`] otherwise).

mod automaton;
mod complexity;
pub mod io;
pub mod naive;

use std::fmt;

use thiserror::Error;

pub use automaton::SuffixAutomaton;
pub use complexity::{
    bounded_power_exponent, entropy_estimate, fit_quasi_sturmian, minimal_period,
    return_times, special_factors, unique_right_special, BranchPoint, Branching,
    ComplexityProfile, FitConfig, PowerBound, QuasiSturmianFit, RightSpecial,
};

/// Errors raised by word construction and word queries.
#[derive(Debug, Error)]
pub enum WordError {
    #[error("alphabet size {0} is not in 2..=256")]
    InvalidBase(u32),
    #[error("symbol {symbol} at position {position} is not below the alphabet size {base}")]
    SymbolOutOfRange {
        symbol: u32,
        base: u32,
        position: usize,
    },
    #[error("word source exhausted: requested {requested} symbols, only {available} exist")]
    Exhausted { requested: usize, available: usize },
    #[error("{0}")]
    Domain(String),
    #[error("word is not a factor of the prefix")]
    NotAFactor,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A digit in `{0, .., b-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn new(value: u32, base: u32) -> Result<Self, WordError> {
        check_base(base)?;
        if value >= base {
            return Err(WordError::SymbolOutOfRange {
                symbol: value,
                base,
                position: 0,
            });
        }
        Ok(Symbol(value as u8))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which side a special factor is extended on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub(crate) fn check_base(base: u32) -> Result<(), WordError> {
    if (2..=256).contains(&base) {
        Ok(())
    } else {
        Err(WordError::InvalidBase(base))
    }
}

type Source = Box<dyn Iterator<Item = u8> + Send>;

/// A digit word whose prefix is materialised on demand from a deterministic
/// source.
///
/// Extending the prefix never changes symbols that were already produced.
/// Queries borrow the materialised prefix; share a word across threads by
/// materialising what is needed and handing out the resulting slice.
pub struct WordStream {
    base: u32,
    prefix: Vec<u8>,
    source: Option<Source>,
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream")
            .field("base", &self.base)
            .field("materialized", &self.prefix.len())
            .field("exhausted", &self.source.is_none())
            .finish()
    }
}

impl WordStream {
    /// Wraps an (infinite or finite) symbol source.
    pub fn new<I>(base: u32, source: I) -> Result<Self, WordError>
    where
        I: Iterator<Item = u8> + Send + 'static,
    {
        check_base(base)?;
        Ok(WordStream {
            base,
            prefix: Vec::new(),
            source: Some(Box::new(source)),
        })
    }

    /// A finite word; asking for more symbols than given is an error.
    pub fn from_symbols(base: u32, symbols: Vec<u8>) -> Result<Self, WordError> {
        check_base(base)?;
        check_symbols(&symbols, base, 0)?;
        Ok(WordStream {
            base,
            prefix: symbols,
            source: None,
        })
    }

    /// The ultimately periodic word `head · period^∞`.
    pub fn ultimately_periodic(
        base: u32,
        head: Vec<u8>,
        period: Vec<u8>,
    ) -> Result<Self, WordError> {
        check_base(base)?;
        if period.is_empty() {
            return Err(WordError::Domain("period must be non-empty".into()));
        }
        check_symbols(&head, base, 0)?;
        check_symbols(&period, base, head.len())?;
        let source = head.into_iter().chain(period.into_iter().cycle());
        WordStream::new(base, source)
    }

    /// Uniformly random digits from a seeded ChaCha generator.
    pub fn random(base: u32, seed: u64) -> Result<Self, WordError> {
        use rand::{Rng, SeedableRng};
        check_base(base)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let source = std::iter::from_fn(move || Some(rng.gen_range(0..base) as u8));
        WordStream::new(base, source)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Symbols produced so far.
    pub fn materialized(&self) -> &[u8] {
        &self.prefix
    }

    /// Materialises at least `len` symbols.
    pub fn ensure(&mut self, len: usize) -> Result<(), WordError> {
        while self.prefix.len() < len {
            let next = self.source.as_mut().and_then(|s| s.next());
            match next {
                Some(symbol) => {
                    if u32::from(symbol) >= self.base {
                        return Err(WordError::SymbolOutOfRange {
                            symbol: symbol.into(),
                            base: self.base,
                            position: self.prefix.len(),
                        });
                    }
                    self.prefix.push(symbol);
                }
                None => {
                    self.source = None;
                    return Err(WordError::Exhausted {
                        requested: len,
                        available: self.prefix.len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The prefix of length `len`.
    pub fn prefix(&mut self, len: usize) -> Result<&[u8], WordError> {
        self.ensure(len)?;
        Ok(&self.prefix[..len])
    }

    /// All symbols, starting with the materialised prefix and continuing with
    /// the source.
    pub fn into_symbols(self) -> impl Iterator<Item = u8> + Send {
        let source = self.source.into_iter().flatten();
        self.prefix.into_iter().chain(source)
    }

    /// Number of distinct length-`n` factors of the length-`len` prefix.
    pub fn factor_complexity(&mut self, n: usize, len: usize) -> Result<usize, WordError> {
        check_window(n, len)?;
        let prefix = self.prefix(len)?;
        Ok(SuffixAutomaton::build(prefix).factor_counts(n)[n - 1])
    }

    /// `r(n)` computed inside the length-`len` prefix; `None` when no length-`n`
    /// factor repeats there.
    pub fn return_time(&mut self, n: usize, len: usize) -> Result<Option<usize>, WordError> {
        check_window(n, len)?;
        let prefix = self.prefix(len)?;
        Ok(return_times(prefix, n)[n - 1])
    }

    /// Complexity profile of the length-`len` prefix for `1 <= n <= n_max`.
    pub fn profile(&mut self, n_max: usize, len: usize) -> Result<ComplexityProfile, WordError> {
        let prefix = self.prefix(len)?;
        ComplexityProfile::compute(prefix, n_max)
    }

    /// All `n <= n_max` with `r(n+1) >= r(n) + 2`, with their `rho_k`.
    pub fn branching_indices(&mut self, n_max: usize, len: usize) -> Result<Branching, WordError> {
        Ok(self.profile(n_max, len)?.branching())
    }

    pub fn special_factors(
        &mut self,
        n: usize,
        len: usize,
        side: Side,
    ) -> Result<std::collections::BTreeSet<Vec<u8>>, WordError> {
        let prefix = self.prefix(len)?;
        special_factors(prefix, n, side)
    }

    pub fn unique_right_special(&mut self, n: usize, len: usize) -> Result<RightSpecial, WordError> {
        let prefix = self.prefix(len)?;
        unique_right_special(prefix, n)
    }

    pub fn bounded_power_exponent(
        &mut self,
        factor: &[u8],
        t_cutoff: usize,
        len: usize,
    ) -> Result<PowerBound, WordError> {
        let prefix = self.prefix(len)?;
        bounded_power_exponent(prefix, factor, t_cutoff)
    }
}

pub(crate) fn check_window(n: usize, len: usize) -> Result<(), WordError> {
    if n == 0 {
        return Err(WordError::Domain("factor length must be at least 1".into()));
    }
    if n > len {
        return Err(WordError::Domain(format!(
            "factor length {n} exceeds prefix length {len}"
        )));
    }
    Ok(())
}

fn check_symbols(symbols: &[u8], base: u32, offset: usize) -> Result<(), WordError> {
    match symbols.iter().position(|&s| u32::from(s) >= base) {
        Some(i) => Err(WordError::SymbolOutOfRange {
            symbol: symbols[i].into(),
            base,
            position: offset + i,
        }),
        None => Ok(()),
    }
}
