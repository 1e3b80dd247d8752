//! Number specifications and the report builders behind the `sturmlab`
//! subcommands.
//!
//! Reports contain only data derived from their configuration; no timing or
//! environment information is written into them, so identical inputs give
//! byte-identical output.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::approx::{
    alpha_gaps, approximants_at_branch_points, branch_alphas, classify_good_convergents, estimate_m,
    exponent_five_halves_witnesses, ApproximantCheck, ApproxError, ClassifiedConvergent,
    ClassifyConfig, ConvergentStatus,
};
use crate::arith::{
    certified_cf, digits_from_rational, format_rational, parse_rational, real_from_digits,
    rebase_digits, ArithError, Convergent, LegendreVerdict, RationalInterval,
};
use crate::sturmian::{apply_morphism, fibonacci_word, mechanical_word, Morphism, Slope, SturmianError, Variant};
use crate::sunit::{multiplicative_independence, sunit_enumerate, SUnitEquation, SUnitSolution, SunitError};
use crate::word::{
    fit_quasi_sturmian, io, ComplexityProfile, FitConfig, QuasiSturmianFit, WordError, WordStream,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid number spec: {0}")]
    InvalidSpec(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Word(WordError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Sunit(#[from] SunitError),
}

impl From<WordError> for ExperimentError {
    fn from(e: WordError) -> Self {
        match e {
            WordError::Exhausted { .. } => ExperimentError::Precision(e.to_string()),
            other => ExperimentError::Word(other),
        }
    }
}

impl From<SturmianError> for ExperimentError {
    fn from(e: SturmianError) -> Self {
        match e {
            SturmianError::Word(w) => w.into(),
            other => ExperimentError::InvalidSpec(other.to_string()),
        }
    }
}

impl ExperimentError {
    /// Process exit code: 2 for precision failures, 3 for invalid specs.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Precision(_) => 2,
            ExperimentError::InvalidSpec(_) => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CfRule {
    /// The trailing `period` quotients repeat forever.
    #[default]
    Periodic,
    /// Only the listed quotients are known.
    Explicit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantSpec {
    #[default]
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    #[default]
    Digits,
    Bytes,
}

/// An integer given either as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntText {
    Int(i64),
    Text(String),
}

impl IntText {
    fn to_bigint(&self) -> Result<BigInt, ExperimentError> {
        match self {
            IntText::Int(v) => Ok(BigInt::from(*v)),
            IntText::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| ExperimentError::InvalidSpec(format!("not an integer: {s:?}"))),
        }
    }
}

/// JSON description of a real number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum NumberSpec {
    /// The binary number whose digits are the Fibonacci word.
    Fibonacci,
    Mechanical {
        slope_cf: Vec<u64>,
        #[serde(default)]
        slope_cf_rule: CfRule,
        #[serde(default)]
        slope_cf_period: Option<usize>,
        #[serde(default = "default_intercept")]
        intercept: String,
        #[serde(default)]
        variant: VariantSpec,
    },
    Morphic {
        base_slope_cf: Vec<u64>,
        #[serde(default)]
        base_slope_cf_rule: CfRule,
        #[serde(default)]
        base_slope_cf_period: Option<usize>,
        morphism: BTreeMap<String, String>,
        #[serde(default)]
        prefix_word: String,
        #[serde(default)]
        base: Option<u32>,
    },
    Rational {
        p: IntText,
        q: IntText,
    },
    DigitFile {
        path: PathBuf,
        base: u32,
        #[serde(default)]
        encoding: Encoding,
    },
    Random {
        base: u32,
        #[serde(default)]
        seed: u64,
    },
}

fn default_intercept() -> String {
    "0".into()
}

impl NumberSpec {
    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        serde_json::from_str(text).map_err(|e| ExperimentError::InvalidSpec(e.to_string()))
    }

    /// `{"type":"fibonacci"}` style JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialises")
    }
}

fn slope_from(cf: &[u64], rule: CfRule, period: Option<usize>) -> Result<Slope, ExperimentError> {
    let slope = match rule {
        CfRule::Explicit => Slope::explicit(cf.to_vec())?,
        CfRule::Periodic => {
            let period = period.unwrap_or(1);
            if period == 0 || period > cf.len() {
                return Err(ExperimentError::InvalidSpec(format!(
                    "period {period} does not fit {} quotients",
                    cf.len()
                )));
            }
            let split = cf.len() - period;
            Slope::periodic(cf[..split].to_vec(), cf[split..].to_vec())?
        }
    };
    Ok(slope)
}

fn parse_word(text: &str, base: u32) -> Result<Vec<u8>, ExperimentError> {
    io::parse_digit_string(text, base).map_err(|e| ExperimentError::InvalidSpec(e.to_string()))
}

enum NumberKind {
    Word(WordStream),
    Rational(BigRational),
}

/// A real number in `[0, 1)` materialised from a [`NumberSpec`].
pub struct Number {
    kind: NumberKind,
    prefix_word_length: Option<usize>,
}

impl Number {
    pub fn from_spec(spec: &NumberSpec) -> Result<Self, ExperimentError> {
        let mut prefix_word_length = None;
        let kind = match spec {
            NumberSpec::Fibonacci => NumberKind::Word(fibonacci_word()),
            NumberSpec::Mechanical {
                slope_cf,
                slope_cf_rule,
                slope_cf_period,
                intercept,
                variant,
            } => {
                let slope = slope_from(slope_cf, *slope_cf_rule, *slope_cf_period)?;
                let rho = parse_rational(intercept).map_err(|e| ExperimentError::InvalidSpec(e.to_string()))?;
                let variant = match variant {
                    VariantSpec::Lower => Variant::Lower,
                    VariantSpec::Upper => Variant::Upper,
                };
                NumberKind::Word(mechanical_word(slope, &rho, variant)?)
            }
            NumberSpec::Morphic {
                base_slope_cf,
                base_slope_cf_rule,
                base_slope_cf_period,
                morphism,
                prefix_word,
                base,
            } => {
                let mut images = BTreeMap::new();
                for (key, image) in morphism {
                    let key: u8 = key
                        .parse()
                        .map_err(|_| ExperimentError::InvalidSpec(format!("bad morphism key {key:?}")))?;
                    images.insert(key, parse_word(image, 36)?);
                }
                let max_symbol = images
                    .values()
                    .flatten()
                    .chain(parse_word(prefix_word, 36)?.iter())
                    .copied()
                    .max()
                    .unwrap_or(1);
                let base = base.unwrap_or((u32::from(max_symbol) + 1).max(2));
                let phi = Morphism::from_map(&images, base)?;
                let prefix = parse_word(prefix_word, base)?;
                let slope = slope_from(base_slope_cf, *base_slope_cf_rule, *base_slope_cf_period)?;
                let source = mechanical_word(slope, &BigRational::from_integer(0.into()), Variant::Lower)?;
                prefix_word_length = Some(prefix.len());
                NumberKind::Word(apply_morphism(&phi, source, &prefix)?)
            }
            NumberSpec::Rational { p, q } => {
                let (p, q) = (p.to_bigint()?, q.to_bigint()?);
                if !q.is_positive() {
                    return Err(ExperimentError::InvalidSpec("q must be positive".into()));
                }
                let x = BigRational::new(p, q);
                if x.is_negative() || x >= BigRational::one() {
                    return Err(ExperimentError::InvalidSpec(format!(
                        "{} is not in [0, 1)",
                        format_rational(&x)
                    )));
                }
                NumberKind::Rational(x)
            }
            NumberSpec::DigitFile { path, base, encoding } => {
                let digits = match encoding {
                    Encoding::Digits => io::read_digit_file(path, *base),
                    Encoding::Bytes => io::read_byte_file(path, *base),
                }
                .map_err(|e| ExperimentError::InvalidSpec(e.to_string()))?;
                NumberKind::Word(WordStream::from_symbols(*base, digits)?)
            }
            NumberSpec::Random { base, seed } => NumberKind::Word(WordStream::random(*base, *seed)?),
        };
        Ok(Number {
            kind,
            prefix_word_length,
        })
    }

    /// The base the digits are generated in; `None` for exact rationals.
    pub fn native_base(&self) -> Option<u32> {
        match &self.kind {
            NumberKind::Word(w) => Some(w.base()),
            NumberKind::Rational(_) => None,
        }
    }

    /// Known to be rational (only exact rational specs are).
    pub fn is_rational(&self) -> bool {
        matches!(self.kind, NumberKind::Rational(_))
    }

    /// Length of the free prefix `W` of a morphic spec.
    pub fn prefix_word_length(&self) -> Option<usize> {
        self.prefix_word_length
    }

    /// The first `len` native digits.
    pub fn native_digits(&mut self, len: usize) -> Result<Vec<u8>, ExperimentError> {
        match &mut self.kind {
            NumberKind::Word(w) => Ok(w.prefix(len)?.to_vec()),
            NumberKind::Rational(_) => Err(ExperimentError::InvalidSpec("rationals have no native base".into())),
        }
    }

    /// Enclosure from `len` native digits (a point for rationals).
    pub fn interval(&mut self, len: usize) -> Result<RationalInterval, ExperimentError> {
        match &mut self.kind {
            NumberKind::Word(w) => {
                let base = w.base();
                Ok(real_from_digits(w.prefix(len)?, base)?)
            }
            NumberKind::Rational(x) => Ok(RationalInterval::point(x.clone())),
        }
    }

    /// Certified base-`base` digits from `native_len` native digits, at most
    /// `⌊native_len · log(native) / log(base)⌋ - guard` of them when a
    /// conversion is needed. Rationals give exactly `native_len` digits.
    pub fn digits_in_base(&mut self, base: u32, native_len: usize, guard: usize) -> Result<Vec<u8>, ExperimentError> {
        match &mut self.kind {
            NumberKind::Rational(x) => Ok(digits_from_rational(x, base, native_len)?),
            NumberKind::Word(w) if w.base() == base => Ok(w.prefix(native_len)?.to_vec()),
            NumberKind::Word(w) => {
                let native = w.base();
                let budget = (native_len as f64 * f64::from(native).ln() / f64::from(base).ln()).floor() as usize;
                let budget = budget.saturating_sub(guard);
                let x = real_from_digits(w.prefix(native_len)?, native)?;
                Ok(rebase_digits(&x, base, budget)?)
            }
        }
    }

    /// Exactly `len` certified base-`base` digits, drawing as many native
    /// digits as needed.
    pub fn exact_digits(&mut self, base: u32, len: usize) -> Result<Vec<u8>, ExperimentError> {
        let native_len = match self.native_base() {
            Some(native) if native != base => {
                (len as f64 * f64::from(base).ln() / f64::from(native).ln()).ceil() as usize + 16
            }
            _ => len,
        };
        let mut digits = self.digits_in_base(base, native_len, 0)?;
        if digits.len() < len {
            return Err(ExperimentError::Precision(format!(
                "only {} of {len} base-{base} digits are certified",
                digits.len()
            )));
        }
        digits.truncate(len);
        Ok(digits)
    }
}

/// Default digits lost per base conversion.
pub const DEFAULT_GUARD: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub p: Vec<usize>,
    pub r: Vec<Option<usize>>,
    /// `Σ p(n, ξ, b_i) - 2n`
    pub d: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexityReport {
    pub bases: Vec<u32>,
    pub prefix_digits: usize,
    pub digits_per_base: Vec<usize>,
    pub requested_n_max: usize,
    /// Rows are emitted for `1 <= n <= certified_n_max` only.
    pub certified_n_max: usize,
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for b in &self.bases {
            out.push_str(&format!(",p_{b},r_{b}"));
        }
        out.push_str(",D\n");
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            for (p, r) in row.p.iter().zip(&row.r) {
                let r = r.map(|v| v.to_string()).unwrap_or_default();
                out.push_str(&format!(",{p},{r}"));
            }
            out.push_str(&format!(",{}\n", row.d));
        }
        out
    }

    pub fn d(&self, n: usize) -> Option<i64> {
        self.rows.get(n.checked_sub(1)?).map(|row| row.d)
    }
}

fn profiles(number: &mut Number, bases: &[u32], prefix: usize, guard: usize) -> Result<Vec<Vec<u8>>, ExperimentError> {
    bases
        .iter()
        .map(|&b| number.digits_in_base(b, prefix, guard))
        .collect()
}

/// Per-base `p(n)`, `r(n)` and `D(n)` on certified digit prefixes.
pub fn cmd_complexity(
    number: &mut Number,
    bases: &[u32],
    n_max: usize,
    prefix: usize,
    guard: usize,
) -> Result<ComplexityReport, ExperimentError> {
    if bases.is_empty() {
        return Err(ExperimentError::Refused("at least one base is required".into()));
    }
    let digits = profiles(number, bases, prefix, guard)?;
    let certified = digits.iter().map(Vec::len).min().unwrap_or(0).min(n_max);
    if certified == 0 {
        return Err(ExperimentError::Precision(format!(
            "no certified digits in some base from {prefix} digits; increase --prefix"
        )));
    }
    let tables = digits
        .iter()
        .map(|d| ComplexityProfile::compute(d, certified))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = (1..=certified)
        .map(|n| {
            let p: Vec<usize> = tables.iter().map(|t| t.p(n).unwrap_or(0)).collect();
            let r = tables.iter().map(|t| t.r(n)).collect();
            let d = p.iter().sum::<usize>() as i64 - 2 * n as i64;
            ComplexityRow { n, p, r, d }
        })
        .collect();
    Ok(ComplexityReport {
        bases: bases.to_vec(),
        prefix_digits: prefix,
        digits_per_base: digits.iter().map(Vec::len).collect(),
        requested_n_max: n_max,
        certified_n_max: certified,
        rows,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DependentReport {
    pub r: u32,
    pub s: u32,
    pub m: u32,
    pub l: u32,
    /// `m + l`
    pub lower_bound: i64,
    pub n_tail: usize,
    pub table: ComplexityReport,
    /// `n` in the tail with `D(n) < m + l`.
    pub violations: Vec<usize>,
    pub holds: bool,
}

/// `D(n)` for multiplicatively dependent bases against the bound `m + l`.
pub fn cmd_dependent_bases(
    number: &mut Number,
    r: u32,
    s: u32,
    n_max: usize,
    prefix: usize,
    n_tail: usize,
    guard: usize,
) -> Result<DependentReport, ExperimentError> {
    let witness = multiplicative_independence(r.into(), s.into())?;
    let Some((m, l)) = witness.exponents else {
        return Err(ExperimentError::Refused(format!(
            "{r} and {s} are multiplicatively independent; use the complexity command"
        )));
    };
    if number.is_rational() {
        return Err(ExperimentError::Refused("the lower bound concerns irrational numbers".into()));
    }
    let table = cmd_complexity(number, &[r, s], n_max, prefix, guard)?;
    let lower_bound = i64::from(m + l);
    let violations: Vec<usize> = table
        .rows
        .iter()
        .filter(|row| row.n >= n_tail && row.d < lower_bound)
        .map(|row| row.n)
        .collect();
    Ok(DependentReport {
        r,
        s,
        m,
        l,
        lower_bound,
        n_tail,
        holds: violations.is_empty(),
        violations,
        table,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeJson {
    pub r: u32,
    pub s: u32,
    pub m: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergentJson {
    pub index: usize,
    pub p: String,
    pub q: String,
    #[serde(rename = "passes_Mq2")]
    pub passes_mq2: bool,
    pub shape: Option<ShapeJson>,
    pub status: ConvergentStatus,
}

impl From<&ClassifiedConvergent> for ConvergentJson {
    fn from(c: &ClassifiedConvergent) -> Self {
        ConvergentJson {
            index: c.index,
            p: c.convergent.p.to_string(),
            q: c.convergent.q.to_string(),
            passes_mq2: c.passes_mq2,
            shape: c.shape.as_ref().map(|s| ShapeJson {
                r: s.r,
                s: s.s,
                m: s.m.to_string(),
            }),
            status: c.status,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApproximantJson {
    pub n: usize,
    pub return_time: usize,
    pub w: usize,
    pub period: usize,
    pub numerator: String,
    pub denominator: String,
    pub gcd: String,
    pub error_bound_holds: bool,
    pub denominator_bound_holds: bool,
    pub legendre: LegendreVerdict,
    pub among_convergents: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchJson {
    pub n: usize,
    pub alpha: String,
    pub rho: usize,
    pub below_two: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CfSummary {
    pub certified_quotients: usize,
    pub passing: usize,
    pub violations: usize,
    pub small_q_unclassified: usize,
    pub max_m: Option<String>,
    pub q_cutoff: String,
    pub witness_count: usize,
    pub approximants_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FitJson {
    pub k: usize,
    pub n0: usize,
    pub verified_up_to: usize,
}

impl From<QuasiSturmianFit> for FitJson {
    fn from(f: QuasiSturmianFit) -> Self {
        FitJson {
            k: f.k,
            n0: f.n0,
            verified_up_to: f.verified_up_to,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CfReport {
    pub base: u32,
    pub digits: usize,
    pub prefix_word_length: Option<usize>,
    pub fit: Option<FitJson>,
    pub rho: usize,
    #[serde(rename = "M")]
    pub m: String,
    pub cf: serde_json::Value,
    pub witnesses_5_2: Vec<Convergent>,
    pub convergents: Vec<ConvergentJson>,
    pub approximants: Vec<ApproximantJson>,
    pub branch_alphas: Vec<BranchJson>,
    pub alpha_gaps: Vec<(usize, usize)>,
    pub summary: CfSummary,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CfOptions {
    pub q_cutoff: BigInt,
    /// `n_max` for the quasi-Sturmian fit; `None` means `digits / 5`.
    pub fit_n_max: Option<usize>,
    pub s_max: Option<u32>,
}

impl Default for CfOptions {
    fn default() -> Self {
        CfOptions {
            q_cutoff: BigInt::from(100),
            fit_n_max: None,
            s_max: None,
        }
    }
}

/// Fit, `M`, certified convergents, `q^{-5/2}` witnesses, shape
/// classification and branch-point approximants, in base `base` from
/// `digits` digits.
pub fn cmd_cf_analysis(
    number: &mut Number,
    base: u32,
    digits: usize,
    options: &CfOptions,
) -> Result<CfReport, ExperimentError> {
    let word = number.exact_digits(base, digits)?;
    let x = if number.is_rational() {
        number.interval(0)?
    } else {
        real_from_digits(&word, base)?
    };
    let mut warnings = Vec::new();

    let fit_n_max = options.fit_n_max.unwrap_or(digits / 5).clamp(1, digits.max(1));
    let profile = ComplexityProfile::compute(&word, fit_n_max)?;
    let fit = fit_quasi_sturmian(&profile, FitConfig::default());
    let rho = match fit {
        Some(f) => f.k,
        None => {
            let excess = profile.p(fit_n_max).unwrap_or(0) as i64 - fit_n_max as i64;
            warnings.push(format!(
                "no quasi-Sturmian fit on n <= {fit_n_max}; proceeding descriptively"
            ));
            excess.max(1) as usize
        }
    };
    let m = estimate_m(rho, base);

    let cf = certified_cf(&x);
    if cf.len() < 2 {
        return Err(ExperimentError::Precision(format!(
            "{digits} digits certify {} partial quotients; increase --prefix",
            cf.len()
        )));
    }
    let witnesses = exponent_five_halves_witnesses(&x, &cf);
    let mut config = ClassifyConfig::for_digits(digits, base);
    config.q_cutoff = options.q_cutoff.clone();
    if let Some(s_max) = options.s_max {
        config.s_max = s_max;
    }
    let classes = classify_good_convergents(&x, base, &m.value, &cf, &config);

    let alphas = branch_alphas(&profile);
    let checks: Vec<ApproximantCheck> = if number.is_rational() {
        Vec::new()
    } else {
        approximants_at_branch_points(&word, base, &profile)?
            .into_iter()
            .map(|rec| ApproximantCheck::new(rec, &x, &cf))
            .collect()
    };
    let consistent = checks.iter().all(ApproximantCheck::is_consistent);
    if !consistent {
        warnings.push("an approximant failed its bounds".into());
    }

    Ok(CfReport {
        base,
        digits,
        prefix_word_length: number.prefix_word_length(),
        fit: fit.map(FitJson::from),
        rho,
        m: m.value.to_string(),
        cf: cf.to_json(),
        summary: CfSummary {
            certified_quotients: cf.len(),
            passing: classes.passing,
            violations: classes.violations,
            small_q_unclassified: classes.small_q_unclassified,
            max_m: classes.max_m.as_ref().map(BigInt::to_string),
            q_cutoff: options.q_cutoff.to_string(),
            witness_count: witnesses.len(),
            approximants_consistent: consistent,
        },
        witnesses_5_2: witnesses,
        convergents: classes.entries.iter().map(ConvergentJson::from).collect(),
        approximants: checks
            .iter()
            .map(|c| ApproximantJson {
                n: c.record.n,
                return_time: c.record.return_time,
                w: c.record.w,
                period: c.record.period,
                numerator: c.record.numerator.to_string(),
                denominator: c.record.denominator.to_string(),
                gcd: c.record.gcd().to_string(),
                error_bound_holds: c.error_bound_holds,
                denominator_bound_holds: c.denominator_bound_holds,
                legendre: c.legendre,
                among_convergents: c.among_convergents,
            })
            .collect(),
        branch_alphas: alphas
            .iter()
            .map(|a| BranchJson {
                n: a.n,
                alpha: format!("{}/{}", a.alpha().numer(), a.alpha().denom()),
                rho: a.rho,
                below_two: a.below_two,
            })
            .collect(),
        alpha_gaps: alpha_gaps(&alphas),
        warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SunitReport {
    pub equation: SUnitEquation,
    pub zmax: u32,
    pub independent: bool,
    pub solutions: Vec<SUnitSolution>,
    pub non_degenerate: usize,
}

pub fn cmd_sunit(m1: u64, m2: u64, r: u64, s: u64, zmax: u32) -> Result<SunitReport, ExperimentError> {
    let equation = SUnitEquation::new(m1, m2, r, s)?;
    let independent = multiplicative_independence(r, s)?.independent;
    let solutions = sunit_enumerate(&equation, zmax);
    Ok(SunitReport {
        equation,
        zmax,
        independent,
        non_degenerate: solutions.iter().filter(|s| !s.degenerate).count(),
        solutions,
    })
}
