//! Exact-arithmetic tools for studying base-`b` expansions of real numbers as
//! infinite words.
//!
//! The crate is organised bottom-up:
//!
//! * [`word`]: lazily materialised digit words, factor complexity `p(n)`,
//!   return time `r(n)`, special factors and power bounds.
//! * [`sturmian`]: mechanical (Sturmian) words with exactly certified floors,
//!   substitution fixed points and morphic images.
//! * [`arith`]: rational intervals, digit extraction in any base and
//!   interval-certified continued fractions.
//! * [`approx`]: repetition certificates, the rational approximants they
//!   produce and the shape law `q = b^r (b^s - 1) / m` for good convergents.
//! * [`sunit`]: multiplicative dependence of bases and a bounded search of
//!   the S-unit equation that matches approximant denominators across bases.
//! * [`experiments`]: number specifications and the report builders behind
//!   the `sturmlab` command-line tool.

pub mod approx;
pub mod arith;
pub mod experiments;
pub mod sturmian;
pub mod sunit;
pub mod word;

pub use approx::{
    approximant_from_certificate, classify_good_convergents, estimate_m,
    exponent_five_halves_witnesses, repetition_prefix, shape_decompose, ApproximantRecord,
    ClassificationReport, MConstant, RepetitionCertificate, ShapeDecomposition,
};
pub use arith::{
    certified_cf, digits_from_rational, legendre_check, real_from_digits, rebase_digits,
    CfExpansion, Convergent, LegendreVerdict, RationalInterval,
};
pub use experiments::{Number, NumberSpec};
pub use sturmian::{apply_morphism, fibonacci_word, mechanical_word, Morphism, Slope, Variant};
pub use sunit::{cross_base_match, multiplicative_independence, sunit_enumerate, SUnitSolution};
pub use word::{ComplexityProfile, QuasiSturmianFit, Side, Symbol, WordStream};
