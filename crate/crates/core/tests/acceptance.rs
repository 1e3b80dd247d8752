//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.
//!
//! Pinned values come from `tools/oracle.py`, an independent implementation
//! using Python's exact `fractions` module.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sturmlab::approx::{approximant_from_certificate, ApproximantCheck, ClassifyConfig};
use sturmlab::experiments::{cmd_complexity, cmd_dependent_bases, Number, NumberSpec};
use sturmlab::sunit::SUnitEquation;
use sturmlab::word::{naive, SuffixAutomaton};
use sturmlab::{
    apply_morphism, certified_cf, classify_good_convergents, digits_from_rational, estimate_m,
    exponent_five_halves_witnesses, fibonacci_word, mechanical_word, multiplicative_independence,
    real_from_digits, rebase_digits, repetition_prefix, sunit_enumerate, ComplexityProfile,
    Morphism, Slope, Variant, WordStream,
};

const STURMIAN_N_MAX: usize = 300;
const STURMIAN_PREFIX: usize = 20_000;
const STURMIAN_TIME_LIMIT: Duration = Duration::from_secs(10);

const CORPUS_PREFIX: usize = 10_000;
const CORPUS_N_MAX: usize = 200;
/// Periodic words must settle into `r(n+1) = r(n) + 1` by this `n`.
const PERIODIC_HEAD_LIMIT: usize = 100;

const ORACLE_WORDS: usize = 50;
const ORACLE_MAX_LEN: usize = 2000;
const ORACLE_N_MAX: usize = 50;

const FIB_DIGITS: usize = 400;
const MIN_WITNESSES: usize = 5;
const PINNED_WITNESSES: usize = 11;
const WITNESS_TIME_LIMIT: Duration = Duration::from_secs(30);

const SHAPE_RHO: usize = 1;
const PINNED_M: u32 = 34;
const Q_CUTOFF: u32 = 100;
const PINNED_PASSING: usize = 6;
const PINNED_MAX_M: u32 = 1;

const CERT_N_MAX: usize = 200;
const CERT_PREFIX: usize = 4000;

const JOINT_PREFIX: usize = 10_000;
const JOINT_GUARD: usize = 4;
/// `(n, D(n))` for bases 2 and 3.
const JOINT_CHECKPOINTS: [(usize, i64); 3] = [(50, 6207), (100, 6107), (150, 6007)];
const JOINT_RANGE: (usize, usize) = (50, 150);

const DEPENDENT_RANGE: (usize, usize) = (20, 150);
const DEPENDENT_BOUND: u32 = 3;

const SUNIT_ZMAX: u32 = 25;
const SUNIT_STABLE_FROM: u32 = 20;
const SUNIT_PINNED: [[u32; 4]; 5] = [[1, 2, 1, 0], [1, 3, 1, 1], [3, 4, 2, 0], [3, 5, 2, 1], [4, 8, 4, 1]];
const SUNIT_TIME_LIMIT: Duration = Duration::from_secs(20);

const ROUND_TRIP_COUNT: usize = 100;
const ROUND_TRIP_DIGITS: usize = 60;
const ROUND_TRIP_BASES: [u32; 4] = [2, 3, 4, 10];

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = body()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({:.2}s)", took.as_secs_f64()))
}

fn sturmian_complexity() -> Outcome {
    timed(STURMIAN_TIME_LIMIT, || {
        let slopes = [
            ("1/phi", Slope::inverse_golden()),
            ("1/phi^2", Slope::inverse_golden_squared()),
            ("sqrt2-1", Slope::periodic(vec![], vec![2]).unwrap()),
            ("1/sqrt2", Slope::periodic(vec![1], vec![2]).unwrap()),
            ("[0;3,1,4,1,5,(9,2,6)]", Slope::periodic(vec![3, 1, 4, 1, 5], vec![9, 2, 6]).unwrap()),
        ];
        for (name, slope) in slopes {
            let mut word = mechanical_word(slope, &BigRational::from_integer(0.into()), Variant::Lower)
                .map_err(|e| e.to_string())?;
            let prefix = word.prefix(STURMIAN_PREFIX).map_err(|e| e.to_string())?;
            let counts = SuffixAutomaton::build(prefix).factor_counts(STURMIAN_N_MAX);
            for (i, &p) in counts.iter().enumerate() {
                ensure(p == i + 2, || format!("{name}: p({}) = {p}", i + 1))?;
            }
        }
        Ok(format!("5 slopes, p(n) = n+1 for n <= {STURMIAN_N_MAX}"))
    })
}

fn corpus() -> Vec<(String, WordStream, bool)> {
    let zero = BigRational::from_integer(0.into());
    let morphic = |map: &[(u8, &[u8])], base: u32, slope: Slope, prefix: &[u8]| {
        let images = map.iter().map(|(k, v)| (*k, v.to_vec())).collect();
        let phi = Morphism::from_map(&images, base).unwrap();
        apply_morphism(&phi, mechanical_word(slope, &zero, Variant::Lower).unwrap(), prefix).unwrap()
    };
    let mut out = vec![("fibonacci".to_string(), fibonacci_word(), false)];
    out.push((
        "morphic 0->02 on 1/phi^2".into(),
        morphic(&[(0, &[0, 2]), (1, &[1])], 3, Slope::inverse_golden_squared(), &[]),
        false,
    ));
    out.push((
        "morphic 0->00 on sqrt2-1".into(),
        morphic(&[(0, &[0, 0]), (1, &[1])], 2, Slope::periodic(vec![], vec![2]).unwrap(), &[1, 1]),
        false,
    ));
    out.push((
        "morphic 0->012, 1->3 on 1/sqrt2".into(),
        morphic(&[(0, &[0, 1, 2]), (1, &[3])], 4, Slope::periodic(vec![1], vec![2]).unwrap(), &[3]),
        false,
    ));
    let periodic: [(u32, &[u8], &[u8]); 3] = [
        (2, &[], &[0, 1, 1]),
        (3, &[2, 2, 1], &[0, 1, 2, 0, 0]),
        (10, &[1, 4, 1, 5], &[9, 2, 6, 5, 3, 5, 8, 9, 7, 9]),
    ];
    for (base, head, period) in periodic {
        out.push((
            format!("periodic base {base}"),
            WordStream::ultimately_periodic(base, head.to_vec(), period.to_vec()).unwrap(),
            true,
        ));
    }
    for seed in 0..10u64 {
        let base = 2 + (seed % 3) as u32;
        out.push((format!("random base {base} seed {seed}"), WordStream::random(base, seed).unwrap(), false));
    }
    out
}

fn return_time_invariants() -> Outcome {
    let mut checks = 0usize;
    for (name, mut stream, periodic) in corpus() {
        let word = stream.prefix(CORPUS_PREFIX).map_err(|e| e.to_string())?.to_vec();
        let profile = ComplexityProfile::compute(&word, CORPUS_N_MAX).map_err(|e| format!("{name}: {e}"))?;
        let r = |n: usize| profile.r(n);
        for n in 1..=CORPUS_N_MAX {
            let p = profile.p(n).unwrap();
            if let Some(rn) = r(n) {
                ensure(rn <= p + n, || format!("{name}: r({n}) = {rn} > p + n = {}", p + n))?;
                checks += 1;
                if let Some(rn1) = r(n + 1) {
                    ensure(rn1 > rn, || format!("{name}: r({}) = {rn1} <= r({n}) = {rn}", n + 1))?;
                    if rn1 >= rn + 2 {
                        ensure(rn1 >= 2 * n + 3, || format!("{name}: jump at {n} to {rn1}"))?;
                    }
                    checks += 1;
                }
            }
        }
        if periodic {
            let settled = (1..=CORPUS_N_MAX)
                .rev()
                .take_while(|&n| matches!((r(n), r(n + 1)), (Some(a), Some(b)) if b == a + 1))
                .last()
                .unwrap_or(CORPUS_N_MAX + 1);
            ensure(settled <= PERIODIC_HEAD_LIMIT, || {
                format!("{name}: r(n+1) = r(n) + 1 only from n = {settled}")
            })?;
        }
    }
    Ok(format!("17 words, {checks} checks, 0 violations"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = Vec::new();
    for k in 0..ORACLE_WORDS {
        let base: u8 = rng.gen_range(2..=4);
        let len = rng.gen_range(ORACLE_N_MAX..=ORACLE_MAX_LEN);
        // half the corpus repeats short random blocks to force long repeats
        let word: Vec<u8> = if k % 2 == 0 {
            (0..len).map(|_| rng.gen_range(0..base)).collect()
        } else {
            let blocks: Vec<Vec<u8>> = (0..3)
                .map(|_| (0..rng.gen_range(1..40)).map(|_| rng.gen_range(0..base)).collect())
                .collect();
            let mut w = Vec::with_capacity(len);
            while w.len() < len {
                w.extend_from_slice(&blocks[rng.gen_range(0..blocks.len())]);
            }
            w.truncate(len);
            w
        };
        let sam = SuffixAutomaton::build(&word);
        let p = sam.factor_counts(ORACLE_N_MAX);
        let r = sam.return_times(ORACLE_N_MAX);
        for n in 1..=ORACLE_N_MAX {
            if p[n - 1] != naive::count_factors(&word, n) {
                mismatches.push(format!("word {k}: p({n})"));
            }
            if r[n - 1] != naive::return_time(&word, n) {
                mismatches.push(format!("word {k}: r({n})"));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {mismatches:?}"))?;
    Ok(format!("{ORACLE_WORDS} words, 0 mismatches"))
}

fn fib_enclosure(len: usize) -> (Vec<u8>, sturmlab::RationalInterval) {
    let word = fibonacci_word().prefix(len).unwrap().to_vec();
    let x = real_from_digits(&word, 2).unwrap();
    (word, x)
}

fn five_halves_witnesses() -> Outcome {
    timed(WITNESS_TIME_LIMIT, || {
        let (_, x) = fib_enclosure(FIB_DIGITS);
        let cf = certified_cf(&x);
        let witnesses = exponent_five_halves_witnesses(&x, &cf);
        ensure(witnesses.len() >= MIN_WITNESSES, || format!("{} witnesses", witnesses.len()))?;
        ensure(witnesses.len() == PINNED_WITNESSES, || {
            format!("{} witnesses, oracle pinned {PINNED_WITNESSES}", witnesses.len())
        })?;
        Ok(format!("{} witnesses among {} certified quotients", witnesses.len(), cf.len()))
    })
}

fn shape_law() -> Outcome {
    let (_, x) = fib_enclosure(FIB_DIGITS);
    let cf = certified_cf(&x);
    let m = estimate_m(SHAPE_RHO, 2);
    ensure(m.value == BigInt::from(PINNED_M), || format!("M = {}", m.value))?;
    let mut config = ClassifyConfig::for_digits(FIB_DIGITS, 2);
    config.q_cutoff = BigInt::from(Q_CUTOFF);
    let report = classify_good_convergents(&x, 2, &m.value, &cf, &config);
    let witnesses = exponent_five_halves_witnesses(&x, &cf).len();
    ensure(report.violations == 0, || format!("{} violations", report.violations))?;
    for e in report.entries.iter().filter(|e| e.passes_mq2 && e.convergent.q >= BigInt::from(Q_CUTOFF)) {
        let shape = e.shape.as_ref().ok_or_else(|| format!("q = {} has no shape", e.convergent.q))?;
        ensure(shape.m >= BigInt::from(1) && shape.m <= m.value, || format!("m = {}", shape.m))?;
        ensure(shape.recompute(2).as_ref() == Some(&e.convergent.q), || "shape does not recompute q".into())?;
    }
    ensure(report.passing == PINNED_PASSING, || format!("{} passing", report.passing))?;
    ensure(report.max_m == Some(BigInt::from(PINNED_MAX_M)), || format!("max m = {:?}", report.max_m))?;
    ensure(witnesses == PINNED_WITNESSES, || format!("{witnesses} witnesses"))?;
    Ok(format!(
        "{} good convergents shaped, max m = {PINNED_MAX_M}, {witnesses} witnesses, 0 violations",
        report.passing
    ))
}

fn certificate_soundness() -> Outcome {
    let (word, x) = fib_enclosure(CERT_PREFIX);
    let cf = certified_cf(&x);
    let profile = ComplexityProfile::compute(&word, CERT_N_MAX).map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut promoted = 0;
    for point in profile.branching().points.iter().filter(|b| b.return_time < 2 * b.n) {
        let cert = repetition_prefix(&word[..point.return_time], point.n)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no certificate at n = {}", point.n))?;
        ensure(cert.is_sound_for(&word), || format!("unsound certificate at n = {}", point.n))?;
        let record = approximant_from_certificate(&cert, 2);
        let check = ApproximantCheck::new(record, &x, &cf);
        ensure(check.error_bound_holds, || format!("error bound fails at n = {}", point.n))?;
        ensure(check.denominator_bound_holds, || format!("denominator bound fails at n = {}", point.n))?;
        if check.record.legendre_applies() {
            ensure(check.among_convergents == Some(true), || {
                format!("n = {}: reduced approximant not among convergents", point.n)
            })?;
            promoted += 1;
        }
        checked += 1;
    }
    ensure(checked > 0, || "no branching index with alpha < 2".into())?;
    Ok(format!("{checked} certificates sound, {promoted} found among convergents"))
}

fn fib_number() -> Number {
    Number::from_spec(&NumberSpec::Fibonacci).unwrap()
}

fn joint_divergence() -> Outcome {
    let report = cmd_complexity(&mut fib_number(), &[2, 3], JOINT_RANGE.1, JOINT_PREFIX, JOINT_GUARD)
        .map_err(|e| e.to_string())?;
    ensure(report.certified_n_max >= JOINT_RANGE.1, || format!("certified to {}", report.certified_n_max))?;
    for (n, expected) in JOINT_CHECKPOINTS {
        let d = report.d(n).unwrap();
        ensure(d == expected, || format!("D({n}) = {d}, oracle {expected}"))?;
    }
    let floor = JOINT_CHECKPOINTS[2].1;
    let monotone = (JOINT_RANGE.0..JOINT_RANGE.1).all(|n| report.d(n + 1) >= report.d(n));
    for n in JOINT_RANGE.0..=JOINT_RANGE.1 {
        let d = report.d(n).unwrap();
        ensure(d >= floor, || format!("D({n}) = {d} below envelope {floor}"))?;
    }
    Ok(format!(
        "checkpoints match, D(n) >= {floor} on [{}, {}] (monotone: {monotone}, envelope asserted)",
        JOINT_RANGE.0, JOINT_RANGE.1
    ))
}

fn dependent_bound() -> Outcome {
    let witness = multiplicative_independence(2, 4).map_err(|e| e.to_string())?;
    let (m, l) = witness.exponents.ok_or("2 and 4 reported independent")?;
    ensure(m + l == DEPENDENT_BOUND, || format!("m + l = {}", m + l))?;
    let report = cmd_dependent_bases(&mut fib_number(), 2, 4, DEPENDENT_RANGE.1, JOINT_PREFIX, DEPENDENT_RANGE.0, JOINT_GUARD)
        .map_err(|e| e.to_string())?;
    ensure(report.table.certified_n_max >= DEPENDENT_RANGE.1, || {
        format!("certified to {}", report.table.certified_n_max)
    })?;
    ensure(report.holds, || format!("D(n) < 3 at {:?}", report.violations))?;
    let min = (DEPENDENT_RANGE.0..=DEPENDENT_RANGE.1).map(|n| report.table.d(n).unwrap()).min().unwrap();
    Ok(format!("2^{m} = 4^{l}, min D(n) = {min} >= {DEPENDENT_BOUND} on [20, 150]"))
}

fn brute_force_sunit(eq: &SUnitEquation, zmax: u32) -> BTreeSet<[u32; 4]> {
    let mut out = BTreeSet::new();
    for z1 in 0..=zmax {
        for z2 in 0..=zmax {
            for z3 in 1..=zmax {
                for z4 in 0..=zmax {
                    let z = [z1, z2, z3, z4];
                    if eq.holds(z) {
                        out.insert(z);
                    }
                }
            }
        }
    }
    out
}

fn sunit_search() -> Outcome {
    let eq = SUnitEquation::new(1, 1, 2, 3).map_err(|e| e.to_string())?;
    let (found, small) = {
        let start = Instant::now();
        let found: BTreeSet<[u32; 4]> = sunit_enumerate(&eq, SUNIT_ZMAX).iter().map(|s| s.z).collect();
        let small: BTreeSet<[u32; 4]> = sunit_enumerate(&eq, SUNIT_STABLE_FROM).iter().map(|s| s.z).collect();
        let took = start.elapsed();
        ensure(took < SUNIT_TIME_LIMIT, || format!("took {took:?}"))?;
        (found, small)
    };
    let pinned: BTreeSet<[u32; 4]> = SUNIT_PINNED.into_iter().collect();
    ensure(found == pinned, || format!("found {found:?}, oracle {pinned:?}"))?;
    ensure(found == small, || format!("zmax 20 gives {small:?}"))?;
    let brute = brute_force_sunit(&eq, SUNIT_STABLE_FROM);
    ensure(brute == small, || format!("brute force at zmax 20 gives {brute:?}"))?;
    Ok(format!("{} solutions, stable from zmax {SUNIT_STABLE_FROM} to {SUNIT_ZMAX}", found.len()))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7219);
    let mut extractions = 0;
    for k in 0..ROUND_TRIP_COUNT {
        // a third of the sample terminates in one of the bases, where the
        // tail convention matters
        let q: u64 = match k % 3 {
            0 => rng.gen_range(2..1_000_000),
            1 => ROUND_TRIP_BASES[rng.gen_range(0..4)].pow(rng.gen_range(1..6)) as u64,
            _ => 6u64.pow(rng.gen_range(1..5)),
        };
        let p = rng.gen_range(0..q);
        let x = BigRational::new(p.into(), q.into());
        for base in ROUND_TRIP_BASES {
            let digits = digits_from_rational(&x, base, ROUND_TRIP_DIGITS).map_err(|e| e.to_string())?;
            extractions += 1;
            let cell = real_from_digits(&digits, base).map_err(|e| e.to_string())?;
            // half-open cell [lo, hi): the expansion never ends in b-1 repeated
            ensure(cell.lo() <= &x && &x < cell.hi(), || format!("{x} not in the cell of its base-{base} digits"))?;
            let again = rebase_digits(&cell, base, ROUND_TRIP_DIGITS).map_err(|e| e.to_string())?;
            ensure(again == digits, || format!("{x}: base-{base} digits do not round-trip"))?;
            let all_top = digits.iter().rev().take(20).all(|&d| u32::from(d) == base - 1);
            ensure(!all_top, || format!("{x}: base-{base} expansion ends in a (b-1) tail"))?;
            for other in ROUND_TRIP_BASES.iter().filter(|&&b| b != base) {
                let converted = rebase_digits(&cell, *other, ROUND_TRIP_DIGITS).map_err(|e| e.to_string())?;
                extractions += 1;
                let direct = digits_from_rational(&x, *other, converted.len()).map_err(|e| e.to_string())?;
                ensure(converted == direct, || format!("{x}: base {base} -> {other} disagrees"))?;
            }
        }
    }
    Ok(format!("{ROUND_TRIP_COUNT} rationals, {extractions} extractions"))
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("sturmian complexity", sturmian_complexity),
        ("return-time invariants", return_time_invariants),
        ("oracle equivalence", oracle_equivalence),
        ("q^-5/2 witnesses", five_halves_witnesses),
        ("shape law", shape_law),
        ("certificate soundness", certificate_soundness),
        ("joint divergence", joint_divergence),
        ("dependent-base lower bound", dependent_bound),
        ("s-unit box search", sunit_search),
        ("digit round-trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
