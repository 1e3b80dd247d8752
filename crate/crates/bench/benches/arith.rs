use criterion::{black_box, criterion_group, criterion_main, Criterion};

use sturmlab::approx::ClassifyConfig;
use sturmlab::sunit::SUnitEquation;
use sturmlab::{
    certified_cf, classify_good_convergents, estimate_m, fibonacci_word, real_from_digits, rebase_digits,
    sunit_enumerate,
};

fn conversion(c: &mut Criterion) {
    let word = fibonacci_word().prefix(10_000).unwrap().to_vec();
    let x = real_from_digits(&word, 2).unwrap();
    c.bench_function("rebase/2->3/10000", |b| b.iter(|| rebase_digits(black_box(&x), 3, 6305).unwrap()));
    c.bench_function("certified_cf/10000", |b| b.iter(|| certified_cf(black_box(&x))));
}

fn classification(c: &mut Criterion) {
    let word = fibonacci_word().prefix(400).unwrap().to_vec();
    let x = real_from_digits(&word, 2).unwrap();
    let cf = certified_cf(&x);
    let m = estimate_m(1, 2).value;
    let config = ClassifyConfig::for_digits(400, 2);
    c.bench_function("classify/fibonacci/400", |b| {
        b.iter(|| classify_good_convergents(black_box(&x), 2, &m, &cf, &config))
    });
}

fn sunit(c: &mut Criterion) {
    let eq = SUnitEquation::new(1, 1, 2, 3).unwrap();
    c.bench_function("sunit/(1,1,2,3)/zmax=25", |b| b.iter(|| sunit_enumerate(black_box(&eq), 25)));
}

criterion_group!(benches, conversion, classification, sunit);
criterion_main!(benches);
