//! Benchmarks for the exact kernels and the expansions built on them.
//!
//! The expansion benches clear no caches, so after the first iteration they
//! time the formula evaluation rather than the oracle polynomials it reuses.

use std::hint::black_box;

use criterion::Criterion;
use macpieri_core::matinv::{verify_inverse, verify_inverse_trials};
use macpieri_core::pieri::pieri_expand;
use macpieri_core::recurrence::{det_identity_holds, recurrence_expand};
use macpieri_core::ring::{gcd, parse_rational};
use macpieri_core::{PairParams, BoxRange, DominantWeight, MultiPoly};

fn poly(s: &str) -> MultiPoly {
    parse_rational(s).unwrap().numer().clone()
}

pub fn ring(c: &mut Criterion) {
    let a = poly("(1 - q*t^2 + 3*q^2*u0)^4 * (1 - t*u1)^3");
    let b = poly("(1 - q*t^2 + 3*q^2*u0)^2 * (q - t*u0)^3");
    c.bench_function("poly multiply", |bn| bn.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("poly gcd", |bn| bn.iter(|| gcd(black_box(&a), black_box(&b))));
    let x = parse_rational("(1-q)*(1+t)/(1-q*t)").unwrap();
    let y = parse_rational("(1-q^2*t)/((1-t)*(1-q*t^2))").unwrap();
    c.bench_function("rational add", |bn| bn.iter(|| black_box(&x) + black_box(&y)));
}

pub fn expansions(c: &mut Criterion) {
    let lam = DominantWeight::new(vec![2, 1, 1]);
    c.bench_function("pieri n=3 r=3", |bn| bn.iter(|| pieri_expand(black_box(&lam), 3).unwrap()));
    let lam = DominantWeight::new(vec![1, 1, 2]);
    c.bench_function("recurrence n=3 k=3", |bn| bn.iter(|| recurrence_expand(black_box(&lam), 3).unwrap()));
    c.bench_function("determinant quotient i=j=3", |bn| bn.iter(|| det_identity_holds(3, 3).unwrap()));
}

pub fn inverse_pair(c: &mut Criterion) {
    let mut g = c.benchmark_group("inverse pair");
    g.sample_size(10);
    let p = PairParams::symbolic(1, 2, 3).unwrap();
    g.bench_function("n=1 symbolic box 0..4", |bn| bn.iter(|| verify_inverse(&BoxRange::cube(1, 4), &p).unwrap()));
    g.bench_function("n=2 one trial box 0..2", |bn| {
        bn.iter(|| verify_inverse_trials(&BoxRange::cube(2, 2), 2, 2, 2, 1, 0).unwrap())
    });
    g.finish();
}
