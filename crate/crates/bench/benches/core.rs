use criterion::{black_box, criterion_group, criterion_main, Criterion};

use qhyper::orbit::{orbit_reduce, q_dispersion, q_dispersion_by_resultant};
use qhyper::prolong::JetRing;
use qhyper::rank1::classify;
use qhyper::telescope::rational_telescope;
use qhyper::theta::{verify_functional_equation, verify_heat_equation};
use qhyper_bench::*;

fn field(c: &mut Criterion) {
    let (a, b) = gcd_pair();
    c.bench_function("polyx_gcd", |bch| bch.iter(|| black_box(&a).gcd(black_box(&b))));
    c.bench_function("polyx_ext_gcd", |bch| {
        let g = a.gcd(&b);
        let (a1, b1) = (a.exact_div(&g), b.exact_div(&g));
        bch.iter(|| black_box(&a1).ext_gcd(black_box(&b1)))
    });
}

fn orbits(c: &mut Criterion) {
    let (p, q) = dispersion_pair();
    c.bench_function("q_dispersion", |b| b.iter(|| q_dispersion(black_box(&p), black_box(&q))));
    c.bench_function("q_dispersion_by_resultant", |b| {
        b.iter(|| q_dispersion_by_resultant(black_box(&p), black_box(&q)))
    });
    let a = rank1_input();
    c.bench_function("orbit_reduce", |b| b.iter(|| orbit_reduce(black_box(&a))));
    c.bench_function("classify", |b| b.iter(|| classify(black_box(&a))));
}

fn telescoping(c: &mut Criterion) {
    let (g, h) = (telescopable(), obstructed());
    c.bench_function("telescope_found", |b| b.iter(|| rational_telescope(black_box(&g))));
    c.bench_function("telescope_obstructed", |b| b.iter(|| rational_telescope(black_box(&h))));
}

fn identities(c: &mut Criterion) {
    c.bench_function("theta_window_32", |b| {
        b.iter(|| verify_functional_equation(black_box(32)).unwrap() && verify_heat_equation(32).unwrap())
    });
    let jr = JetRing::new(jet_system(), 2).unwrap();
    c.bench_function("commutation_check_2x2_order2", |b| b.iter(|| jr.commutation_check(black_box(2))));
}

criterion_group!(benches, field, orbits, telescoping, identities);
criterion_main!(benches);
