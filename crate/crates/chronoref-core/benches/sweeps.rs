//! Parallel vs sequential timings for the oracle sweeps.
//!
//! Run with `cargo bench -p chronoref-core`. The `parallel` rows exist only
//! when the default `parallel` feature is enabled; the small exhaustive
//! sweeps show rayon's overhead, the randomized harness shows its payoff.

use criterion::{Criterion, criterion_group, criterion_main};
use std::hint::black_box;

use chronoref_core::harness::{
    PreservationLaw, preservation_exhaustive_with, preservation_randomized_with,
};
use chronoref_core::{Law, Sweep, verify_algebra_with};

fn algebra_laws(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_algebra_n3");
    for law in [
        Law::Reflexivity,
        Law::Transitivity,
        Law::AntisymmetryUpToEquivalence,
    ] {
        group.bench_function(format!("{law}/sequential"), |b| {
            b.iter(|| verify_algebra_with(black_box(3), law, Sweep::Sequential).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_function(format!("{law}/parallel"), |b| {
            b.iter(|| verify_algebra_with(black_box(3), law, Sweep::Parallel).unwrap())
        });
    }
    group.finish();
}

fn preservation_exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("preservation_exhaustive_n3");
    group.sample_size(10);
    for law in [PreservationLaw::Subclock, PreservationLaw::Union] {
        group.bench_function(format!("{law}/sequential"), |b| {
            b.iter(|| preservation_exhaustive_with(black_box(3), law, Sweep::Sequential).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_function(format!("{law}/parallel"), |b| {
            b.iter(|| preservation_exhaustive_with(black_box(3), law, Sweep::Parallel).unwrap())
        });
    }
    group.finish();
}

fn preservation_randomized(c: &mut Criterion) {
    let mut group = c.benchmark_group("preservation_randomized_n16_x2000");
    group.sample_size(10);
    for law in [PreservationLaw::Subclock, PreservationLaw::Union] {
        group.bench_function(format!("{law}/sequential"), |b| {
            b.iter(|| {
                preservation_randomized_with(black_box(16), 2000, 42, law, Sweep::Sequential)
                    .unwrap()
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_function(format!("{law}/parallel"), |b| {
            b.iter(|| {
                preservation_randomized_with(black_box(16), 2000, 42, law, Sweep::Parallel).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    algebra_laws,
    preservation_exhaustive,
    preservation_randomized
);
criterion_main!(benches);
