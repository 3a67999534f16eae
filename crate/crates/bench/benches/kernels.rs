use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cohlen_bench::{complexes, dual, square};
use cohlen_core::cohfun::CohFunction;
use cohlen_core::perfcx::{barcode, barcode_by_ranks, minimal_model, PerfectComplex};
use cohlen_core::spectrum::enumerate_sp_dual_numbers;
use cohlen_core::suites::hom_dim_matrix;

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [16, 64, 128] {
        let m = square(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rank())));
    }
    g.finish();
}

fn decomposition(c: &mut Criterion) {
    let xs = complexes(16, 2);
    c.bench_function("barcode_by_ranks", |b| b.iter(|| xs.iter().map(|x| barcode_by_ranks(x).unwrap().count()).sum::<usize>()));
    c.bench_function("minimal_model", |b| b.iter(|| xs.iter().map(|x| minimal_model(x).unwrap().complex.total_rank()).sum::<usize>()));
    c.bench_function("barcode_certified", |b| {
        b.iter(|| {
            for x in &xs {
                let d = barcode(x).unwrap();
                d.certify(x).unwrap();
            }
        })
    });
}

fn length_functions(c: &mut Criterion) {
    let alg = dual();
    let xs = complexes(8, 3);
    let chi = CohFunction::of_complex(&PerfectComplex::string(&alg, 0, 2)).unwrap();
    c.bench_function("chi_profile", |b| {
        b.iter(|| {
            // fresh function each time so the profile cache is cold
            let chi = CohFunction::of_complex(&PerfectComplex::string(&alg, 0, 2)).unwrap();
            xs.iter().map(|x| chi.profile(x).unwrap().len()).sum::<usize>()
        })
    });
    c.bench_function("chi_profile_cached", |b| b.iter(|| xs.iter().map(|x| chi.profile(x).unwrap().len()).sum::<usize>()));
    c.bench_function("hom_dim_matrix", |b| b.iter(|| hom_dim_matrix(&alg).unwrap().matrix.len()));
}

fn spectrum(c: &mut Criterion) {
    let alg = dual();
    let mut g = c.benchmark_group("spectrum_window");
    g.sample_size(10);
    for r in [2, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| b.iter(|| enumerate_sp_dual_numbers(&alg, r).unwrap().labels().len()));
    }
    g.finish();
}

criterion_group!(benches, rank, decomposition, length_functions, spectrum);
criterion_main!(benches);
