use criterion::{criterion_group, criterion_main, Criterion};
use fqg_bench::cyclotomic_operands;
use fqg_core::models::{kac_paljutkin, sekine};
use fqg_core::reproduce::kp_links;
use fqg_core::rmatrix::{solve_kp_rmatrices, DEFAULT_CANDIDATE_BOUND};
use fqg_core::series::classify_solvable_series;
use std::hint::black_box;

fn cyclotomic(c: &mut Criterion) {
    let xs = cyclotomic_operands(64);
    c.bench_function("cyclotomic mul+add", |b| {
        b.iter(|| xs.windows(2).fold(fqg_core::CycNum::zero(), |acc, w| acc + &w[0] * &w[1]))
    });
    c.bench_function("cyclotomic inverse", |b| {
        b.iter(|| {
            for x in xs.iter().filter(|x| !x.is_zero()) {
                black_box(x.inv().unwrap());
            }
        })
    });
}

fn hopf(c: &mut Criterion) {
    let h = sekine(5).unwrap();
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    g.bench_function("verify_hopf sekine 5", |b| b.iter(|| black_box(h.verify_hopf()).all_pass()));
    g.finish();
}

fn kp(c: &mut Criterion) {
    let h = kac_paljutkin();
    let mut g = c.benchmark_group("kac-paljutkin");
    g.sample_size(10);
    g.bench_function("solve R-matrices", |b| b.iter(|| solve_kp_rmatrices(&h, DEFAULT_CANDIDATE_BOUND).unwrap().candidates.len()));
    let links = kp_links(&h).unwrap();
    g.bench_function("classify solvable series", |b| b.iter(|| classify_solvable_series(&h, &links).unwrap().len()));
    g.finish();
}

criterion_group!(benches, cyclotomic, hopf, kp);
criterion_main!(benches);
