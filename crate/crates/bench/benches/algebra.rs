use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use logflat_bench::*;
use logflat_core::birkhoff::{birkhoff_factorize, splitting_type_rank_oracle, Transition};
use logflat_core::filtrations::simultaneous_split;
use logflat_core::jordan::{central_log, jordan_chevalley};
use logflat_core::saito::saito_check;

fn saito(c: &mut Criterion) {
    let sys = sextic_system();
    c.bench_function("saito/sextic", |b| b.iter(|| saito_check(black_box(&sys))));
}

fn jordan(c: &mut Criterion) {
    let mut g = c.benchmark_group("jordan");
    let mut r = rng(1);
    for n in [3, 5, 7] {
        let m = mixed_matrix(&mut r, n);
        g.bench_with_input(BenchmarkId::new("jordan_chevalley", n), &m, |b, m| b.iter(|| jordan_chevalley(m).unwrap()));
        let s = jordan_chevalley(&m).unwrap().s;
        g.bench_with_input(BenchmarkId::new("central_log", n), &s, |b, s| b.iter(|| central_log(s)));
    }
    g.finish();
}

fn birkhoff(c: &mut Criterion) {
    let mut g = c.benchmark_group("birkhoff");
    let mut r = rng(2);
    for (n, exps) in [(2, vec![3, -1]), (3, vec![2, 0, -2]), (4, vec![1, 1, 0, -3])] {
        let t = Transition::new(laurent_transition(&mut r, n, &exps)).unwrap();
        g.bench_with_input(BenchmarkId::new("factorize", n), &t, |b, t| b.iter(|| birkhoff_factorize(t)));
        g.bench_with_input(BenchmarkId::new("rank_oracle", n), &t, |b, t| b.iter(|| splitting_type_rank_oracle(t)));
    }
    g.finish();
}

fn filtrations(c: &mut Criterion) {
    let mut g = c.benchmark_group("filtrations");
    let mut r = rng(3);
    for (m, k) in [(3, 3), (4, 3), (4, 4)] {
        let fs = flags(&mut r, m, k);
        g.bench_with_input(BenchmarkId::new("split", format!("{m}x{k}")), &fs, |b, fs| b.iter(|| simultaneous_split(fs)));
    }
    g.finish();
}

criterion_group!(benches, saito, jordan, birkhoff, filtrations);
criterion_main!(benches);
