use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use flexconn::harness::{check_arithmetic_lemmas, run_ratio_experiment, GeneratorKind, RatioConfig};
use flexconn::par::Exec;
use flexconn::Problem;

fn executors() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if Exec::available() == Exec::Parallel {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn ratio_experiments(c: &mut Criterion) {
    let mut group = c.benchmark_group("ratio_experiment");
    group.sample_size(10);
    let mut small = RatioConfig::new(Problem::Fvc, 64, 5, 9, 1);
    small.vertex_safe_prob = 0.5;
    small.edge_safe_prob = 1.0;
    let mut large = RatioConfig::new(Problem::Fvc, 64, 15, 60, 1);
    large.generator = GeneratorKind::TwoVc;
    large.vertex_safe_prob = 0.15;
    let kfgc = {
        let mut c = RatioConfig::new(Problem::Kfgc, 64, 4, 8, 1);
        c.k = 2;
        c.p = 0.8;
        c
    };
    for (name, base) in [("fvc_oracle_n9", small), ("fvc_2vc_n60", large), ("kfgc_k2_n8", kfgc)] {
        for (label, exec) in executors() {
            let cfg = RatioConfig { exec, ..base.clone() };
            group.bench_with_input(BenchmarkId::new(name, label), &cfg, |b, cfg| {
                b.iter(|| black_box(run_ratio_experiment(cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn lemma_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma_sampling");
    for (label, exec) in executors() {
        group.bench_function(BenchmarkId::new("100k", label), |b| b.iter(|| black_box(check_arithmetic_lemmas(100_000, 7, exec))));
    }
    group.finish();
}

criterion_group!(benches, ratio_experiments, lemma_sampling);
criterion_main!(benches);
