use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fq_curves::analysis::{count_points_with, line_spectrum_with, CountStrategy};
use fq_curves::catalog::{catalog_curve, CatalogParams};
use fq_curves::field::FieldCtx;
use fq_curves::par::Parallelism;
use fq_curves::search::{run_search, SearchFilters, SearchMode, SearchTask};

const MODES: [(&str, Parallelism); 2] = [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Auto)];

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive search");
    group.sample_size(10);
    for (q, d) in [(3u32, 3u32), (2, 4)] {
        let ctx = FieldCtx::of_order(q).unwrap();
        for (name, par) in MODES {
            let task = SearchTask::new(ctx.clone(), d, SearchMode::Exhaustive)
                .with_filters(SearchFilters { no_linear_component: true, ..Default::default() })
                .with_parallelism(par);
            group.bench_with_input(BenchmarkId::new(name, format!("q{q}_d{d}")), &task, |b, t| {
                b.iter(|| run_search(t).unwrap())
            });
        }
    }
    group.finish();
}

fn random(c: &mut Criterion) {
    let mut group = c.benchmark_group("random quartics over GF(4)");
    group.sample_size(10);
    let ctx = FieldCtx::of_order(4).unwrap();
    for (name, par) in MODES {
        let task = SearchTask::new(ctx.clone(), 4, SearchMode::Random { seed: 1, samples: 50_000 })
            .with_filters(SearchFilters { no_linear_component: true, ..Default::default() })
            .with_parallelism(par);
        group.bench_function(name, |b| b.iter(|| run_search(&task).unwrap()));
    }
    group.finish();
}

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count and spectrum");
    group.sample_size(10);
    for q in [64u32, 256] {
        let ctx = FieldCtx::of_order(q).unwrap();
        let f = catalog_curve("hermitian", &ctx, &CatalogParams::default()).unwrap();
        for (name, par) in MODES {
            group.bench_with_input(BenchmarkId::new(name, q), &f, |b, f| {
                b.iter(|| {
                    let rep = count_points_with(f, CountStrategy::PointIteration, par);
                    line_spectrum_with(f, &rep, par)
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, exhaustive, random, counting);
criterion_main!(benches);
