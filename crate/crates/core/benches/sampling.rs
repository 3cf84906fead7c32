use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::SeedableRng;

use ergm_core::counts::{delta_count, fast_delta, GraphKind, SmallGraph};
use ergm_core::glauber::{run_chain, ChainState};
use ergm_core::graph::{all_edges, sample_er};
use ergm_core::{par, ChainRng, ErgmSpec};

fn spec() -> ErgmSpec {
    ErgmSpec::edge_two_star_and(SmallGraph::triangle(), [-1.0, 0.55, 0.5]).unwrap()
}

fn batch(c: &mut Criterion) {
    let spec = spec();
    let n = 24;
    let samples = 64;
    let chain = |i: usize| {
        let mut rng = ChainRng::seed_from_u64(i as u64);
        run_chain(&spec, 0.18, n, 4 * (n * n) as u64, &mut rng).unwrap().edge_count()
    };
    let mut group = c.benchmark_group("batch_of_chains");
    group.throughput(Throughput::Elements(samples as u64));
    group.bench_function("sequential", |b| b.iter(|| black_box(par::map_range_sequential(samples, chain))));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| black_box(par::map_range_parallel(samples, chain))));
    group.finish();
}

fn steps(c: &mut Criterion) {
    let mut group = c.benchmark_group("glauber_steps");
    group.throughput(Throughput::Elements(10_000));
    for n in [16usize, 64, 256] {
        let mut rng = ChainRng::seed_from_u64(1);
        let x = sample_er(n, 0.18, &mut rng).unwrap();
        let mut chain = ChainState::new(spec(), x, ChainRng::seed_from_u64(2)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| chain.run(10_000)));
    }
    group.finish();
}

fn change_counts(c: &mut Criterion) {
    let mut rng = ChainRng::seed_from_u64(3);
    let x = sample_er(12, 0.4, &mut rng).unwrap();
    let edges: Vec<_> = all_edges(12).collect();
    let mut group = c.benchmark_group("change_counts");
    for kind in GraphKind::SPECIFICATION_KINDS {
        let g = SmallGraph::of_kind(kind).unwrap();
        group.bench_function(BenchmarkId::new("fast", kind.name()), |b| {
            b.iter(|| edges.iter().map(|&e| fast_delta(kind, &x, e).unwrap()).sum::<u64>())
        });
        group.bench_function(BenchmarkId::new("enumerated", kind.name()), |b| {
            b.iter(|| edges.iter().map(|&e| delta_count(&g, &x, e).unwrap()).sum::<u64>())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, steps, change_counts);
criterion_main!(benches);
