//! Compares the data-parallel evaluation paths against a single-thread pool
//! on the workloads that dominate the certificates: exhaustive covariant
//! tables, the derivation kernel, and the exterior-character expansion.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use socov::altmap::{alt_map_is_zero, AltMap, EqMode};
use socov::bruteforce::{so_invariant_dim_bruteforce, TargetKind};
use socov::field::Rat;
use socov::weyl::{exterior_character, weights_of_module, ModuleKind};

fn with_pool<T>(threads: usize, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(f)
}

fn bench_qq_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("qq_exhaustive_n2");
    group.sample_size(10);
    for threads in [1usize, num_threads()] {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| {
                with_pool(t, || {
                    // fresh maps each run so the memo does not hide the work
                    let q: AltMap<Rat> = AltMap::covariant_q(2);
                    let qq = q.wedge(&q).unwrap();
                    alt_map_is_zero(&qq, EqMode::Exhaustive { force: false }).unwrap()
                })
            })
        });
    }
    group.finish();
}

fn bench_derivation_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivation_kernel_k3_n2");
    group.sample_size(10);
    for threads in [1usize, num_threads()] {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| {
                with_pool(t, || so_invariant_dim_bruteforce(3, 2, TargetKind::Skew).unwrap())
            })
        });
    }
    group.finish();
}

fn bench_exterior_character(c: &mut Criterion) {
    let mut group = c.benchmark_group("exterior_character_n4_k10");
    group.sample_size(10);
    let w = weights_of_module(ModuleKind::Wedge2, 4);
    for threads in [1usize, num_threads()] {
        group.bench_with_input(BenchmarkId::from_parameter(threads), &threads, |b, &t| {
            b.iter(|| with_pool(t, || exterior_character(&w, 10)))
        });
    }
    group.finish();
}

fn num_threads() -> usize {
    std::thread::available_parallelism().map(|v| v.get()).unwrap_or(4)
}

criterion_group!(benches, bench_qq_table, bench_derivation_kernel, bench_exterior_character);
criterion_main!(benches);
