//! Sequential against data-parallel element scans. Build with
//! `--no-default-features` to bench the sequential fallback alone.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fitkit::scan::{filter_seq, find_first_seq, map_reduce_seq};
use fitkit::tower::build_degenerate_tower;
use fitkit::{Caps, FiniteGroup};

fn groups() -> Vec<(&'static str, FiniteGroup)> {
    let tower = build_degenerate_tower(&[2, 3, 2, 3], 4, &Caps::default()).expect("tower builds");
    vec![("sym8", FiniteGroup::symmetric(8)), ("tower-level-4", tower.level(4).unwrap().clone())]
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for (name, g) in groups() {
        let chain = g.chain();
        let involution = |x: &fitkit::Perm| x.order() == 2;
        let absent = |x: &fitkit::Perm| x.degree() == 0;
        let exponent = || 1u64;
        let fold = |acc: u64, x: &fitkit::Perm| fitkit::perm::lcm(acc, x.order());

        group.bench_function(BenchmarkId::new("filter/seq", name), |b| b.iter(|| filter_seq(chain, involution).len()));
        group.bench_function(BenchmarkId::new("find_first/seq", name), |b| b.iter(|| find_first_seq(chain, 0, absent)));
        group.bench_function(BenchmarkId::new("map_reduce/seq", name), |b| {
            b.iter(|| map_reduce_seq(chain, exponent, fold, fitkit::perm::lcm))
        });
        #[cfg(feature = "parallel")]
        {
            use fitkit::scan::{filter_par, find_first_par, map_reduce_par};
            group.bench_function(BenchmarkId::new("filter/par", name), |b| b.iter(|| filter_par(chain, involution).len()));
            group.bench_function(BenchmarkId::new("find_first/par", name), |b| b.iter(|| find_first_par(chain, 0, absent)));
            group.bench_function(BenchmarkId::new("map_reduce/par", name), |b| {
                b.iter(|| map_reduce_par(chain, exponent, fold, fitkit::perm::lcm))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
