use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use legendrian::bott::bott_sum;
use legendrian::{count_with_census, draw_weights, enumerate_graphs, CountConfig, IncidenceSpec};

fn single_draw(c: &mut Criterion) {
    let mut group = c.benchmark_group("bott_sum");
    group.sample_size(10);
    for (n, d, a) in [
        (1, 2, vec![5, 0]),
        (1, 3, vec![7, 0]),
        (1, 4, vec![9, 0]),
        (2, 1, vec![7, 0, 0, 0]),
        (2, 2, vec![11, 0, 0, 0]),
    ] {
        let census = enumerate_graphs(2 * n + 1, d).unwrap();
        let spec = IncidenceSpec::new(n, a).unwrap();
        let w = draw_weights(2 * n + 1, CountConfig::default().seed, 0);
        group.bench_with_input(BenchmarkId::new(format!("P{}", 2 * n + 1), d), &d, |b, _| {
            b.iter(|| bott_sum(black_box(&census), &spec, &w, false).unwrap())
        });
    }
    group.finish();
}

fn verified_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    let census = enumerate_graphs(5, 2).unwrap();
    let spec = IncidenceSpec::new(2, vec![0, 0, 1, 2]).unwrap();
    for (name, oracle_check) in [("plain", false), ("oracle", true)] {
        let config = CountConfig { oracle_check, ..CountConfig::default() };
        group.bench_function(BenchmarkId::new("P5_d2", name), |b| {
            b.iter(|| count_with_census(&census, 2, 2, &spec, &config).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, single_draw, verified_count);
criterion_main!(benches);
