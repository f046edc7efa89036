use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use formwitt::forms::QuadraticForm;
use formwitt::par::Parallelism;
use formwitt::rings::{parse_ring, Ring};
use formwitt::search::{exhaustive_search, SearchConfig};

fn cases() -> Vec<(&'static str, QuadraticForm)> {
    let mut out = Vec::new();
    let k = Ring::gf_ext(3, 5).unwrap();
    out.push(("aniso-gf243-rank2", QuadraticForm::diagonal(&k, &[k.one(), k.one()])));
    let r = parse_ring("GF(3)[X]/(X^4)").unwrap();
    out.push(("aniso-local81-rank2", QuadraticForm::diagonal(&r, &[r.one(), r.one()])));
    let k = Ring::gf_ext(3, 7).unwrap();
    out.push(("aniso-gf2187-rank2", QuadraticForm::diagonal(&k, &[k.one(), k.one()])));
    out
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_search");
    group.sample_size(10);
    for (name, q) in cases() {
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            let cfg = SearchConfig { parallelism: mode, ..SearchConfig::default() };
            group.bench_with_input(BenchmarkId::new(format!("{mode:?}"), name), &q, |b, q| {
                b.iter(|| exhaustive_search(q, None, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
