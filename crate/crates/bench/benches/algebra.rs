use agcy::families::build;
use agcy::groebner::{groebner as gb, Budget};
use agcy::random::Rng;
use agcy::resolution::free_resolution;
use agcy_bench::{cyclic4, random_quadrics};
use criterion::{criterion_group, criterion_main, Criterion};

fn groebner(c: &mut Criterion) {
    let cyc = cyclic4().unwrap();
    c.bench_function("groebner/cyclic4", |b| b.iter(|| gb(cyc.ring(), cyc.gens(), &Budget::unlimited()).unwrap()));
    let ci = random_quadrics(1).unwrap();
    c.bench_function("groebner/four_quadrics_p7", |b| b.iter(|| gb(ci.ring(), ci.gens(), &Budget::unlimited()).unwrap()));
}

fn builds(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    for id in [1, 3, 5, 11] {
        g.bench_function(format!("family{id}"), |b| b.iter(|| build(id, 1, 32003).unwrap()));
    }
    g.finish();
}

fn betti(c: &mut Criterion) {
    let mut g = c.benchmark_group("betti");
    g.sample_size(10);
    for id in [1, 4, 11] {
        let x = build(id, 1, 32003).unwrap();
        g.bench_function(format!("family{id}"), |b| {
            b.iter(|| free_resolution(&x.ideal, &mut Rng::new(1), &Budget::unlimited()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, groebner, builds, betti);
criterion_main!(benches);
