use criterion::{criterion_group, criterion_main, Criterion};

use tilting_bench::fixture;
use tilting_core::derived::{counit_check, lg, random_suite, rh, RandomSpec};
use tilting_core::certify_tilting;

fn certification(c: &mut Criterion) {
    for (name, n) in [("FIX-A2.json", 1), ("FIX-N3.json", 2)] {
        let ws = fixture(name);
        let t = ws.module("T").unwrap().clone();
        c.bench_function(&format!("certify {name}"), |b| b.iter(|| certify_tilting(&t, n).unwrap()));
    }
}

fn derived(c: &mut Criterion) {
    let ws = fixture("FIX-N3.json");
    let ctx = ws.context(None, None).unwrap();
    let suite = random_suite(&ctx.algebra, &RandomSpec::default(), 0, 20).unwrap();
    c.bench_function("rh then lg, 20 random complexes", |b| {
        b.iter(|| {
            for x in &suite {
                let r = rh(&ctx, x).unwrap();
                lg(&ctx, &r, None).unwrap();
            }
        })
    });
    c.bench_function("counit check, 20 random complexes", |b| {
        b.iter(|| suite.iter().all(|x| counit_check(&ctx, x).unwrap().verified))
    });
}

criterion_group!(benches, certification, derived);
criterion_main!(benches);
