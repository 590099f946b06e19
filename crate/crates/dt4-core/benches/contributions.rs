use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dt4_core::partitions::GroupAction;
use dt4_core::vertex::{collect_contributions, SignRule};
use dt4_core::Parallelism;

fn modes() -> [(&'static str, Parallelism); 3] {
    [
        ("sequential", Parallelism::Sequential),
        ("rayon-2", Parallelism::Rayon { workers: 2 }),
        ("rayon-default", Parallelism::Rayon { workers: 0 }),
    ]
}

fn contributions(c: &mut Criterion) {
    let mut g = c.benchmark_group("collect_contributions");
    g.sample_size(10);
    let cases = [("trivial", None, 4u32), ("zr:2", Some(GroupAction::zr(2).unwrap()), 5), ("z2z2", Some(GroupAction::z2z2()), 5)];
    for (name, action, order) in &cases {
        for (label, par) in modes() {
            g.bench_with_input(BenchmarkId::new(label, format!("{name}/D{order}")), &par, |b, &par| {
                b.iter(|| collect_contributions(action.as_ref(), *order, &SignRule::default(), par, None).unwrap())
            });
        }
    }
    g.finish();
}

fn exact_series(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact_series");
    g.sample_size(10);
    let z2 = GroupAction::zr(2).unwrap();
    let contribs = collect_contributions(Some(&z2), 3, &SignRule::default(), Parallelism::Sequential, None).unwrap();
    for (label, par) in modes() {
        g.bench_function(BenchmarkId::new(label, "zr:2/D3"), |b| b.iter(|| contribs.exact_series(par).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, contributions, exact_series);
criterion_main!(benches);
