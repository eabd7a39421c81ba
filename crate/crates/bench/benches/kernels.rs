use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lagrel::{interpret, Calculus};
use lagrel_bench::{chain, dense, diagram, state};

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [4, 8, 12] {
        let m = dense(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| black_box(m.rref())));
    }
    g.finish();
}

fn compose(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose");
    for len in [4, 16] {
        let parts = chain(len);
        g.bench_with_input(BenchmarkId::from_parameter(len), &parts, |b, parts| {
            b.iter(|| parts.iter().skip(1).fold(parts[0].clone(), |acc, r| acc.compose(r).unwrap()))
        });
    }
    g.finish();
}

fn ap_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("ap_form");
    for n in [2, 4, 6] {
        let s = state(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &s, |b, s| b.iter(|| black_box(s.ap_form().unwrap())));
    }
    g.finish();
}

fn interpretation(c: &mut Criterion) {
    let mut g = c.benchmark_group("interpret");
    for n in [2, 3, 4] {
        let d = diagram(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| interpret(d, Calculus::Gsa).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, rref, compose, ap_form, interpretation);
criterion_main!(benches);
