use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ltldom::{analyze_run, holds, label, oracle_holds, parse};
use ltldom_bench::{automata, formulas, rendered};

fn labelling(c: &mut Criterion) {
    let mut group = c.benchmark_group("label");
    for depth in [2, 4, 6] {
        let fx = formulas(64, depth, 6, 1);
        group.bench_with_input(BenchmarkId::from_parameter(depth), &fx, |b, fx| {
            b.iter(|| {
                for (w, f) in fx.words.iter().zip(&fx.formulas) {
                    black_box(label(w, f));
                }
            })
        });
    }
    group.finish();
}

fn evaluator_vs_oracle(c: &mut Criterion) {
    let fx = formulas(64, 4, 6, 2);
    let mut group = c.benchmark_group("holds");
    group.bench_function("table", |b| {
        b.iter(|| {
            for (w, f) in fx.words.iter().zip(&fx.formulas) {
                black_box(holds(w, 0, f));
            }
        })
    });
    group.bench_function("oracle", |b| {
        b.iter(|| {
            for (w, f) in fx.words.iter().zip(&fx.formulas) {
                black_box(oracle_holds(w, 0, f, 10));
            }
        })
    });
    group.finish();
}

fn long_words(c: &mut Criterion) {
    let mut group = c.benchmark_group("label_long_word");
    for len in [16, 128, 1024] {
        let fx = formulas(8, 4, len, 3);
        group.bench_with_input(BenchmarkId::from_parameter(len), &fx, |b, fx| {
            b.iter(|| {
                for (w, f) in fx.words.iter().zip(&fx.formulas) {
                    black_box(label(w, f));
                }
            })
        });
    }
    group.finish();
}

fn runs(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze_run");
    for states in [4, 32] {
        let cases = automata(32, states, 4, 32, 4);
        group.bench_with_input(BenchmarkId::from_parameter(states), &cases, |b, cases| {
            b.iter(|| {
                for (aut, w) in cases {
                    black_box(analyze_run(aut, w).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn parsing(c: &mut Criterion) {
    let texts = rendered(&formulas(256, 6, 1, 5));
    c.bench_function("parse", |b| {
        b.iter(|| {
            for t in &texts {
                black_box(parse(t).unwrap());
            }
        })
    });
}

criterion_group!(benches, labelling, evaluator_vs_oracle, long_words, runs, parsing);
criterion_main!(benches);
