use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use placto_bench::{column_presentation, type_a, word_batch};
use placto_core::crystal::{to_highest_weight, word_op, Dir};
use placto_core::crystal_rewriting::{cohere_direct, cohere_via_hw};
use placto_core::plactic::plactic_equiv;
use placto_core::rewriting::Strategy;
use std::hint::black_box;

fn bench_word_ops(c: &mut Criterion) {
    let ty = type_a(4);
    let words = word_batch(4, 5);
    c.bench_function("word_op/lower sweep A4 len<=5", |b| {
        b.iter(|| {
            for w in &words {
                for i in ty.labels() {
                    black_box(word_op(&ty, w, i, Dir::Lower).unwrap());
                }
            }
        })
    });
    c.bench_function("to_highest_weight A4 len<=5", |b| {
        b.iter(|| {
            for w in &words {
                black_box(to_highest_weight(&ty, w).unwrap());
            }
        })
    });
}

fn bench_equiv(c: &mut Criterion) {
    let ty = type_a(3);
    let words = word_batch(3, 4);
    c.bench_function("plactic_equiv pairwise A3 len<=4", |b| {
        b.iter(|| {
            for w1 in &words {
                for w2 in &words {
                    black_box(plactic_equiv(&ty, w1, w2).unwrap());
                }
            }
        })
    });
}

fn bench_build(c: &mut Criterion) {
    c.bench_function("build_column_presentation 4 letters", |b| {
        b.iter(|| {
            black_box(placto_core::crystal_rewriting::build_column_presentation(
                &type_a(4),
            ))
        })
    });
}

fn bench_coherence(c: &mut Criterion) {
    let cp = column_presentation(4);
    let mut group = c.benchmark_group("coherence 4 letters");
    group.sample_size(10);
    group.bench_function("direct", |b| {
        b.iter_batched(
            || cp.clone(),
            |cp| black_box(cohere_direct(&cp, Strategy::Leftmost, 10_000).unwrap()),
            BatchSize::LargeInput,
        )
    });
    group.bench_function("via highest weight", |b| {
        b.iter_batched(
            || cp.clone(),
            |cp| black_box(cohere_via_hw(&cp, Strategy::Leftmost, 10_000).unwrap()),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_word_ops,
    bench_equiv,
    bench_build,
    bench_coherence
);
criterion_main!(benches);
