use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use linmon_bench::{overlapping_sandwiches, presentation, BRAID, COLLAPSE, COMMUTATIVE, TWO_SANDWICHES};
use linmon_core::oracle::{enumerate_census, DEFAULT_WORD_BUDGET};
use linmon_core::{
    analyze, build_automaton, complete, disjointify, generating_series, infer_weights,
    AnalysisOptions,
};

fn weights(text: &str) -> Vec<u64> {
    infer_weights(&presentation(text)).weights().unwrap().to_vec()
}

fn bench_completion(c: &mut Criterion) {
    for (name, text, bound) in [
        ("complete/commutative", COMMUTATIVE, 8),
        ("complete/collapse", COLLAPSE, 12),
        ("complete/braid-truncated", BRAID, 12),
    ] {
        let p = presentation(text);
        let alphabet = p.alphabet(&weights(text)).unwrap();
        c.bench_function(name, |b| b.iter(|| complete(black_box(&p), &alphabet, bound)));
    }
}

fn bench_automaton(c: &mut Criterion) {
    let p = presentation(COMMUTATIVE);
    let alphabet = p.alphabet(&weights(COMMUTATIVE)).unwrap();
    let system = complete(&p, &alphabet, 8);
    let obstructions = system.obstruction_set().unwrap();
    let dfa = build_automaton(&obstructions, &alphabet);
    c.bench_function("automaton/build", |b| {
        b.iter(|| build_automaton(black_box(&obstructions), &alphabet))
    });
    c.bench_function("automaton/count-to-60", |b| b.iter(|| black_box(&dfa).count_words(60)));
    c.bench_function("automaton/series", |b| b.iter(|| generating_series(black_box(&dfa))));
}

fn bench_oracle(c: &mut Criterion) {
    let p = presentation(COLLAPSE);
    let w = weights(COLLAPSE);
    c.bench_function("oracle/collapse-degree-8", |b| {
        b.iter(|| enumerate_census(black_box(&p), &w, 8, DEFAULT_WORD_BUDGET).unwrap())
    });
}

fn bench_sandwiches(c: &mut Criterion) {
    let pieces = overlapping_sandwiches(12);
    c.bench_function("sandwich/disjointify-12", |b| b.iter(|| disjointify(black_box(&pieces))));
    let p = presentation(TWO_SANDWICHES);
    let opts = AnalysisOptions::default();
    c.bench_function("pipeline/analyze-two-sandwiches", |b| {
        b.iter(|| analyze(black_box(&p), &opts).unwrap())
    });
}

criterion_group!(benches, bench_completion, bench_automaton, bench_oracle, bench_sandwiches);
criterion_main!(benches);
