use std::hint::black_box;

use contextalg_bench::{aspect_model, scalar_language, universe};
use contextalg_core::algebra::{string_basis, AlgebraElement};
use contextalg_core::entailment::{degree_exact, degree_mc, sample_counts};
use contextalg_core::logic::{parse_formula, Formula, TruthTable};
use contextalg_core::projections::member_pairs;
use contextalg_core::semantics::sentence_vector;
use contextalg_core::{check_identities, McOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn logic(c: &mut Criterion) {
    let mut g = c.benchmark_group("logic");
    let f = parse_formula("(p0 | ~p1) & (p2 | p3) & ~(p4 & p5) | p6 & ~p7").unwrap();
    for n in [8usize, 14, 20] {
        let atoms: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        g.bench_with_input(BenchmarkId::new("truth_table", n), &atoms, |b, atoms| {
            b.iter(|| TruthTable::of(black_box(&f), atoms).unwrap())
        });
    }
    for cap in [32usize, 64] {
        g.bench_with_input(BenchmarkId::new("universe", cap), &cap, |b, cap| {
            b.iter(|| universe(3, *cap))
        });
    }
    let u = universe(3, 40);
    let pairs: Vec<(Formula, Formula)> = member_pairs(&u);
    g.bench_function("check_identities_40", |b| b.iter(|| check_identities(&u, &pairs).unwrap()));
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra");
    for (strings, len) in [(8usize, 4usize), (16, 6)] {
        let l = scalar_language(3, strings, len, 7);
        g.bench_with_input(BenchmarkId::new("basis", strings), &l, |b, l| {
            b.iter(|| string_basis(l).unwrap())
        });
        let basis = string_basis(&l).unwrap();
        let x = AlgebraElement::string(l.clone(), basis.strings()[1].clone()).unwrap();
        let y = AlgebraElement::string(l.clone(), basis.strings()[2].clone()).unwrap();
        g.bench_with_input(BenchmarkId::new("multiply", strings), &(x, y), |b, (x, y)| {
            b.iter(|| x.multiply(y).unwrap())
        });
    }
    g.finish();
}

fn semantics(c: &mut Criterion) {
    let mut g = c.benchmark_group("semantics");
    let m = aspect_model(4, 6, 11);
    for n in [1usize, 2, 3] {
        let sentence = &m.words[..n];
        g.bench_with_input(BenchmarkId::new("sentence_vector", n), sentence, |b, s| {
            b.iter(|| sentence_vector(s, &m.lexicon, &m.language).unwrap())
        });
    }
    g.finish();
}

fn entailment(c: &mut Criterion) {
    let mut g = c.benchmark_group("entailment");
    let m = aspect_model(4, 6, 11);
    let (x, y) = (&m.words[..2], &m.words[..1]);
    g.bench_function("degree_exact", |b| {
        b.iter(|| degree_exact(x, y, &m.lexicon, &m.language, &m.dist))
    });
    let opts = McOptions { samples: 50_000, seed: 42, threads: 1 };
    g.bench_function("degree_mc_50k", |b| {
        b.iter(|| degree_mc(x, y, &m.lexicon, &m.language, &m.dist, opts))
    });
    let probs = m.dist.probs().to_vec();
    for threads in [1usize, 4] {
        let opts = McOptions { samples: 200_000, seed: 42, threads };
        g.bench_with_input(BenchmarkId::new("sample_counts_200k", threads), &opts, |b, o| {
            b.iter(|| sample_counts(&probs, *o))
        });
    }
    g.finish();
}

criterion_group!(benches, logic, algebra, semantics, entailment);
criterion_main!(benches);
