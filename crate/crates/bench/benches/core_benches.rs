use criterion::{criterion_group, criterion_main, Criterion};
use domk_core::canon::canonical_form;
use domk_core::colouring::chromatic_number;
use domk_core::constructions;
use domk_core::graph6::{parse_graph6, to_graph6};
use domk_core::models::{find_dominating_model, OrderedClique, SearchMode};

fn model_search(c: &mut Criterion) {
    let g = constructions::k55_minus_matching();
    c.bench_function("find_model_k55_minus_matching_reduced", |b| {
        b.iter(|| {
            find_dominating_model(&g, 5, &OrderedClique::empty(), SearchMode::SingletonReduced)
                .unwrap()
        })
    });
    let join = constructions::join(
        &constructions::cycle(5).unwrap(),
        &constructions::complete(2),
    );
    c.bench_function("find_model_c5_join_k2_general", |b| {
        b.iter(|| {
            find_dominating_model(&join, 5, &OrderedClique::empty(), SearchMode::General).unwrap()
        })
    });
}

fn colouring(c: &mut Criterion) {
    let p = constructions::petersen();
    c.bench_function("chromatic_number_petersen", |b| {
        b.iter(|| chromatic_number(&p))
    });
}

fn canonicalisation(c: &mut Criterion) {
    let p = constructions::petersen();
    c.bench_function("canonical_form_petersen", |b| {
        b.iter(|| canonical_form(&p).unwrap())
    });
    c.bench_function("enumerate_k5_splits", |b| {
        b.iter(constructions::enumerate_k5_splits)
    });
}

fn graph6_roundtrip(c: &mut Criterion) {
    let graphs: Vec<String> = domk_core::catalog::all_graphs(6)
        .unwrap()
        .iter()
        .map(|g| to_graph6(g).unwrap())
        .collect();
    c.bench_function("graph6_roundtrip_catalog6", |b| {
        b.iter(|| {
            for line in &graphs {
                let g = parse_graph6(line).unwrap();
                assert_eq!(&to_graph6(&g).unwrap(), line);
            }
        })
    });
}

criterion_group!(
    benches,
    model_search,
    colouring,
    canonicalisation,
    graph6_roundtrip
);
criterion_main!(benches);
