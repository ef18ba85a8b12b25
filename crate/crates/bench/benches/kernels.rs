use atomlab_bench::{blowup, ca_board, ek, summand_union};
use atomlab_core::blur::{check_blur, term_approx_elements};
use atomlab_core::cylindric::{check_amalgamation, check_term_inequality, enumerate_basic_matrices, TermInequality};
use atomlab_core::games::{solve_ca_game, solve_triangle_game};
use atomlab_core::graphs::{certify, ramsey_exhaustive, DEFAULT_CHI_LIMIT};
use atomlab_core::ra::{find_embedding_into, ComplexAlgebra};
use atomlab_core::symsets::{additivity_gap_witness, rx_structure_demo};
use atomlab_core::{BlurParams, GameConfig, Graph, Variant};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn blur(c: &mut Criterion) {
    let mut g = c.benchmark_group("blur");
    for (l, k) in [(3, 9), (5, 25)] {
        let m = ek(k);
        let params = BlurParams::new(3, l, k).unwrap();
        g.bench_with_input(BenchmarkId::new("check", format!("3,{l},{k}")), &params, |b, p| {
            b.iter(|| check_blur(black_box(&m), p).unwrap())
        });
    }
    g.finish();
}

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis");
    for k in [5, 15, 25] {
        let s = ek(k);
        g.bench_with_input(BenchmarkId::new("enumerate", k), &s, |b, s| {
            b.iter(|| enumerate_basic_matrices(s, 3).unwrap())
        });
        let set = enumerate_basic_matrices(&s, 3).unwrap();
        g.bench_with_input(BenchmarkId::new("amalgamation", k), &set, |b, set| {
            b.iter(|| check_amalgamation(set).unwrap())
        });
    }
    g.finish();
}

fn games(c: &mut Criterion) {
    let mut g = c.benchmark_group("games");
    g.sample_size(10);
    let s = ek(3);
    for rounds in [2, 3] {
        let cfg = GameConfig::new(Variant::Triangle, rounds);
        g.bench_with_input(BenchmarkId::new("triangle_ek3", rounds), &cfg, |b, cfg| {
            b.iter(|| solve_triangle_game(&s, cfg).unwrap())
        });
    }
    let cfg = GameConfig::new(Variant::Pebble, 3).budget(4);
    g.bench_function("pebble_ek3_r3_k4", |b| b.iter(|| solve_triangle_game(&s, &cfg).unwrap()));
    let ca = ca_board(2);
    let cfg = GameConfig::new(Variant::Ca, 2);
    g.bench_function("ca_ek2_r2", |b| b.iter(|| solve_ca_game(&ca, &cfg).unwrap()));
    g.finish();
}

fn embedding(c: &mut Criterion) {
    let mut g = c.benchmark_group("embedding");
    let m = ek(3);
    let blown = blowup(3, 2, 4);
    let family = term_approx_elements(&blown);
    g.bench_function("cm_3_2_4", |b| b.iter(|| find_embedding_into(&m, &blown.structure, &ComplexAlgebra)));
    g.bench_function("term_approx_3_2_4", |b| b.iter(|| find_embedding_into(&m, &blown.structure, &family)));
    g.finish();
}

fn terms(c: &mut Criterion) {
    c.bench_function("terms/tau4le_exhaustive_2_4", |b| {
        b.iter(|| check_term_inequality(TermInequality::Tau4Le, 2, 4, None, 0).unwrap())
    });
}

fn graphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("graphs");
    let grotzsch = Graph::cycle(5).mycielski();
    g.bench_function("certify_grotzsch", |b| b.iter(|| certify(&grotzsch, DEFAULT_CHI_LIMIT).unwrap()));
    g.bench_function("certify_petersen", |b| b.iter(|| certify(&Graph::petersen(), DEFAULT_CHI_LIMIT).unwrap()));
    g.bench_function("ramsey_k6", |b| b.iter(|| ramsey_exhaustive(6).unwrap()));
    g.finish();
}

fn symsets(c: &mut Criterion) {
    let mut g = c.benchmark_group("symsets");
    for j in [8, 32] {
        let candidate = summand_union(j);
        g.bench_with_input(BenchmarkId::new("gap_witness", j), &candidate, |b, x| {
            b.iter(|| additivity_gap_witness(64, x).unwrap())
        });
    }
    g.bench_function("rx_demo_8", |b| b.iter(|| rx_structure_demo(8).unwrap()));
    g.finish();
}

criterion_group!(benches, blur, basis, games, embedding, terms, graphs, symsets);
criterion_main!(benches);
