use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use kneser_bench::kneser_fixture;
use kneser_core::container::{build_container, OrderedGraph, VertexOrdering};
use kneser_core::kneser::{alpha_exact, disjoint_pairs, DEFAULT_SOLVER_CAP};
use kneser_core::mis;
use kneser_core::randomsim::{sample_kp, y_count, KneserSkeleton, DEFAULT_VERTEX_CAP};
use kneser_core::sample::{gnp_adjacency, greedy_independent_set, random_family};
use kneser_core::setfam::unrank;
use kneser_core::shadow::shadow_exact;
use kneser_core::KneserParams;

fn bench_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("mis");
    for (n, r) in [(7u32, 3u32), (9, 3), (10, 4)] {
        let g = kneser_fixture(n, r);
        group.bench_function(format!("alpha K({n},{r})"), |b| {
            b.iter(|| alpha_exact(black_box(&g), DEFAULT_SOLVER_CAP).unwrap().0)
        });
    }
    let sparse = gnp_adjacency(40, 0.2, 1);
    group.bench_function("alpha G(40,0.2)", |b| {
        b.iter(|| mis::max_independent_set(black_box(&sparse)).0)
    });
    group.finish();
}

fn bench_trials(c: &mut Criterion) {
    let params = KneserParams::new(7, 3).unwrap();
    let skeleton = KneserSkeleton::new(params, DEFAULT_VERTEX_CAP).unwrap();
    let mut group = c.benchmark_group("trial");
    for p in [0.3, 0.8] {
        group.bench_function(format!("sample+alpha (7,3) p={p}"), |b| {
            let mut seed = 0u64;
            b.iter(|| {
                seed = seed.wrapping_add(1);
                let g = sample_kp(&skeleton, p, seed).unwrap();
                mis::max_independent_set(g.adjacency()).0
            })
        });
    }
    group.bench_function("y_count (7,3) p=0.5", |b| {
        let g = sample_kp(&skeleton, 0.5, 7).unwrap();
        b.iter(|| y_count(black_box(&g)))
    });
    group.finish();
}

fn bench_container(c: &mut Criterion) {
    let mut group = c.benchmark_group("container");
    let adj = gnp_adjacency(200, 0.1, 3);
    let g = OrderedGraph::new(adj, VertexOrdering::Identity);
    let u = greedy_independent_set(g.adjacency());
    let a = g.mu(&u);
    let b_param = BigRational::new(BigInt::from(1), BigInt::from(3));
    group.bench_function("build G(200,0.1) greedy-U", |bch| {
        bch.iter(|| build_container(black_box(&g), &u, &a, &b_param).unwrap())
    });
    group.finish();
}

fn bench_setfam(c: &mut Criterion) {
    let mut group = c.benchmark_group("setfam");
    group.bench_function("unrank+rank (20,10)", |b| {
        let mut i = 0u64;
        b.iter(|| {
            i = (i + 7919) % 184_756;
            unrank(i, 20, 10).unwrap().rank()
        })
    });
    let fam = random_family(9, 3, 60, 5);
    group.bench_function("disjoint_pairs 60-member family", |b| {
        b.iter(|| disjoint_pairs(black_box(&fam)))
    });
    let fam = random_family(10, 5, 100, 9);
    group.bench_function("shadow (10,5)->4 of 100 members", |b| {
        b.iter(|| shadow_exact(black_box(&fam), 4).unwrap().len())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_solver,
    bench_trials,
    bench_container,
    bench_setfam
);
criterion_main!(benches);
