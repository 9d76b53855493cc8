use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use graphstab_core::random::{random_self_orthogonal_code, random_valid_graph};
use graphstab_core::{
    build_code_state, catalog, rref, stabilizer_to_graph, weight_distribution, FpMatrix, Prime,
    DEFAULT_BUDGET, DEFAULT_ORACLE_BUDGET,
};

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, size) in [(2, 64), (3, 64), (251, 64), (2, 256)] {
        let code = random_self_orthogonal_code(&mut rng, prime(p), size / 2, size / 2);
        let mut m = code.generator().clone();
        // Pad with dependent rows so elimination has work to discard.
        for r in 0..m.rows() {
            let row = m.row(r).to_vec();
            m.push_row(&row);
        }
        group.bench_with_input(
            BenchmarkId::new(format!("p{p}"), size),
            &m,
            |b, m: &FpMatrix| b.iter(|| rref(black_box(m))),
        );
    }
    group.finish();
}

fn bench_weight_distribution(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_distribution");
    group.bench_function("steane", |b| {
        let code = catalog::steane_code();
        b.iter(|| weight_distribution(black_box(&code), DEFAULT_BUDGET).unwrap())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (p, n) in [(2, 12), (3, 8)] {
        let code = loop {
            let c = random_self_orthogonal_code(&mut rng, prime(p), n, n);
            if c.dim() == n {
                break c;
            }
        };
        group.bench_function(format!("p{p}_n{n}"), |b| {
            b.iter(|| weight_distribution(black_box(&code), DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn bench_stabilizer_to_graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilizer_to_graph");
    group.bench_function("steane", |b| {
        let code = catalog::steane_code();
        b.iter(|| stabilizer_to_graph(black_box(&code)).unwrap())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, n) in [(2, 32), (5, 32)] {
        let code = random_self_orthogonal_code(&mut rng, prime(p), n, n);
        group.bench_function(format!("p{p}_n{n}"), |b| {
            b.iter(|| stabilizer_to_graph(black_box(&code)).unwrap())
        });
    }
    group.finish();
}

fn bench_build_code_state(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_code_state");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (p, k, n) in [(2, 1, 10), (3, 2, 6), (5, 1, 5)] {
        let g = random_valid_graph(&mut rng, prime(p), k, n);
        let x = vec![1; k];
        group.bench_function(format!("p{p}_k{k}_n{n}"), |b| {
            b.iter(|| build_code_state(black_box(&g), &x, DEFAULT_ORACLE_BUDGET).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_rref,
    bench_weight_distribution,
    bench_stabilizer_to_graph,
    bench_build_code_state
);
criterion_main!(benches);
