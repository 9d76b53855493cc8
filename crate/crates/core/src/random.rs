//! Random instances for property tests and benchmarks.
//!
//! The conversion pipeline itself is deterministic; nothing here is used by
//! it.

use rand::seq::SliceRandom;
use rand::{Rng, RngExt};

use crate::gfp::Prime;
use crate::graphcode::GraphCode;
use crate::matfp::FpMatrix;
use crate::symplectic::{symp_dual, IsometryTranscript, Move, SymplecticCode};

fn random_vec<R: Rng + ?Sized>(rng: &mut R, p: Prime, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.random_range(0..p.get())).collect()
}

/// A self-orthogonal code of length `n` and dimension chosen uniformly in
/// `0..=max_dim.min(n)`, grown one random dual vector at a time.
pub fn random_self_orthogonal_code<R: Rng + ?Sized>(
    rng: &mut R,
    p: Prime,
    n: usize,
    max_dim: usize,
) -> SymplecticCode {
    let target = rng.random_range(0..=max_dim.min(n));
    let mut code = SymplecticCode::zero(p, n);
    while code.dim() < target {
        let dual = symp_dual(&code);
        let coeffs = random_vec(rng, p, dual.dim());
        let v = dual.generator().vec_mul(&coeffs).expect("matching length");
        if code.contains(&v) {
            continue;
        }
        let mut spanning = code.generator().clone();
        spanning.push_row(&v);
        code = SymplecticCode::new(n, &spanning).expect("valid shape");
    }
    code
}

/// `len` random column moves: coordinate shuffles and local `SL_2(p)`
/// transformations.
pub fn random_transcript<R: Rng + ?Sized>(
    rng: &mut R,
    p: Prime,
    n: usize,
    len: usize,
) -> IsometryTranscript {
    let mut t = IsometryTranscript::new(p, n);
    while t.len() < len {
        let mv = if rng.random_bool(0.3) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            Move::ColPerm(perm)
        } else {
            let alpha = rng.random_range(0..p.get());
            let beta = rng.random_range(0..p.get());
            let gamma = rng.random_range(0..p.get());
            let Some(alpha_inv) = p.inv(alpha) else {
                continue;
            };
            let delta = p.mul(p.add(1, p.mul(beta, gamma)), alpha_inv);
            Move::LocalSp {
                coord: rng.random_range(0..n),
                matrix: [alpha, beta, gamma, delta],
            }
        };
        t.push(mv).expect("generated moves are valid");
    }
    t
}

/// A random symmetric `n × n` matrix with zero diagonal.
pub fn random_symmetric_zero_diag<R: Rng + ?Sized>(rng: &mut R, p: Prime, n: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(p, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.random_range(0..p.get());
            m.set(i, j, w);
            m.set(j, i, w);
        }
    }
    m
}

/// A graph with `rank B = k` (requires `k ≤ n`).
pub fn random_valid_graph<R: Rng + ?Sized>(rng: &mut R, p: Prime, k: usize, n: usize) -> GraphCode {
    assert!(k <= n, "need k <= n for a full-rank B");
    let b = loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| random_vec(rng, p, n)).collect();
        let b = FpMatrix::from_canonical_rows(p, n, &rows);
        if b.rank() == k {
            break b;
        }
    };
    GraphCode::from_blocks(&b, &random_symmetric_zero_diag(rng, p, n)).expect("matching blocks")
}
