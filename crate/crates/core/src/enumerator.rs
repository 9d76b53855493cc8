//! Exact weight enumeration of symplectic codes, stabilizer minimum
//! distance, the MacWilliams identity, and the GF(4) view for `p = 2`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfp::Prime;
use crate::matfp::FpMatrix;
use crate::symplectic::{symp_dual, symplectic_weight, SymplecticCode};

/// Default cap on the number of codewords visited by one enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// `coeffs[w]` counts codewords of symplectic weight `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    coeffs: Vec<u64>,
}

impl WeightEnumerator {
    pub fn new(coeffs: Vec<u64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "enumerator needs n + 1 >= 1 coefficients"
        );
        WeightEnumerator { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn total(&self) -> u128 {
        self.coeffs.iter().map(|&c| c as u128).sum()
    }

    /// Smallest non-zero weight with a non-zero count.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&w| self.coeffs[w] != 0)
    }
}

/// Homogeneous polynomial `Σ A_w x^{n−w} y^w`, e.g.
/// `x^7 + 21*x^3*y^4 + 42*x*y^6`. A pure power keeps its exponent
/// (`x^1`, `3*y^1`); inside a mixed monomial an exponent of one is dropped.
impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut terms = Vec::new();
        for (w, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (ex, ey) = (n - w, w);
            let monomial = match (ex, ey) {
                (0, 0) => String::new(),
                (_, 0) => format!("x^{ex}"),
                (0, _) => format!("y^{ey}"),
                _ => {
                    let part = |v: &str, e: usize| {
                        if e == 1 {
                            v.to_string()
                        } else {
                            format!("{v}^{e}")
                        }
                    };
                    format!("{}*{}", part("x", ex), part("y", ey))
                }
            };
            terms.push(match (c, monomial.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => monomial,
                (_, false) => format!("{c}*{monomial}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

fn check_budget(p: u32, dim: usize, budget: u64) -> Result<()> {
    let required = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Walks all `p^dim` coefficient vectors in modular p-ary Gray order,
/// calling `step(j)` each time the current vector gains one more copy of
/// unit vector `j`. Consecutive vectors differ in one coordinate.
pub fn gray_walk<F: FnMut(usize)>(p: Prime, dim: usize, budget: u64, mut step: F) -> Result<()> {
    check_budget(p.get(), dim, budget)?;
    let mut counter = vec![0u32; dim];
    let total = (p.get() as u64).pow(dim as u32);
    for _ in 1..total {
        // The changing digit is the first counter digit that does not wrap.
        let mut j = 0;
        while counter[j] == p.get() - 1 {
            counter[j] = 0;
            j += 1;
        }
        counter[j] += 1;
        step(j);
    }
    Ok(())
}

/// Visits every vector of the row space of `gen` (independent rows) exactly
/// once, adding one generator row per step.
pub fn for_each_codeword<F: FnMut(&[u32])>(
    gen: &FpMatrix,
    budget: u64,
    mut visit: F,
) -> Result<()> {
    let p = gen.modulus();
    check_budget(p.get(), gen.rows(), budget)?;
    let mut word = vec![0u32; gen.cols()];
    visit(&word);
    gray_walk(p, gen.rows(), budget, |j| {
        for (w, &g) in word.iter_mut().zip(gen.row(j)) {
            *w = p.add(*w, g);
        }
        visit(&word);
    })
}

/// Histogram of symplectic weights over all `p^dim` codewords.
pub fn weight_distribution(c: &SymplecticCode, budget: u64) -> Result<WeightEnumerator> {
    let mut coeffs = vec![0u64; c.n() + 1];
    for_each_codeword(c.generator(), budget, |w| coeffs[symplectic_weight(w)] += 1)?;
    Ok(WeightEnumerator::new(coeffs))
}

/// Minimum symplectic weight of `C^⊥ \ C`, or of `C \ {0}` when `C` is
/// self-dual.
pub fn min_distance(c: &SymplecticCode, budget: u64) -> Result<usize> {
    c.check_self_orthogonal()?;
    if c.dim() == c.n() {
        return weight_distribution(c, budget)?
            .min_nonzero_weight()
            .ok_or_else(|| Error::Internal("self-dual code without non-zero words".into()));
    }
    let dual = symp_dual(c);
    let mut best = usize::MAX;
    for_each_codeword(dual.generator(), budget, |w| {
        let wt = symplectic_weight(w);
        if wt > 0 && wt < best && !c.contains(w) {
            best = wt;
        }
    })?;
    if best == usize::MAX {
        return Err(Error::Internal("dual equals code for dim < n".into()));
    }
    Ok(best)
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Krawtchouk polynomial `K_j(x)` for length `n` over an alphabet of size `q`.
pub fn krawtchouk(n: usize, q: i128, j: usize, x: usize) -> i128 {
    (0..=j)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * (q - 1).pow((j - s) as u32) * binomial(x, s) * binomial(n - x, j - s)
        })
        .sum()
}

/// Enumerator of the symplectic dual from the enumerator of a code of size
/// `p^dim`, with alphabet size `p²` per coordinate.
pub fn macwilliams_dual(
    w: &WeightEnumerator,
    n: usize,
    p: u32,
    dim: usize,
) -> Result<WeightEnumerator> {
    if w.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "enumerator of length {} for n = {n}",
            w.n()
        )));
    }
    let q = (p as i128) * (p as i128);
    let size = (p as i128).pow(dim as u32);
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let sum: i128 = w
            .coeffs()
            .iter()
            .enumerate()
            .map(|(x, &a)| a as i128 * krawtchouk(n, q, j, x))
            .sum();
        if sum % size != 0 || sum < 0 {
            return Err(Error::InconsistentEnumerator(j));
        }
        coeffs.push((sum / size) as u64);
    }
    Ok(WeightEnumerator::new(coeffs))
}

/// Element `x + α·z` of GF(4) with `α² = α + 1`, stored as the bit pair
/// `x | z << 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const ALPHA: Gf4 = Gf4(2);
    pub const ALPHA_SQ: Gf4 = Gf4(3);

    pub fn from_pair(x: u32, z: u32) -> Self {
        Gf4(((x & 1) | ((z & 1) << 1)) as u8)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn inv(self) -> Option<Gf4> {
        match self.0 {
            0 => None,
            1 => Some(Gf4::ONE),
            2 => Some(Gf4::ALPHA_SQ),
            _ => Some(Gf4::ALPHA),
        }
    }
}

impl std::ops::Add for Gf4 {
    type Output = Gf4;

    // Characteristic 2: addition is XOR of the coordinate bits.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, other: Gf4) -> Gf4 {
        Gf4(self.0 ^ other.0)
    }
}

impl std::ops::Mul for Gf4 {
    type Output = Gf4;

    fn mul(self, other: Gf4) -> Gf4 {
        // Powers of α: 1 = α^0, α = α^1, α² = α + 1.
        const LOG: [u8; 4] = [0, 0, 1, 2];
        const EXP: [u8; 3] = [1, 2, 3];
        if self.0 == 0 || other.0 == 0 {
            return Gf4::ZERO;
        }
        Gf4(EXP[((LOG[self.0 as usize] + LOG[other.0 as usize]) % 3) as usize])
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "a",
            _ => "a^2",
        })
    }
}

/// Maps each row `(x | z)` of a binary generator matrix to `x + α·z`.
pub fn to_gf4_matrix(gen: &FpMatrix) -> Result<Vec<Vec<Gf4>>> {
    let p = gen.modulus().get();
    if p != 2 {
        return Err(Error::WrongCharacteristic(p));
    }
    let n = gen.cols() / 2;
    Ok((0..gen.rows())
        .map(|r| {
            let row = gen.row(r);
            (0..n).map(|i| Gf4::from_pair(row[i], row[n + i])).collect()
        })
        .collect())
}

pub fn to_gf4(c: &SymplecticCode) -> Result<Vec<Vec<Gf4>>> {
    to_gf4_matrix(c.generator())
}

/// Rank over GF(4) (the code is GF(4)-linear only if it equals the
/// additive rank divided by two).
pub fn gf4_rank(rows: &[Vec<Gf4>]) -> usize {
    let mut m: Vec<Vec<Gf4>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inv().expect("non-zero pivot");
        let pivot_row: Vec<Gf4> = m[rank].iter().map(|&v| v * inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = *v + f * pv;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}
