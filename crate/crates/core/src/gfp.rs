//! Prime-field arithmetic and the flattening of extension-field alphabets.
//!
//! Elements of `F_p` are stored as canonical representatives in `[0, p)`.
//! An extension field `F_{p^m}` is handled only through its polynomial basis
//! `{1, β, …, β^{m-1}}`: elements are coefficient vectors of length `m`, and a
//! symmetric non-degenerate matrix `M` over `F_p` (the [`ExtensionBasis`])
//! fixes the bicharacter `χ(h, g) = exp(2πi/p · hᵗ M g)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matfp::FpMatrix;

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u32 = 1 << 16;

/// A prime modulus `p < 2^16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 as u64 - 2))
        }
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`, always in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    modulus: Prime,
}

impl FpElem {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FpElem {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn zero(modulus: Prime) -> Self {
        FpElem { value: 0, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn same_modulus(a: FpElem, b: FpElem) -> Result<Prime> {
    if a.modulus != b.modulus {
        return Err(Error::ModulusMismatch {
            left: a.modulus.get(),
            right: b.modulus.get(),
        });
    }
    Ok(a.modulus)
}

pub fn fp_add(a: FpElem, b: FpElem) -> Result<FpElem> {
    let p = same_modulus(a, b)?;
    Ok(FpElem {
        value: p.add(a.value, b.value),
        modulus: p,
    })
}

pub fn fp_mul(a: FpElem, b: FpElem) -> Result<FpElem> {
    let p = same_modulus(a, b)?;
    Ok(FpElem {
        value: p.mul(a.value, b.value),
        modulus: p,
    })
}

pub fn fp_neg(a: FpElem) -> FpElem {
    FpElem {
        value: a.modulus.neg(a.value),
        modulus: a.modulus,
    }
}

pub fn fp_inv(a: FpElem) -> Result<FpElem> {
    let value = a.modulus.inv(a.value).ok_or(Error::ZeroInverse)?;
    Ok(FpElem {
        value,
        modulus: a.modulus,
    })
}

/// Polynomials over `F_p`, coefficients low to high, trailing zeros trimmed.
mod poly {
    use super::Prime;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(p: Prime, a: &[u32], b: &[u32]) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| p.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(out)
    }

    pub fn rem(p: Prime, a: &[u32], modulus: &[u32]) -> Vec<u32> {
        let modulus = trim(modulus.to_vec());
        let deg = modulus.len() - 1;
        let lead_inv = p.inv(modulus[deg]).expect("non-zero leading coefficient");
        let mut r = trim(a.to_vec());
        while r.len() > deg {
            let top = r.len() - 1;
            let factor = p.mul(r[top], lead_inv);
            let shift = top - deg;
            for (i, &c) in modulus.iter().enumerate() {
                r[shift + i] = p.sub(r[shift + i], p.mul(factor, c));
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod(p: Prime, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = p.add(out[i + j], p.mul(x, y));
            }
        }
        rem(p, &out, modulus)
    }

    pub fn powmod(p: Prime, base: &[u32], mut exp: u64, modulus: &[u32]) -> Vec<u32> {
        let mut acc = rem(p, &[1], modulus);
        let mut base = rem(p, base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(p, &acc, &base, modulus);
            }
            base = mulmod(p, &base, &base, modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(p: Prime, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(p, &a, &b);
            a = b;
            b = r;
        }
        a
    }
}

/// The field `F_{p^m} = F_p[β]/(f)` for a monic irreducible `f` of degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    p: Prime,
    /// Monic defining polynomial, coefficients low to high, length `m + 1`.
    poly: Vec<u32>,
}

impl ExtField {
    /// Builds the field from the coefficients of its defining polynomial
    /// (low to high). The polynomial is made monic first.
    pub fn new(p: Prime, field_def: &[i64]) -> Result<Self> {
        let coeffs = poly::trim(field_def.iter().map(|&c| p.reduce(c)).collect());
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial(
                "field polynomial must have degree at least 1".into(),
            ));
        }
        let lead_inv = p.inv(*coeffs.last().unwrap()).unwrap();
        let monic: Vec<u32> = coeffs.iter().map(|&c| p.mul(c, lead_inv)).collect();
        if !is_irreducible(p, &monic) {
            return Err(Error::ReduciblePolynomial { p: p.get() });
        }
        Ok(ExtField { p, poly: monic })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Reduces an arbitrary coefficient vector to the canonical length-`m` form.
    pub fn reduce(&self, a: &[u32]) -> Vec<u32> {
        let mut r = poly::rem(self.p, a, &self.poly);
        r.resize(self.degree(), 0);
        r
    }

    /// The basis element `β^i`.
    pub fn basis_element(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        self.reduce(&e)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.p.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = poly::mulmod(self.p, a, b, &self.poly);
        r.resize(self.degree(), 0);
        r
    }

    pub fn pow(&self, a: &[u32], exp: u64) -> Vec<u32> {
        let mut r = poly::powmod(self.p, a, exp, &self.poly);
        r.resize(self.degree(), 0);
        r
    }

    /// Absolute trace `Tr(a) = Σ_{t<m} a^{p^t}`, an element of `F_p`.
    pub fn trace(&self, a: &[u32]) -> u32 {
        let mut acc = vec![0u32; self.degree()];
        let mut conj = self.reduce(a);
        for _ in 0..self.degree() {
            acc = self.add(&acc, &conj);
            conj = self.pow(&conj, self.p.get() as u64);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace outside F_p");
        acc[0]
    }

    /// Gram matrix of the trace form `Tr(β_i β_j)` on the polynomial basis.
    pub fn trace_gram(&self) -> Result<ExtensionBasis> {
        let m = self.degree();
        let basis: Vec<Vec<u32>> = (0..m).map(|i| self.basis_element(i)).collect();
        let mut gram = FpMatrix::zeros(self.p, m, m);
        for i in 0..m {
            for j in 0..m {
                gram.set(i, j, self.trace(&self.mul(&basis[i], &basis[j])));
            }
        }
        ExtensionBasis::new(gram)
    }
}

/// Rabin's test: `f` (monic, degree `m`) is irreducible iff `x^{p^m} ≡ x`
/// mod `f` and `gcd(x^{p^{m/r}} - x, f) = 1` for every prime `r | m`.
fn is_irreducible(p: Prime, monic: &[u32]) -> bool {
    let m = monic.len() - 1;
    if m == 1 {
        return true;
    }
    let x = [0u32, 1];
    // x^{p^e} mod f, by repeated Frobenius.
    let frobenius_power = |e: usize| {
        let mut r = poly::rem(p, &x, monic);
        for _ in 0..e {
            r = poly::powmod(p, &r, p.get() as u64, monic);
        }
        r
    };
    let full = frobenius_power(m);
    if poly::sub(p, &full, &poly::rem(p, &x, monic)) != Vec::<u32>::new() {
        return false;
    }
    let mut rest = m;
    let mut r = 2;
    while rest > 1 {
        if rest.is_multiple_of(r) {
            while rest.is_multiple_of(r) {
                rest /= r;
            }
            let h = poly::sub(p, &frobenius_power(m / r), &x);
            if poly::gcd(p, &h, monic).len() != 1 {
                return false;
            }
        }
        r += 1;
    }
    true
}

/// The symmetric non-degenerate matrix `M` defining the bicharacter on
/// `F_p^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionBasis {
    gram: FpMatrix,
}

impl ExtensionBasis {
    pub fn new(gram: FpMatrix) -> Result<Self> {
        let m = gram.rows();
        if gram.cols() != m || m == 0 {
            return Err(Error::DimensionMismatch(format!(
                "bicharacter matrix must be square and non-empty, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if gram != gram.transpose() {
            return Err(Error::AsymmetricForm);
        }
        let rank = gram.rank();
        if rank < m {
            return Err(Error::DegenerateForm { rank, m });
        }
        Ok(ExtensionBasis { gram })
    }

    /// The prime-field case `m = 1`, `M = [1]`.
    pub fn prime_field(p: Prime) -> Self {
        ExtensionBasis {
            gram: FpMatrix::identity(p, 1),
        }
    }

    pub fn prime(&self) -> Prime {
        self.gram.modulus()
    }

    pub fn degree(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    /// `b(h, g) = hᵗ M g` for coefficient vectors of length `m`.
    pub fn form(&self, h: &[u32], g: &[u32]) -> u32 {
        let p = self.prime();
        let mut acc = 0;
        for i in 0..self.degree() {
            for j in 0..self.degree() {
                acc = p.add(acc, p.mul(h[i], p.mul(self.gram.get(i, j), g[j])));
            }
        }
        acc
    }
}

/// Default basis: trace form of `F_p[β]/(field_def)`.
pub fn trace_gram(p: Prime, m: usize, field_def: &[i64]) -> Result<ExtensionBasis> {
    let field = ExtField::new(p, field_def)?;
    if field.degree() != m {
        return Err(Error::InvalidPolynomial(format!(
            "polynomial has degree {}, expected {m}",
            field.degree()
        )));
    }
    field.trace_gram()
}

/// Expands each `F_{p^m}` coordinate into its `m` basis coefficients.
pub fn flatten_vector(v: &[Vec<u32>], basis: &ExtensionBasis) -> Result<Vec<u32>> {
    let m = basis.degree();
    let p = basis.prime().get();
    let mut out = Vec::with_capacity(v.len() * m);
    for (i, coord) in v.iter().enumerate() {
        if coord.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "coordinate {i} has {} coefficients, expected {m}",
                coord.len()
            )));
        }
        if let Some(&bad) = coord.iter().find(|&&c| c >= p) {
            return Err(Error::ModulusMismatch {
                left: bad,
                right: p,
            });
        }
        out.extend_from_slice(coord);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: i64, p: u32) -> FpElem {
        FpElem::new(v, Prime::new(p).unwrap())
    }

    #[test]
    fn prime_construction() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(65521).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(65537), Err(Error::ModulusTooLarge(65537)));
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(fp_add(el(3, 5), el(4, 5)).unwrap().value(), 2);
        assert_eq!(fp_inv(el(3, 7)).unwrap().value(), 5);
        assert_eq!(fp_neg(el(1, 2)).value(), 1);
        assert_eq!(el(-1, 7).value(), 6);
    }

    #[test]
    fn scalar_errors() {
        assert_eq!(fp_inv(el(0, 7)), Err(Error::ZeroInverse));
        assert_eq!(
            fp_mul(el(1, 5), el(1, 7)),
            Err(Error::ModulusMismatch { left: 5, right: 7 })
        );
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let pr = Prime::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    let (x, y) = (el(a as i64, p), el(b as i64, p));
                    assert_eq!(fp_add(x, y), fp_add(y, x));
                    assert_eq!(fp_mul(x, y), fp_mul(y, x));
                    for c in 0..p {
                        let z = el(c as i64, p);
                        let l = fp_add(fp_add(x, y).unwrap(), z).unwrap();
                        let r = fp_add(x, fp_add(y, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                        let l = fp_mul(fp_mul(x, y).unwrap(), z).unwrap();
                        let r = fp_mul(x, fp_mul(y, z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
                if a != 0 {
                    let inv = fp_inv(el(a as i64, p)).unwrap();
                    assert_eq!(pr.mul(a, inv.value()), 1);
                }
            }
        }
    }

    /// Exhaustive search for a monic factor of degree <= m/2.
    fn has_small_factor(p: Prime, f: &[u32]) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            let count = (p.get() as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut rest = idx;
                for _ in 0..d {
                    g.push((rest % p.get() as u64) as u32);
                    rest /= p.get() as u64;
                }
                g.push(1);
                if poly::rem(p, f, &g).is_empty() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn irreducibility_matches_exhaustive_factor_search() {
        for p in [2u32, 3, 5] {
            let pr = Prime::new(p).unwrap();
            for m in 1..=4usize {
                let count = (p as u64).pow(m as u32);
                for idx in 0..count {
                    let mut f = Vec::new();
                    let mut rest = idx;
                    for _ in 0..m {
                        f.push((rest % p as u64) as u32);
                        rest /= p as u64;
                    }
                    f.push(1);
                    assert_eq!(
                        is_irreducible(pr, &f),
                        !has_small_factor(pr, &f),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn trace_gram_examples() {
        let p2 = Prime::new(2).unwrap();
        let p3 = Prime::new(3).unwrap();
        assert_eq!(
            trace_gram(p2, 1, &[0, 1]).unwrap().gram().to_rows(),
            vec![vec![1]]
        );
        assert_eq!(
            trace_gram(p3, 1, &[0, 1]).unwrap().gram().to_rows(),
            vec![vec![1]]
        );
        assert_eq!(
            trace_gram(p2, 2, &[1, 1, 1]).unwrap().gram().to_rows(),
            vec![vec![0, 1], vec![1, 1]]
        );
        assert_eq!(
            trace_gram(p2, 2, &[1, 0, 1]),
            Err(Error::ReduciblePolynomial { p: 2 })
        );
    }

    /// Trace computed as the trace of the multiplication-by-`a` matrix.
    fn trace_via_matrix(field: &ExtField, a: &[u32]) -> u32 {
        let p = field.prime();
        let mut t = 0;
        for i in 0..field.degree() {
            let col = field.mul(a, &field.basis_element(i));
            t = p.add(t, col[i]);
        }
        t
    }

    #[test]
    fn trace_gram_symmetric_nondegenerate_and_matches_matrix_trace() {
        let cases: &[(u32, &[i64])] = &[
            (2, &[1, 1, 1]),
            (2, &[1, 1, 0, 1]),
            (2, &[1, 1, 0, 0, 1]),
            (3, &[1, 0, 1]),
            (3, &[1, 2, 0, 1]),
            (5, &[2, 0, 1]),
            (3, &[2, 0, 0, 1, 1]),
        ];
        for &(p, def) in cases {
            let field = ExtField::new(Prime::new(p).unwrap(), def).unwrap();
            let basis = field.trace_gram().unwrap();
            let m = field.degree();
            for i in 0..m {
                for j in 0..m {
                    let prod = field.mul(&field.basis_element(i), &field.basis_element(j));
                    assert_eq!(basis.gram().get(i, j), trace_via_matrix(&field, &prod));
                }
            }
        }
    }

    #[test]
    fn flatten_examples() {
        let p2 = Prime::new(2).unwrap();
        let field = ExtField::new(p2, &[1, 1, 1]).unwrap();
        let basis = field.trace_gram().unwrap();
        let alpha = field.basis_element(1);
        assert_eq!(
            flatten_vector(std::slice::from_ref(&alpha), &basis).unwrap(),
            vec![0, 1]
        );
        let alpha_sq = field.mul(&alpha, &alpha);
        assert_eq!(
            flatten_vector(&[vec![1, 0], alpha_sq], &basis).unwrap(),
            vec![1, 0, 1, 1]
        );
        let prime = ExtensionBasis::prime_field(Prime::new(5).unwrap());
        assert_eq!(
            flatten_vector(&[vec![3], vec![4]], &prime).unwrap(),
            vec![3, 4]
        );
        assert!(flatten_vector(&[vec![1]], &basis).is_err());
    }

    #[test]
    fn basis_rejects_degenerate_or_asymmetric() {
        let p = Prime::new(3).unwrap();
        let deg = FpMatrix::from_rows(p, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            ExtensionBasis::new(deg),
            Err(Error::DegenerateForm { rank: 1, m: 2 })
        );
        let asym = FpMatrix::from_rows(p, &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(ExtensionBasis::new(asym), Err(Error::AsymmetricForm));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn flatten_is_linear(
                u in proptest::collection::vec(0u32..2, 6),
                v in proptest::collection::vec(0u32..2, 6),
            ) {
                let field = ExtField::new(Prime::new(2).unwrap(), &[1, 1, 0, 1]).unwrap();
                let basis = field.trace_gram().unwrap();
                let pu: Vec<Vec<u32>> = u.chunks(3).map(|c| c.to_vec()).collect();
                let pv: Vec<Vec<u32>> = v.chunks(3).map(|c| c.to_vec()).collect();
                let sum: Vec<Vec<u32>> = pu.iter().zip(&pv).map(|(a, b)| field.add(a, b)).collect();
                let lhs = flatten_vector(&sum, &basis).unwrap();
                let rhs: Vec<u32> = flatten_vector(&pu, &basis).unwrap().iter()
                    .zip(flatten_vector(&pv, &basis).unwrap())
                    .map(|(a, b)| (a + b) % 2)
                    .collect();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
