//! Dense state-vector oracle for graph codes over `F_p`.
//!
//! Basis states `|y⟩`, `y ∈ F_p^n`, are indexed by the base-`p` number whose
//! most significant digit is coordinate 1 (`y[0]`).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::enumerator::gray_walk;
use crate::error::{Error, Result};
use crate::gfp::{ExtensionBasis, FpElem, Prime};
use crate::graphcode::{graph_to_stabilizer, quad_from_edges, GraphCode};

/// Default cap on `p^n` for materialized vectors.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 20;
/// Largest stabilizer group `check_projector` will sum over.
pub const MAX_GROUP_SIZE: u64 = 1 << 16;

pub const STABILIZER_TOLERANCE: f64 = 1e-10;
pub const PROJECTOR_TOLERANCE: f64 = 1e-9;
pub const GRAM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    p: Prime,
    n: usize,
    amps: Vec<Complex64>,
}

fn dimension(p: Prime, n: usize, budget: u64) -> Result<usize> {
    let required = (p.get() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::OracleBudgetExceeded { required, budget });
    }
    Ok(required as usize)
}

/// Powers of `ω = exp(2πi/p)`.
fn roots(p: Prime) -> Vec<Complex64> {
    (0..p.get())
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p.get() as f64))
        .collect()
}

/// Advances a base-`p` digit string (last digit least significant).
fn next_digits(p: Prime, digits: &mut [u32]) {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p.get() {
            return;
        }
        *d = 0;
    }
}

impl StateVector {
    pub fn from_amps(p: Prime, n: usize, amps: Vec<Complex64>) -> Result<Self> {
        let len = (p.get() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if amps.len() as u128 != len {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for p = {p}, n = {n}",
                amps.len()
            )));
        }
        Ok(StateVector { p, n, amps })
    }

    /// The basis state `|y⟩`.
    pub fn basis(p: Prime, y: &[u32], budget: u64) -> Result<Self> {
        let len = dimension(p, y.len(), budget)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[Self::index_of(p, y)] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            p,
            n: y.len(),
            amps,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn index_of(p: Prime, y: &[u32]) -> usize {
        y.iter().fold(0usize, |acc, &d| {
            acc * p.get() as usize + (d % p.get()) as usize
        })
    }

    pub fn digits_of(p: Prime, n: usize, mut index: usize) -> Vec<u32> {
        let mut y = vec![0u32; n];
        for d in y.iter_mut().rev() {
            *d = (index % p.get() as usize) as u32;
            index /= p.get() as usize;
        }
        y
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Max-norm of the difference.
    pub fn max_deviation(&self, other: &StateVector) -> Result<f64> {
        self.check_same_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_same_space(&self, other: &StateVector) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "states on (p = {}, n = {}) and (p = {}, n = {})",
                self.p, self.n, other.p, other.n
            )));
        }
        Ok(())
    }
}

/// `|x⟩ = p^{−n/2} Σ_y ζ(q(x ⊕ y)) |y⟩`. Only the structural graph
/// invariants are required, so rank-deficient graphs can be inspected.
pub fn build_code_state(g: &GraphCode, x: &[u32], budget: u64) -> Result<StateVector> {
    g.check_structure()?;
    let (p, k, n) = (g.prime(), g.k(), g.n());
    if x.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "input vector of length {} for k = {k}",
            x.len()
        )));
    }
    let len = dimension(p, n, budget)?;
    let omega = roots(p);
    let edges = g.edges();
    let scale = (len as f64).sqrt().recip();
    let mut v: Vec<u32> = x.iter().map(|&d| d % p.get()).collect();
    v.resize(k + n, 0);
    let mut amps = Vec::with_capacity(len);
    for _ in 0..len {
        amps.push(omega[quad_from_edges(p, &edges, &v) as usize] * scale);
        next_digits(p, &mut v[k..]);
    }
    Ok(StateVector { p, n, amps })
}

/// Image of the basis state `|y⟩` under `ω^γ X^a Z^d`: the new basis label
/// and the phase exponent.
pub fn error_on_basis(p: Prime, y: &[u32], a: &[u32], d: &[u32], gamma: u32) -> (Vec<u32>, u32) {
    let phase = y.iter().zip(d).fold(gamma % p.get(), |acc, (&yi, &di)| {
        p.add(acc, p.mul(yi, di % p.get()))
    });
    let moved = y
        .iter()
        .zip(a)
        .map(|(&yi, &ai)| p.add(yi, ai % p.get()))
        .collect();
    (moved, phase)
}

/// `ω^γ X^a Z^d s`, i.e. `amps′[y + a] = ω^{γ + d·y} amps[y]`.
pub fn apply_error(s: &StateVector, a: &[u32], d: &[u32], gamma: FpElem) -> Result<StateVector> {
    let (p, n) = (s.p, s.n);
    if a.len() != n || d.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "operator of length ({}, {}) on {n} systems",
            a.len(),
            d.len()
        )));
    }
    if gamma.modulus() != p {
        return Err(Error::ModulusMismatch {
            left: p.get(),
            right: gamma.modulus().get(),
        });
    }
    let omega = roots(p);
    let mut out = vec![Complex64::new(0.0, 0.0); s.amps.len()];
    let mut y = vec![0u32; n];
    for amp in &s.amps {
        let (moved, phase) = error_on_basis(p, &y, a, d, gamma.value());
        out[StateVector::index_of(p, &moved)] = omega[phase as usize] * amp;
        next_digits(p, &mut y);
    }
    Ok(StateVector { p, n, amps: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(c: Complex64) -> Self {
        ComplexValue { re: c.re, im: c.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerReport {
    pub generators: usize,
    pub states: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn code_states(g: &GraphCode, budget: u64) -> Result<Vec<StateVector>> {
    let p = g.prime();
    let count = dimension(p, g.k(), budget)?;
    let mut x = vec![0u32; g.k()];
    let mut states = Vec::with_capacity(count);
    for _ in 0..count {
        states.push(build_code_state(g, &x, budget)?);
        next_digits(p, &mut x);
    }
    Ok(states)
}

/// Applies every phased generator to every code basis state and reports the
/// largest deviation from the eigenvalue-one equation.
pub fn check_stabilizer(g: &GraphCode, budget: u64) -> Result<StabilizerReport> {
    let stab = graph_to_stabilizer(g)?;
    let states = code_states(g, budget)?;
    let mut max_deviation: f64 = 0.0;
    for gen in &stab.gens {
        for s in &states {
            let image = apply_error(s, &gen.vector.a, &gen.vector.d, gen.phase_exp)?;
            max_deviation = max_deviation.max(image.max_deviation(s)?);
        }
    }
    Ok(StabilizerReport {
        generators: stab.gens.len(),
        states: states.len(),
        max_deviation,
        tolerance: STABILIZER_TOLERANCE,
        passed: max_deviation < STABILIZER_TOLERANCE,
    })
}

/// A group element `ω^φ X^a Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct GroupElement {
    a: Vec<u32>,
    d: Vec<u32>,
    phase: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectorReport {
    pub group_size: usize,
    pub trace: ComplexValue,
    pub expected_trace: f64,
    pub trace_deviation: f64,
    pub max_fix_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Enumerates the stabilizer group by left-multiplying with one generator
/// per step. The phase of each product is read off from the generator's
/// action on the basis state `|a⟩` carried by the element, so no group
/// cocycle is used.
fn stabilizer_group(g: &GraphCode) -> Result<Vec<GroupElement>> {
    let p = g.prime();
    let n = g.n();
    let stab = graph_to_stabilizer(g)?;
    let size = (p.get() as u64).saturating_pow(stab.gens.len() as u32);
    if size > MAX_GROUP_SIZE {
        return Err(Error::OracleBudgetExceeded {
            required: size as u128,
            budget: MAX_GROUP_SIZE,
        });
    }
    let mut steps = Vec::with_capacity(size as usize);
    gray_walk(p, stab.gens.len(), MAX_GROUP_SIZE, |j| steps.push(j))?;

    let mut current = GroupElement {
        a: vec![0; n],
        d: vec![0; n],
        phase: 0,
    };
    let mut group = Vec::with_capacity(size as usize);
    group.push(current.clone());
    for j in steps {
        let gen = &stab.gens[j];
        // gen · ω^φ X^a Z^d maps |0⟩ to gen(ω^φ |a⟩).
        let (moved, phase) = error_on_basis(
            p,
            &current.a,
            &gen.vector.a,
            &gen.vector.d,
            gen.phase_exp.value(),
        );
        current = GroupElement {
            a: moved,
            d: current
                .d
                .iter()
                .zip(&gen.vector.d)
                .map(|(&x, &y)| p.add(x, y))
                .collect(),
            phase: p.add(current.phase, phase),
        };
        group.push(current.clone());
    }
    Ok(group)
}

/// Builds `P = |S|⁻¹ Σ_{M∈S} M` from the whole stabilizer group; checks
/// `tr P = p^k` and `P|x⟩ = |x⟩` on every code basis state.
pub fn check_projector(g: &GraphCode, budget: u64) -> Result<ProjectorReport> {
    let p = g.prime();
    let n = g.n();
    let len = dimension(p, n, budget)?;
    let group = stabilizer_group(g)?;
    let omega = roots(p);
    let weight = 1.0 / group.len() as f64;

    let mut trace = Complex64::new(0.0, 0.0);
    for m in group.iter().filter(|m| m.a.iter().all(|&x| x == 0)) {
        let mut y = vec![0u32; n];
        for _ in 0..len {
            let (moved, phase) = error_on_basis(p, &y, &m.a, &m.d, m.phase);
            if moved == y {
                trace += omega[phase as usize] * weight;
            }
            next_digits(p, &mut y);
        }
    }

    let mut max_fix_deviation: f64 = 0.0;
    for s in code_states(g, budget)? {
        let mut image = vec![Complex64::new(0.0, 0.0); len];
        for m in &group {
            let term = apply_error(&s, &m.a, &m.d, FpElem::new(m.phase as i64, p))?;
            for (acc, t) in image.iter_mut().zip(term.amps()) {
                *acc += t * weight;
            }
        }
        let image = StateVector::from_amps(p, n, image)?;
        max_fix_deviation = max_fix_deviation.max(image.max_deviation(&s)?);
    }

    let expected_trace = (p.get() as f64).powi(g.k() as i32);
    let trace_deviation = (trace - Complex64::new(expected_trace, 0.0)).norm();
    Ok(ProjectorReport {
        group_size: group.len(),
        trace: trace.into(),
        expected_trace,
        trace_deviation,
        max_fix_deviation,
        tolerance: PROJECTOR_TOLERANCE,
        passed: trace_deviation < PROJECTOR_TOLERANCE && max_fix_deviation < PROJECTOR_TOLERANCE,
    })
}

/// `entries[i][j] = ⟨x_i|x_j⟩` with `x` enumerated in basis-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Complex64>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn identity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.identity_deviation() < tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GramReport {
    pub size: usize,
    pub identity_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl From<&GramMatrix> for GramReport {
    fn from(m: &GramMatrix) -> Self {
        let identity_deviation = m.identity_deviation();
        GramReport {
            size: m.size(),
            identity_deviation,
            tolerance: GRAM_TOLERANCE,
            passed: identity_deviation < GRAM_TOLERANCE,
        }
    }
}

/// Largest `p^k` for which the Gram matrix is materialized.
pub const MAX_GRAM_SIZE: u64 = 1 << 10;

pub fn gram_matrix(g: &GraphCode, budget: u64) -> Result<GramMatrix> {
    g.check_structure()?;
    dimension(g.prime(), g.k(), MAX_GRAM_SIZE)?;
    let states = code_states(g, budget)?;
    let entries = states
        .iter()
        .map(|si| {
            states
                .iter()
                .map(|sj| si.inner(sj))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GramMatrix { entries })
}

/// State of a graph over `F_{p^m}` computed from the bicharacter product
/// `Π_{i<j} χ(z_i, z_j)^{Γ_ij}` with `χ(h, g) = exp(2πi hᵗMg / p)`.
/// Coordinate `i` component `s` sits at flattened position `m·i + s`, so the
/// result is directly comparable with the flattened graph's state.
pub fn build_extension_code_state(
    g: &GraphCode,
    basis: &ExtensionBasis,
    x: &[Vec<u32>],
    budget: u64,
) -> Result<StateVector> {
    let (p, k, n) = (g.prime(), g.k(), g.n());
    let m = basis.degree();
    if basis.prime() != p {
        return Err(Error::ModulusMismatch {
            left: p.get(),
            right: basis.prime().get(),
        });
    }
    if x.len() != k || x.iter().any(|c| c.len() != m) {
        return Err(Error::DimensionMismatch(format!(
            "input must be {k} coordinates of {m} coefficients"
        )));
    }
    let len = dimension(p, m * n, budget)?;
    let edges = g.edges();
    let scale = (len as f64).sqrt().recip();
    let mut z: Vec<Vec<u32>> = x
        .iter()
        .map(|c| c.iter().map(|&v| v % p.get()).collect())
        .collect();
    z.resize(k + n, vec![0; m]);
    let mut y = vec![0u32; m * n];
    let mut amps = Vec::with_capacity(len);
    for _ in 0..len {
        for (i, chunk) in y.chunks(m).enumerate() {
            z[k + i].copy_from_slice(chunk);
        }
        let mut amp = Complex64::new(scale, 0.0);
        for &(i, j, w) in &edges {
            let chi = Complex64::from_polar(
                1.0,
                2.0 * PI * basis.form(&z[i], &z[j]) as f64 / p.get() as f64,
            );
            amp *= chi.powi(w as i32);
        }
        amps.push(amp);
        next_digits(p, &mut y);
    }
    Ok(StateVector { p, n: m * n, amps })
}
