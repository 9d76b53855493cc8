//! Graphical quantum codes and the two conversions to and from stabilizer
//! codes.
//!
//! A graph on `k + n` vertices lists the `k` input vertices first. Its
//! adjacency matrix has the block layout
//!
//! ```text
//!     [ M_x | B   ]
//!     [ Bᵗ  | M_y ]
//! ```
//!
//! with `M_x = 0`. The code states are `|x⟩ ∝ Σ_y ω^{q(x ⊕ y)} |y⟩` for the
//! quadratic form `q(v) = Σ_{i<j} Γ_ij v_i v_j`.

use serde::Serialize;

use crate::enumerator::{weight_distribution, WeightEnumerator};
use crate::error::{Error, Result};
use crate::gfp::{ExtensionBasis, FpElem, Prime};
use crate::matfp::{kernel_basis, parity_check, FpMatrix};
use crate::symplectic::{
    apply_transcript, invert_transcript, self_dual_embed, standard_form, IsometryTranscript,
    SymplecticCode, SymplecticVector,
};

/// Weighted graph with `k` inputs and `n` outputs; weights reduced mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphCode {
    p: Prime,
    k: usize,
    n: usize,
    adj: FpMatrix,
}

impl GraphCode {
    /// Only the shape is checked here, so invalid graphs can still be
    /// loaded and diagnosed with [`GraphCode::validate`].
    pub fn new(p: Prime, k: usize, n: usize, adj: FpMatrix) -> Result<Self> {
        if adj.modulus() != p {
            return Err(Error::ModulusMismatch {
                left: p.get(),
                right: adj.modulus().get(),
            });
        }
        if adj.rows() != k + n || adj.cols() != k + n {
            return Err(Error::DimensionMismatch(format!(
                "adjacency is {}x{}, expected {}x{}",
                adj.rows(),
                adj.cols(),
                k + n,
                k + n
            )));
        }
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "graph needs at least one output".into(),
            ));
        }
        Ok(GraphCode { p, k, n, adj })
    }

    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, k: usize, n: usize, rows: &[R]) -> Result<Self> {
        let adj = FpMatrix::from_rows_with_cols(p, rows, k + n)?;
        Self::new(p, k, n, adj)
    }

    /// Assembles `[[0, B], [Bᵗ, M_y]]` from a `k × n` block `B` and an
    /// `n × n` block `M_y`.
    pub fn from_blocks(b: &FpMatrix, my: &FpMatrix) -> Result<Self> {
        let (k, n) = (b.rows(), my.rows());
        if b.cols() != n || my.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "B is {}x{} and M_y is {}x{}",
                b.rows(),
                b.cols(),
                my.rows(),
                my.cols()
            )));
        }
        let p = my.modulus();
        let mut adj = FpMatrix::zeros(p, k + n, k + n);
        for i in 0..k {
            for j in 0..n {
                adj.set(i, k + j, b.get(i, j));
                adj.set(k + j, i, b.get(i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                adj.set(k + i, k + j, my.get(i, j));
            }
        }
        Self::new(p, k, n, adj)
    }

    /// Graph without edges on `n` outputs and no inputs.
    pub fn empty(p: Prime, n: usize) -> Self {
        GraphCode {
            p,
            k: 0,
            n,
            adj: FpMatrix::zeros(p, n, n),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &FpMatrix {
        &self.adj
    }

    pub fn input_block(&self) -> FpMatrix {
        self.adj.block(0, self.k, 0, self.k)
    }

    /// The `k × n` block `B`.
    pub fn b_block(&self) -> FpMatrix {
        self.adj.block(0, self.k, self.k, self.k + self.n)
    }

    /// The `n × n` block `M_y`.
    pub fn output_block(&self) -> FpMatrix {
        self.adj
            .block(self.k, self.k + self.n, self.k, self.k + self.n)
    }

    /// Symmetry, zero diagonal and `M_x = 0`; everything except the rank
    /// condition.
    pub fn check_structure(&self) -> Result<()> {
        let size = self.k + self.n;
        for i in 0..size {
            if self.adj.get(i, i) != 0 {
                return Err(Error::NonZeroDiagonal(i));
            }
            for j in i + 1..size {
                if self.adj.get(i, j) != self.adj.get(j, i) {
                    return Err(Error::AsymmetricAdjacency(i, j));
                }
            }
        }
        for i in 0..self.k {
            for j in 0..self.k {
                if self.adj.get(i, j) != 0 {
                    return Err(Error::NonZeroInputBlock(i, j));
                }
            }
        }
        Ok(())
    }

    /// Full validation: structure plus `rank B = k`.
    pub fn validate(&self) -> Result<()> {
        self.check_structure()?;
        let rank = self.b_block().rank();
        if rank < self.k {
            return Err(Error::RankDeficientB { rank, k: self.k });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Non-zero upper-triangle edges `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let size = self.k + self.n;
        let mut out = Vec::new();
        for i in 0..size {
            for j in i + 1..size {
                let w = self.adj.get(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.k + self.n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a graph on {} vertices",
                v.len(),
                self.k + self.n
            )));
        }
        Ok(())
    }
}

/// `q(v)` over the upper-triangle edge list; `v` is assumed canonical.
pub(crate) fn quad_from_edges(p: Prime, edges: &[(usize, usize, u32)], v: &[u32]) -> u32 {
    edges.iter().fold(0, |acc, &(i, j, w)| {
        if v[i] == 0 || v[j] == 0 {
            acc
        } else {
            p.add(acc, p.mul(w, p.mul(v[i], v[j])))
        }
    })
}

fn canonical(p: Prime, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| x % p.get()).collect()
}

/// `q(v) = Σ_{i<j} Γ_ij v_i v_j`.
pub fn quad_form(g: &GraphCode, v: &[u32]) -> Result<FpElem> {
    g.check_len(v)?;
    let v = canonical(g.p, v);
    Ok(FpElem::new(
        quad_from_edges(g.p, &g.edges(), &v) as i64,
        g.p,
    ))
}

/// `b(u, v) = uᵗ Γ v = q(u + v) − q(u) − q(v)`.
pub fn bilinear_form(g: &GraphCode, u: &[u32], v: &[u32]) -> Result<FpElem> {
    g.check_len(u)?;
    g.check_len(v)?;
    let p = g.p;
    let u_gamma = g.adj.vec_mul(&canonical(p, u))?;
    let value = u_gamma
        .iter()
        .zip(canonical(p, v))
        .fold(0, |acc, (&a, b)| p.add(acc, p.mul(a, b)));
    Ok(FpElem::new(value as i64, p))
}

/// Replaces a graph over `F_{p^m}` by the graph with adjacency `Γ ⊗ M` over
/// `F_p`; vertex `i` becomes vertices `m·i, …, m·i + m − 1`.
pub fn flatten_graph(g: &GraphCode, basis: &ExtensionBasis) -> Result<GraphCode> {
    if basis.prime() != g.p {
        return Err(Error::ModulusMismatch {
            left: g.p.get(),
            right: basis.prime().get(),
        });
    }
    let m = basis.degree();
    let size = g.k + g.n;
    let p = g.p;
    let mut adj = FpMatrix::zeros(p, m * size, m * size);
    for i in 0..size {
        for j in 0..size {
            let w = g.adj.get(i, j);
            if w == 0 {
                continue;
            }
            for s in 0..m {
                for t in 0..m {
                    adj.set(m * i + s, m * j + t, p.mul(w, basis.gram().get(s, t)));
                }
            }
        }
    }
    GraphCode::new(p, m * g.k, m * g.n, adj)
}

/// Generator `ω^{q(a)} X^a Z^{a M_y}` of the stabilizer of a graph code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasedStabilizerGen {
    pub vector: SymplecticVector,
    pub phase_exp: FpElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStabilizer {
    pub gens: Vec<PhasedStabilizerGen>,
    /// Code generated by the rows `(D | D·M_y)`, dimension `n − k`.
    pub code: SymplecticCode,
}

/// Stabilizer of a validated graph code: one generator per row `a` of the
/// canonical basis `D` of `ker B`.
pub fn graph_to_stabilizer(g: &GraphCode) -> Result<GraphStabilizer> {
    g.validate()?;
    let p = g.p;
    let d = kernel_basis(&g.b_block());
    let my = g.output_block();
    let z = d.mul(&my)?;
    let edges = g.edges();
    let mut gens = Vec::with_capacity(d.rows());
    for r in 0..d.rows() {
        let a = d.row(r).to_vec();
        let mut full = vec![0u32; g.k];
        full.extend_from_slice(&a);
        let phase = quad_from_edges(p, &edges, &full);
        gens.push(PhasedStabilizerGen {
            vector: SymplecticVector::new(p, a, z.row(r).to_vec())?,
            phase_exp: FpElem::new(phase as i64, p),
        });
    }
    let code = SymplecticCode::new(g.n, &d.hstack(&z)?)?;
    Ok(GraphStabilizer { gens, code })
}

/// A graph equivalent to a stabilizer code, with the isometry certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphConversion {
    pub graph: GraphCode,
    /// Maps the self-dual extension's canonical generator onto `(I | M_y)`.
    pub transcript: IsometryTranscript,
    /// `(n − k) × n` coefficients with `t(c) = d_coeffs · (I | M_y)`.
    pub d_coeffs: FpMatrix,
}

/// Converts a self-orthogonal code into a graph: extend to a self-dual code,
/// reduce it to `(I | C)`, express the transformed code in that basis and
/// take `B` as a parity check of the coefficients.
pub fn stabilizer_to_graph(c: &SymplecticCode) -> Result<GraphConversion> {
    c.check_self_orthogonal()?;
    let n = c.n();
    let (d, _) = self_dual_embed(c)?;
    let (cmat, transcript) = standard_form(&d)?;
    let moved = apply_transcript(c, &transcript)?;
    // Rows of (I | C) are a basis, so the coefficients are the X-part.
    let d_coeffs = moved.x_part();
    if d_coeffs.mul(&cmat)? != moved.z_part() {
        return Err(Error::Internal(
            "transformed code is not contained in the span of (I | C)".into(),
        ));
    }
    let b = parity_check(&d_coeffs);
    debug_assert_eq!(b.rows(), n - c.dim());
    let graph = GraphCode::from_blocks(&b, &cmat)?;
    graph
        .validate()
        .map_err(|e| Error::Internal(format!("assembled graph is invalid: {e}")))?;
    Ok(GraphConversion {
        graph,
        transcript,
        d_coeffs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub row_space_equal: bool,
    pub enumerator_equal: bool,
    pub input_enumerator: WeightEnumerator,
    pub graph_enumerator: WeightEnumerator,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.row_space_equal && self.enumerator_equal
    }
}

/// Pulls the graph's stabilizer code back through the inverted transcript
/// and compares it with the input; also compares weight enumerators.
pub fn verify_roundtrip(
    c: &SymplecticCode,
    conv: &GraphConversion,
    budget: u64,
) -> Result<RoundTripReport> {
    let stab = graph_to_stabilizer(&conv.graph)?;
    let pulled = apply_transcript(&stab.code, &invert_transcript(&conv.transcript))?;
    let input_enumerator = weight_distribution(c, budget)?;
    let graph_enumerator = weight_distribution(&stab.code, budget)?;
    Ok(RoundTripReport {
        row_space_equal: pulled.same_space(c),
        enumerator_equal: input_enumerator == graph_enumerator,
        input_enumerator,
        graph_enumerator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{steane_code, wheel_graph};
    use crate::enumerator::DEFAULT_BUDGET;
    use crate::random::{random_self_orthogonal_code, random_valid_graph};
    use crate::symplectic::inner_concat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn validation_errors() {
        let p = prime(3);
        let loop_graph = GraphCode::from_rows(p, 0, 2, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(loop_graph.validate(), Err(Error::NonZeroDiagonal(0)));
        let asym = GraphCode::from_rows(p, 0, 2, &[vec![0, 1], vec![2, 0]]).unwrap();
        assert_eq!(asym.validate(), Err(Error::AsymmetricAdjacency(0, 1)));
        let mx =
            GraphCode::from_rows(p, 2, 1, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(mx.validate(), Err(Error::NonZeroInputBlock(0, 1)));
        let rank =
            GraphCode::from_rows(p, 1, 2, &[vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]).unwrap();
        assert_eq!(
            rank.validate(),
            Err(Error::RankDeficientB { rank: 0, k: 1 })
        );
        assert!(matches!(
            graph_to_stabilizer(&rank),
            Err(Error::RankDeficientB { .. })
        ));
        // Negative weights reduce mod p.
        let neg = GraphCode::from_rows(p, 0, 2, &[vec![0, -1], vec![2, 0]]).unwrap();
        assert!(neg.validate().is_ok());
    }

    #[test]
    fn quad_form_examples() {
        let w = wheel_graph(prime(2), 7);
        assert_eq!(quad_form(&w, &[0; 8]).unwrap().value(), 0);
        let mut e = vec![0; 8];
        e[3] = 1;
        assert_eq!(quad_form(&w, &e).unwrap().value(), 0);
        let mut rim_pair = vec![0; 8];
        rim_pair[1] = 1;
        rim_pair[2] = 1;
        assert_eq!(quad_form(&w, &rim_pair).unwrap().value(), 1);
        assert!(quad_form(&w, &[0; 3]).is_err());
    }

    #[test]
    fn bilinear_form_examples() {
        let w = wheel_graph(prime(2), 7);
        assert_eq!(bilinear_form(&w, &[0; 8], &[0; 8]).unwrap().value(), 0);
        let mut hub = vec![0; 8];
        hub[0] = 1;
        for rim in 1..8 {
            let mut v = vec![0; 8];
            v[rim] = 1;
            assert_eq!(bilinear_form(&w, &hub, &v).unwrap().value(), 1);
        }
    }

    #[test]
    fn bilinear_is_polarization_of_quadratic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3, 5] {
            let g = random_valid_graph(&mut rng, prime(p), 2, 4);
            for u_idx in 0..40u32 {
                let u: Vec<u32> = (0..6).map(|i| (u_idx * 7 + i * 3) % p).collect();
                let v: Vec<u32> = (0..6).map(|i| (u_idx * 5 + i * i) % p).collect();
                let sum: Vec<u32> = u.iter().zip(&v).map(|(a, b)| (a + b) % p).collect();
                let pol = (quad_form(&g, &sum).unwrap().value() + 2 * p
                    - quad_form(&g, &u).unwrap().value()
                    - quad_form(&g, &v).unwrap().value())
                    % p;
                assert_eq!(bilinear_form(&g, &u, &v).unwrap().value(), pol);
                assert_eq!(bilinear_form(&g, &u, &v), bilinear_form(&g, &v, &u));
            }
        }
    }

    #[test]
    fn flatten_examples() {
        let p = prime(2);
        let g = GraphCode::from_rows(p, 0, 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            flatten_graph(&g, &ExtensionBasis::prime_field(p)).unwrap(),
            g
        );
        let basis = crate::gfp::trace_gram(p, 2, &[1, 1, 1]).unwrap();
        let flat = flatten_graph(&g, &basis).unwrap();
        assert_eq!(
            flat.adjacency().to_rows(),
            vec![
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 1],
                vec![0, 1, 0, 0],
                vec![1, 1, 0, 0],
            ]
        );
        assert_eq!((flat.k(), flat.n()), (0, 4));
        let p3 = ExtensionBasis::prime_field(prime(3));
        assert!(flatten_graph(&g, &p3).is_err());
    }

    #[test]
    fn empty_graph_stabilizer() {
        let g = GraphCode::empty(prime(2), 1);
        let s = graph_to_stabilizer(&g).unwrap();
        assert_eq!(s.gens.len(), 1);
        assert_eq!(s.gens[0].vector.a, vec![1]);
        assert_eq!(s.gens[0].vector.d, vec![0]);
        assert_eq!(s.gens[0].phase_exp.value(), 0);
    }

    #[test]
    fn single_edge_stabilizer() {
        let g = GraphCode::from_rows(prime(2), 0, 2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = graph_to_stabilizer(&g).unwrap();
        let vecs: Vec<Vec<u32>> = s.gens.iter().map(|g| g.vector.to_concat()).collect();
        assert_eq!(vecs, vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]]);
        assert!(s.gens.iter().all(|g| g.phase_exp.is_zero()));
    }

    #[test]
    fn wheel_stabilizer_dimension() {
        let s = graph_to_stabilizer(&wheel_graph(prime(2), 7)).unwrap();
        assert_eq!(s.code.dim(), 6);
        assert!(s.code.is_self_orthogonal());
    }

    #[test]
    fn all_x_code_gives_empty_graph() {
        let p = prime(3);
        let c = SymplecticCode::new(
            3,
            &FpMatrix::identity(p, 3)
                .hstack(&FpMatrix::zeros(p, 3, 3))
                .unwrap(),
        )
        .unwrap();
        let conv = stabilizer_to_graph(&c).unwrap();
        assert_eq!(conv.graph.k(), 0);
        assert!(conv.graph.adjacency().is_zero());
    }

    #[test]
    fn steane_to_graph_round_trip() {
        let c = steane_code();
        let conv = stabilizer_to_graph(&c).unwrap();
        assert_eq!((conv.graph.k(), conv.graph.n()), (1, 7));
        assert_eq!(conv.d_coeffs.rows(), 6);
        let report = verify_roundtrip(&c, &conv, DEFAULT_BUDGET).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn wheel_code_back_to_graph() {
        let s = graph_to_stabilizer(&wheel_graph(prime(2), 7)).unwrap();
        let conv = stabilizer_to_graph(&s.code).unwrap();
        assert!(verify_roundtrip(&s.code, &conv, DEFAULT_BUDGET)
            .unwrap()
            .passed());
    }

    #[test]
    fn non_self_orthogonal_rejected() {
        let c = SymplecticCode::from_rows(prime(2), 1, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(stabilizer_to_graph(&c), Err(Error::NotSelfOrthogonal(0, 1)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn graph_stabilizers_commute(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..7) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let k = (seed as usize) % (n + 1);
                let g = random_valid_graph(&mut rng, prime(p), k, n);
                let s = graph_to_stabilizer(&g).unwrap();
                prop_assert_eq!(s.code.dim(), n - k);
                prop_assert_eq!(s.gens.len(), n - k);
                for u in &s.gens {
                    for v in &s.gens {
                        prop_assert_eq!(inner_concat(prime(p), &u.vector.to_concat(), &v.vector.to_concat()), 0);
                    }
                }
            }

            #[test]
            fn stabilizer_to_graph_round_trips(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3]), n in 1usize..6) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let c = random_self_orthogonal_code(&mut rng, prime(p), n, n);
                let conv = stabilizer_to_graph(&c).unwrap();
                prop_assert_eq!(conv.graph.k(), n - c.dim());
                let report = verify_roundtrip(&c, &conv, DEFAULT_BUDGET).unwrap();
                prop_assert!(report.passed());
            }
        }
    }
}
