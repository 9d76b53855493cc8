//! Symplectic codes in `F_p^{2n}` and their isometries.
//!
//! A vector is written `(a | d)` with the X-part `a` in columns `[0, n)` and
//! the Z-part `d` in columns `[n, 2n)`. The symplectic form is
//! `⟨a, d'⟩ − ⟨a', d⟩`. Isometries that also preserve the symplectic weight
//! are generated by coordinate permutations and a `2×2` matrix of
//! determinant one acting on each pair `(x_i, z_i)`; row operations act on
//! the generator matrix without changing the code.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gfp::{FpElem, Prime};
use crate::matfp::{self, FpMatrix};

/// A vector `(a | d)` of `F_p^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    pub a: Vec<u32>,
    pub d: Vec<u32>,
    p: Prime,
}

impl SymplecticVector {
    pub fn new(p: Prime, a: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        if a.len() != d.len() {
            return Err(Error::DimensionMismatch(format!(
                "X-part has length {}, Z-part {}",
                a.len(),
                d.len()
            )));
        }
        let a = a.into_iter().map(|v| p.reduce(v as i64)).collect();
        let d = d.into_iter().map(|v| p.reduce(v as i64)).collect();
        Ok(SymplecticVector { a, d, p })
    }

    /// Splits a concatenated `(a | d)` slice of even length.
    pub fn from_concat(p: Prime, v: &[u32]) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "odd length {} for a symplectic vector",
                v.len()
            )));
        }
        let n = v.len() / 2;
        Self::new(p, v[..n].to_vec(), v[n..].to_vec())
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn to_concat(&self) -> Vec<u32> {
        [self.a.as_slice(), self.d.as_slice()].concat()
    }

    pub fn weight(&self) -> usize {
        self.a
            .iter()
            .zip(&self.d)
            .filter(|(&x, &z)| x != 0 || z != 0)
            .count()
    }
}

/// Symplectic inner product `⟨u.a, v.d⟩ − ⟨v.a, u.d⟩`.
pub fn symp_inner(u: &SymplecticVector, v: &SymplecticVector) -> Result<FpElem> {
    if u.p != v.p {
        return Err(Error::ModulusMismatch {
            left: u.p.get(),
            right: v.p.get(),
        });
    }
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "symplectic vectors of length {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(FpElem::new(
        inner_concat(u.p, &u.to_concat(), &v.to_concat()) as i64,
        u.p,
    ))
}

/// Symplectic form on concatenated `(a | d)` slices of equal even length.
pub(crate) fn inner_concat(p: Prime, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len() / 2;
    let mut acc = 0u32;
    for i in 0..n {
        acc = p.add(acc, p.mul(u[i], v[n + i]));
        acc = p.sub(acc, p.mul(v[i], u[n + i]));
    }
    acc
}

/// Number of coordinates `i` with `(a_i, d_i) ≠ (0, 0)`.
pub fn symplectic_weight(v: &[u32]) -> usize {
    let n = v.len() / 2;
    (0..n).filter(|&i| v[i] != 0 || v[n + i] != 0).count()
}

/// An `F_p`-linear subspace of `F_p^{2n}`, stored as its canonical (rref)
/// basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticCode {
    n: usize,
    gen: FpMatrix,
}

impl SymplecticCode {
    /// Builds the code spanned by the rows of `spanning` (`2n` columns).
    pub fn new(n: usize, spanning: &FpMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "code length must be positive".into(),
            ));
        }
        if spanning.cols() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "generator has {} columns, expected 2n = {}",
                spanning.cols(),
                2 * n
            )));
        }
        Ok(SymplecticCode {
            n,
            gen: matfp::row_basis(spanning),
        })
    }

    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, n: usize, rows: &[R]) -> Result<Self> {
        Self::new(n, &FpMatrix::from_rows_with_cols(p, rows, 2 * n)?)
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        SymplecticCode {
            n,
            gen: FpMatrix::zeros(p, 0, 2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> Prime {
        self.gen.modulus()
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical generator matrix (rref, independent rows).
    pub fn generator(&self) -> &FpMatrix {
        &self.gen
    }

    pub fn x_part(&self) -> FpMatrix {
        self.gen.col_range(0, self.n)
    }

    pub fn z_part(&self) -> FpMatrix {
        self.gen.col_range(self.n, 2 * self.n)
    }

    pub fn row(&self, i: usize) -> SymplecticVector {
        SymplecticVector::from_concat(self.prime(), self.gen.row(i)).expect("even length")
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == 2 * self.n && matfp::reduce_against(&self.gen, v).iter().all(|&x| x == 0)
    }

    pub fn same_space(&self, other: &SymplecticCode) -> bool {
        self.n == other.n && self.gen == other.gen
    }

    /// First pair of generator rows with non-zero symplectic product.
    pub fn check_self_orthogonal(&self) -> Result<()> {
        let p = self.prime();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if inner_concat(p, self.gen.row(i), self.gen.row(j)) != 0 {
                    return Err(Error::NotSelfOrthogonal(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.check_self_orthogonal().is_ok()
    }

    pub fn is_self_dual(&self) -> bool {
        self.dim() == self.n && self.is_self_orthogonal()
    }
}

/// `{v : ⟨v, g⟩ = 0 for every row g}`, computed as the kernel of the twisted
/// generator `(−Z | X)`.
pub fn symp_dual(c: &SymplecticCode) -> SymplecticCode {
    let p = c.prime();
    let n = c.n;
    let mut twisted = FpMatrix::zeros(p, c.dim(), 2 * n);
    for r in 0..c.dim() {
        let row = c.gen.row(r);
        for i in 0..n {
            twisted.set(r, i, p.neg(row[n + i]));
            twisted.set(r, n + i, row[i]);
        }
    }
    SymplecticCode {
        n,
        gen: matfp::kernel_basis(&twisted),
    }
}

/// Extends a self-orthogonal code to a self-dual one by greedily adjoining
/// the first canonical basis vector of the current dual that is not yet in
/// the code. Returns the self-dual code and the adjoined vectors.
pub fn self_dual_embed(c: &SymplecticCode) -> Result<(SymplecticCode, FpMatrix)> {
    c.check_self_orthogonal()?;
    let p = c.prime();
    let mut current = c.clone();
    let mut added = FpMatrix::zeros(p, 0, 2 * c.n);
    while current.dim() < c.n {
        let dual = symp_dual(&current);
        let next = (0..dual.dim())
            .map(|r| dual.gen.row(r))
            .find(|v| !current.contains(v))
            .ok_or_else(|| Error::Internal("dual contained in a proper subcode".into()))?
            .to_vec();
        added.push_row(&next);
        let mut spanning = current.gen.clone();
        spanning.push_row(&next);
        current = SymplecticCode::new(c.n, &spanning)?;
    }
    Ok((current, added))
}

/// One isometry step. Column moves act on every row of a generator matrix;
/// row moves act on rows of the specific generator matrix being reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// `row[target] += scalar · row[source]`.
    RowOp {
        target: usize,
        source: usize,
        scalar: u32,
    },
    /// `row[target] *= scalar`, `scalar ≠ 0`.
    RowScale { target: usize, scalar: u32 },
    /// New coordinate `j` is old coordinate `perm[j]`, in both halves.
    ColPerm(Vec<usize>),
    /// `(x_i, z_i) ← (αx_i + βz_i, γx_i + δz_i)` with `[α, β, γ, δ]` of
    /// determinant one.
    LocalSp { coord: usize, matrix: [u32; 4] },
}

impl Move {
    pub fn is_row_move(&self) -> bool {
        matches!(self, Move::RowOp { .. } | Move::RowScale { .. })
    }

    fn validate(&self, p: Prime, n: usize) -> Result<()> {
        match self {
            Move::RowOp { target, source, .. } if target == source => Err(Error::Internal(
                "row operation with identical source and target".into(),
            )),
            Move::RowScale { scalar, .. } if *scalar % p.get() == 0 => Err(Error::ZeroInverse),
            Move::ColPerm(perm) => {
                let mut seen = vec![false; n];
                if perm.len() != n {
                    return Err(Error::InvalidPermutation);
                }
                for &j in perm {
                    if j >= n || seen[j] {
                        return Err(Error::InvalidPermutation);
                    }
                    seen[j] = true;
                }
                Ok(())
            }
            Move::LocalSp { coord, matrix } => {
                if *coord >= n {
                    return Err(Error::DimensionMismatch(format!(
                        "local move on coordinate {coord} of {n}"
                    )));
                }
                let [a, b, c, d] = matrix.map(|v| v % p.get());
                let det = p.sub(p.mul(a, d), p.mul(b, c));
                if det != 1 {
                    return Err(Error::NotSymplectic { coord: *coord, det });
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    fn inverse(&self, p: Prime) -> Move {
        match self {
            Move::RowOp {
                target,
                source,
                scalar,
            } => Move::RowOp {
                target: *target,
                source: *source,
                scalar: p.neg(*scalar),
            },
            Move::RowScale { target, scalar } => Move::RowScale {
                target: *target,
                scalar: p.inv(*scalar).expect("validated non-zero"),
            },
            Move::ColPerm(perm) => {
                let mut inv = vec![0; perm.len()];
                for (j, &src) in perm.iter().enumerate() {
                    inv[src] = j;
                }
                Move::ColPerm(inv)
            }
            Move::LocalSp {
                coord,
                matrix: [a, b, c, d],
            } => Move::LocalSp {
                coord: *coord,
                matrix: [*d, p.neg(*b), p.neg(*c), *a],
            },
        }
    }

    /// Applies a column move to one concatenated `(a | d)` vector.
    fn apply_columns(&self, p: Prime, w: &mut [u32]) {
        let n = w.len() / 2;
        match self {
            Move::ColPerm(perm) => {
                let old = w.to_vec();
                for (j, &src) in perm.iter().enumerate() {
                    w[j] = old[src];
                    w[n + j] = old[n + src];
                }
            }
            Move::LocalSp {
                coord,
                matrix: [a, b, c, d],
            } => {
                let (x, z) = (w[*coord], w[n + coord]);
                w[*coord] = p.add(p.mul(*a, x), p.mul(*b, z));
                w[n + coord] = p.add(p.mul(*c, x), p.mul(*d, z));
            }
            Move::RowOp { .. } | Move::RowScale { .. } => {}
        }
    }

    fn apply_to_matrix(&self, m: &mut FpMatrix) -> Result<()> {
        let p = m.modulus();
        match self {
            Move::RowOp {
                target,
                source,
                scalar,
            } => {
                for row in [*target, *source] {
                    if row >= m.rows() {
                        return Err(Error::RowOutOfRange {
                            row,
                            rows: m.rows(),
                        });
                    }
                }
                m.add_row_multiple(*target, *source, *scalar % p.get());
            }
            Move::RowScale { target, scalar } => {
                if *target >= m.rows() {
                    return Err(Error::RowOutOfRange {
                        row: *target,
                        rows: m.rows(),
                    });
                }
                m.scale_row(*target, *scalar % p.get());
            }
            _ => {
                for r in 0..m.rows() {
                    self.apply_columns(p, m.row_mut(r));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::RowOp {
                target,
                source,
                scalar,
            } => write!(f, "rowop {target} {source} {scalar}"),
            Move::RowScale { target, scalar } => write!(f, "rowscale {target} {scalar}"),
            Move::ColPerm(perm) => {
                write!(f, "colperm")?;
                for j in perm {
                    write!(f, " {j}")?;
                }
                Ok(())
            }
            Move::LocalSp {
                coord,
                matrix: [a, b, c, d],
            } => write!(f, "localsp {coord} {a} {b} {c} {d}"),
        }
    }
}

impl FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let kind = parts.next().ok_or("empty move")?;
        let nums: Vec<u64> = parts
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| format!("bad number {t:?}: {e}"))
            })
            .collect::<std::result::Result<_, _>>()?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(format!("{kind} takes {k} arguments, got {}", nums.len()))
            }
        };
        match kind {
            "rowop" => {
                arity(3)?;
                Ok(Move::RowOp {
                    target: nums[0] as usize,
                    source: nums[1] as usize,
                    scalar: nums[2] as u32,
                })
            }
            "rowscale" => {
                arity(2)?;
                Ok(Move::RowScale {
                    target: nums[0] as usize,
                    scalar: nums[1] as u32,
                })
            }
            "colperm" => Ok(Move::ColPerm(nums.iter().map(|&v| v as usize).collect())),
            "localsp" => {
                arity(5)?;
                Ok(Move::LocalSp {
                    coord: nums[0] as usize,
                    matrix: [
                        nums[1] as u32,
                        nums[2] as u32,
                        nums[3] as u32,
                        nums[4] as u32,
                    ],
                })
            }
            other => Err(format!("unknown move {other:?}")),
        }
    }
}

/// Ordered record of isometry moves on `F_p^{2n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsometryTranscript {
    p: Prime,
    n: usize,
    moves: Vec<Move>,
}

impl IsometryTranscript {
    pub fn new(p: Prime, n: usize) -> Self {
        IsometryTranscript {
            p,
            n,
            moves: Vec::new(),
        }
    }

    pub fn from_moves(p: Prime, n: usize, moves: Vec<Move>) -> Result<Self> {
        let mut t = Self::new(p, n);
        for m in moves {
            t.push(m)?;
        }
        Ok(t)
    }

    pub fn push(&mut self, m: Move) -> Result<()> {
        m.validate(self.p, self.n)?;
        self.moves.push(m);
        Ok(())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Pushes `m` and applies it to `g` in one step.
    fn record(&mut self, g: &mut FpMatrix, m: Move) -> Result<()> {
        m.validate(self.p, self.n)?;
        m.apply_to_matrix(g)?;
        self.moves.push(m);
        Ok(())
    }

    fn check_shape(&self, p: Prime, cols: usize) -> Result<()> {
        if p != self.p {
            return Err(Error::ModulusMismatch {
                left: p.get(),
                right: self.p.get(),
            });
        }
        if cols != 2 * self.n {
            return Err(Error::DimensionMismatch(format!(
                "transcript acts on F_p^{}, got {cols} columns",
                2 * self.n
            )));
        }
        Ok(())
    }

    /// Applies every move, row moves included, to a concrete generator
    /// matrix.
    pub fn apply_to_matrix(&self, m: &FpMatrix) -> Result<FpMatrix> {
        self.check_shape(m.modulus(), m.cols())?;
        let mut out = m.clone();
        for mv in &self.moves {
            mv.apply_to_matrix(&mut out)?;
        }
        Ok(out)
    }

    /// Applies the column moves to a single vector; row moves are ignored.
    pub fn apply_to_vector(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.check_shape(self.p, v.len())?;
        let mut w = v.to_vec();
        for mv in &self.moves {
            mv.apply_columns(self.p, &mut w);
        }
        Ok(w)
    }

    pub fn inverse(&self) -> IsometryTranscript {
        IsometryTranscript {
            p: self.p,
            n: self.n,
            moves: self.moves.iter().rev().map(|m| m.inverse(self.p)).collect(),
        }
    }

    /// The product `T` of all row moves, as a `rows × rows` matrix.
    pub fn row_transform(&self, rows: usize) -> Result<FpMatrix> {
        let mut t = FpMatrix::identity(self.p, rows);
        for mv in self.moves.iter().filter(|m| m.is_row_move()) {
            mv.apply_to_matrix(&mut t)?;
        }
        Ok(t)
    }

    /// The product `S` of all column moves, as a `2n × 2n` matrix acting on
    /// row vectors from the right.
    pub fn column_transform(&self) -> FpMatrix {
        let mut s = FpMatrix::identity(self.p, 2 * self.n);
        for mv in self.moves.iter().filter(|m| !m.is_row_move()) {
            mv.apply_to_matrix(&mut s).expect("column moves never fail");
        }
        s
    }
}

/// Pushes a code through the column moves of `t`.
pub fn apply_transcript(code: &SymplecticCode, t: &IsometryTranscript) -> Result<SymplecticCode> {
    t.check_shape(code.prime(), 2 * code.n)?;
    let mut rows = Vec::with_capacity(code.dim());
    for r in 0..code.dim() {
        rows.push(t.apply_to_vector(code.gen.row(r))?);
    }
    let spanning = FpMatrix::from_canonical_rows(code.prime(), 2 * code.n, &rows);
    SymplecticCode::new(code.n, &spanning)
}

pub fn invert_transcript(t: &IsometryTranscript) -> IsometryTranscript {
    t.inverse()
}

/// `x ← z`, `z ← −x`.
fn xz_swap(p: Prime) -> [u32; 4] {
    [0, 1, p.neg(1), 0]
}

/// Reduces a self-dual code to `(I | C)` with `C` symmetric and zero on the
/// diagonal. Returns `C` and the transcript that maps the code's canonical
/// generator onto `(I | C)` exactly.
pub fn standard_form(d: &SymplecticCode) -> Result<(FpMatrix, IsometryTranscript)> {
    let n = d.n;
    let p = d.prime();
    if !d.is_self_dual() {
        return Err(Error::NotSelfDual { dim: d.dim(), n });
    }
    let mut g = d.gen.clone();
    let mut t = IsometryTranscript::new(p, n);

    // First (column, row) with a non-zero entry in the lower-right region of
    // the X-block (offset 0) or Z-block (offset n).
    let find_pivot = |g: &FpMatrix, r: usize, offset: usize| {
        (r..n).find_map(|c| (r..n).find(|&j| g.get(j, offset + c) != 0).map(|j| (j, c)))
    };

    for r in 0..n {
        let (j, c) = match find_pivot(&g, r, 0) {
            Some(found) => found,
            None => {
                let (j, c) = find_pivot(&g, r, n).ok_or_else(|| {
                    Error::Internal(format!("no pivot for coordinate {r} in a self-dual code"))
                })?;
                t.record(
                    &mut g,
                    Move::LocalSp {
                        coord: c,
                        matrix: xz_swap(p),
                    },
                )?;
                (j, c)
            }
        };
        if c != r {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(r, c);
            t.record(&mut g, Move::ColPerm(perm))?;
        }
        if j != r {
            t.record(
                &mut g,
                Move::RowOp {
                    target: r,
                    source: j,
                    scalar: 1,
                },
            )?;
        }
        let lead = g.get(r, r);
        if lead != 1 {
            let inv = p.inv(lead).expect("pivot is non-zero");
            t.record(
                &mut g,
                Move::RowScale {
                    target: r,
                    scalar: inv,
                },
            )?;
        }
        for i in 0..n {
            let f = g.get(i, r);
            if i != r && f != 0 {
                t.record(
                    &mut g,
                    Move::RowOp {
                        target: i,
                        source: r,
                        scalar: p.neg(f),
                    },
                )?;
            }
        }
    }

    let pmat = g.col_range(n, 2 * n);
    if pmat != pmat.transpose() {
        return Err(Error::Internal(
            "right block of (I | P) is not symmetric for a self-dual code".into(),
        ));
    }
    for i in 0..n {
        let diag = pmat.get(i, i);
        if diag != 0 {
            t.record(
                &mut g,
                Move::LocalSp {
                    coord: i,
                    matrix: [1, 0, p.neg(diag), 1],
                },
            )?;
        }
    }
    let cmat = g.col_range(n, 2 * n);
    debug_assert_eq!(g.col_range(0, n), FpMatrix::identity(p, n));
    debug_assert!((0..n).all(|i| cmat.get(i, i) == 0));
    Ok((cmat, t))
}
