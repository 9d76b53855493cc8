//! Dense linear algebra over `F_p`.
//!
//! Elimination is deterministic: columns are scanned left to right and the
//! pivot is the first non-zero entry at or below the current row. Kernels and
//! parity checks are returned in reduced row echelon form, so two calls on
//! matrices with the same row space give identical output.

use std::fmt;

use crate::error::{Error, Result};
use crate::gfp::{FpElem, Prime};

/// Row-major dense matrix over `F_p` with canonical entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    modulus: Prime,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix(p={}, {}x{})",
            self.modulus, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`rref`]: `transform · input = echelon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub echelon: FpMatrix,
    pub transform: FpMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FpMatrix {
    pub fn zeros(modulus: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            modulus,
        }
    }

    pub fn identity(modulus: Prime, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(modulus: Prime, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(modulus, rows, cols)
    }

    /// Like [`FpMatrix::from_rows`], with an explicit column count so that
    /// empty matrices keep their width.
    pub fn from_rows_with_cols<R: AsRef<[i64]>>(
        modulus: Prime,
        rows: &[R],
        cols: usize,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&v| modulus.reduce(v)));
        }
        Ok(FpMatrix {
            rows: rows.len(),
            cols,
            entries,
            modulus,
        })
    }

    /// Builds a matrix from rows that are already canonical.
    pub fn from_canonical_rows(modulus: Prime, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length");
            debug_assert!(row.iter().all(|&v| v < modulus.get()));
            entries.extend_from_slice(row);
        }
        FpMatrix {
            rows: rows.len(),
            cols,
            entries,
            modulus,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    pub fn elem(&self, r: usize, c: usize) -> FpElem {
        FpElem::new(self.get(r, c) as i64, self.modulus)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.modulus.get());
        self.entries[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.modulus;
        let mut out = FpMatrix::zeros(p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = p.add(out.get(r, c), p.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let p = self.modulus;
        let mut out = vec![0u32; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = p.add(*o, p.mul(a, self.get(k, c)));
            }
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_modulus(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| [self.row(r), other.row(r)].concat())
            .collect();
        Ok(FpMatrix::from_canonical_rows(self.modulus, cols, &rows))
    }

    /// Rows `[self; other]`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_modulus(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut out = self.clone();
        out.entries.extend_from_slice(&other.entries);
        out.rows += other.rows;
        Ok(out)
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.entries.extend_from_slice(row);
        self.rows += 1;
    }

    /// Columns `[start, end)`.
    pub fn col_range(&self, start: usize, end: usize) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| self.row(r)[start..end].to_vec())
            .collect();
        FpMatrix::from_canonical_rows(self.modulus, end - start, &rows)
    }

    /// Sub-block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (r0..r1).map(|r| self.row(r)[c0..c1].to_vec()).collect();
        FpMatrix::from_canonical_rows(self.modulus, c1 - c0, &rows)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank()
    }

    /// Adds `scalar · row[source]` to `row[target]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, scalar: u32) {
        if scalar == 0 {
            return;
        }
        let p = self.modulus;
        for c in 0..self.cols {
            let v = p.add(self.get(target, c), p.mul(scalar, self.get(source, c)));
            self.set(target, c, v);
        }
    }

    pub fn scale_row(&mut self, target: usize, scalar: u32) {
        let p = self.modulus;
        for v in self.row_mut(target) {
            *v = p.mul(*v, scalar);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn check_modulus(&self, other: &FpMatrix) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        Ok(())
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> FpMatrix {
        let rows: Vec<Vec<u32>> = (0..self.rows)
            .filter(|&r| self.row(r).iter().any(|&v| v != 0))
            .map(|r| self.row(r).to_vec())
            .collect();
        FpMatrix::from_canonical_rows(self.modulus, self.cols, &rows)
    }
}

/// Reduced row echelon form with the invertible transform that produces it.
pub fn rref(m: &FpMatrix) -> Rref {
    let p = m.modulus;
    let mut echelon = m.clone();
    let mut transform = FpMatrix::identity(p, m.rows);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pivot_row) = (row..m.rows).find(|&r| echelon.get(r, col) != 0) else {
            continue;
        };
        echelon.swap_rows(row, pivot_row);
        transform.swap_rows(row, pivot_row);
        let inv = p.inv(echelon.get(row, col)).expect("pivot is non-zero");
        echelon.scale_row(row, inv);
        transform.scale_row(row, inv);
        for r in 0..m.rows {
            let factor = echelon.get(r, col);
            if r != row && factor != 0 {
                let neg = p.neg(factor);
                echelon.add_row_multiple(r, row, neg);
                transform.add_row_multiple(r, row, neg);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        echelon,
        transform,
        pivots,
    }
}

/// Canonical basis (rref, zero rows removed) of the row space.
pub fn row_basis(m: &FpMatrix) -> FpMatrix {
    let r = rref(m);
    r.echelon.block(0, r.rank(), 0, m.cols)
}

/// Basis of `{v : m · v = 0}`, one vector per row, in rref.
pub fn kernel_basis(m: &FpMatrix) -> FpMatrix {
    let p = m.modulus;
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let mut basis = FpMatrix::zeros(p, 0, m.cols);
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; m.cols];
        v[free] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = p.neg(r.echelon.get(i, free));
        }
        basis.push_row(&v);
    }
    row_basis(&basis)
}

/// Parity-check matrix `H` with `H · genᵗ = 0` and `rank H = cols − rank gen`.
pub fn parity_check(gen: &FpMatrix) -> FpMatrix {
    kernel_basis(gen)
}

pub fn row_space_equal(a: &FpMatrix, b: &FpMatrix) -> Result<bool> {
    a.check_modulus(b)?;
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "row spaces in F_p^{} and F_p^{}",
            a.cols, b.cols
        )));
    }
    Ok(row_basis(a) == row_basis(b))
}

pub fn row_space_contains(a: &FpMatrix, v: &[u32]) -> Result<bool> {
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} columns",
            v.len(),
            a.cols
        )));
    }
    let basis = row_basis(a);
    Ok(reduce_against(&basis, v).iter().all(|&x| x == 0))
}

/// Reduces `v` against a matrix in rref (no zero rows), returning the residue.
pub(crate) fn reduce_against(basis: &FpMatrix, v: &[u32]) -> Vec<u32> {
    let p = basis.modulus;
    let mut w = v.to_vec();
    for r in 0..basis.rows {
        let row = basis.row(r);
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            continue;
        };
        let f = w[pc];
        if f != 0 {
            let neg = p.neg(f);
            for (wc, &bc) in w.iter_mut().zip(row) {
                *wc = p.add(*wc, p.mul(neg, bc));
            }
        }
    }
    w
}
