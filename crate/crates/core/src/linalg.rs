//! Exact linear algebra over a field: rank, kernel, homology, membership.
//!
//! Matrices are sparse maps from (row, col) to a nonzero scalar. Elimination
//! uses deterministic pivoting (first nonzero row in column order) so every
//! output is reproducible byte for byte.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::num::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<K: Field> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), K>,
}

impl<K: Field> Matrix<K> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
        }
        let mut m = Matrix::zero(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(K::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.set(j, i, v.clone());
        }
        m
    }

    pub fn scale(&self, c: &K) -> Self {
        let mut m = Matrix::zero(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.clone() * c.clone());
        }
        m
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = Matrix::zero(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for j in 0..rhs.cols {
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    let cur = m.get(i, j);
                    m.set(i, j, cur + a.clone() * b);
                }
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[K]) -> Result<Vec<K>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = vec![K::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] = out[i].clone() + a.clone() * v[j].clone();
        }
        Ok(out)
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut m = Matrix::zero(self.rows + other.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.clone());
        }
        for (&(i, j), v) in &other.entries {
            m.set(self.rows + i, j, v.clone());
        }
        Ok(m)
    }

    /// Row echelon reduction; returns (reduced row echelon form, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            // first nonzero entry at or below `rank` in this column
            let pivot_row = (rank..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            m.swap_rows(rank, pr);
            let p = m.get(rank, col);
            m.scale_row(rank, &(K::one() / p));
            for r in 0..m.rows {
                if r != rank {
                    let f = m.get(r, col);
                    if !f.is_zero() {
                        m.row_sub_multiple(r, rank, &f);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, by reducing the augmented block [self | I].
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for (&(i, j), v) in &self.entries {
            aug.set(i, j, v.clone());
        }
        for i in 0..n {
            aug.set(i, n + i, K::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel, deterministic from the reduced echelon pivots.
    pub fn kernel_basis(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![K::zero(); self.cols];
            v[f] = K::one();
            for (row, &p) in pivots.iter().enumerate() {
                let c = r.get(row, f);
                if !c.is_zero() {
                    v[p] = -c;
                }
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let mut ra = BTreeMap::new();
        let mut rb = BTreeMap::new();
        let keys: Vec<(usize, usize)> = self.entries.keys().cloned().collect();
        for (i, j) in keys {
            if i == a {
                ra.insert(j, self.entries.remove(&(i, j)).unwrap());
            } else if i == b {
                rb.insert(j, self.entries.remove(&(i, j)).unwrap());
            }
        }
        for (j, v) in ra {
            self.entries.insert((b, j), v);
        }
        for (j, v) in rb {
            self.entries.insert((a, j), v);
        }
    }

    fn scale_row(&mut self, r: usize, c: &K) {
        let cols: Vec<usize> = self
            .entries
            .range((r, 0)..=(r, usize::MAX))
            .map(|(&(_, j), _)| j)
            .collect();
        for j in cols {
            let v = self.get(r, j) * c.clone();
            self.set(r, j, v);
        }
    }

    /// row[dst] -= f * row[src]
    fn row_sub_multiple(&mut self, dst: usize, src: usize, f: &K) {
        let cols: Vec<usize> = self
            .entries
            .range((src, 0)..=(src, usize::MAX))
            .map(|(&(_, j), _)| j)
            .collect();
        for j in cols {
            let v = self.get(dst, j) - f.clone() * self.get(src, j);
            self.set(dst, j, v);
        }
    }
}

/// Dimension of ker(d_out) / im(d_in) for a two-step complex around one space.
///
/// `d_in` maps into the middle space (rows = middle dim), `d_out` maps out of
/// it (cols = middle dim). Fails with `NotAComplex` when d_out . d_in != 0.
pub fn homology_dim<K: Field>(d_in: &Matrix<K>, d_out: &Matrix<K>) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::ShapeMismatch(format!(
            "middle space is {} by d_in but {} by d_out",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(Error::NotAComplex(
            "composition d_out . d_in is nonzero".into(),
        ));
    }
    let ker = d_out.cols() - d_out.rank();
    Ok(ker - d_in.rank())
}

/// Membership of `v` in the rational span of `span`.
pub fn subspace_contains<K: Field>(span: &[Vec<K>], v: &[K]) -> Result<bool> {
    if v.iter().all(|x| x.is_zero()) {
        return Ok(true);
    }
    let dim = v.len();
    for (i, s) in span.iter().enumerate() {
        if s.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "span vector {i} has length {}, expected {dim}",
                s.len()
            )));
        }
    }
    let a = Matrix::from_rows(span.to_vec())?;
    let with_v = {
        let mut rows = span.to_vec();
        rows.push(v.to_vec());
        Matrix::from_rows(rows)?
    };
    Ok(a.rank() == with_v.rank())
}
