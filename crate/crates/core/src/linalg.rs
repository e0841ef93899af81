//! Dense exact matrices over a Euclidean domain.
//!
//! The Smith normal form is computed by elimination with minimal-norm pivots,
//! accumulating both transformation matrices. Linear solving, integer kernels
//! and image lattices are read off the resulting certificates.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{EuclideanDomain, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

pub type IntMatrix = Matrix<Integer>;

impl<R> Matrix<R> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

impl<R: EuclideanDomain> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<R>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[R]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Column vector.
    pub fn column(entries: Vec<R>) -> Self {
        let n = entries.len();
        Self::from_vec(n, 1, entries)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], R::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-R::one())
    }

    pub fn scale(&self, c: &R) -> Self {
        let entries = self.entries.iter().map(|a| c.clone() * a.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self[(i, j)].clone(),
                (false, false) => other[(i - self.rows, j - self.cols)].clone(),
                _ => R::zero(),
            }
        })
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)].clone() * other[(i % other.rows, j % other.cols)].clone()
        })
    }

    pub fn select_cols(&self, cols: impl IntoIterator<Item = usize>) -> Self {
        let cols: Vec<usize> = cols.into_iter().collect();
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<usize> = rows.into_iter().collect();
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Column-major flattening into a single column.
    pub fn vec_column(&self) -> Self {
        Self::from_fn(self.rows * self.cols, 1, |k, _| self[(k % self.rows, k / self.rows)].clone())
    }

    /// Inverse of [`Matrix::vec_column`].
    pub fn unvec(v: &[R], rows: usize, cols: usize) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self::from_fn(rows, cols, |i, j| v[i + rows * j].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &R) {
        for j in 0..self.cols {
            let s = self[(source, j)].clone();
            if !s.is_zero() {
                let t = std::mem::replace(&mut self[(target, j)], R::zero());
                self[(target, j)] = t + c.clone() * s;
            }
        }
    }

    /// col[target] += c * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &R) {
        for i in 0..self.rows {
            let s = self[(i, source)].clone();
            if !s.is_zero() {
                let t = std::mem::replace(&mut self[(i, target)], R::zero());
                self[(i, target)] = t + c.clone() * s;
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: &R) {
        for j in 0..self.cols {
            let t = std::mem::replace(&mut self[(i, j)], R::zero());
            self[(i, j)] = u.clone() * t;
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;

    fn index(&self, (i, j): (usize, usize)) -> &R {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.entries[i * self.cols + j])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&e| Integer::from(e)).collect())
    }

    /// Rows given as nested slices; all rows must have equal length.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Integer::from(rows[i][j]))
    }

    /// Rows of decimal strings, the on-disk representation.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect()
    }

    /// `cols` is needed for matrices with zero rows, whose width cannot be
    /// recovered from the rows themselves.
    pub fn from_string_rows(rows: &[Vec<String>], cols: usize) -> Result<Self, String> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(format!("row {i} has {} entries, expected {cols}", row.len()));
            }
            for e in row {
                entries.push(e.trim().parse::<Integer>().map_err(|_| format!("invalid integer {e:?}"))?);
            }
        }
        Ok(Self::from_vec(rows.len(), cols, entries))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    /// Width is taken from the first row; zero-row matrices deserialize as `0x0`.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_string_rows(&rows, cols).map_err(serde::de::Error::custom)
    }
}

/// `u * a * v = s` with `u`, `v` unimodular and `s` in Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<R> {
    pub u: Matrix<R>,
    pub s: Matrix<R>,
    pub v: Matrix<R>,
}

impl<R: EuclideanDomain> SmithDecomposition<R> {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<R> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn min_norm_position<R: EuclideanDomain>(
    a: &Matrix<R>,
    rows: impl Iterator<Item = usize> + Clone,
    cols: impl Iterator<Item = usize> + Clone,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), R::Norm)> = None;
    for i in rows {
        for j in cols.clone() {
            let e = &a[(i, j)];
            if e.is_zero() {
                continue;
            }
            let n = e.norm();
            if best.as_ref().is_none_or(|(_, b)| n < *b) {
                best = Some(((i, j), n));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form with transformation certificates.
pub fn snf<R: EuclideanDomain>(input: &Matrix<R>) -> SmithDecomposition<R> {
    let (m, n) = input.shape();
    let mut a = input.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_norm_position(&a, t..m, t..n) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (q, _) = a[(i, t)].div_rem_euclid(&a[(t, t)]);
                let q = -q;
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (q, _) = a[(t, j)].div_rem_euclid(&a[(t, t)]);
                let q = -q;
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // A remainder is now smaller than the pivot; bring the
                // smallest entry of the pivot row/column into position.
                let in_col = min_norm_position(&a, t..m, t..t + 1);
                let in_row = min_norm_position(&a, t..t + 1, t..n);
                let pick = match (in_col, in_row) {
                    (Some(c), Some(r)) => {
                        if a[c].norm() <= a[r].norm() {
                            c
                        } else {
                            r
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!("pivot is nonzero"),
                };
                a.swap_rows(t, pick.0);
                u.swap_rows(t, pick.0);
                a.swap_cols(t, pick.1);
                v.swap_cols(t, pick.1);
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(t, t)].divides(&a[(i, j)]));
            match offender {
                Some((i, _)) => {
                    let one = R::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        let unit = a[(t, t)].normalizing_unit();
        if !unit.is_one() {
            a.scale_row(t, &unit);
            u.scale_row(t, &unit);
        }
    }
    SmithDecomposition { u, s: a, v }
}

/// Integer solution `x` of `a * x = b`, if one exists.
pub fn solve<R: EuclideanDomain>(a: &Matrix<R>, b: &Matrix<R>) -> Result<Option<Matrix<R>>, LinalgError> {
    if a.rows != b.rows {
        return Err(LinalgError::Dimension(format!(
            "solve: lhs has {} rows, rhs has {}",
            a.rows, b.rows
        )));
    }
    let dec = snf(a);
    let r = dec.rank();
    let ub = dec.u.mul(b);
    // s * y = u * b, x = v * y
    let mut y = Matrix::zeros(a.cols, b.cols);
    for i in 0..a.rows {
        for k in 0..b.cols {
            let rhs = &ub[(i, k)];
            if i < r {
                match rhs.exact_div(&dec.s[(i, i)]) {
                    Some(q) => y[(i, k)] = q,
                    None => return Ok(None),
                }
            } else if !rhs.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(dec.v.mul(&y)))
}

/// Basis of the integer null space `{x : a x = 0}` as columns.
///
/// The lattice spanned is saturated: it equals the null space over the
/// fraction field intersected with the integer lattice.
pub fn kernel_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let dec = snf(a);
    let r = dec.rank();
    dec.v.select_cols(r..a.cols)
}

/// Basis of the lattice spanned by the columns of `a`.
pub fn image_basis<R: EuclideanDomain>(a: &Matrix<R>) -> Matrix<R> {
    let dec = snf(a);
    let r = dec.rank();
    a.mul(&dec.v).select_cols(0..r)
}

/// Rank over the fraction field, by fraction-free (Bareiss) elimination.
pub fn rank_over_fractions<R: EuclideanDomain>(a: &Matrix<R>) -> usize {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    let mut prev = R::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let pivot = m[(rank, c)].clone();
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let val = pivot.clone() * m[(i, j)].clone() - m[(i, c)].clone() * m[(rank, j)].clone();
                m[(i, j)] = val.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[(i, c)] = R::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Determinant by fraction-free elimination.
pub fn determinant<R: EuclideanDomain>(a: &Matrix<R>) -> R {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = R::one();
    let mut prev = R::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return R::zero();
        };
        if p != k {
            m.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = m[(k, k)].clone() * m[(i, j)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = val.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[(k, k)].clone();
    }
    if n == 0 {
        return R::one();
    }
    sign * m[(n - 1, n - 1)].clone()
}
