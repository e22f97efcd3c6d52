//! Dense matrices over the quaternions.
//!
//! Entries are stored row-major. Products keep the left factor on the left in
//! every scalar product, `(A·B)_{ij} = Σ_k A_{ik}·B_{kj}`, which is the only
//! order that makes matrix multiplication associative over `H`.

mod perm;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

pub use perm::Permutation;

use crate::quat::Quaternion;
use crate::{tol, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<const N: usize>(rows: [[Quaternion; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| rows[i][j])
    }

    /// Real matrix from rows of `f64`.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(N, N, |i, j| Quaternion::real(rows[i][j]))
    }

    pub fn diag(entries: &[Quaternion]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Quaternion::ZERO })
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub(crate) fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(s)).collect() }
    }

    /// `q·M`, the scalar acting from the left on every entry.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&e| q * e).collect() }
    }

    /// Frobenius norm `sqrt(Σ |entry|²)`.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|q| q.norm_sqr()).sum())
    }

    /// `‖self - other‖_F`.
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        libm::sqrt(self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix commutator `A·B - B·A`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    ///
    /// Row operations act from the left (`row_r -= c·row_p`) and pivots are
    /// normalised by their left inverse, so the accumulated transform is a
    /// genuine left inverse; over a division ring it is also a right inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.ensure_square()?;
        let threshold = tol::INVERSE_PIVOT * self.frobenius_norm();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (pivot_row, pivot_norm) = (col..n)
                .map(|r| (r, a[(r, col)].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot_norm > threshold) {
                return Err(Error::Singular);
            }
            a.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            let p_inv = a[(col, col)].inverse().ok_or(Error::Singular)?;
            a.left_mul_row(col, p_inv);
            inv.left_mul_row(col, p_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)];
                if factor == Quaternion::ZERO {
                    continue;
                }
                a.row_axpy(r, col, -factor);
                inv.row_axpy(r, col, -factor);
            }
        }
        Ok(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row_r ← q·row_r`.
    pub(crate) fn left_mul_row(&mut self, r: usize, q: Quaternion) {
        for j in 0..self.cols {
            let e = &mut self.data[r * self.cols + j];
            *e = q * *e;
        }
    }

    /// `row_dst ← row_dst + c·row_src`.
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, c: Quaternion) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += c * s;
        }
    }

    /// `col_dst ← col_dst + col_src·c`.
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, c: Quaternion) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += s * c;
        }
    }

    /// `‖M*·M - I‖_F`.
    pub fn symplectic_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.conj_transpose().matmul(self).dist(&Self::identity(self.rows))
    }

    /// Membership in `Sp(n) = {g : g*·g = 1}` up to `tol` in Frobenius norm.
    pub fn is_symplectic(&self, tol: f64) -> bool {
        self.symplectic_residual() <= tol
    }

    /// Largest entry norm strictly below the diagonal.
    pub fn lower_residual(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.rows {
            for j in 0..i.min(self.cols) {
                m = m.max(self[(i, j)].norm());
            }
        }
        m
    }

    /// Largest entry norm strictly above the diagonal.
    pub fn upper_residual(&self) -> f64 {
        self.transpose().lower_residual()
    }

    /// Distance from the set of unit upper triangular matrices (max norm).
    pub fn unit_upper_residual(&self) -> f64 {
        let diag = self.diagonal().iter().map(|d| d.dist(Quaternion::ONE)).fold(0.0, f64::max);
        diag.max(self.lower_residual())
    }

    /// Matrix exponential by scaling and squaring of the truncated Taylor
    /// series. Terms are summed until their norm drops below
    /// [`tol::EXP_TERM`] relative to the running sum.
    pub fn exp(&self) -> Result<Self> {
        let n = self.ensure_square()?;
        let norm = self.frobenius_norm();
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = self.scale(scale);
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for m in 1..64 {
            term = term.matmul(&a).scale(1.0 / m as f64);
            sum = &sum + &term;
            if term.frobenius_norm() <= tol::EXP_TERM * sum.frobenius_norm() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        Ok(sum)
    }

    /// The block embedding `f_{r,r+1}: Sp(2) → Sp(n)`: `a` occupies rows and
    /// columns `r, r+1` (1-based), the identity fills the rest.
    pub fn embed_2x2(a: &Self, r: usize, n: usize) -> Result<Self> {
        if a.rows != 2 || a.cols != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: a.rows.max(a.cols) });
        }
        if r == 0 || r >= n {
            return Err(Error::EmbedOutOfRange { r, n });
        }
        let mut m = Self::identity(n);
        for i in 0..2 {
            for j in 0..2 {
                m[(r - 1 + i, r - 1 + j)] = a[(i, j)];
            }
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs)
    }
}

impl Mul for QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: QMatrix) -> QMatrix {
        self.matmul(&rhs)
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.scale(-1.0)
    }
}
