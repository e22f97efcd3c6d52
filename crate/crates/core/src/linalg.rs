//! Small dense real linear algebra used for ranks and determinants.

use alloc::vec::Vec;
use nalgebra::DMatrix;

/// Row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: alloc::vec![0.0; rows * cols] }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    fn to_na(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows == 0 || self.cols == 0 {
            return Vec::new();
        }
        let mut s: Vec<f64> = self.to_na().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
        s
    }

    /// Number of singular values above `rel_tol · σ_max`. The zero matrix
    /// has rank 0.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let s = self.singular_values();
        let Some(&max) = s.first() else { return 0 };
        if max == 0.0 || !max.is_finite() {
            return 0;
        }
        s.iter().filter(|&&x| x > rel_tol * max).count()
    }

    pub fn determinant(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        self.to_na().determinant()
    }
}

/// Determinant of a 4×4 matrix given by its columns.
pub fn det4(c: [[f64; 4]; 4]) -> f64 {
    let m = nalgebra::Matrix4::from_fn(|i, j| c[j][i]);
    m.determinant()
}
