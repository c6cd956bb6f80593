use std::fmt;
use std::ops::{Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex `rows x cols` matrix whose entries are all finite.
#[derive(Clone, PartialEq)]
pub struct MatrixC {
    inner: DMatrix<Complex64>,
}

impl MatrixC {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &data))
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Builds a real matrix from a slice of rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        let data: Vec<f64> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::from_real(m, n, &data)
    }

    /// Builds an `m x n` matrix from its columns.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(format!(
                "every column must have length {rows}"
            )));
        }
        if columns.is_empty() || rows == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        let inner = DMatrix::from_fn(rows, columns.len(), |i, j| columns[j][i]);
        Self::from_dmatrix(inner)
    }

    pub fn from_dmatrix(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::InvalidInput(
                "matrix dimensions must be positive".into(),
            ));
        }
        if inner.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "matrix contains non-finite entries".into(),
            ));
        }
        Ok(Self { inner })
    }

    /// Wraps the result of arithmetic on already validated matrices.
    pub(crate) fn wrap(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.nrows() > 0 && inner.ncols() > 0);
        Self { inner }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::wrap(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(DMatrix::identity(n, n))
    }

    /// `rows x cols` matrix with `diag` on the main diagonal, zero elsewhere.
    pub fn rect_diag(rows: usize, cols: usize, diag: &[f64]) -> Self {
        let mut inner = DMatrix::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            inner[(i, i)] = Complex64::new(d, 0.0);
        }
        Self::wrap(inner)
    }

    /// `[I_k 0; 0 0]` of shape `rows x cols`.
    pub fn leading_identity(rows: usize, cols: usize, k: usize) -> Self {
        Self::rect_diag(rows, cols, &vec![1.0; k.min(rows).min(cols)])
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    /// `q = min(rows, cols)`.
    pub fn min_dim(&self) -> usize {
        self.rows().min(self.cols())
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.inner.adjoint())
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        self.inner.column(j).iter().copied().collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    /// Entries in row-major order.
    pub fn row_major(&self) -> Vec<Complex64> {
        let (m, n) = self.shape();
        let mut out = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn scale(&self, alpha: f64) -> Self {
        Self::wrap(self.inner.map(|z| z * alpha))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &MatrixC) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.inner
            .iter()
            .zip(other.inner.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.inner.iter().all(|z| z.im == 0.0)
    }

    pub fn try_mul(&self, rhs: &MatrixC) -> Result<MatrixC> {
        if self.cols() != rhs.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(self * rhs)
    }

    pub fn try_sub(&self, rhs: &MatrixC) -> Result<MatrixC> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows(),
                rhs.cols(),
                self.rows(),
                self.cols()
            )));
        }
        Ok(self - rhs)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        self.inner.diagonal().iter().sum()
    }
}

impl Mul<&MatrixC> for &MatrixC {
    type Output = MatrixC;

    fn mul(self, rhs: &MatrixC) -> MatrixC {
        MatrixC::wrap(&self.inner * &rhs.inner)
    }
}

impl Sub<&MatrixC> for &MatrixC {
    type Output = MatrixC;

    fn sub(self, rhs: &MatrixC) -> MatrixC {
        MatrixC::wrap(&self.inner - &rhs.inner)
    }
}

impl fmt::Debug for MatrixC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixC {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "  ")?;
            for j in 0..self.cols() {
                let z = self.get(i, j);
                write!(f, "{:>10.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
