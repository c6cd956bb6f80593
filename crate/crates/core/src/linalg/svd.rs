//! Complex singular value decomposition by one-sided (Hestenes) Jacobi
//! rotations, with full unitary factors and a fixed phase convention.

use std::cmp::Ordering;

use num_complex::Complex64;

use super::{MatrixC, Tolerances};
use crate::error::{Error, Result};

/// Sweep limit for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 80;

/// Acceptance bound on `‖V*V - I‖_max` and `‖W*W - I‖_max`.
pub const EPS_UNITARY: f64 = 1e-12;

/// Relative bound on the reconstruction residual `‖V Σ W* - F‖_F / (1 + s_1)`.
pub const EPS_RECON: f64 = 1e-12;

/// `F = V · diag(sigma) · W*` with `V` (m x m) and `W` (n x n) unitary.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub v: MatrixC,
    /// Nonincreasing, length `min(m, n)`.
    pub sigma: Vec<f64>,
    pub w: MatrixC,
    /// Number of singular values above the rank threshold.
    pub rank: usize,
}

impl SvdFactors {
    pub fn rows(&self) -> usize {
        self.v.rows()
    }

    pub fn cols(&self) -> usize {
        self.w.rows()
    }

    pub fn q(&self) -> usize {
        self.sigma.len()
    }

    pub fn s1(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// The `m x n` diagonal middle factor.
    pub fn sigma_matrix(&self) -> MatrixC {
        MatrixC::rect_diag(self.rows(), self.cols(), &self.sigma)
    }

    pub fn reconstruct(&self) -> MatrixC {
        &(&self.v * &self.sigma_matrix()) * &self.w.adjoint()
    }

    /// `V · D · W*` for an arbitrary `m x n` middle factor `D`.
    pub fn sandwich(&self, middle: &MatrixC) -> MatrixC {
        &(&self.v * middle) * &self.w.adjoint()
    }
}

type Column = Vec<Complex64>;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthogonalizes the columns of a tall matrix in place and returns the
/// accumulated unitary (as columns) such that `A_in · J = A_out`.
fn jacobi_orthogonalize(cols: &mut [Column]) -> Result<Vec<Column>> {
    let n = cols.len();
    let m = cols.first().map(Vec::len).unwrap_or(0);
    let mut acc: Vec<Column> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let threshold = f64::EPSILON * (m.max(1) as f64);

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = cols[p].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let beta = cols[q].iter().map(|z| z.norm_sqr()).sum::<f64>();
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let e = phase.conj();
                rotate_pair(cols, p, q, c, s, e);
                rotate_pair(&mut acc, p, q, c, s, e);
            }
        }
        if !rotated {
            return Ok(acc);
        }
    }
    Err(Error::Convergence {
        iterations: MAX_SWEEPS,
    })
}

/// `[x_p, x_q] <- [x_p, x_q] · [[c, s], [-s e, c e]]`.
fn rotate_pair(cols: &mut [Column], p: usize, q: usize, c: f64, s: f64, e: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let xp = &mut head[p];
    let xq = &mut tail[0];
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let eb = e * *b;
        let new_a = *a * c - eb * s;
        let new_b = *a * s + eb * c;
        *a = new_a;
        *b = new_b;
    }
}

/// Extends an orthonormal list to an orthonormal basis of `C^dim` by
/// Gram-Schmidt on the standard basis, always taking the candidate with the
/// largest residual (lowest index on ties).
fn complete_basis(mut basis: Vec<Column>, dim: usize) -> Vec<Column> {
    while basis.len() < dim {
        let mut best: Option<(f64, Column)> = None;
        for i in 0..dim {
            let mut r = vec![Complex64::new(0.0, 0.0); dim];
            r[i] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for b in &basis {
                    let proj = dot(b, &r);
                    for (x, y) in r.iter_mut().zip(b) {
                        *x -= proj * y;
                    }
                }
            }
            let nr = norm(&r);
            if best.as_ref().is_none_or(|(bn, _)| nr > *bn) {
                best = Some((nr, r));
            }
        }
        let (nr, mut r) = best.expect("dim > 0");
        for x in r.iter_mut() {
            *x /= nr;
        }
        basis.push(r);
    }
    basis
}

/// Unit phase of the largest-modulus entry; near-ties go to the lowest index.
fn leading_phase(v: &[Complex64]) -> Complex64 {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let lead = v
        .iter()
        .find(|z| z.norm() >= max * (1.0 - 1e-12))
        .expect("max attained");
    lead / lead.norm()
}

fn scale_column(v: &mut [Complex64], factor: Complex64) {
    for z in v.iter_mut() {
        *z *= factor;
    }
}

type TallSvd = (Vec<Column>, Vec<f64>, Vec<Column>, usize);

/// Thin factors of a tall matrix (`rows >= cols`): returns
/// (left basis `rows x rows`, sigma, right unitary `cols x cols`, paired count).
fn tall_svd(mut cols: Vec<Column>, rows: usize) -> Result<TallSvd> {
    let acc = jacobi_orthogonalize(&mut cols)?;
    let norms: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(Ordering::Equal));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let right: Vec<Column> = order.iter().map(|&j| acc[j].clone()).collect();
    let s0 = sigma.first().copied().unwrap_or(0.0);
    // Columns this small carry no reliable direction.
    let null_floor = s0 * f64::EPSILON * 8.0 * (rows.max(1) as f64);
    let paired = sigma
        .iter()
        .take_while(|&&s| s > null_floor && s > 0.0)
        .count();
    let left: Vec<Column> = order
        .iter()
        .take(paired)
        .map(|&j| cols[j].iter().map(|z| z / norms[j]).collect())
        .collect();
    let left = complete_basis(left, rows);
    Ok((left, sigma, right, paired))
}

/// Power-of-four factor that brings `max_abs` near one when it is so large
/// or small that squared norms would overflow or underflow; one otherwise.
/// Powers of four keep the scaling exact through square roots.
fn range_scale(max_abs: f64) -> f64 {
    if max_abs == 0.0 || (1e-150..=1e150).contains(&max_abs) {
        return 1.0;
    }
    let k = (max_abs.log2() / 2.0).round() as i32;
    4f64.powi(-k)
}

/// Singular value decomposition of `f` under the deterministic phase
/// convention: the largest-modulus entry of every right singular vector is
/// real and positive, ties broken by the lowest index.
pub fn svd(f: &MatrixC, tol: &Tolerances) -> Result<SvdFactors> {
    tol.validate()?;
    let (m, n) = f.shape();
    let scale = range_scale(f.max_abs());
    let scaled = f.scale(scale);
    let (mut v_cols, mut sigma, mut w_cols, paired) = if m >= n {
        let (left, sigma, right, paired) = tall_svd(scaled.columns(), m)?;
        (left, sigma, right, paired)
    } else {
        let (left, sigma, right, paired) = tall_svd(scaled.adjoint().columns(), n)?;
        (right, sigma, left, paired)
    };
    for s in sigma.iter_mut() {
        *s /= scale;
    }

    for j in 0..paired {
        let ph = leading_phase(&w_cols[j]).conj();
        scale_column(&mut w_cols[j], ph);
        scale_column(&mut v_cols[j], ph);
    }
    for col in w_cols.iter_mut().skip(paired) {
        let ph = leading_phase(col).conj();
        scale_column(col, ph);
    }
    for col in v_cols.iter_mut().skip(paired) {
        let ph = leading_phase(col).conj();
        scale_column(col, ph);
    }

    let v = MatrixC::from_columns(m, &v_cols)?;
    let w = MatrixC::from_columns(n, &w_cols)?;
    let rank = tol.rank_of(&sigma, m, n);
    Ok(SvdFactors { v, sigma, w, rank })
}

/// Singular values of `f`, nonincreasing, length `min(m, n)`.
pub fn singular_values(f: &MatrixC) -> Result<Vec<f64>> {
    let (m, n) = f.shape();
    let scale = range_scale(f.max_abs());
    let scaled = f.scale(scale);
    let mut cols = if m >= n {
        scaled.columns()
    } else {
        scaled.adjoint().columns()
    };
    jacobi_orthogonalize(&mut cols)?;
    let mut sigma: Vec<f64> = cols.iter().map(|c| norm(c) / scale).collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    Ok(sigma)
}
