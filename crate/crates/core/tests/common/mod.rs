#![allow(dead_code)]

use isoproxim::oracle::{random_complex_matrix, random_unitary};
use isoproxim::MatrixC;
use num_complex::Complex64;
use rand::Rng;

/// `A · diag(s) · B*` with Haar-random unitaries `A`, `B`.
pub fn with_singular_values<R: Rng>(rng: &mut R, m: usize, n: usize, s: &[f64]) -> MatrixC {
    let a = random_unitary(rng, m);
    let b = random_unitary(rng, n);
    &(&a * &MatrixC::rect_diag(m, n, s)) * &b.adjoint()
}

/// Gaussian matrix of rank at most `r`.
pub fn low_rank<R: Rng>(rng: &mut R, m: usize, n: usize, r: usize) -> MatrixC {
    let left = random_complex_matrix(rng, m, r);
    let right = random_complex_matrix(rng, r, n);
    &left * &right
}

/// Random orthogonal projection of rank `rank` on `C^dim`.
pub fn random_projection<R: Rng>(rng: &mut R, dim: usize, rank: usize) -> MatrixC {
    let q = random_unitary(rng, dim);
    let cols: Vec<Vec<Complex64>> = q.columns().into_iter().take(rank).collect();
    if cols.is_empty() {
        return MatrixC::zeros(dim, dim);
    }
    let qk = MatrixC::from_columns(dim, &cols).unwrap();
    &qk * &qk.adjoint()
}

/// Random partial isometry of shape `m x n` and rank `rank`.
pub fn random_partial_isometry<R: Rng>(rng: &mut R, m: usize, n: usize, rank: usize) -> MatrixC {
    let a = random_unitary(rng, m);
    let b = random_unitary(rng, n);
    &(&a * &MatrixC::leading_identity(m, n, rank)) * &b.adjoint()
}

/// Block-diagonal matrix with the given square blocks.
pub fn block_diag(blocks: &[MatrixC]) -> MatrixC {
    let n: usize = blocks.iter().map(MatrixC::rows).sum();
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    let mut offset = 0;
    for q in blocks {
        let b = q.rows();
        for i in 0..b {
            for j in 0..b {
                data[(offset + i) * n + offset + j] = q.get(i, j);
            }
        }
        offset += b;
    }
    MatrixC::new(n, n, data).unwrap()
}

/// Nonincreasing sample from `[0, scale)`.
pub fn sorted_sample<R: Rng>(rng: &mut R, len: usize, scale: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (0..len).map(|_| rng.random::<f64>() * scale).collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// `|⟨f, u_j⟩|²` summed over the columns of `u`.
pub fn frame_energy(u: &MatrixC, f: &[Complex64]) -> f64 {
    u.columns()
        .iter()
        .map(|col| {
            col.iter()
                .zip(f)
                .map(|(a, b)| a.conj() * b)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum()
}

/// Random vector in the column span of `u`.
pub fn random_in_span<R: Rng>(rng: &mut R, u: &MatrixC) -> Vec<Complex64> {
    let coeffs = random_complex_matrix(rng, u.cols(), 1);
    (u * &coeffs).column(0)
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}
