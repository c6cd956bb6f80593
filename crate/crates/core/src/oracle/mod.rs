//! Independent references used to certify the solver on small instances.

mod search;
mod sign_support;

pub use search::{
    exhaustive_nearest, gram_singular_values, SearchResult, MAX_SEARCH_DIM, MIN_RESOLUTION,
};
pub use sign_support::{
    binomial, census_count, sign_support_minimizers, SignSupportAssignment, MAX_ENUMERATION_DIM,
};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauges::Gauge;
use crate::isometry_approx::nearest_rank_k;
use crate::linalg::{singular_values, MatrixC, Tolerances};

/// Oracle agreement thresholds for the Frobenius norm and for everything else.
pub const AGREEMENT_TOL_FRO: f64 = 1e-6;
pub const AGREEMENT_TOL_OTHER: f64 = 1e-4;

pub fn agreement_tolerance(gauge: &Gauge) -> f64 {
    match gauge {
        Gauge::Schatten(p) if *p == 2.0 => AGREEMENT_TOL_FRO,
        _ => AGREEMENT_TOL_OTHER,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LidskiiCheck {
    /// `s(F - G) = |s(F) - s(G)|↓`.
    pub equality_holds: bool,
    /// `G F* = F G*` and `G* F = F* G`.
    pub commutation_holds: bool,
}

/// Equality case of the singular-value Lidskii inequality and the
/// commutation relations it forces.
pub fn lidskii_equality_check(f: &MatrixC, g: &MatrixC) -> Result<LidskiiCheck> {
    if f.shape() != g.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            f.rows(),
            f.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let sf = singular_values(f)?;
    let sg = singular_values(g)?;
    let sd = singular_values(&(f - g))?;
    let mut diff: Vec<f64> = sf.iter().zip(&sg).map(|(a, b)| (a - b).abs()).collect();
    diff.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let eq_tol = 1e-8 * (1.0 + sf[0] + sg[0]);
    let equality_holds = sd.iter().zip(&diff).all(|(a, b)| (a - b).abs() <= eq_tol);

    let comm_tol = 1e-8 * (1.0 + sf[0] * sg[0]);
    let left = (g * &f.adjoint()).max_abs_diff(&(f * &g.adjoint()));
    let right = (&g.adjoint() * f).max_abs_diff(&(&f.adjoint() * g));
    Ok(LidskiiCheck {
        equality_holds,
        commutation_holds: left <= comm_tol && right <= comm_tol,
    })
}

/// Ranks whose components contain the global minimizers, read off from the
/// position of the singular values relative to one half. With
/// `{j : s_j = 1/2} = {k, ..., k+l}` the tied ranks run from `k - 1` (or 1)
/// through `k + l`.
pub fn predicted_global_ranks(sigma: &[f64], rank: usize, half_tol: f64) -> Vec<usize> {
    if rank == 0 {
        return Vec::new();
    }
    let s = &sigma[..rank];
    let half: Vec<usize> = (1..=rank)
        .filter(|&j| (s[j - 1] - 0.5).abs() <= half_tol)
        .collect();
    match (half.first(), half.last()) {
        (Some(&lo), Some(&hi)) => ((lo - 1).max(1)..=hi).collect(),
        _ if s[0] < 0.5 => vec![1],
        _ => vec![s.iter().filter(|&&v| v > 0.5).count()],
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> MatrixC {
    let data: Vec<Complex64> = (0..rows * cols)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im)
        })
        .collect();
    MatrixC::new(rows, cols, data).expect("finite samples")
}

/// Haar-distributed unitary from the QR factorization of a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> MatrixC {
    let g = random_complex_matrix(rng, n, n).into_dmatrix();
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    MatrixC::from_dmatrix(q * phases).expect("finite unitary")
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub rows: usize,
    pub cols: usize,
    pub k: usize,
    pub solver_distance: f64,
    pub oracle_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub gauge: Gauge,
    pub resolution: usize,
    /// Largest `|oracle - solver|` over every trial and rank.
    pub max_gap: f64,
    /// Cases where the search found a strictly better partial isometry
    /// than the solver, beyond the agreement tolerance.
    pub violations: Vec<Violation>,
}

/// Compares the solver against the search oracle on `inputs`, every rank.
pub fn verify_matrices(
    inputs: &[MatrixC],
    gauge: &Gauge,
    resolution: usize,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let slack = agreement_tolerance(gauge);
    let mut max_gap: f64 = 0.0;
    let mut violations = Vec::new();
    for (trial, f) in inputs.iter().enumerate() {
        for k in 1..=f.min_dim() {
            if matches!(gauge, Gauge::KyFan(j) if *j > f.min_dim()) {
                continue;
            }
            let solver = nearest_rank_k(f, k, gauge, tol)?.distance;
            let oracle = exhaustive_nearest(f, k, gauge, resolution)?.distance;
            max_gap = max_gap.max((oracle - solver).abs());
            if solver > oracle + slack {
                violations.push(Violation {
                    trial,
                    rows: f.rows(),
                    cols: f.cols(),
                    k,
                    solver_distance: solver,
                    oracle_distance: oracle,
                });
            }
        }
    }
    Ok(VerifyReport {
        trials: inputs.len(),
        gauge: *gauge,
        resolution,
        max_gap,
        violations,
    })
}

/// Random complex inputs with `1 <= m, n <= 3`.
pub fn random_small_matrices(seed: u64, trials: usize) -> Vec<MatrixC> {
    let mut rng = seeded_rng(seed);
    (0..trials)
        .map(|_| {
            let m = rng.random_range(1..=MAX_SEARCH_DIM);
            let n = rng.random_range(1..=MAX_SEARCH_DIM);
            random_complex_matrix(&mut rng, m, n)
        })
        .collect()
}
