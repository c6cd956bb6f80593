//! Dense complex matrices, the singular value decomposition, the canonical
//! polar decomposition and partial-isometry predicates.

mod matrix;
mod svd;

use std::ops::Range;

pub use matrix::MatrixC;
pub use svd::{singular_values, svd, SvdFactors, EPS_RECON, EPS_UNITARY, MAX_SWEEPS};

use crate::error::{Error, Result};

/// Numerical thresholds shared by every routine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Rank threshold, relative to `s_1` and scaled by `max(m, n)`.
    pub rank_rel: f64,
    /// Two singular values are equal when they differ by at most
    /// `cluster_rel * (1 + s_1)`.
    pub cluster_rel: f64,
    /// Entrywise slack of the partial-isometry predicate.
    pub iso: f64,
    /// Absolute slack when comparing singular values against one half.
    pub half: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_rel: 1e-10,
            cluster_rel: 1e-8,
            iso: 1e-9,
            half: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("rank", self.rank_rel),
            ("cluster", self.cluster_rel),
            ("iso", self.iso),
            ("half", self.half),
        ];
        for (name, value) in fields {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "tolerance `{name}` must lie in (0, 1), got {value}"
                )));
            }
        }
        Ok(())
    }

    /// `tau_rank = rank_rel * max(m, n) * s_1`.
    pub fn rank_threshold(&self, s1: f64, rows: usize, cols: usize) -> f64 {
        self.rank_rel * rows.max(cols) as f64 * s1
    }

    /// Number of singular values strictly above the rank threshold.
    pub fn rank_of(&self, sigma: &[f64], rows: usize, cols: usize) -> usize {
        let s1 = sigma.first().copied().unwrap_or(0.0);
        if s1 == 0.0 {
            return 0;
        }
        let tau = self.rank_threshold(s1, rows, cols);
        sigma.iter().filter(|&&s| s > tau).count()
    }

    pub fn cluster_gap(&self, s1: f64) -> f64 {
        self.cluster_rel * (1.0 + s1)
    }
}

/// Groups a nonincreasing vector into maximal runs of "equal" values: the
/// transitive closure of adjacent pairs within `tol.cluster_gap(s_1)`.
pub fn clusters(sigma: &[f64], tol: &Tolerances) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    if sigma.is_empty() {
        return out;
    }
    let gap = tol.cluster_gap(sigma[0]);
    let mut start = 0;
    for i in 1..sigma.len() {
        if (sigma[i - 1] - sigma[i]).abs() > gap {
            out.push(start..i);
            start = i;
        }
    }
    out.push(start..sigma.len());
    out
}

/// The cluster (a range of 0-based indices) containing `index`.
pub fn cluster_containing(sigma: &[f64], index: usize, tol: &Tolerances) -> Range<usize> {
    clusters(sigma, tol)
        .into_iter()
        .find(|c| c.contains(&index))
        .expect("index within sigma")
}

/// Canonical polar decomposition `F = U |F|` with `ker U = ker F`.
#[derive(Debug, Clone)]
pub struct CanonicalPolar {
    /// The canonical partial isometry `V [I_r 0; 0 0] W*`.
    pub isometry: MatrixC,
    /// `|F| = (F*F)^{1/2}`, n x n positive semidefinite.
    pub modulus: MatrixC,
    pub rank: usize,
}

pub fn canonical_polar(f: &MatrixC, tol: &Tolerances) -> Result<CanonicalPolar> {
    let factors = svd(f, tol)?;
    Ok(canonical_polar_from(&factors))
}

pub fn canonical_polar_from(factors: &SvdFactors) -> CanonicalPolar {
    let (m, n) = (factors.rows(), factors.cols());
    let isometry = factors.sandwich(&MatrixC::leading_identity(m, n, factors.rank));
    let w = &factors.w;
    let modulus = &(w * &MatrixC::rect_diag(n, n, &factors.sigma)) * &w.adjoint();
    CanonicalPolar {
        isometry,
        modulus,
        rank: factors.rank,
    }
}

/// Partial-isometry test: `X*X` must be a Hermitian idempotent within
/// `tol.iso`. Returns the rank (rounded trace of `X*X`) when it is one.
pub fn is_partial_isometry(x: &MatrixC, tol: &Tolerances) -> Option<usize> {
    let gram = &x.adjoint() * x;
    let idempotent = (&gram * &gram).max_abs_diff(&gram) <= tol.iso;
    let hermitian = gram.adjoint().max_abs_diff(&gram) <= tol.iso;
    if !(idempotent && hermitian) {
        return None;
    }
    let trace = gram.trace().re;
    let rank = trace.round();
    if (trace - rank).abs() > tol.iso * x.cols() as f64 || rank < 0.0 {
        return None;
    }
    Some(rank as usize)
}
