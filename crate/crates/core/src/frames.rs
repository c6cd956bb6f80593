//! Finite frames: synthesis matrices, excess, optimal frame bounds, and the
//! symmetric (Frobenius-nearest) Parseval approximations with fixed excess,
//! without constraints, and inside a prescribed subspace.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauges::Gauge;
use crate::isometry_approx::{
    global_from_factors, rank_k_from_factors, Certificate, MinimizerSet, DISTANCE_TIE_REL,
};
use crate::linalg::{is_partial_isometry, svd, MatrixC, SvdFactors, Tolerances};

/// An ordered list of `n` vectors in `C^m`, repetitions allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    ambient_dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl Frame {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidInput(
                "ambient dimension must be positive".into(),
            ));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidInput(
                "a frame needs at least one vector".into(),
            ));
        }
        if let Some((j, v)) = vectors
            .iter()
            .enumerate()
            .find(|(_, v)| v.len() != ambient_dim)
        {
            return Err(Error::InvalidInput(format!(
                "vector {j} has length {}, expected {ambient_dim}",
                v.len()
            )));
        }
        if vectors
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidInput("frame vectors must be finite".into()));
        }
        if vectors.iter().flatten().all(|z| z.norm() == 0.0) {
            return Err(Error::InvalidInput(
                "all frame vectors are zero; a frame must span a nonzero subspace".into(),
            ));
        }
        Ok(Self {
            ambient_dim,
            vectors,
        })
    }

    /// The frame whose vectors are the columns of `f`.
    pub fn from_synthesis(f: &MatrixC) -> Result<Self> {
        Self::new(f.rows(), f.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// `m x n` matrix whose `j`-th column is the `j`-th vector.
    pub fn synthesis(&self) -> MatrixC {
        MatrixC::from_columns(self.ambient_dim, &self.vectors).expect("validated frame")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    pub excess: usize,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_parseval: bool,
    pub is_tight: bool,
    pub span_dim: usize,
}

pub fn analyze(fr: &Frame, tol: &Tolerances) -> Result<FrameReport> {
    let f = fr.synthesis();
    let factors = svd(&f, tol)?;
    let r = factors.rank;
    if r == 0 {
        return Err(Error::InvalidInput(
            "the frame vectors are numerically zero".into(),
        ));
    }
    let upper = factors.sigma[0].powi(2);
    let lower = factors.sigma[r - 1].powi(2);
    Ok(FrameReport {
        excess: fr.len() - r,
        lower_bound: lower,
        upper_bound: upper,
        is_parseval: is_partial_isometry(&f, tol).is_some(),
        is_tight: (upper - lower).abs() <= tol.cluster_gap(upper),
        span_dim: r,
    })
}

#[derive(Debug, Clone)]
pub struct FixedExcessApprox {
    pub frame: Frame,
    pub k: usize,
    pub certificate: Certificate,
    pub family: MinimizerSet,
    /// Frobenius distance between the synthesis matrices.
    pub distance: f64,
}

/// Symmetric approximation among Parseval frames of excess `n - k`.
pub fn symmetric_approx_fixed_excess(
    fr: &Frame,
    k: usize,
    tol: &Tolerances,
) -> Result<FixedExcessApprox> {
    let factors = svd(&fr.synthesis(), tol)?;
    let res = rank_k_from_factors(&factors, k, &Gauge::frobenius(), tol)?;
    Ok(FixedExcessApprox {
        frame: Frame::from_synthesis(&res.minimizer)?,
        k,
        certificate: res.certificate,
        family: res.minimizer_set,
        distance: res.distance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalCertificate {
    Unique,
    /// Singular values at one half make several components tie.
    NonUniqueHalfTie,
    /// `s_k = s_{k+1}` at the selected rank.
    NonUniqueMultiplicity,
}

#[derive(Debug, Clone)]
pub struct GlobalApprox {
    pub frame: Frame,
    pub k: usize,
    pub certificate: GlobalCertificate,
    pub distance: f64,
}

/// Symmetric approximation among all `n`-element Parseval frames.
pub fn symmetric_approx_global(fr: &Frame, tol: &Tolerances) -> Result<GlobalApprox> {
    let f = fr.synthesis();
    let factors = svd(&f, tol)?;
    if factors.rank == 0 {
        return Err(Error::InvalidInput(
            "the frame vectors are numerically zero".into(),
        ));
    }
    let (u, k, certificate) = half_threshold_approx(&factors, tol)?;
    let distance = (&f - &u).frobenius_norm();
    Ok(GlobalApprox {
        frame: Frame::from_synthesis(&u)?,
        k,
        certificate,
        distance,
    })
}

/// Rank `k = #{j : s_j >= 1/2}` (at least one), with the uniqueness
/// verdict, cross-checked against the exhaustive comparison over ranks.
fn half_threshold_approx(
    factors: &SvdFactors,
    tol: &Tolerances,
) -> Result<(MatrixC, usize, GlobalCertificate)> {
    let r = factors.rank;
    let sigma = &factors.sigma[..r];
    let k = sigma
        .iter()
        .filter(|&&s| s >= 0.5 - tol.half)
        .count()
        .max(1);

    let half: Vec<usize> = (1..=r)
        .filter(|&j| (sigma[j - 1] - 0.5).abs() <= tol.half)
        .collect();
    let tied_ranks = match (half.first(), half.last()) {
        (Some(&lo), Some(&hi)) => hi - (lo - 1).max(1) + 1,
        _ => 1,
    };

    let frob = Gauge::frobenius();
    let res = rank_k_from_factors(factors, k, &frob, tol)?;
    let certificate = if tied_ranks >= 2 {
        GlobalCertificate::NonUniqueHalfTie
    } else if res.minimizer_set.is_unique() {
        GlobalCertificate::Unique
    } else {
        GlobalCertificate::NonUniqueMultiplicity
    };

    let global = global_from_factors(factors, &frob, tol)?;
    let slack = DISTANCE_TIE_REL * (1.0 + factors.s1()) + 4.0 * tol.half;
    if res.distance > global.distance + slack {
        return Err(Error::Numerical(format!(
            "rank {k} from the one-half rule is not a global minimizer (best ranks {:?})",
            global.best_ranks
        )));
    }
    Ok((res.minimizer, k, certificate))
}

#[derive(Debug, Clone)]
pub struct SubspaceApprox {
    pub frame: Frame,
    pub k: usize,
    pub certificate: GlobalCertificate,
    /// Frobenius distance from the original synthesis matrix.
    pub distance: f64,
}

/// Orthonormal basis (as columns) of the span of the columns of `basis`.
pub fn orthonormal_basis(basis: &MatrixC, tol: &Tolerances) -> Vec<Vec<Complex64>> {
    let cols = basis.columns();
    let scale = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let floor = tol.rank_threshold(scale, basis.rows(), basis.cols());
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for mut c in cols {
        for _ in 0..2 {
            for q in &out {
                let proj: Complex64 = q.iter().zip(&c).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in c.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > floor && nrm > 0.0 {
            out.push(c.into_iter().map(|z| z / nrm).collect());
        }
    }
    out
}

/// Orthogonal projection onto the column span of `basis`.
pub fn subspace_projection(basis: &MatrixC, tol: &Tolerances) -> MatrixC {
    let m = basis.rows();
    let q = orthonormal_basis(basis, tol);
    if q.is_empty() {
        return MatrixC::zeros(m, m);
    }
    let qm = MatrixC::from_columns(m, &q).expect("nonempty basis");
    &qm * &qm.adjoint()
}

/// Symmetric approximation among Parseval frames whose vectors lie in the
/// column span `S` of `s_basis`.
pub fn symmetric_approx_subspace(
    fr: &Frame,
    s_basis: &MatrixC,
    tol: &Tolerances,
) -> Result<SubspaceApprox> {
    let f = fr.synthesis();
    if s_basis.rows() != f.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subspace basis has {} rows, frame ambient dimension is {}",
            s_basis.rows(),
            f.rows()
        )));
    }
    let projected = &subspace_projection(s_basis, tol) * &f;
    let factors = svd(&projected, tol)?;
    let s1_f = svd(&f, tol)?.s1();
    if factors.rank == 0 || factors.s1() <= tol.rank_threshold(s1_f, f.rows(), f.cols()) {
        return Err(Error::Precondition(
            "the frame spans a subspace orthogonal to S (P_S F = 0); \
             every n-Parseval frame in S is a symmetric approximation"
                .into(),
        ));
    }
    let (u, k, certificate) = half_threshold_approx(&factors, tol)?;
    let distance = (&f - &u).frobenius_norm();
    Ok(SubspaceApprox {
        frame: Frame::from_synthesis(&u)?,
        k,
        certificate,
        distance,
    })
}
