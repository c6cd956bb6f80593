//! Nearest partial isometries of prescribed rank, the complete set of
//! minimizers with a uniqueness certificate, and the rank-free problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauges::{gauge_eval, Gauge};
use crate::linalg::{
    clusters, is_partial_isometry, singular_values, svd, MatrixC, SvdFactors, Tolerances,
};

/// Tolerance for "same distance" comparisons, relative to `1 + s_1`.
pub const DISTANCE_TIE_REL: f64 = 1e-10;

/// Tolerance used when a sampled family member is checked against the
/// optimal deviation spectrum, relative to `1 + s_1`.
pub const MEMBER_CHECK_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Strictly convex gauge and a single minimizer.
    UniqueStrictlyConvex,
    /// `s_k = s_{k+1}` with `k < rank`: a family of projections.
    NonUniqueMultiplicity,
    /// `k > rank`: a family of partial isometries on the kernel.
    NonUniqueRankExcess,
    /// The gauge is not strictly convex; the reported family may be
    /// incomplete.
    UnknownGaugeNotStrictlyConvex,
}

#[derive(Debug, Clone)]
pub enum MinimizerVariant {
    Unique {
        u: MatrixC,
    },
    /// Members `V · blockdiag(I_{l_k}, P, 0) · W*` over orthogonal
    /// projections `P` of rank `proj_rank` in dimension `e_k`.
    ProjectionFamily {
        v: MatrixC,
        w: MatrixC,
        l_k: usize,
        e_k: usize,
        proj_rank: usize,
    },
    /// Members `V · blockdiag(I_r, S) · W*` over partial isometries `S` of
    /// rank `iso_rank` and shape `(m - r) x (n - r)`.
    IsometryFamily {
        v: MatrixC,
        w: MatrixC,
        r: usize,
        iso_rank: usize,
    },
}

/// Every rank-`k` minimizer the theory describes for a strictly convex
/// gauge, in closed form.
#[derive(Debug, Clone)]
pub struct MinimizerSet {
    pub k: usize,
    /// Singular values of the input, used to certify sampled members.
    pub sigma: Vec<f64>,
    /// Numerical rank of the input.
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub variant: MinimizerVariant,
}

impl MinimizerSet {
    pub fn is_unique(&self) -> bool {
        matches!(self.variant, MinimizerVariant::Unique { .. })
    }

    pub fn variant_name(&self) -> &'static str {
        match self.variant {
            MinimizerVariant::Unique { .. } => "unique",
            MinimizerVariant::ProjectionFamily { .. } => "projection_family",
            MinimizerVariant::IsometryFamily { .. } => "isometry_family",
        }
    }

    /// Family parameter that reproduces the canonical representative `U_k`:
    /// `[I 0; 0 0]` of the right shape and rank.
    pub fn canonical_parameter(&self) -> Option<MatrixC> {
        match self.variant {
            MinimizerVariant::Unique { .. } => None,
            MinimizerVariant::ProjectionFamily { e_k, proj_rank, .. } => {
                Some(MatrixC::leading_identity(e_k, e_k, proj_rank))
            }
            MinimizerVariant::IsometryFamily { r, iso_rank, .. } => Some(
                MatrixC::leading_identity(self.rows - r, self.cols - r, iso_rank),
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RankKResult {
    pub k: usize,
    /// Canonical minimizer `U_k = V [I_k 0; 0 0] W*`.
    pub minimizer: MatrixC,
    pub distance: f64,
    pub gauge: Gauge,
    pub minimizer_set: MinimizerSet,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub struct GlobalResult {
    /// Every rank whose component attains the global minimum, increasing.
    pub best_ranks: Vec<usize>,
    pub results: Vec<RankKResult>,
    pub distance: f64,
}

fn check_rank(k: usize, q: usize) -> Result<()> {
    if k == 0 || k > q {
        return Err(Error::RankOutOfRange { k, q });
    }
    Ok(())
}

/// Singular values of `F - U_k` before sorting, split by regime:
/// `k < r`: `(s_1-1, ..., s_k-1, s_{k+1}, ..., s_r, 0, ...)`,
/// `k = r`: `(s_1-1, ..., s_r-1, 0, ...)`,
/// `k > r`: `(s_1-1, ..., s_r-1, 1 (k-r times), 0, ...)`.
pub fn deviation_vector(sigma: &[f64], rank: usize, k: usize) -> Vec<f64> {
    let q = sigma.len();
    let mut out = vec![0.0; q];
    if k <= rank {
        for j in 0..k {
            out[j] = sigma[j] - 1.0;
        }
        out[k..rank].copy_from_slice(&sigma[k..rank]);
    } else {
        for j in 0..rank {
            out[j] = sigma[j] - 1.0;
        }
        for slot in out.iter_mut().take(k).skip(rank) {
            *slot = 1.0;
        }
    }
    out
}

/// `V [I_k 0; 0 0] W*` for the factors of an SVD.
pub fn leading_partial_isometry(factors: &SvdFactors, k: usize) -> MatrixC {
    factors.sandwich(&MatrixC::leading_identity(
        factors.rows(),
        factors.cols(),
        k,
    ))
}

/// Distance from `F` to the rank-`k` partial isometries, from its
/// singular values alone.
pub fn dist_rank_k(f: &MatrixC, k: usize, gauge: &Gauge, tol: &Tolerances) -> Result<f64> {
    check_rank(k, f.min_dim())?;
    let factors = svd(f, tol)?;
    gauge_eval(gauge, &deviation_vector(&factors.sigma, factors.rank, k))
}

pub fn nearest_rank_k(
    f: &MatrixC,
    k: usize,
    gauge: &Gauge,
    tol: &Tolerances,
) -> Result<RankKResult> {
    check_rank(k, f.min_dim())?;
    let factors = svd(f, tol)?;
    rank_k_from_factors(&factors, k, gauge, tol)
}

/// Rank-`k` solution built from an already computed SVD.
pub fn rank_k_from_factors(
    factors: &SvdFactors,
    k: usize,
    gauge: &Gauge,
    tol: &Tolerances,
) -> Result<RankKResult> {
    check_rank(k, factors.q())?;
    let sigma = &factors.sigma;
    let r = factors.rank;
    let minimizer = leading_partial_isometry(factors, k);
    let distance = gauge_eval(gauge, &deviation_vector(sigma, r, k))?;

    let variant = if k < r {
        let runs = clusters(&sigma[..r], tol);
        let run = runs
            .iter()
            .find(|c| c.contains(&(k - 1)))
            .expect("k - 1 < r")
            .clone();
        if run.contains(&k) {
            MinimizerVariant::ProjectionFamily {
                v: factors.v.clone(),
                w: factors.w.clone(),
                l_k: run.start,
                e_k: run.len(),
                proj_rank: k - run.start,
            }
        } else {
            MinimizerVariant::Unique {
                u: minimizer.clone(),
            }
        }
    } else if k == r {
        MinimizerVariant::Unique {
            u: minimizer.clone(),
        }
    } else {
        MinimizerVariant::IsometryFamily {
            v: factors.v.clone(),
            w: factors.w.clone(),
            r,
            iso_rank: k - r,
        }
    };

    let certificate = if !gauge.is_strictly_convex() {
        Certificate::UnknownGaugeNotStrictlyConvex
    } else {
        match variant {
            MinimizerVariant::Unique { .. } => Certificate::UniqueStrictlyConvex,
            MinimizerVariant::ProjectionFamily { .. } => Certificate::NonUniqueMultiplicity,
            MinimizerVariant::IsometryFamily { .. } => Certificate::NonUniqueRankExcess,
        }
    };

    Ok(RankKResult {
        k,
        minimizer,
        distance,
        gauge: *gauge,
        minimizer_set: MinimizerSet {
            k,
            sigma: sigma.clone(),
            rank: r,
            rows: factors.rows(),
            cols: factors.cols(),
            variant,
        },
        certificate,
    })
}

fn is_orthogonal_projection(p: &MatrixC, tol: &Tolerances) -> Option<usize> {
    if p.rows() != p.cols() || p.adjoint().max_abs_diff(p) > tol.iso {
        return None;
    }
    is_partial_isometry(p, tol).filter(|_| (p * p).max_abs_diff(p) <= tol.iso)
}

fn embed(base: MatrixC, block: &MatrixC, offset: usize) -> MatrixC {
    let mut inner = base.into_dmatrix();
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            inner[(offset + i, offset + j)] = block.get(i, j);
        }
    }
    MatrixC::from_dmatrix(inner).expect("finite blocks")
}

/// Concrete member of a minimizer family. `param` is ignored for a unique
/// minimizer; otherwise it is the projection `P` or partial isometry `S`.
pub fn sample_minimizer(
    ms: &MinimizerSet,
    param: Option<&MatrixC>,
    tol: &Tolerances,
) -> Result<MatrixC> {
    let (v, w, middle) = match &ms.variant {
        MinimizerVariant::Unique { u } => return Ok(u.clone()),
        MinimizerVariant::ProjectionFamily {
            v,
            w,
            l_k,
            e_k,
            proj_rank,
        } => {
            let p = param.ok_or_else(|| {
                Error::Precondition("a projection parameter is required for this family".into())
            })?;
            if p.shape() != (*e_k, *e_k) {
                return Err(Error::Precondition(format!(
                    "projection parameter must be {e_k}x{e_k}, got {}x{}",
                    p.rows(),
                    p.cols()
                )));
            }
            match is_orthogonal_projection(p, tol) {
                Some(rank) if rank == *proj_rank => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "parameter must be an orthogonal projection of rank {proj_rank}"
                    )))
                }
            }
            let middle = embed(MatrixC::leading_identity(ms.rows, ms.cols, *l_k), p, *l_k);
            (v, w, middle)
        }
        MinimizerVariant::IsometryFamily { v, w, r, iso_rank } => {
            let s = param.ok_or_else(|| {
                Error::Precondition(
                    "a partial isometry parameter is required for this family".into(),
                )
            })?;
            let shape = (ms.rows - r, ms.cols - r);
            if s.shape() != shape {
                return Err(Error::Precondition(format!(
                    "partial isometry parameter must be {}x{}, got {}x{}",
                    shape.0,
                    shape.1,
                    s.rows(),
                    s.cols()
                )));
            }
            match is_partial_isometry(s, tol) {
                Some(rank) if rank == *iso_rank => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "parameter must be a partial isometry of rank {iso_rank}"
                    )))
                }
            }
            let middle = embed(MatrixC::leading_identity(ms.rows, ms.cols, *r), s, *r);
            (v, w, middle)
        }
    };

    let member = &(v * &middle) * &w.adjoint();
    verify_member(ms, &middle, &member, tol)?;
    Ok(member)
}

/// A member is optimal for every gauge when `s(Σ - D)` equals the optimal
/// deviation spectrum; it must also be a rank-`k` partial isometry.
fn verify_member(
    ms: &MinimizerSet,
    middle: &MatrixC,
    member: &MatrixC,
    tol: &Tolerances,
) -> Result<()> {
    if is_partial_isometry(member, tol) != Some(ms.k) {
        return Err(Error::Numerical(format!(
            "sampled member is not a rank-{} partial isometry",
            ms.k
        )));
    }
    let sigma_m = MatrixC::rect_diag(ms.rows, ms.cols, &ms.sigma);
    let got = singular_values(&(&sigma_m - middle))?;
    let mut want: Vec<f64> = deviation_vector(&ms.sigma, ms.rank, ms.k)
        .iter()
        .map(|x| x.abs())
        .collect();
    want.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let s1 = ms.sigma.first().copied().unwrap_or(0.0);
    let gap = got
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if gap > MEMBER_CHECK_REL * (1.0 + s1) {
        return Err(Error::Numerical(format!(
            "sampled member deviates from the optimal spectrum by {gap:e}"
        )));
    }
    Ok(())
}

/// Best approximation over all partial isometries: compares every
/// component `k = 1..=rank` and keeps the ranks that tie for the minimum.
pub fn nearest_global(f: &MatrixC, gauge: &Gauge, tol: &Tolerances) -> Result<GlobalResult> {
    let factors = svd(f, tol)?;
    global_from_factors(&factors, gauge, tol)
}

pub fn global_from_factors(
    factors: &SvdFactors,
    gauge: &Gauge,
    tol: &Tolerances,
) -> Result<GlobalResult> {
    let q = factors.q();
    if factors.rank == 0 {
        let mut unit = vec![0.0; q];
        unit[0] = 1.0;
        return Err(Error::ZeroMatrix {
            distance: gauge_eval(gauge, &unit)?,
        });
    }
    let distances = (1..=factors.rank)
        .map(|k| gauge_eval(gauge, &deviation_vector(&factors.sigma, factors.rank, k)))
        .collect::<Result<Vec<_>>>()?;
    let best = distances.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = DISTANCE_TIE_REL * (1.0 + factors.s1());
    let best_ranks: Vec<usize> = distances
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= best + slack)
        .map(|(i, _)| i + 1)
        .collect();
    let results = best_ranks
        .iter()
        .map(|&k| rank_k_from_factors(factors, k, gauge, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(GlobalResult {
        best_ranks,
        results,
        distance: best,
    })
}
