//! Machine-readable output records.

use serde::{Deserialize, Serialize};

use crate::frames::{FixedExcessApprox, GlobalApprox, GlobalCertificate, SubspaceApprox};
use crate::gauges::Gauge;
use crate::io::{FrameJson, MatrixJson};
use crate::isometry_approx::{
    Certificate, GlobalResult, MinimizerSet, MinimizerVariant, RankKResult,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub proj_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub iso_rank: Option<usize>,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none", default)]
    pub v: Option<MatrixJson>,
    #[serde(rename = "W", skip_serializing_if = "Option::is_none", default)]
    pub w: Option<MatrixJson>,
}

impl From<&MinimizerSet> for FamilyRecord {
    fn from(ms: &MinimizerSet) -> Self {
        let mut rec = FamilyRecord {
            variant: ms.variant_name().to_string(),
            l_k: None,
            e_k: None,
            proj_rank: None,
            r: None,
            iso_rank: None,
            v: None,
            w: None,
        };
        match &ms.variant {
            MinimizerVariant::Unique { .. } => {}
            MinimizerVariant::ProjectionFamily {
                v,
                w,
                l_k,
                e_k,
                proj_rank,
            } => {
                rec.l_k = Some(*l_k);
                rec.e_k = Some(*e_k);
                rec.proj_rank = Some(*proj_rank);
                rec.v = Some(v.into());
                rec.w = Some(w.into());
            }
            MinimizerVariant::IsometryFamily { v, w, r, iso_rank } => {
                rec.r = Some(*r);
                rec.iso_rank = Some(*iso_rank);
                rec.v = Some(v.into());
                rec.w = Some(w.into());
            }
        }
        rec
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankKRecord {
    pub k: usize,
    pub distance: f64,
    pub gauge: Gauge,
    pub certificate: Certificate,
    pub minimizer: MatrixJson,
    pub family: FamilyRecord,
}

impl From<&RankKResult> for RankKRecord {
    fn from(r: &RankKResult) -> Self {
        Self {
            k: r.k,
            distance: r.distance,
            gauge: r.gauge,
            certificate: r.certificate,
            minimizer: (&r.minimizer).into(),
            family: (&r.minimizer_set).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalRecord {
    pub gauge: Gauge,
    pub best_ranks: Vec<usize>,
    pub distance: f64,
    pub results: Vec<RankKRecord>,
}

impl GlobalRecord {
    pub fn new(gauge: Gauge, g: &GlobalResult) -> Self {
        Self {
            gauge,
            best_ranks: g.best_ranks.clone(),
            distance: g.distance,
            results: g.results.iter().map(RankKRecord::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceRecord {
    pub k: usize,
    pub gauge: Gauge,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizersRecord {
    pub k: usize,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub gauge: Gauge,
    pub certificate: Certificate,
    /// True when the gauge is not strictly convex and further minimizers
    /// outside the family may exist.
    pub possibly_incomplete: bool,
    pub family: FamilyRecord,
    pub representative: MatrixJson,
}

impl From<&RankKResult> for MinimizersRecord {
    fn from(r: &RankKResult) -> Self {
        Self {
            k: r.k,
            rank: r.minimizer_set.rank,
            singular_values: r.minimizer_set.sigma.clone(),
            gauge: r.gauge,
            certificate: r.certificate,
            possibly_incomplete: r.certificate == Certificate::UnknownGaugeNotStrictlyConvex,
            family: (&r.minimizer_set).into(),
            representative: (&r.minimizer).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameApproxRecord {
    pub mode: String,
    pub k: usize,
    pub certificate: String,
    /// Frobenius distance between the synthesis matrices.
    pub distance: f64,
    pub frame: FrameJson,
}

fn certificate_name<T: Serialize>(c: &T) -> String {
    match serde_json::to_value(c) {
        Ok(serde_json::Value::String(s)) => s,
        _ => unreachable!("unit enum variants serialize to strings"),
    }
}

impl From<&FixedExcessApprox> for FrameApproxRecord {
    fn from(a: &FixedExcessApprox) -> Self {
        Self {
            mode: format!("fixed-excess:{}", a.k),
            k: a.k,
            certificate: certificate_name(&a.certificate),
            distance: a.distance,
            frame: (&a.frame).into(),
        }
    }
}

impl From<&GlobalApprox> for FrameApproxRecord {
    fn from(a: &GlobalApprox) -> Self {
        Self {
            mode: "global".into(),
            k: a.k,
            certificate: certificate_name::<GlobalCertificate>(&a.certificate),
            distance: a.distance,
            frame: (&a.frame).into(),
        }
    }
}

impl From<&SubspaceApprox> for FrameApproxRecord {
    fn from(a: &SubspaceApprox) -> Self {
        Self {
            mode: "subspace".into(),
            k: a.k,
            certificate: certificate_name::<GlobalCertificate>(&a.certificate),
            distance: a.distance,
            frame: (&a.frame).into(),
        }
    }
}
