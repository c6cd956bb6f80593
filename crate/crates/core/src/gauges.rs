//! Symmetric gauge functions, the unitarily invariant norms they induce, and
//! (sub)majorization predicates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, MatrixC};

/// Relative slack applied to partial sums in the majorization predicates.
pub const MAJORIZATION_SLACK: f64 = 1e-12;

/// A symmetric gauge function on `R^q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gauge {
    /// `l^p` norm, `1 <= p <= inf`.
    Schatten(f64),
    /// Sum of the `k` largest absolute values.
    KyFan(usize),
}

impl Gauge {
    pub fn schatten(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidInput(format!(
                "Schatten exponent must satisfy p >= 1, got {p}"
            )));
        }
        Ok(Gauge::Schatten(p))
    }

    pub fn ky_fan(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("Ky-Fan index must be >= 1".into()));
        }
        Ok(Gauge::KyFan(k))
    }

    pub fn frobenius() -> Self {
        Gauge::Schatten(2.0)
    }

    /// True exactly for Schatten `p` with `1 < p < inf`.
    pub fn is_strictly_convex(&self) -> bool {
        matches!(*self, Gauge::Schatten(p) if p > 1.0 && p.is_finite())
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        gauge_eval(self, x)
    }
}

pub fn gauge_eval(gauge: &Gauge, x: &[f64]) -> Result<f64> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("gauge argument must be finite".into()));
    }
    match *gauge {
        Gauge::Schatten(p) => Ok(lp_norm(x, p)),
        Gauge::KyFan(k) => {
            if k > x.len() {
                return Err(Error::InvalidInput(format!(
                    "Ky-Fan index {k} exceeds vector length {}",
                    x.len()
                )));
            }
            let sorted = sorted_abs_desc(x);
            Ok(sorted[..k].iter().sum())
        }
    }
}

fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return x.iter().fold(0.0, |acc, v| acc.max(v.abs()));
    }
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let scale = x.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = if p == 2.0 {
        x.iter().map(|v| (v / scale) * (v / scale)).sum()
    } else {
        x.iter().map(|v| (v.abs() / scale).powf(p)).sum()
    };
    scale * sum.powf(1.0 / p)
}

fn sorted_abs_desc(x: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = x.iter().map(|a| a.abs()).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    v
}

/// `‖F‖_Φ = Φ(s_1(F), ..., s_q(F))`.
pub fn ui_norm(gauge: &Gauge, f: &MatrixC) -> Result<f64> {
    gauge_eval(gauge, &singular_values(f)?)
}

fn sorted_desc(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    v
}

fn check_lengths(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "majorization needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

fn slack(y: &[f64]) -> f64 {
    MAJORIZATION_SLACK * (1.0 + y.iter().map(|v| v.abs()).sum::<f64>())
}

/// `x ≺_w y`: every partial sum of `x↓` is at most the matching one of `y↓`.
pub fn submajorized(x: &[f64], y: &[f64]) -> Result<bool> {
    check_lengths(x, y)?;
    let (xs, ys) = (sorted_desc(x), sorted_desc(y));
    let tol = slack(y);
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx > sy + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x ≺ y`: submajorization with equal totals.
pub fn majorized(x: &[f64], y: &[f64]) -> Result<bool> {
    if !submajorized(x, y)? {
        return Ok(false);
    }
    let total = |v: &[f64]| v.iter().sum::<f64>();
    Ok((total(x) - total(y)).abs() <= slack(y))
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gauge::Schatten(p) if p.is_infinite() => write!(f, "schatten:inf"),
            Gauge::Schatten(p) => write!(f, "schatten:{p}"),
            Gauge::KyFan(k) => write!(f, "kyfan:{k}"),
        }
    }
}

impl FromStr for Gauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "fro" {
            return Ok(Gauge::frobenius());
        }
        let bad = || {
            Error::InvalidInput(format!(
                "unrecognized gauge `{s}`; expected schatten:<p|inf>, kyfan:<k> or fro"
            ))
        };
        let (family, arg) = s.split_once(':').ok_or_else(bad)?;
        match family {
            "schatten" => {
                let p = if arg == "inf" {
                    f64::INFINITY
                } else {
                    arg.parse::<f64>().map_err(|_| bad())?
                };
                if !(p.is_finite() || p == f64::INFINITY) {
                    return Err(bad());
                }
                Gauge::schatten(p)
            }
            "kyfan" => Gauge::ky_fan(arg.parse::<usize>().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Gauge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gauge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
