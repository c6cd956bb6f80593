//! Brute-force minimization of `Σ (s_j - x_j)^2` over sign/support vectors
//! `x ∈ {-1, 0, 1}^q` with exactly `k` nonzero entries, and the closed-form
//! count of its minimizers.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `q` accepted by the enumeration (`3^q` candidates).
pub const MAX_ENUMERATION_DIM: usize = 20;

/// Absolute tolerance for ties between objective values and between
/// entries of `s`.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignSupportAssignment {
    pub x: Vec<i8>,
    pub support_size: usize,
    pub objective: f64,
}

fn check_args(s: &[f64], k: usize) -> Result<()> {
    let q = s.len();
    if q > MAX_ENUMERATION_DIM {
        return Err(Error::Precondition(format!(
            "enumeration over 3^{q} candidates refused; q must be <= {MAX_ENUMERATION_DIM}"
        )));
    }
    if k == 0 || k > q {
        return Err(Error::RankOutOfRange { k, q });
    }
    if s.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidInput(
            "s must be finite and nonnegative".into(),
        ));
    }
    if s.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("s must be nonincreasing".into()));
    }
    Ok(())
}

/// Every global minimizer, in lexicographic order of `x` with `-1 < 0 < 1`.
pub fn sign_support_minimizers(s: &[f64], k: usize) -> Result<Vec<SignSupportAssignment>> {
    check_args(s, k)?;
    let q = s.len();
    let total = 3usize.pow(q as u32);
    let mut best = f64::INFINITY;
    let mut found: Vec<SignSupportAssignment> = Vec::new();
    let mut x = vec![0i8; q];
    for code in 0..total {
        let mut c = code;
        for slot in x.iter_mut().rev() {
            *slot = (c % 3) as i8 - 1;
            c /= 3;
        }
        let support = x.iter().filter(|&&v| v != 0).count();
        if support != k {
            continue;
        }
        let objective: f64 = s
            .iter()
            .zip(&x)
            .map(|(sj, &xj)| (sj - xj as f64).powi(2))
            .sum();
        if objective < best - TIE_TOL {
            best = objective;
            found.retain(|a| a.objective <= best + TIE_TOL);
        }
        if objective <= best + TIE_TOL {
            found.push(SignSupportAssignment {
                x: x.clone(),
                support_size: support,
                objective,
            });
        }
    }
    found.retain(|a| a.objective <= best + TIE_TOL);
    Ok(found)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Closed-form number of minimizers: one when `k < r` and `s_k != s_{k+1}`,
/// `C(e_k, k - l_k)` when `s_k = s_{k+1}`, one when `k = r`, and
/// `2^(k-r) C(q-r, k-r)` when `k > r`. Here `l_k` counts the entries
/// strictly larger than `s_k` and `e_k` those equal to it.
pub fn census_count(s: &[f64], k: usize) -> Result<u64> {
    check_args(s, k)?;
    let q = s.len();
    let r = s.iter().filter(|&&v| v > TIE_TOL).count();
    if k > r {
        return Ok((1u64 << (k - r)) * binomial(q - r, k - r));
    }
    if k == r {
        return Ok(1);
    }
    let sk = s[k - 1];
    if (sk - s[k]).abs() > TIE_TOL {
        return Ok(1);
    }
    let l_k = s.iter().filter(|&&v| v > sk + TIE_TOL).count();
    let e_k = s.iter().filter(|&&v| (v - sk).abs() <= TIE_TOL).count();
    Ok(binomial(e_k, k - l_k))
}
