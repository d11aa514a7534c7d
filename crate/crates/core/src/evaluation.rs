//! Distances between distributions and error of scalar estimates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};

/// Default additive smoothing applied to the reference distribution in
/// [`kl_divergence`].
pub const DEFAULT_KL_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub metric: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smoothing: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replications: Option<usize>,
}

fn union_support(p: &Distribution, q: &Distribution) -> BTreeSet<u64> {
    p.support().chain(q.support()).collect()
}

/// Kolmogorov-Smirnov distance: the largest gap between the two step CDFs.
pub fn ks_d_statistic(p: &Distribution, q: &Distribution) -> f64 {
    let mut cp = 0.0;
    let mut cq = 0.0;
    let mut d: f64 = 0.0;
    for k in union_support(p, q) {
        cp += p.mass(k);
        cq += q.mass(k);
        d = d.max((cp - cq).abs());
    }
    d.min(1.0)
}

/// `Σ p(k) ln(p(k) / q'(k))` where `q'` is `q` plus `epsilon` at every key of
/// the union support, renormalized. Natural logarithm.
pub fn kl_divergence(p: &Distribution, q: &Distribution, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidParameter(format!("KL smoothing epsilon {epsilon} must be positive")));
    }
    let support = union_support(p, q);
    let norm = 1.0 + epsilon * support.len() as f64;
    let kl: f64 = p
        .masses()
        .iter()
        .map(|(&k, &pk)| {
            let qk = (q.mass(k) + epsilon) / norm;
            pk * (pk / qk).ln()
        })
        .sum();
    Ok(kl.max(0.0))
}

/// Root mean square error of `estimates` relative to `|truth|`.
pub fn rrmse(estimates: &[f64], truth: f64) -> Result<f64> {
    if truth == 0.0 || !truth.is_finite() {
        return Err(Error::InvalidParameter(format!("relative error undefined for truth {truth}")));
    }
    if estimates.is_empty() {
        return Err(Error::InvalidParameter("no estimates".into()));
    }
    let mse = estimates.iter().map(|e| (e - truth).powi(2)).sum::<f64>() / estimates.len() as f64;
    Ok(mse.sqrt() / truth.abs())
}

pub fn d_statistic_metric(p: &Distribution, q: &Distribution) -> MetricResult {
    MetricResult {
        metric: "d_statistic".into(),
        value: ks_d_statistic(p, q),
        support_size: Some(union_support(p, q).len()),
        smoothing: None,
        replications: None,
    }
}

pub fn kl_metric(p: &Distribution, q: &Distribution, epsilon: f64) -> Result<MetricResult> {
    Ok(MetricResult {
        metric: "kl_divergence".into(),
        value: kl_divergence(p, q, epsilon)?,
        support_size: Some(union_support(p, q).len()),
        smoothing: Some(epsilon),
        replications: None,
    })
}

pub fn rrmse_metric(estimates: &[f64], truth: f64) -> Result<MetricResult> {
    Ok(MetricResult {
        metric: "rrmse".into(),
        value: rrmse(estimates, truth)?,
        support_size: None,
        smoothing: None,
        replications: Some(estimates.len()),
    })
}
