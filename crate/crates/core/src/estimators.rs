//! Estimators that turn a walk sample into property estimates.
//!
//! MHRW samples are (asymptotically) uniform over nodes, so plain trace
//! averages are used. RWwJ samples are biased towards nodes of high
//! in-degree and are reweighted by `1 / (in_degree + alpha)`.
//!
//! Both families average over the raw trace, repetitions included, which is
//! the Markov-chain sample mean whose limit is the stationary expectation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::graph::{Direction, DirectedGraph};
use crate::sampler::{mhrw_transition_probability, rwwj_transition_probability, split_halves, Method, WalkSample};

type CustomFn = dyn Fn(&DirectedGraph, usize) -> Option<f64> + Send + Sync;

/// A per-node quantity `f(v)` to be averaged over the population.
#[derive(Clone)]
pub enum NodalFunction {
    /// `1` when the node's degree in `direction` equals `k`.
    DegreeIndicator { k: u64, direction: Direction },
    /// `1` when the in/out ratio equals `ratio`; undefined at out-degree 0.
    RatioIndicator { ratio: f64 },
    /// The in/out ratio itself; undefined at out-degree 0.
    RatioValue,
    ConstantOne,
    Custom { description: String, f: Arc<CustomFn> },
}

impl NodalFunction {
    pub fn custom<F>(description: impl Into<String>, f: F) -> Self
    where
        F: Fn(&DirectedGraph, usize) -> Option<f64> + Send + Sync + 'static,
    {
        NodalFunction::Custom { description: description.into(), f: Arc::new(f) }
    }

    /// Value at node `v`, or `None` where the function is undefined.
    pub fn eval(&self, g: &DirectedGraph, v: usize) -> Option<f64> {
        let indicator = |b: bool| if b { 1.0 } else { 0.0 };
        match self {
            NodalFunction::DegreeIndicator { k, direction } => Some(indicator(g.degree(v, *direction) as u64 == *k)),
            NodalFunction::RatioIndicator { ratio } => g.ratio_unchecked(v).map(|r| indicator(r == *ratio)),
            NodalFunction::RatioValue => g.ratio_unchecked(v),
            NodalFunction::ConstantOne => Some(1.0),
            NodalFunction::Custom { f, .. } => f(g, v).filter(|x| x.is_finite()),
        }
    }
}

impl fmt::Debug for NodalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodalFunction({self})")
    }
}

impl fmt::Display for NodalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodalFunction::DegreeIndicator { k, direction } => write!(f, "1[{direction}-degree = {k}]"),
            NodalFunction::RatioIndicator { ratio } => write!(f, "1[ratio = {ratio}]"),
            NodalFunction::RatioValue => f.write_str("ratio"),
            NodalFunction::ConstantOne => f.write_str("1"),
            NodalFunction::Custom { description, .. } => f.write_str(description),
        }
    }
}

/// A scalar estimate plus the number of trace entries where `f` was undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub value: f64,
    pub skipped: usize,
}

fn require(s: &WalkSample, method: Method) -> Result<()> {
    if s.method == method {
        Ok(())
    } else {
        Err(Error::WrongMethod { expected: method.as_str(), actual: s.method.as_str() })
    }
}

fn rwwj_weight(g: &DirectedGraph, jump_weight: f64, v: usize) -> f64 {
    1.0 / (g.in_neighbors(v).len() as f64 + jump_weight)
}

/// Trace average of `f` over an MHRW sample.
pub fn mh_mean(g: &DirectedGraph, s: &WalkSample, f: &NodalFunction) -> Result<MeanEstimate> {
    require(s, Method::Mhrw)?;
    let mut sum = 0.0;
    let mut defined = 0usize;
    for &v in &s.trace {
        if let Some(x) = f.eval(g, v) {
            sum += x;
            defined += 1;
        }
    }
    if defined == 0 {
        return Err(Error::Undefined(format!("{f} is undefined at every sampled node")));
    }
    Ok(MeanEstimate { value: sum / defined as f64, skipped: s.trace.len() - defined })
}

/// Fraction of MHRW trace entries with each degree.
pub fn mh_degree_distribution(g: &DirectedGraph, s: &WalkSample, direction: Direction) -> Result<Distribution> {
    require(s, Method::Mhrw)?;
    Distribution::from_samples(s.trace.iter().map(|&v| g.degree(v, direction) as u64))
}

/// Generalized ratio estimator over an RWwJ sample:
/// `Σ f(v) w(v) / Σ w(v)` with `w(v) = 1 / (in_degree(v) + alpha)`.
pub fn rw_ratio_estimate(g: &DirectedGraph, s: &WalkSample, f: &NodalFunction) -> Result<MeanEstimate> {
    require(s, Method::Rwwj)?;
    let alpha = s.config.jump_weight;
    let mut num = 0.0;
    let mut z = 0.0;
    let mut skipped = 0usize;
    for &v in &s.trace {
        match f.eval(g, v) {
            Some(x) => {
                let w = rwwj_weight(g, alpha, v);
                num += x * w;
                z += w;
            }
            None => skipped += 1,
        }
    }
    if z == 0.0 {
        return Err(Error::Undefined(format!("{f} is undefined at every sampled node")));
    }
    Ok(MeanEstimate { value: num / z, skipped })
}

/// Reweighted degree histogram of an RWwJ sample.
pub fn rw_degree_distribution(g: &DirectedGraph, s: &WalkSample, direction: Direction) -> Result<Distribution> {
    require(s, Method::Rwwj)?;
    let alpha = s.config.jump_weight;
    let mut weights: BTreeMap<u64, f64> = BTreeMap::new();
    for &v in &s.trace {
        *weights.entry(g.degree(v, direction) as u64).or_insert(0.0) += rwwj_weight(g, alpha, v);
    }
    Distribution::from_weights(weights)
}

/// Degree-distribution estimate with the estimator matching the sample's method.
pub fn degree_distribution_estimate(g: &DirectedGraph, s: &WalkSample, direction: Direction) -> Result<Distribution> {
    match s.method {
        Method::Mhrw => mh_degree_distribution(g, s, direction),
        Method::Rwwj => rw_degree_distribution(g, s, direction),
    }
}

/// Mean of `f` with the estimator matching the sample's method.
pub fn mean_estimate(g: &DirectedGraph, s: &WalkSample, f: &NodalFunction) -> Result<MeanEstimate> {
    match s.method {
        Method::Mhrw => mh_mean(g, s, f),
        Method::Rwwj => rw_ratio_estimate(g, s, f),
    }
}

/// Follower/following ratio average; nodes with out-degree 0 are skipped.
pub fn ratio_average_estimate(g: &DirectedGraph, s: &WalkSample) -> Result<MeanEstimate> {
    mean_estimate(g, s, &NodalFunction::RatioValue)
}

/// Lincoln-Petersen estimate `|S1| |S2| / |S1 ∩ S2|`.
pub fn capture_recapture_order(first: &BTreeSet<usize>, second: &BTreeSet<usize>) -> Result<f64> {
    if first.is_empty() || second.is_empty() {
        return Err(Error::Undefined("capture-recapture needs two non-empty samples".into()));
    }
    let overlap = first.intersection(second).count();
    if overlap == 0 {
        return Err(Error::Undefined("samples do not overlap; increase the budget".into()));
    }
    Ok(first.len() as f64 * second.len() as f64 / overlap as f64)
}

/// Order estimate from one MHRW sample split into two random halves.
pub fn mhrw_order_estimate(s: &WalkSample, split_seed: u64) -> Result<f64> {
    require(s, Method::Mhrw)?;
    let (a, b) = split_halves(s, split_seed)?;
    capture_recapture_order(&a, &b)
}

/// Number of pairs `(s1, s2)` with `s1 == s2`, `s1` from the uniform set and
/// `s2` from an arbitrary trace with repetitions.
pub fn cross_collisions(uniform: &BTreeSet<usize>, arbitrary: &[usize]) -> usize {
    arbitrary.iter().filter(|v| uniform.contains(v)).count()
}

/// Cross-collision order estimate `|S1| |S2| / n_xcol`.
pub fn cross_collision_order(uniform: &BTreeSet<usize>, arbitrary: &[usize]) -> Result<f64> {
    let collisions = cross_collisions(uniform, arbitrary);
    if collisions == 0 {
        return Err(Error::Undefined("no cross-collisions between the samples".into()));
    }
    Ok(uniform.len() as f64 * arbitrary.len() as f64 / collisions as f64)
}

/// Reciprocated share of the weighted mass of the collected edges, where
/// edge `i -> j` weighs `w(i) q(i,j) + w(j) q(j,i)` and `q` vanishes off the
/// edge set.
fn weighted_reciprocity<W, Q>(g: &DirectedGraph, s: &WalkSample, weight: W, q: Q) -> Result<f64>
where
    W: Fn(usize) -> f64,
    Q: Fn(usize, usize) -> f64,
{
    if s.collected_edges.is_empty() {
        return Err(Error::Undefined("sample collected no edges".into()));
    }
    let mut total = 0.0;
    let mut mutual = 0.0;
    for &(i, j) in &s.collected_edges {
        let back = g.contains_edge(j, i);
        let w = weight(i) * q(i, j) + if back { weight(j) * q(j, i) } else { 0.0 };
        total += w;
        if back {
            mutual += w;
        }
    }
    if total <= 0.0 {
        return Err(Error::Undefined("collected edges carry no weight".into()));
    }
    Ok(mutual / total)
}

/// Reciprocated-edge proportion from an MHRW sample; every node weighs `1/N`.
pub fn mutual_proportion_mhrw(g: &DirectedGraph, s: &WalkSample) -> Result<f64> {
    require(s, Method::Mhrw)?;
    let d = s.config.walk_prob;
    let pi = 1.0 / g.node_count() as f64;
    weighted_reciprocity(g, s, |_| pi, |i, j| mhrw_transition_probability(g, d, i, j))
}

/// Reciprocated-edge proportion from an RWwJ sample with node weights
/// `1 / ((in_degree + alpha) Z)`, `Z` summed over the trace.
pub fn mutual_proportion_rwwj(g: &DirectedGraph, s: &WalkSample) -> Result<f64> {
    require(s, Method::Rwwj)?;
    let alpha = s.config.jump_weight;
    let z: f64 = s.trace.iter().map(|&v| rwwj_weight(g, alpha, v)).sum();
    weighted_reciprocity(g, s, |v| rwwj_weight(g, alpha, v) / z, |i, j| rwwj_transition_probability(g, alpha, i, j))
}

pub fn mutual_proportion_estimate(g: &DirectedGraph, s: &WalkSample) -> Result<f64> {
    match s.method {
        Method::Mhrw => mutual_proportion_mhrw(g, s),
        Method::Rwwj => mutual_proportion_rwwj(g, s),
    }
}
