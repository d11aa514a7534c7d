//! JSON documents written by the experiment runner.
//!
//! `truth.json` ([`GroundTruth`]):
//!
//! ```json
//! { "graph_hash": "…", "node_count": 3, "edge_count": 3,
//!   "duplicate_edges": 0, "self_loops": 0,
//!   "in_degree": {"1": 1.0}, "out_degree": {"0": 0.33, "1": 0.33, "2": 0.33},
//!   "ratio_average": {"value": 0.75, "excluded": 1},
//!   "mutual_proportion": 0.6667 }
//! ```
//!
//! Estimate reports ([`EstimateReport`]):
//!
//! ```json
//! { "property": "order", "method": "mhrw", "replication": 0,
//!   "estimate": 97.2, "ground_truth": 100.0,
//!   "errors": {"rrmse": 0.028},
//!   "config": { "budget": 1000, "walk_prob": 0.85, "jump_weight": 10.0,
//!               "rng_seed": 123, "seed_node": "uniform" },
//!   "seeds": [123, 456], "skipped": null }
//! ```
//!
//! `estimate` and `ground_truth` are numbers for scalar properties and
//! `{degree: mass}` objects for distributions. Unknown fields are rejected.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::graph::{BuildStats, Direction, DirectedGraph, RatioAverage};
use crate::sampler::SamplerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    InDegree,
    OutDegree,
    Order,
    RatioAverage,
    MutualProportion,
}

impl Property {
    pub const ALL: [Property; 5] =
        [Property::InDegree, Property::OutDegree, Property::Order, Property::RatioAverage, Property::MutualProportion];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::InDegree => "in_degree",
            Property::OutDegree => "out_degree",
            Property::Order => "order",
            Property::RatioAverage => "ratio_average",
            Property::MutualProportion => "mutual_proportion",
        }
    }

    pub fn direction(self) -> Option<Direction> {
        match self {
            Property::InDegree => Some(Direction::In),
            Property::OutDegree => Some(Direction::Out),
            _ => None,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown property {s:?}")))
    }
}

/// Exact values of every target property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundTruth {
    pub graph_hash: String,
    pub node_count: usize,
    pub edge_count: usize,
    pub duplicate_edges: usize,
    pub self_loops: usize,
    pub in_degree: Distribution,
    pub out_degree: Distribution,
    pub ratio_average: Option<RatioAverage>,
    pub mutual_proportion: Option<f64>,
}

impl GroundTruth {
    pub fn compute(g: &DirectedGraph) -> Result<Self> {
        let BuildStats { duplicate_edges, self_loops, .. } = g.build_stats();
        Ok(Self {
            graph_hash: g.content_hash(),
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            duplicate_edges,
            self_loops,
            in_degree: g.degree_distribution(Direction::In)?,
            out_degree: g.degree_distribution(Direction::Out)?,
            ratio_average: g.ratio_average().ok(),
            mutual_proportion: g.mutual_proportion().ok(),
        })
    }

    pub fn value(&self, property: Property) -> Option<EstimateValue> {
        match property {
            Property::InDegree => Some(EstimateValue::Distribution(self.in_degree.clone())),
            Property::OutDegree => Some(EstimateValue::Distribution(self.out_degree.clone())),
            Property::Order => Some(EstimateValue::Scalar(self.node_count as f64)),
            Property::RatioAverage => self.ratio_average.map(|r| EstimateValue::Scalar(r.value)),
            Property::MutualProportion => self.mutual_proportion.map(EstimateValue::Scalar),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EstimateValue {
    Scalar(f64),
    Distribution(Distribution),
}

// serde's untagged buffering cannot turn JSON string keys into integers,
// so dispatch on the JSON shape by hand.
impl<'de> Deserialize<'de> for EstimateValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(de)? {
            serde_json::Value::Number(n) => {
                n.as_f64().map(EstimateValue::Scalar).ok_or_else(|| D::Error::custom("non-finite estimate"))
            }
            v @ serde_json::Value::Object(_) => {
                serde_json::from_value(v).map(EstimateValue::Distribution).map_err(D::Error::custom)
            }
            other => Err(D::Error::custom(format!("expected a number or a degree map, got {other}"))),
        }
    }
}

impl EstimateValue {
    pub fn as_scalar(&self) -> Option<f64> {
        match self {
            EstimateValue::Scalar(x) => Some(*x),
            EstimateValue::Distribution(_) => None,
        }
    }

    pub fn as_distribution(&self) -> Option<&Distribution> {
        match self {
            EstimateValue::Distribution(d) => Some(d),
            EstimateValue::Scalar(_) => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorMetrics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_statistic: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kl_divergence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rrmse: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EstimateReport {
    pub property: Property,
    /// `mhrw`, `rwwj`, or `mhrw+rwwj` for the cross-collision order estimate.
    pub method: String,
    pub replication: usize,
    pub estimate: EstimateValue,
    pub ground_truth: Option<EstimateValue>,
    pub errors: ErrorMetrics,
    pub config: SamplerConfig,
    /// Walk seeds used, followed by the split seed for capture-recapture.
    pub seeds: Vec<u64>,
    /// Trace entries where the estimated quantity was undefined.
    pub skipped: Option<usize>,
}

impl EstimateReport {
    pub fn file_stem(&self) -> String {
        format!("{}_{}_r{:03}", self.property, self.method.replace('+', "_"), self.replication)
    }
}
