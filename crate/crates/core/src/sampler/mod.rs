//! Budgeted random-walk samplers and exact-chain tooling.
//!
//! Both walkers spend exactly one unit of budget per trace entry: the seed
//! node is the first entry and every later step (walk, jump, or MHRW
//! rejection) appends one more.

mod chain;
mod mhrw;
mod rwwj;
mod trace;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::rng;

pub use chain::{build_chain_matrix, stationary_distribution, ChainMatrix, ChainParams, DEFAULT_MATRIX_CAP};
pub use mhrw::{mhrw_acceptance, mhrw_sample, mhrw_transition_probability};
pub use rwwj::{rwwj_sample, rwwj_transition_probability};
pub use trace::{read_trace, write_trace, TraceHeader};

pub const DEFAULT_WALK_PROB: f64 = 0.85;
pub const DEFAULT_JUMP_WEIGHT: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mhrw,
    Rwwj,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Mhrw => "mhrw",
            Method::Rwwj => "rwwj",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mhrw" => Ok(Method::Mhrw),
            "rwwj" => Ok(Method::Rwwj),
            _ => Err(Error::InvalidParameter(format!("unknown method {s:?}"))),
        }
    }
}

/// Where a walk starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedNode {
    /// Uniformly random node, drawn from the walk's own RNG.
    #[default]
    Uniform,
    /// Explicit external node id.
    Id(u64),
}

impl fmt::Display for SeedNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedNode::Uniform => f.write_str("uniform"),
            SeedNode::Id(id) => write!(f, "{id}"),
        }
    }
}

impl FromStr for SeedNode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" | "uniform-random" => Ok(SeedNode::Uniform),
            _ => s
                .parse()
                .map(SeedNode::Id)
                .map_err(|_| Error::InvalidParameter(format!("seed node {s:?} is neither an id nor 'uniform'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Number of trace entries to collect.
    pub budget: usize,
    /// MHRW probability of proposing a neighbor rather than a uniform jump.
    pub walk_prob: f64,
    /// RWwJ weight of the virtual jump node.
    pub jump_weight: f64,
    pub rng_seed: u64,
    #[serde(default)]
    pub seed_node: SeedNode,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { budget: 1000, walk_prob: DEFAULT_WALK_PROB, jump_weight: DEFAULT_JUMP_WEIGHT, rng_seed: 0, seed_node: SeedNode::Uniform }
    }
}

impl SamplerConfig {
    pub fn new(budget: usize, rng_seed: u64) -> Self {
        Self { budget, rng_seed, ..Default::default() }
    }

    pub fn with_walk_prob(mut self, d: f64) -> Self {
        self.walk_prob = d;
        self
    }

    pub fn with_jump_weight(mut self, alpha: f64) -> Self {
        self.jump_weight = alpha;
        self
    }

    pub fn with_seed_node(mut self, seed_node: SeedNode) -> Self {
        self.seed_node = seed_node;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        if !(self.walk_prob > 0.0 && self.walk_prob <= 1.0) {
            return Err(Error::InvalidParameter(format!("walk probability {} outside (0, 1]", self.walk_prob)));
        }
        if !(self.jump_weight >= 0.0 && self.jump_weight.is_finite()) {
            return Err(Error::InvalidParameter(format!("jump weight {} must be finite and >= 0", self.jump_weight)));
        }
        Ok(())
    }

    fn start(&self, g: &DirectedGraph, rng: &mut rng::WalkRng) -> Result<usize> {
        if g.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        match self.seed_node {
            SeedNode::Uniform => Ok(rng::index(rng, g.node_count())),
            SeedNode::Id(id) => g.index_of(id),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// The initial node.
    Seed,
    /// Moved along an existing edge `from -> node`.
    Walk,
    /// Teleported; no edge is collected.
    Jump,
    /// MHRW proposal rejected; the current node is recorded again.
    Rejection,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Seed => "seed",
            StepKind::Walk => "walk",
            StepKind::Jump => "jump",
            StepKind::Rejection => "rejection",
        }
    }
}

impl FromStr for StepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "seed" => StepKind::Seed,
            "walk" => StepKind::Walk,
            "jump" => StepKind::Jump,
            "rejection" => StepKind::Rejection,
            _ => return Err(Error::TraceFormat(format!("unknown step kind {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    /// Node the walker was on before this step (the node itself for the seed).
    pub from: usize,
}

/// The outcome of one budgeted walk. Node references are dense graph indices.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkSample {
    pub method: Method,
    pub config: SamplerConfig,
    pub trace: Vec<usize>,
    pub steps: Vec<Step>,
    pub collected_edges: BTreeSet<(usize, usize)>,
}

impl WalkSample {
    pub(crate) fn with_capacity(method: Method, config: SamplerConfig, start: usize) -> Self {
        let mut trace = Vec::with_capacity(config.budget);
        let mut steps = Vec::with_capacity(config.budget);
        trace.push(start);
        steps.push(Step { kind: StepKind::Seed, from: start });
        Self { method, config, trace, steps, collected_edges: BTreeSet::new() }
    }

    pub(crate) fn push(&mut self, kind: StepKind, node: usize) {
        let from = *self.trace.last().expect("trace starts with the seed");
        if kind == StepKind::Walk {
            self.collected_edges.insert((from, node));
        }
        self.trace.push(node);
        self.steps.push(Step { kind, from });
    }

    pub fn len(&self) -> usize {
        self.trace.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trace.is_empty()
    }

    /// Distinct visited nodes.
    pub fn distinct_nodes(&self) -> BTreeSet<usize> {
        self.trace.iter().copied().collect()
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct_nodes().len()
    }

    pub fn count_kind(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

/// Runs the sampler for `method`.
pub fn sample(g: &DirectedGraph, method: Method, cfg: &SamplerConfig) -> Result<WalkSample> {
    match method {
        Method::Mhrw => mhrw_sample(g, cfg),
        Method::Rwwj => rwwj_sample(g, cfg),
    }
}

/// Randomly partitions the trace into two halves (sizes differ by at most
/// one) and deduplicates each.
pub fn split_halves(s: &WalkSample, rng_seed: u64) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    if s.trace.len() < 2 {
        return Err(Error::InvalidParameter("splitting needs a trace of at least 2 entries".into()));
    }
    let mut order: Vec<usize> = s.trace.clone();
    let mut r = rng::from_seed(rng_seed);
    for i in (1..order.len()).rev() {
        let j = rng::index(&mut r, i + 1);
        order.swap(i, j);
    }
    let half = order.len() / 2;
    let first = order[..half].iter().copied().collect();
    let second = order[half..].iter().copied().collect();
    Ok((first, second))
}
