//! Random walk with jumps through a virtual node of weight `alpha`.
//!
//! From node `i` the walker follows a uniform out-edge with probability
//! `k_i / (k_i + alpha)` and otherwise jumps to a uniform node of the graph.
//! The resulting kernel is `(1 + alpha/N) / (k_i + alpha)` towards each
//! out-neighbor and `(alpha/N) / (k_i + alpha)` towards every other node.

use rand::Rng;

use super::{Method, SamplerConfig, StepKind, WalkSample};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::rng;

/// One-step transition probability from `i` to `j` (including `j == i`).
pub fn rwwj_transition_probability(g: &DirectedGraph, jump_weight: f64, i: usize, j: usize) -> f64 {
    let out_i = g.out_neighbors(i).len() as f64;
    let jump = jump_weight / g.node_count() as f64;
    let edge = if g.contains_edge(i, j) { 1.0 } else { 0.0 };
    (edge + jump) / (out_i + jump_weight)
}

pub(crate) fn check_jump_weight(g: &DirectedGraph, jump_weight: f64) -> Result<()> {
    if jump_weight == 0.0 {
        if let Some(v) = (0..g.node_count()).find(|&v| g.out_neighbors(v).is_empty()) {
            return Err(Error::InvalidParameter(format!(
                "jump weight 0 with node {} of out-degree 0 would trap the walker",
                g.id(v)
            )));
        }
    }
    Ok(())
}

pub fn rwwj_sample(g: &DirectedGraph, cfg: &SamplerConfig) -> Result<WalkSample> {
    cfg.validate()?;
    check_jump_weight(g, cfg.jump_weight)?;
    let mut r = rng::from_seed(cfg.rng_seed);
    let start = cfg.start(g, &mut r)?;
    let n = g.node_count();
    let alpha = cfg.jump_weight;
    let mut sample = WalkSample::with_capacity(Method::Rwwj, *cfg, start);
    let mut current = start;

    while sample.len() < cfg.budget {
        let out = g.out_neighbors(current);
        let k = out.len() as f64;
        if r.random::<f64>() * (k + alpha) < k {
            current = out[rng::index(&mut r, out.len())] as usize;
            sample.push(StepKind::Walk, current);
        } else {
            current = rng::index(&mut r, n);
            sample.push(StepKind::Jump, current);
        }
    }
    Ok(sample)
}
