//! Metropolis-Hastings random walk with uniform jumps.
//!
//! From node `i` with out-degree `k_i` the walker proposes a uniform
//! out-neighbor with probability `d` and a uniform node of the whole graph
//! with probability `1 - d`. A proposal `j` with `i -> j` in the graph is
//! accepted with
//!
//! ```text
//! min( ((1-d)/N + d/k_j) / ((1-d)/N + d/k_i), 1 )
//! ```
//!
//! and any other proposal is accepted with probability `1 - d`. Rejections
//! record `i` again. A node without out-edges has no neighbor proposal: with
//! probability `d` it stays put, otherwise it proposes a jump.

use rand::Rng;

use super::{Method, SamplerConfig, StepKind, WalkSample};
use crate::error::Result;
use crate::graph::DirectedGraph;
use crate::rng;

/// Acceptance probability of a proposal along the edge `i -> j`.
pub fn mhrw_acceptance(walk_prob: f64, node_count: usize, out_i: usize, out_j: usize) -> f64 {
    if out_j == 0 {
        return 1.0;
    }
    let jump = (1.0 - walk_prob) / node_count as f64;
    let num = jump + walk_prob / out_j as f64;
    let den = jump + walk_prob / out_i as f64;
    (num / den).min(1.0)
}

/// One-step probability of moving from `i` to a different node `j`.
///
/// The probability of staying at `i` is one minus the sum over `j != i`.
pub fn mhrw_transition_probability(g: &DirectedGraph, walk_prob: f64, i: usize, j: usize) -> f64 {
    debug_assert_ne!(i, j);
    let n = g.node_count();
    let out_i = g.out_neighbors(i).len();
    let uniform = 1.0 / n as f64;
    if out_i > 0 && g.contains_edge(i, j) {
        let proposal = walk_prob / out_i as f64 + (1.0 - walk_prob) * uniform;
        proposal * mhrw_acceptance(walk_prob, n, out_i, g.out_neighbors(j).len())
    } else {
        // jump proposal (1-d)/N, accepted with 1-d; dangling nodes jump with the same law
        let jump = 1.0 - walk_prob;
        jump * jump * uniform
    }
}

pub fn mhrw_sample(g: &DirectedGraph, cfg: &SamplerConfig) -> Result<WalkSample> {
    cfg.validate()?;
    let mut r = rng::from_seed(cfg.rng_seed);
    let start = cfg.start(g, &mut r)?;
    let n = g.node_count();
    let d = cfg.walk_prob;
    let mut sample = WalkSample::with_capacity(Method::Mhrw, *cfg, start);
    let mut current = start;

    while sample.len() < cfg.budget {
        let out = g.out_neighbors(current);
        let walk_branch = r.random::<f64>() < d;
        let proposal = match (walk_branch, out.is_empty()) {
            (true, false) => out[rng::index(&mut r, out.len())] as usize,
            (true, true) => {
                sample.push(StepKind::Rejection, current);
                continue;
            }
            (false, _) => rng::index(&mut r, n),
        };
        let along_edge = walk_branch || g.contains_edge(current, proposal);
        let accept_prob = if along_edge {
            mhrw_acceptance(d, n, out.len(), g.out_neighbors(proposal).len())
        } else {
            1.0 - d
        };
        let accepted = accept_prob >= 1.0 || r.random::<f64>() < accept_prob;
        if !accepted {
            sample.push(StepKind::Rejection, current);
        } else if along_edge {
            sample.push(StepKind::Walk, proposal);
            current = proposal;
        } else {
            sample.push(StepKind::Jump, proposal);
            current = proposal;
        }
    }
    Ok(sample)
}
