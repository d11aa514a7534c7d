//! Dense transition matrices of the two walks, for exact verification on
//! small graphs.

use super::mhrw::mhrw_transition_probability;
use super::rwwj::{check_jump_weight, rwwj_transition_probability};
use super::Method;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

pub const DEFAULT_MATRIX_CAP: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainParams {
    Mhrw { walk_prob: f64 },
    Rwwj { jump_weight: f64 },
}

impl ChainParams {
    pub fn method(&self) -> Method {
        match self {
            ChainParams::Mhrw { .. } => Method::Mhrw,
            ChainParams::Rwwj { .. } => Method::Rwwj,
        }
    }
}

/// Row-stochastic `N x N` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMatrix {
    n: usize,
    entries: Vec<f64>,
    params: ChainParams,
}

impl ChainMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> ChainParams {
        self.params
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n.max(1))
    }

    /// Row vector times matrix.
    pub fn left_multiply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (vi, row) in v.iter().zip(self.rows()) {
            if *vi == 0.0 {
                continue;
            }
            for (o, p) in out.iter_mut().zip(row) {
                *o += vi * p;
            }
        }
        out
    }
}

/// Builds the exact one-step law of the walk selected by `params`.
pub fn build_chain_matrix(g: &DirectedGraph, params: ChainParams, cap: usize) -> Result<ChainMatrix> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > cap {
        return Err(Error::MatrixTooLarge { node_count: n, cap });
    }
    let mut entries = vec![0.0; n * n];
    match params {
        ChainParams::Mhrw { walk_prob } => {
            if !(walk_prob > 0.0 && walk_prob <= 1.0) {
                return Err(Error::InvalidParameter(format!("walk probability {walk_prob} outside (0, 1]")));
            }
            for i in 0..n {
                let row = &mut entries[i * n..(i + 1) * n];
                let mut moved = 0.0;
                for (j, p) in row.iter_mut().enumerate() {
                    if j != i {
                        *p = mhrw_transition_probability(g, walk_prob, i, j);
                        moved += *p;
                    }
                }
                row[i] = 1.0 - moved;
            }
        }
        ChainParams::Rwwj { jump_weight } => {
            if !(jump_weight >= 0.0 && jump_weight.is_finite()) {
                return Err(Error::InvalidParameter(format!("jump weight {jump_weight} must be finite and >= 0")));
            }
            check_jump_weight(g, jump_weight)?;
            for i in 0..n {
                for j in 0..n {
                    entries[i * n + j] = rwwj_transition_probability(g, jump_weight, i, j);
                }
            }
        }
    }
    Ok(ChainMatrix { n, entries, params })
}

/// Power iteration from the uniform vector until `‖πM − π‖₁ < tol`.
pub fn stationary_distribution(m: &ChainMatrix, tol: f64, max_iterations: usize) -> Result<Vec<f64>> {
    let n = m.size();
    let mut pi = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let mut next = m.left_multiply(&pi);
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        residual = next.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum();
        pi = next;
        if residual < tol {
            return Ok(pi);
        }
    }
    Err(Error::NoConvergence { iterations: max_iterations, residual })
}
