//! Random-walk sampling of large directed graphs.
//!
//! Two budgeted walkers are provided: a Metropolis-Hastings random walk with
//! uniform jumps (MHRW), whose stationary law is uniform over nodes on
//! reciprocal graphs, and a random walk with jumps through a virtual node
//! (RWwJ), whose stationary law is proportional to `degree + alpha`. On top
//! of the walks sit estimators for degree distributions, the follower /
//! following ratio average, graph order, and the reciprocated-edge
//! proportion, and the metrics used to compare them with exact values.

pub mod distribution;
pub mod error;
pub mod estimators;
pub mod evaluation;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod report;
pub mod rng;
pub mod sampler;

pub use distribution::Distribution;
pub use error::{Error, Result};
pub use generators::{generate, symmetrize, GenSpec};
pub use graph::{load_edge_list, load_edge_list_file, Direction, DirectedGraph};
pub use sampler::{sample, Method, SamplerConfig, SeedNode, StepKind, WalkSample};
