//! Plain-text trace files.
//!
//! ```text
//! # osnwalk-trace 1
//! # method mhrw
//! # budget 4
//! # walk_prob 0.85
//! # jump_weight 10
//! # rng_seed 7
//! # seed_node uniform
//! # graph_hash 3f2a...
//! 0 12 seed
//! 1 40 walk
//! 2 40 rejection
//! 3 7 jump
//! E 12 40
//! ```
//!
//! Step lines are `index node_id kind` with external node ids; `E src dst`
//! lines list the collected edges in sorted index order.

use std::io::{BufRead, Write};

use super::{Method, SamplerConfig, SeedNode, StepKind, WalkSample};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

const MAGIC: &str = "osnwalk-trace 1";

#[derive(Debug, Clone, PartialEq)]
pub struct TraceHeader {
    pub method: Method,
    pub config: SamplerConfig,
    pub graph_hash: String,
}

pub fn write_trace<W: Write>(mut w: W, sample: &WalkSample, g: &DirectedGraph) -> Result<()> {
    let c = &sample.config;
    writeln!(w, "# {MAGIC}")?;
    writeln!(w, "# method {}", sample.method)?;
    writeln!(w, "# budget {}", c.budget)?;
    writeln!(w, "# walk_prob {}", c.walk_prob)?;
    writeln!(w, "# jump_weight {}", c.jump_weight)?;
    writeln!(w, "# rng_seed {}", c.rng_seed)?;
    writeln!(w, "# seed_node {}", c.seed_node)?;
    writeln!(w, "# graph_hash {}", g.content_hash())?;
    for (t, (&v, step)) in sample.trace.iter().zip(&sample.steps).enumerate() {
        writeln!(w, "{t} {} {}", g.id(v), step.kind.as_str())?;
    }
    for &(s, t) in &sample.collected_edges {
        writeln!(w, "E {} {}", g.id(s), g.id(t))?;
    }
    w.flush()?;
    Ok(())
}

fn header_value<'a>(line: &'a str, key: &str) -> Result<&'a str> {
    line.strip_prefix("# ")
        .and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| Error::TraceFormat(format!("expected header '{key}', found {line:?}")))
}

fn parse<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse().map_err(|_| Error::TraceFormat(format!("invalid {what} {text:?}")))
}

/// Reads a trace, verifying that it was sampled from `g`.
pub fn read_trace<R: BufRead>(r: R, g: &DirectedGraph) -> Result<WalkSample> {
    let mut lines = r.lines();
    let mut next = || -> Result<String> {
        lines.next().transpose()?.ok_or_else(|| Error::TraceFormat("unexpected end of file".into()))
    };
    if next()? != format!("# {MAGIC}") {
        return Err(Error::TraceFormat("missing trace magic line".into()));
    }
    let method: Method = header_value(&next()?, "method")?.parse()?;
    let budget = parse(header_value(&next()?, "budget")?, "budget")?;
    let walk_prob = parse(header_value(&next()?, "walk_prob")?, "walk_prob")?;
    let jump_weight = parse(header_value(&next()?, "jump_weight")?, "jump_weight")?;
    let rng_seed = parse(header_value(&next()?, "rng_seed")?, "rng_seed")?;
    let seed_node: SeedNode = header_value(&next()?, "seed_node")?.parse()?;
    let graph_hash = header_value(&next()?, "graph_hash")?.to_string();
    let header = TraceHeader { method, config: SamplerConfig { budget, walk_prob, jump_weight, rng_seed, seed_node }, graph_hash };

    let actual = g.content_hash();
    if header.graph_hash != actual {
        return Err(Error::GraphMismatch { trace: header.graph_hash, graph: actual });
    }

    let mut sample: Option<WalkSample> = None;
    let mut edges = Vec::new();
    for line in lines {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            ["E", s, t] => {
                let s = g.index_of(parse(s, "edge source")?)?;
                let t = g.index_of(parse(t, "edge target")?)?;
                edges.push((s, t));
            }
            [idx, id, kind] => {
                let idx: usize = parse(idx, "step index")?;
                let v = g.index_of(parse(id, "node id")?)?;
                let kind: StepKind = kind.parse()?;
                match (&mut sample, kind) {
                    (None, StepKind::Seed) if idx == 0 => {
                        sample = Some(WalkSample::with_capacity(header.method, header.config, v));
                    }
                    (Some(s), k) if k != StepKind::Seed && idx == s.len() => s.push(k, v),
                    _ => return Err(Error::TraceFormat(format!("out-of-order step line {line:?}"))),
                }
            }
            _ => return Err(Error::TraceFormat(format!("unrecognized line {line:?}"))),
        }
    }
    let sample = sample.ok_or_else(|| Error::TraceFormat("trace has no steps".into()))?;
    if sample.len() != budget {
        return Err(Error::TraceFormat(format!("trace has {} steps, header budget is {budget}", sample.len())));
    }
    let listed: std::collections::BTreeSet<_> = edges.into_iter().collect();
    if listed != sample.collected_edges {
        return Err(Error::TraceFormat("edge lines disagree with walk steps".into()));
    }
    Ok(sample)
}
