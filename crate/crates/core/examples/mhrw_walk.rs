//! A Metropolis-Hastings walk with jumps: step kinds, rejections and the
//! node-visit balance that makes it a uniform sampler.

use std::error::Error;

use osnwalk::{generate, sample, GenSpec, Method, SamplerConfig, StepKind};

fn main() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenSpec::erdos_renyi(200, 0.03, 1).symmetrized())?;
    let cfg = SamplerConfig::new(200_000, 42).with_walk_prob(0.85);
    let s = sample(&g, Method::Mhrw, &cfg)?;

    for kind in [StepKind::Walk, StepKind::Jump, StepKind::Rejection] {
        println!("{:<9} {:>6.2}%", kind.as_str(), 100.0 * s.count_kind(kind) as f64 / s.len() as f64);
    }
    println!("distinct nodes {} of {}", s.distinct_count(), g.node_count());
    println!("edges collected {} of {}", s.collected_edges.len(), g.edge_count());

    // on a symmetric graph every node is visited about equally often,
    // whatever its degree
    let mut visits = vec![0usize; g.node_count()];
    for &v in &s.trace {
        visits[v] += 1;
    }
    let expected = s.len() as f64 / g.node_count() as f64;
    let (lo, hi) = (visits.iter().min().unwrap(), visits.iter().max().unwrap());
    println!("visits per node: expected {expected:.0}, observed {lo}..{hi}");
    Ok(())
}
