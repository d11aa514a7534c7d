//! A random walk with jumps on a disconnected graph: jumps let the walk
//! leave a component, and visits follow in-degree + alpha.

use std::error::Error;

use osnwalk::{generate, sample, GenSpec, Method, SamplerConfig, StepKind};

fn main() -> Result<(), Box<dyn Error>> {
    let spec: GenSpec = "sym(er:60:0.1:3)+ring:40".parse()?;
    let g = generate(&spec)?;
    let alpha = 2.0;
    let s = sample(&g, Method::Rwwj, &SamplerConfig::new(100_000, 9).with_jump_weight(alpha))?;

    let in_first = s.trace.iter().filter(|&&v| v < 60).count();
    println!("graph {spec}: {} nodes", g.node_count());
    println!("walk steps {}, jumps {}", s.count_kind(StepKind::Walk), s.count_kind(StepKind::Jump));
    println!("share of visits in the first component {:.3}", in_first as f64 / s.len() as f64);

    let weight = |v: usize| g.in_neighbors(v).len() as f64 + alpha;
    let z: f64 = (0..g.node_count()).map(weight).sum();
    let predicted: f64 = (0..60).map(weight).sum::<f64>() / z;
    println!("predicted from in-degree + alpha     {predicted:.3}");
    Ok(())
}
