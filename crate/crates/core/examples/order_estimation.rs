//! Graph-order estimates from collisions: capture-recapture on the two halves
//! of one uniform walk, and cross-collisions between a uniform walk and a
//! second, arbitrary one.

use std::error::Error;

use osnwalk::estimators::{cross_collision_order, mhrw_order_estimate};
use osnwalk::evaluation::rrmse;
use osnwalk::{generate, sample, GenSpec, Method, SamplerConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenSpec::erdos_renyi(500, 0.01, 2))?;
    let n = g.node_count() as f64;
    println!("true order {n}");
    println!("{:>7} {:>12} {:>12}", "budget", "capture", "cross");
    for budget in [100, 250, 500, 1000, 2500] {
        let (mut cr, mut cc) = (Vec::new(), Vec::new());
        for rep in 0..40u64 {
            let m = sample(&g, Method::Mhrw, &SamplerConfig::new(budget, rep))?;
            let w = sample(&g, Method::Rwwj, &SamplerConfig::new(budget, 1_000 + rep))?;
            cr.extend(mhrw_order_estimate(&m, rep).ok());
            cc.extend(cross_collision_order(&m.distinct_nodes(), &w.trace).ok());
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        println!(
            "{budget:>7} {:>7.1} ({:.2}) {:>7.1} ({:.2})",
            mean(&cr),
            rrmse(&cr, n)?,
            mean(&cc),
            rrmse(&cc, n)?
        );
    }
    println!("(mean over 40 replications, RRMSE in parentheses)");
    Ok(())
}
