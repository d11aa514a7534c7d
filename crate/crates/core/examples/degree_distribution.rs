//! Estimates in- and out-degree distributions with both walks and scores
//! them against the exact distributions.

use std::error::Error;

use osnwalk::estimators::degree_distribution_estimate;
use osnwalk::evaluation::{kl_divergence, ks_d_statistic, DEFAULT_KL_EPSILON};
use osnwalk::{generate, sample, Direction, GenSpec, Method, SamplerConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenSpec::erdos_renyi(2000, 0.004, 11))?;
    let budget = g.node_count() * 15 / 100;
    println!("N = {}, budget = {budget}", g.node_count());
    println!("{:<6} {:<4} {:>8} {:>8}", "method", "dir", "D", "KL");
    for method in [Method::Mhrw, Method::Rwwj] {
        let s = sample(&g, method, &SamplerConfig::new(budget, 3))?;
        for dir in [Direction::In, Direction::Out] {
            let truth = g.degree_distribution(dir)?;
            let est = degree_distribution_estimate(&g, &s, dir)?;
            let d = ks_d_statistic(&est, &truth);
            let kl = kl_divergence(&truth, &est, DEFAULT_KL_EPSILON)?;
            println!("{method:<6} {dir:<4} {d:>8.4} {kl:>8.4}");
        }
    }
    Ok(())
}
