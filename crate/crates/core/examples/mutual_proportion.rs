//! Mutual-edge proportion and ratio average from the edges a walk
//! collects, compared with the exact values.

use std::error::Error;

use osnwalk::estimators::{mutual_proportion_estimate, ratio_average_estimate};
use osnwalk::{generate, sample, GenSpec, Method, SamplerConfig};

fn main() -> Result<(), Box<dyn Error>> {
    // a sparse directed graph with a reciprocal core
    let spec: GenSpec = "er:400:0.01:4+sym(er:100:0.05:5)".parse()?;
    let g = generate(&spec)?;
    let sigma = g.mutual_proportion()?;
    let ratio = g.ratio_average()?;
    println!("truth: sigma {sigma:.4}, ratio average {:.4}", ratio.value);

    for method in [Method::Mhrw, Method::Rwwj] {
        for budget in [500, 5_000, 50_000] {
            let s = sample(&g, method, &SamplerConfig::new(budget, 8))?;
            let est = mutual_proportion_estimate(&g, &s)?;
            let r = ratio_average_estimate(&g, &s)?;
            println!(
                "{method} budget {budget:>6}: sigma {est:.4}, ratio {:.4} ({} edges collected)",
                r.value,
                s.collected_edges.len()
            );
        }
    }
    Ok(())
}
