//! Builds both transition matrices of a small graph and solves for their
//! stationary laws by power iteration.

use std::error::Error;

use osnwalk::sampler::{build_chain_matrix, stationary_distribution, ChainParams, DEFAULT_MATRIX_CAP};
use osnwalk::{generate, GenSpec};

fn main() -> Result<(), Box<dyn Error>> {
    let g = generate(&GenSpec::erdos_renyi(8, 0.3, 5).symmetrized())?;
    let n = g.node_count();

    let mhrw = build_chain_matrix(&g, ChainParams::Mhrw { walk_prob: 0.85 }, DEFAULT_MATRIX_CAP)?;
    println!("MHRW transition matrix:");
    for row in mhrw.rows() {
        println!("  {}", row.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>().join(" "));
    }
    let pi = stationary_distribution(&mhrw, 1e-13, 100_000)?;
    println!("stationary: {:?}", pi.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>());
    println!("uniform would be {:.4}", 1.0 / n as f64);

    let alpha = 1.0;
    let rwwj = build_chain_matrix(&g, ChainParams::Rwwj { jump_weight: alpha }, DEFAULT_MATRIX_CAP)?;
    let pi = stationary_distribution(&rwwj, 1e-13, 100_000)?;
    let z: f64 = (0..n).map(|v| g.in_neighbors(v).len() as f64 + alpha).sum();
    println!("\nRWwJ node  in-degree  stationary  (d+alpha)/Z");
    for (v, p) in pi.iter().enumerate() {
        let d = g.in_neighbors(v).len();
        println!("     {v:>4}  {d:>9}  {p:>10.5}  {:>11.5}", (d as f64 + alpha) / z);
    }
    Ok(())
}
