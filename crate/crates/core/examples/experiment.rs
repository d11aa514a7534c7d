//! The full experiment pipeline driven by a TOML file, as the `osnwalk run`
//! command does it.
//!
//!     cargo run --example experiment -- crates/core/examples/experiment.toml

use std::error::Error;

use osnwalk::experiment::{self, ConfigFile, ExperimentConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args_os()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/experiment.toml").into());
    let cfg = ExperimentConfig::from_file(ConfigFile::load(path)?)?;
    let summary = experiment::run(&cfg)?;
    println!(
        "{} walks of {} steps on N = {}; output in {}",
        summary.runs,
        summary.budget,
        summary.truth.node_count,
        cfg.out.display()
    );
    print!("{}", summary.table);
    Ok(())
}
