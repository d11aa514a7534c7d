//! Exact properties of a graph read from an edge list.
//!
//!     cargo run --example ground_truth -- path/to/edges.txt[.gz]
//!
//! Without an argument a three-node toy graph is used.

use std::error::Error;

use osnwalk::report::GroundTruth;
use osnwalk::{load_edge_list, load_edge_list_file, Direction};

fn main() -> Result<(), Box<dyn Error>> {
    let g = match std::env::args_os().nth(1) {
        Some(path) => load_edge_list_file(path)?,
        None => load_edge_list("# toy graph\n1 2\n2 1\n2 3\n".as_bytes())?,
    };
    let truth = GroundTruth::compute(&g)?;
    println!("nodes {}  edges {}  hash {}", truth.node_count, truth.edge_count, truth.graph_hash);
    println!("dropped: {} duplicate edges, {} self-loops", truth.duplicate_edges, truth.self_loops);
    if let Some(sigma) = truth.mutual_proportion {
        println!("mutual proportion {sigma:.4}");
    }
    if let Some(r) = truth.ratio_average {
        println!("ratio average {:.4} ({} nodes without out-edges excluded)", r.value, r.excluded);
    }
    for dir in [Direction::In, Direction::Out] {
        let d = g.degree_distribution(dir)?;
        println!("{dir}-degree: mean {:.3}, max {}", d.mean(), d.support_max());
    }
    Ok(())
}
