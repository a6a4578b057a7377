//! Write a twisted Grassmann graph as graph6 and as an edge list, then read
//! the graph6 back.
//!
//!     cargo run --release --example graph6_export -- /tmp/twist

use polartwist::graphcore::{from_graph6, to_edgelist, to_graph6};
use polartwist::grassmann::twisted_grassmann_vertexswap;

fn main() -> polartwist::Result<()> {
    let stem = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().join("twisted-j253").display().to_string());
    let g = twisted_grassmann_vertexswap(2, 2)?.graph;

    let g6 = to_graph6(&g, false)?;
    std::fs::write(format!("{stem}.g6"), &g6)?;
    let mut edges = Vec::new();
    to_edgelist(&g, &mut edges)?;
    std::fs::write(format!("{stem}.edges"), &edges)?;
    println!("wrote {stem}.g6 ({} bytes) and {stem}.edges ({} edges)", g6.len(), g.edge_count());

    let back = from_graph6(&std::fs::read(format!("{stem}.g6"))?)?;
    println!("graph6 round trip equal: {}", back == g);
    Ok(())
}
