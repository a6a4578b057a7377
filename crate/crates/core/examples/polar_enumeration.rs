//! Enumerate the maximal totally singular subspaces of O+(2n, q).
//!
//!     cargo run --release --example polar_enumeration -- 2 6

use std::time::Instant;

use polartwist::linalg::gaussian;
use polartwist::quadspace::{PolarIndex, QuadraticSpace};

fn main() -> polartwist::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let q = args.first().copied().unwrap_or(2);
    let n = args.get(1).copied().unwrap_or(5) as usize;

    let space = QuadraticSpace::hyperbolic(q, n)?;
    let start = Instant::now();
    let index = PolarIndex::build(space.clone())?;
    println!("O+({}, {q}): {} singular points", 2 * n, index.points().len());
    println!(
        "  {} greeks, {} latins (expected {} each) in {:.2?}",
        index.greeks().len(),
        index.latins().len(),
        space.maximals_per_family(),
        start.elapsed()
    );
    println!(
        "  each maximal has {} hyperplanes = gaussian({n}, {}, {q}) = {}",
        index.hyperplanes_per_maximal(),
        n - 1,
        gaussian(n as u32, n as u32 - 1, q)
    );

    let mut nb = Vec::new();
    index.same_family_neighbors(0, &mut nb);
    println!("  greeks meeting greek 0 in a {}-space: {}", n - 2, nb.len());
    Ok(())
}
