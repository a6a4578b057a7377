//! Godsil-McKay switching on a random graph with a planted partition:
//! validate, switch, compare characteristic polynomials, switch back.
//!
//!     cargo run --release --example gm_switching -- 7

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polartwist::graphcore::{charpoly_fingerprint, default_primes, gm_switch, gm_validate, small};

fn main() -> polartwist::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (g, part) = small::planted_switching(&mut rng, 4, 6, 5);
    println!("graph on {} vertices, {} edges; {} cells of 6, |D| = 5", g.order(), g.edge_count(), part.cells.len());

    let report = gm_validate(&g, &part)?;
    println!("validation: {} violations, {} half pairs {:?}", report.violations.len(), report.half_pairs.len(), report.half_pairs);
    let h = gm_switch(&g, &part)?;
    let changed = g.edges().filter(|&(u, v)| !h.has_edge(u, v)).count();
    println!("switching removed {changed} edges and added as many; edge counts {} -> {}", g.edge_count(), h.edge_count());

    let primes = default_primes(3);
    let fg = charpoly_fingerprint(&g, &primes)?;
    let fh = charpoly_fingerprint(&h, &primes)?;
    println!("fingerprints agree on primes {:?}: {}", fg.primes(), fg.matches(&fh));
    println!("switching twice restores the graph: {}", gm_switch(&h, &part)? == g);
    Ok(())
}
