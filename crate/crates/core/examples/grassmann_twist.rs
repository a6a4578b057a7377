//! J_q(2k+1, k+1) and its two twisted versions: same intersection array,
//! same characteristic polynomial, different maximal cliques.
//!
//!     cargo run --release --example grassmann_twist -- 2 2

use polartwist::graphcore::{charpoly_fingerprint, check_drg, clique_census, default_primes, maximal_cliques, Mode, Verdict};
use polartwist::grassmann::{grassmann_graph, twisted_grassmann_switch, twisted_grassmann_vertexswap};

fn main() -> polartwist::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let q = args.first().copied().unwrap_or(2);
    let k = args.get(1).copied().unwrap_or(2) as usize;

    let base = grassmann_graph(q, 2 * k + 1, k + 1)?.graph;
    let swap = twisted_grassmann_vertexswap(q, k)?.graph;
    let switch = twisted_grassmann_switch(q, k)?;
    println!(
        "switching partition: {} cells, |D| = {}, {} half pairs, {} violations",
        switch.partition.cells.len(),
        switch.partition.switching_set.len(),
        switch.report.half_pairs.len(),
        switch.report.violations.len()
    );

    let primes = default_primes(3);
    let reference = charpoly_fingerprint(&base, &primes)?;
    for (name, g) in [("J_q(2k+1,k+1)", &base), ("vertex swap", &swap), ("GM switch", &switch.switched)] {
        let array = match check_drg(g, Mode::Full)? {
            Verdict::Holds(a) => a.to_string(),
            Verdict::Fails(c) => format!("not distance-regular ({c})"),
        };
        let same = charpoly_fingerprint(g, &primes)?.matches(&reference);
        println!("{name:>14}: {} vertices, array {array}, cospectral with J: {same}", g.order());
        println!("{:>14}  maximal cliques by size {:?}", "", clique_census(&maximal_cliques(g)));
    }
    Ok(())
}
