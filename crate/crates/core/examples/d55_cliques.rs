//! Maximal cliques of the untwisted and twisted graphs: the named clique
//! families, a full census of each graph, and what falls outside.
//!
//!     cargo run --release --example d55_cliques

use polartwist::twist_d5::{
    build_gamma, build_gamma_prime, classify_gamma_census, classify_gamma_prime_census, clique_family, CliqueType, D5Context,
};

fn main() -> polartwist::Result<()> {
    let ctx = D5Context::new(2)?;
    let gamma = build_gamma(&ctx);
    let gp = build_gamma_prime(&ctx);

    println!("clique families of gamma' (first witness of each):");
    for kind in CliqueType::ALL {
        let (lines, greeks) = kind.shape(2);
        match clique_family(&ctx, &gp, kind, Some(1)) {
            Ok(w) => println!("  ({:>3}) {lines:>2} lines + {greeks:>2} greeks = {:>2}: maximal, {} found", kind.roman(), kind.size(2), w.len()),
            Err(e) => println!("  ({:>3}) {lines:>2} lines + {greeks:>2} greeks = {:>2}: {e}", kind.roman(), kind.size(2)),
        }
    }

    let c = classify_gamma_prime_census(&ctx, &gp)?;
    println!("\ngamma': {} maximal cliques, by size {:?}", c.cliques, c.by_size);
    for (name, t) in &c.families {
        println!("  {name:>5}: {} instances, {} maximal", t.instances, t.maximal);
    }
    println!(
        "  outside the families: {} {:?}, of which {} are line + greeks through a point of a latin",
        c.unclassified, c.unclassified_by_shape, c.unclassified_latin_point
    );

    let c = classify_gamma_census(&ctx, &gamma)?;
    println!("\ngamma: {} maximal cliques, by size {:?}, unclassified {}", c.cliques, c.by_size, c.unclassified);
    Ok(())
}
