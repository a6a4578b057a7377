//! The twisted graph on lines through a point and Greeks missing it:
//! strongly regular parameters, the 4-vertex condition split by pair kind,
//! and the common-neighbor classification for each of the six pair cases.
//!
//!     cargo run --release --example d55_twist

use polartwist::graphcore::{check_srg, four_vertex_condition, Mode, Verdict};
use polartwist::twist_d5::{
    build_gamma, build_gamma_prime, expected_parameters, four_vertex_by_kind, residue_lemma_check, sample_fact_one, D5Context, PairCase,
};

fn main() -> polartwist::Result<()> {
    let ctx = D5Context::new(2)?;
    let gamma = build_gamma(&ctx);
    let gp = build_gamma_prime(&ctx);
    let e = expected_parameters(2);
    println!("|C'| = {}, |D| = {}, expected SRG({}, {}, {}, {})", ctx.lines().len(), ctx.d().len(), e.v, e.k, e.lambda, e.mu);
    for (name, g) in [("gamma", &gamma), ("gamma'", &gp)] {
        match check_srg(g, Mode::Full) {
            Verdict::Holds(p) => println!("{name}: SRG({}, {}, {}, {})", p.v, p.k, p.lambda, p.mu),
            Verdict::Fails(c) => println!("{name}: not strongly regular, {c}"),
        }
    }

    let lemma = residue_lemma_check(&ctx, Mode::Full);
    println!("\nresidue meets: D x D dims {:?}, D x C dims {:?}, {} violations", lemma.dd_dims, lemma.dc_dims, lemma.violation_count);

    println!("\n4-vertex condition on gamma': {:?}", four_vertex_condition(&gp, Mode::Full));
    for kc in four_vertex_by_kind(&ctx, &gp, Mode::Sampled { seed: 1, count: 60 }) {
        let adj = if kc.adjacent { "adjacent" } else { "nonadjacent" };
        println!("  {:>5} {adj:>11}: edge counts {:?}", kc.kind, kc.counts);
    }

    println!("\ncommon neighbors of 100 random pairs per case:");
    for case in PairCase::ALL {
        let s = sample_fact_one(&ctx, &gp, Some(&gamma), case, 100, 11)?;
        println!("  case {}: {} mismatches, {} counting failures, variants {:?}", case.number(), s.mismatches, s.claim_failures, s.variants);
        for (variant, subs) in &s.sizes {
            let parts: Vec<String> = subs.iter().map(|(l, (seen, want))| format!("{l}={want} (seen {seen:?})")).collect();
            println!("      {variant}: {}", parts.join(", "));
        }
    }
    Ok(())
}
