//! Godsil-McKay switching of the Greek graph of O+(12, 2), tried with a
//! symplectic and an orthogonal polarity of the fixed Latin.
//!
//!     cargo run --release --example d66_switch

use std::time::Instant;

use polartwist::graphcore::{check_drg, gm_validate, Mode, Verdict, Violation};
use polartwist::quadspace::PolarityKind;
use polartwist::twist_d6::{
    build_gamma6, build_partition_with, distance2_profile, half_witness_check, non_drg_certificate, validate_and_switch, CellKey,
    D6Context,
};

fn main() -> polartwist::Result<()> {
    let t = Instant::now();
    let ctx = D6Context::new(2)?;
    let g = build_gamma6(&ctx);
    println!("{} greeks, degree {} [{:.1?}]", ctx.vertex_count(), g.degree(0), t.elapsed());
    let sample = Mode::Sampled { seed: 1, count: 100 };
    match check_drg(&g, sample)? {
        Verdict::Holds(a) => println!("gamma intersection array {a} on 100 sampled bases"),
        Verdict::Fails(c) => println!("gamma is not distance-regular: {c}"),
    }
    println!("gamma distance-2 degrees (sampled): {:?}", distance2_profile(&g, sample));

    for kind in [PolarityKind::Symplectic, PolarityKind::Orthogonal] {
        let sigma = ctx.polarity_of_kind(kind)?;
        let part = build_partition_with(&ctx, &sigma)?;
        println!(
            "\n{kind:?} polarity: |D| = {}, {} point cells, {} plane cells ({} self-polar planes), sizes {:?}",
            part.partition.switching_set.len(),
            part.point_cells(),
            part.plane_cells(),
            part.self_polar_planes(),
            part.cell_sizes()
        );
        let report = gm_validate(&g, &part.partition)?;
        let half = half_witness_check(&ctx, &part, &g, &report);
        println!(
            "  {} violations; half-neighbor property on {} predicted pairs, {} failures, matches validation: {}",
            report.violations.len(),
            half.predicted,
            half.failures,
            half.matches_validation
        );
        if let Some(Violation::NotEquitable { cell, target, vertex, count, expected }) = report.violations.first() {
            let show = |c: u32| match &part.keys[c as usize] {
                CellKey::Point(_) => "point cell".to_string(),
                CellKey::Planes(a, b) if a == b => "self-polar plane cell".to_string(),
                CellKey::Planes(..) => "plane pair cell".to_string(),
            };
            println!(
                "  first: greek {vertex} in a {} has {count} neighbors in a {}, the cell's first member has {expected}",
                show(*cell),
                show(*target)
            );
        }
        if report.passed() {
            let mut h = g.clone();
            validate_and_switch(&part, &mut h)?;
            let cert = non_drg_certificate(&ctx, &part, &h)?;
            println!("  switched: d2 of {} and {} = {:?} (in gamma {:?})", cert.u, cert.v, cert.switched_d2, cert.gamma_d2);
        }
    }
    println!("\n[{:.1?}]", t.elapsed());
    Ok(())
}
