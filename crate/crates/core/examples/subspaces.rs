//! Count subspaces of GF(q)^n by enumeration and compare with the Gaussian
//! binomials; then intersect two random planes.
//!
//!     cargo run --release --example subspaces -- 3 5

use polartwist::gf::FieldTables;
use polartwist::linalg::{gaussian, Vector, VectorSpace};

fn main() -> polartwist::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let q = args.first().copied().unwrap_or(2) as u32;
    let n = args.get(1).copied().unwrap_or(4);
    let space = VectorSpace::new(FieldTables::new(q)?, n)?;

    println!("subspaces of GF({q})^{n}:");
    for k in 0..=n {
        let found = space.enumerate_subspaces(&space.whole(), k).count() as u128;
        println!("  k = {k}: {found:>8} enumerated, gaussian = {}", gaussian(n as u32, k as u32, q));
    }

    let u = space.span(&[Vector::unit(n, 0), Vector::unit(n, 1)])?;
    let mut mixed = vec![1u8; n];
    mixed[0] = 0;
    let w = space.span(&[Vector::unit(n, 1), Vector::from_coords(&mixed)])?;
    let meet = space.intersect(&u, &w)?;
    println!("\nU = {}\nW = {}", u.key(), w.key());
    println!("dim(U ∩ W) = {}, dim(U + W) = {}", meet.dim(), space.join_dim(&u, &w));
    println!("U ∩ W = {}", meet.key());
    Ok(())
}
