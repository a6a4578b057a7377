//! Print the addition and multiplication tables of a small field.
//!
//!     cargo run --example field_tables -- 4

use polartwist::gf::FieldTables;

fn main() -> polartwist::Result<()> {
    let q = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let f = FieldTables::new(q)?;
    println!("GF({q}) = GF({})^{}, modulus (low first, monic) {:?}", f.characteristic(), f.degree(), f.modulus());
    for (name, op) in [("+", FieldTables::add as fn(&FieldTables, u8, u8) -> u8), ("*", FieldTables::mul)] {
        print!("\n {name} |");
        for b in f.elements() {
            print!("{b:3}");
        }
        println!("\n---+{}", "---".repeat(q as usize));
        for a in f.elements() {
            print!("{a:2} |");
            for b in f.elements() {
                print!("{:3}", op(&f, a, b));
            }
            println!();
        }
    }
    let inverses: Vec<(u8, u8)> = f.elements().skip(1).map(|a| (a, f.inv(a))).collect();
    println!("\ninverses: {inverses:?}");
    Ok(())
}
