//! Critical points of the distance-to-the-long-edge function on `V_d`,
//! and the connectivity that follows from their indices.
//!
//! cargo run --example morse -- 6 632 3

use polyspace::combinatorics::GeneticCode;
use polyspace::morse::{connectivity, euler_boundary_check, morse_inventory};

fn main() -> polyspace::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let code = GeneticCode::parse(m, &args.next().unwrap_or_else(|| "632".into()))?;
    let d: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let inv = morse_inventory(&code, d)?;
    println!("{code} at d = {d}: χ(V) = {}", inv.euler_v);
    for p in &inv.points {
        println!("  {} index {}", p.subset, p.index);
    }
    println!("{}", connectivity(&code, d)?);
    let check = euler_boundary_check(&code)?;
    println!("χ(Ch²) = {} (expected {})", check.chi_boundary, check.expected);
    Ok(())
}
