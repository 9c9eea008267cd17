//! Minimal integral representatives, and the tiny edge that relates `m - 1`
//! to `m`.
//!
//! cargo run --example a_min -- 6 631,65

use polyspace::chambers::{a_min, tiny_edge};
use polyspace::combinatorics::GeneticCode;

fn main() -> polyspace::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let genes = args.next().unwrap_or_else(|| "631,65".into());
    let code = GeneticCode::parse(m, &genes)?;
    let a = a_min(&code)?;
    println!("a_min({code}) = {a}");

    let lifted = tiny_edge(&code);
    println!("tiny edge: {lifted}, a_min = {}", a_min(&lifted)?);
    println!("ε ⊕ a_min = {}", a.with_tiny_edge()?);
    Ok(())
}
