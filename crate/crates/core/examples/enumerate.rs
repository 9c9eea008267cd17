//! Enumerate every chamber for a given number of edges.
//!
//! cargo run --release --example enumerate -- 6

use std::time::Instant;

use polyspace::chambers::enumerate_chambers;

fn main() -> polyspace::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let start = Instant::now();
    let chambers = enumerate_chambers(m)?;
    for c in &chambers {
        println!("{}", c.to_record());
    }
    eprintln!("{} chambers for m = {m} in {:.2?}", chambers.len(), start.elapsed());
    Ok(())
}
