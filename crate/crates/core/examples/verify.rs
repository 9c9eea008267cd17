//! Consistency suites: counts, round trips, tiny edges, Euler
//! characteristics, minimality and path independence.
//!
//! cargo run --release --example verify -- 6

use polyspace::cli::verify_suites;

fn main() -> polyspace::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for s in verify_suites(m)? {
        let mark = if s.passed() { "ok" } else { "FAILED" };
        println!("{:20} {:>4} checks  {mark}", s.name, s.checks);
        for f in &s.failures {
            println!("    {f}");
        }
    }
    Ok(())
}
