//! The chamber tables for m = 4..7; rows past the reach of the rules show
//! as unreachable.
//!
//! cargo run --release --example tables -- 7

use polyspace::cli::{table_rows, table_text};
use polyspace::topology::{coverage, SpaceQuery};

fn main() -> polyspace::Result<()> {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    print!("{}", table_text(&table_rows(m, None, false)?));
    let (described, total) = coverage(m, SpaceQuery::Planar)?;
    eprintln!("{described} of {total} chambers described");
    Ok(())
}
