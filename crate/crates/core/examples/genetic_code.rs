//! Genetic code of a length vector, and what happens on a wall.
//!
//! cargo run --example genetic_code -- 1,1,2,2,3,4

use polyspace::combinatorics::{genetic_code, LengthVector, Side};

fn main() -> polyspace::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,1,2,2,3,4".into());
    let (a, reordered) = arg.parse::<LengthVector>()?.sorted();
    if reordered {
        println!("sorted to {a}");
    }
    match genetic_code(&a) {
        Ok(code) => {
            println!("{a} lies in {code}");
            for &g in code.genes() {
                assert_eq!(a.compare_subset_sums(g)?, Side::Short);
                println!("  gene {g}");
            }
            println!("  {} short subsets contain {}", code.down_closure().len(), a.m());
        }
        Err(e) => println!("{a}: {e}"),
    }
    // two equal halves: a wall
    let wall: LengthVector = "1,1,1,1".parse()?;
    println!("{wall}: {}", genetic_code(&wall).unwrap_err());
    Ok(())
}
