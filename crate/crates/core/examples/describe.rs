//! Chain, planar and spatial polygon spaces of one chamber, with the rule
//! that produced them.
//!
//! cargo run --example describe -- 6 621,64

use polyspace::combinatorics::GeneticCode;
use polyspace::topology::{engine, euler_char, instantiate, render, SpaceQuery, Style};

fn main() -> polyspace::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let code = GeneticCode::parse(m, &args.next().unwrap_or_else(|| "621,64".into()))?;
    let table = engine().table(m)?;
    let Some(desc) = table.description(&code) else {
        println!("{code} is not described by the implemented rules");
        return Ok(());
    };
    println!("{code} via {}", desc.derivation);
    for (name, q) in
        [("chain", SpaceQuery::Chain(None)), ("planar", SpaceQuery::Planar), ("spatial", SpaceQuery::Spatial)]
    {
        println!("  {name:8}{}", render(&desc.get(q), Style::Unicode));
    }
    let at3 = instantiate(&desc.get(SpaceQuery::Chain(None)), 3);
    println!("  chain at d = 3: {} (χ = {:?})", render(&at3, Style::Ascii), euler_char(&at3));
    Ok(())
}
