//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use polyspace::chambers::{self, enumerate_chambers, Chamber};
use polyspace::cli::{self, a_min_is_minimal, Format};
use polyspace::combinatorics::{genetic_code, GeneticCode, LengthVector, SubsetMask};
use polyspace::morse::{connectivity, euler_boundary_check, ConnectivityReport};
use polyspace::topology::{self, coverage, path_independence, sum_euler_checks, SpaceExpr, SpaceQuery};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_chambers() -> Vec<Vec<Chamber>> {
    (3..=7).map(|m| enumerate_chambers(m).expect("m <= 7")).collect()
}

fn chamber_counts() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> =
        (4..=7).map(|m| enumerate_chambers(m).map(|c| c.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(counts == [3, 7, 21, 135], || format!("counts {counts:?}"))?;
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("3, 7, 21, 135 in {secs:.2} s"))
}

fn table_reproduction() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut rows = 0;
    for m in 4..=6 {
        let out = cli::table(m, None, Format::Text, Some(&golden), false);
        ensure(out.code == 0, || format!("m={m}: {}", out.stderr.trim()))?;
        rows += out.stdout.lines().count();
    }
    ensure(rows == 31, || format!("{rows} rows"))?;
    Ok("m=4,5,6 byte-identical (31 rows)".into())
}

fn m7_coverage() -> Outcome {
    let mut seen = Vec::new();
    for q in [SpaceQuery::Chain(None), SpaceQuery::Planar, SpaceQuery::Spatial] {
        seen.push(coverage(7, q).map_err(|e| e.to_string())?);
    }
    ensure(seen.iter().all(|&c| c == (49, 135)), || format!("coverage {seen:?}, expected (49, 135)"))?;
    Ok("(49, 135) for every target".into())
}

fn micro_examples() -> Outcome {
    let code = GeneticCode::parse(6, "631,65").unwrap();
    let lifted = chambers::tiny_edge(&code);
    ensure(lifted.to_string() == "⟨7421,761⟩", || format!("tiny_edge gives {lifted}"))?;

    for m in 3..=7 {
        let mut expected = vec![1i64; m - 1];
        expected.push(m as i64 - 2);
        let a = chambers::a_min(&GeneticCode::single(m)).map_err(|e| e.to_string())?;
        let want = LengthVector::from_integers(&expected).unwrap();
        ensure(a == want, || format!("a_min(⟨{m}⟩) = {a}"))?;
    }

    let mut checked = 0;
    for m in 3..=7usize {
        let known: Vec<GeneticCode> = enumerate_chambers(m).unwrap().into_iter().map(|c| c.code).collect();
        for p in 1..=m - 2 {
            let mut v = vec![1i64; p];
            v.extend(std::iter::repeat_n(2, m - p - 1));
            v.push(2 * m as i64 - p as i64 - 5);
            let pair = GeneticCode::pair(m, p).map_err(|e| e.to_string())?;
            let a = LengthVector::from_integers(&v)
                .ok()
                .filter(|a| a.is_sorted() && a.entries().last() > Some(&BigRational::from_integer(BigInt::from(0))));
            match a {
                Some(a) => {
                    let got = genetic_code(&a).map_err(|e| format!("{v:?}: {e}"))?;
                    ensure(got == pair, || format!("{v:?} has code {got}, expected {pair}"))?;
                    checked += 1;
                }
                // the formula leaves the sorted cone; the pair code is then not a chamber either
                None => ensure(!known.contains(&pair), || format!("{v:?} invalid but {pair} is a chamber"))?,
            }
        }
    }
    Ok(format!("tiny edge, a_min(⟨m⟩) for m=3..7, {checked} pair vectors"))
}

fn property_suites(all: &[Vec<Chamber>]) -> Outcome {
    // hook order on {1..7}
    let subsets: Vec<SubsetMask> = (0..1u32 << 7).map(|b| SubsetMask::from_bits(7, b).unwrap()).collect();
    for &a in &subsets {
        ensure(a.hook_leq(a), || format!("{a} not reflexive"))?;
        for &b in &subsets {
            let ab = a.hook_leq(b);
            ensure(!(ab && b.hook_leq(a) && a != b), || format!("{a}, {b} antisymmetry"))?;
            if ab {
                for &c in &subsets {
                    ensure(!b.hook_leq(c) || a.hook_leq(c), || format!("{a}, {b}, {c} transitivity"))?;
                }
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for m in 3..=6 {
        let mut done = 0;
        while done < 200 {
            let entries: Vec<BigRational> =
                (0..m).map(|_| BigRational::new(rng.gen_range(1..60).into(), rng.gen_range(1..9).into())).collect();
            let (a, _) = LengthVector::new(entries).unwrap().sorted();
            let Ok(code) = genetic_code(&a) else { continue };
            let c = BigRational::new(rng.gen_range(1..1000).into(), rng.gen_range(1..1000).into());
            let scaled = genetic_code(&a.scaled(&c).unwrap());
            ensure(scaled.as_ref() == Ok(&code), || format!("{a} scaled by {c}"))?;
            done += 1;
        }
    }

    let mut round_trips = 0;
    for ch in all.iter().flatten() {
        ensure(genetic_code(&ch.a_min).as_ref() == Ok(&ch.code), || format!("round trip {}", ch.code))?;
        round_trips += 1;
    }

    for (i, level) in all.iter().enumerate().take(4) {
        for b in level {
            let eps = b.a_min.with_tiny_edge().unwrap();
            let lifted = chambers::tiny_edge(&b.code);
            ensure(genetic_code(&eps).as_ref() == Ok(&lifted), || {
                format!("tiny edge naturality at {} (m={})", b.code, i + 3)
            })?;
        }
    }

    let mut minimal = 0;
    for ch in all.iter().take(4).flatten() {
        a_min_is_minimal(&ch.code, &ch.a_min)?;
        minimal += 1;
    }
    Ok(format!("hook axioms on 128 subsets, 800 scalings, {round_trips} round trips, {minimal} minimal a_min"))
}

fn euler_cross_validation(all: &[Vec<Chamber>]) -> Outcome {
    let mut boundary = 0;
    for ch in all.iter().take(4).flatten() {
        let r = euler_boundary_check(&ch.code).map_err(|e| format!("{}: {e}", ch.code))?;
        ensure(r.passed, || format!("{}: χ = {}, expected {}", ch.code, r.chi_boundary, r.expected))?;
        boundary += 1;
    }
    let mut steps = 0;
    for m in 4..=7 {
        for d in [2, 3, 4] {
            for s in sum_euler_checks(m, d).map_err(|e| e.to_string())? {
                ensure(s.passed(), || format!("{} -> {} at d={d}", s.step.from, s.step.to))?;
                steps += 1;
            }
        }
    }
    let mut paths = 0;
    for m in 3..=6 {
        for p in path_independence(m).map_err(|e| e.to_string())? {
            ensure(p.passed(), || format!("{} via {}", p.code, p.derivation))?;
            paths += 1;
        }
    }
    Ok(format!("{boundary} boundary checks, {steps} sum steps, {paths} alternative derivations"))
}

fn structural_facts(all: &[Vec<Chamber>]) -> Outcome {
    for (i, level) in all.iter().enumerate() {
        let m = i + 3;
        let disconnected: Vec<&GeneticCode> = level
            .iter()
            .filter(|c| !c.code.is_empty())
            .filter(|c| connectivity(&c.code, 2) == Ok(ConnectivityReport::TwoComponents))
            .map(|c| &c.code)
            .collect();
        // cross-check against the planar descriptions where they exist
        let described: Vec<&GeneticCode> = level
            .iter()
            .filter(|c| matches!(topology::describe(&c.code, SpaceQuery::Planar), Ok(SpaceExpr::Disjoint(_))))
            .map(|c| &c.code)
            .collect();
        // the exceptional chamber needs m >= 4; at m = 3 the planar space is a point
        let expected = usize::from(m >= 4);
        ensure(disconnected.len() == expected, || format!("m={m}: disconnected {disconnected:?}"))?;
        ensure(described == disconnected, || format!("m={m}: descriptions disagree {described:?}"))?;
        // a short set of size m - 2 through m leaves a long triple split off: two tori
        let big_gene: Vec<&GeneticCode> = level
            .iter()
            .filter(|c| m >= 4 && c.code.genes().iter().any(|g| g.len() >= m - 2))
            .map(|c| &c.code)
            .collect();
        ensure(big_gene == disconnected, || format!("m={m}: large genes in {big_gene:?}"))?;
    }

    let a = SubsetMask::new(6, &[6, 3, 2]).unwrap();
    let containing: Vec<String> =
        all[3].iter().filter(|c| c.code.down_set().contains(a)).map(|c| c.code.to_string()).collect();
    ensure(containing.len() == 3, || {
        format!("{} m=6 chambers have {{6,3,2}} in their down-closure: {}", containing.len(), containing.join(" "))
    })?;
    Ok("one disconnected planar space for each m = 4..7, none at m = 3, three chambers over {6,3,2}".into())
}

fn main() -> ExitCode {
    let all = all_chambers();
    let criteria: [Criterion; 7] = [
        ("chamber counts", Box::new(chamber_counts)),
        ("table reproduction", Box::new(table_reproduction)),
        ("m=7 coverage", Box::new(m7_coverage)),
        ("worked micro-examples", Box::new(micro_examples)),
        ("property suites", Box::new(|| property_suites(&all))),
        ("Euler cross-validation", Box::new(|| euler_cross_validation(&all))),
        ("structural facts", Box::new(|| structural_facts(&all))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
