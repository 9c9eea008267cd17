use num_rational::BigRational;
use proptest::prelude::*;

use polyspace::combinatorics::{genetic_code, GeneticCode, LengthVector, SubsetMask};
use polyspace::topology::{normalize, parse, render, Dim, SpaceExpr, Style};

fn subset(m: usize) -> impl Strategy<Value = SubsetMask> {
    (0..1u32 << m).prop_map(move |b| SubsetMask::from_bits(m, b).unwrap())
}

fn lengths(m: usize) -> impl Strategy<Value = LengthVector> {
    prop::collection::vec((1i64..50, 1i64..12), m).prop_map(|v| {
        let entries = v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        LengthVector::new(entries).unwrap().sorted().0
    })
}

fn leaf() -> impl Strategy<Value = SpaceExpr> {
    prop_oneof![
        (0i64..7).prop_map(SpaceExpr::sphere),
        (1i64..4, -2i64..2).prop_map(|(k, c)| SpaceExpr::Sphere(Dim::affine(k, c))),
        (1u32..5).prop_map(SpaceExpr::Torus),
        (2u32..5).prop_map(SpaceExpr::Surface),
        (1u32..4).prop_map(SpaceExpr::CP),
        (1u32..4).prop_map(SpaceExpr::CPbar),
        (5u32..8).prop_map(|m| SpaceExpr::OpaqueB3 { m, d: None }),
    ]
}

fn expr() -> impl Strategy<Value = SpaceExpr> {
    leaf().prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..3).prop_map(SpaceExpr::Product),
            prop::collection::vec(inner.clone(), 1..3).prop_map(SpaceExpr::Disjoint),
            // summands of a common dimension
            (inner.clone(), 1usize..3).prop_map(|(x, n)| SpaceExpr::ConnSum(vec![x; n])),
            inner.prop_map(|x| SpaceExpr::TwistedS2(Box::new(x))),
        ]
    })
}

proptest! {
    #[test]
    fn hook_order_contains_inclusion(a in subset(7), b in subset(7)) {
        if a.is_subset_of(b) {
            prop_assert!(a.hook_leq(b));
        }
    }

    #[test]
    fn code_is_scale_invariant(a in lengths(6), n in 1i64..500, d in 1i64..500) {
        let c = BigRational::new(n.into(), d.into());
        prop_assert_eq!(genetic_code(&a).ok(), genetic_code(&a.scaled(&c).unwrap()).ok());
    }

    #[test]
    fn genes_are_short_and_an_antichain(a in lengths(7)) {
        if let Ok(code) = genetic_code(&a) {
            for &g in code.genes() {
                prop_assert!(g.contains(7));
                prop_assert!(a.compare_subset_sums(g).is_ok_and(|s| s == polyspace::combinatorics::Side::Short));
                for &h in code.genes() {
                    prop_assert!(g == h || !g.hook_leq(h));
                }
            }
            prop_assert_eq!(GeneticCode::from_genes(7, code.genes().to_vec()).unwrap(), code);
        }
    }

    #[test]
    fn tiny_edge_round_trips(a in lengths(5)) {
        if let Ok(code) = genetic_code(&a) {
            let lifted = code.tiny_edge();
            prop_assert_eq!(lifted.tiny_edge_reduce(), Some(code));
        }
    }

    #[test]
    fn normalization_is_idempotent(x in expr()) {
        let once = normalize(&x);
        prop_assert_eq!(normalize(&once), once);
    }

    #[test]
    fn render_parse_round_trip(x in expr()) {
        let n = normalize(&x);
        for style in [Style::Ascii, Style::Unicode] {
            let text = render(&n, style);
            let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(normalize(&back), n.clone(), "{}", text);
        }
    }

    #[test]
    fn spheres_are_absorbed(x in expr()) {
        let n = normalize(&x);
        if let Some(dim) = n.dim() {
            // a lone CP^1 keeps its table spelling; as a summand it is S^2
            let lone_cp1 = matches!(n, SpaceExpr::CP(1) | SpaceExpr::CPbar(1));
            if !matches!(n, SpaceExpr::Disjoint(_) | SpaceExpr::Empty) && !lone_cp1 && dim.at(2) > 0 {
                let with_sphere = SpaceExpr::ConnSum(vec![n.clone(), SpaceExpr::Sphere(dim)]);
                prop_assert_eq!(normalize(&with_sphere), n);
            }
        }
    }
}
