//! Property tests for the structural invariants: field axioms, parser
//! round trips, histogram conservation, and classifier symmetries.

mod common;

use proptest::prelude::*;

use common::{random_cubic_multigraph, rng};
use holant_lab::cyclo::{cyc_parse, rat, Cyc12};
use holant_lab::dichotomy::{classify, coordinates_equivalence_check};
use holant_lab::eval::{holant_eval_graph, pair_histogram, pair_histogram_sequential};
use holant_lab::grid::SymSignature;
use holant_lab::poly::{MPoly, Var};

fn arb_cyc() -> impl Strategy<Value = Cyc12> {
    // Four small rational coordinates over the power basis.
    let coeff = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d));
    [coeff.clone(), coeff.clone(), coeff.clone(), coeff]
        .prop_map(|[c0, c1, c2, c3]| Cyc12::new(c0, c1, c2, c3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(x in arb_cyc(), y in arb_cyc(), z in arb_cyc()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x - &x, Cyc12::zero());
    }

    #[test]
    fn field_inverses(x in arb_cyc()) {
        if !x.is_zero() {
            let inv = x.inv().unwrap();
            prop_assert_eq!(&x * &inv, Cyc12::one());
        } else {
            prop_assert!(x.inv().is_err());
        }
    }

    #[test]
    fn conjugation_automorphism(x in arb_cyc(), y in arb_cyc()) {
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        // norm_sq is a nonnegative-definite real quantity.
        let n = x.norm_sq();
        prop_assert!(n.is_real());
        if x.is_zero() {
            prop_assert!(n.is_zero());
        } else {
            prop_assert!(!n.is_zero());
        }
    }

    #[test]
    fn scalar_grammar_round_trip(x in arb_cyc()) {
        let text = x.to_string();
        prop_assert_eq!(cyc_parse(&text).unwrap(), x);
    }

    #[test]
    fn polynomial_display_round_trip(
        coeffs in proptest::collection::vec((-9i64..=9, 0u16..3, 0u16..3), 1..6)
    ) {
        let mut p = MPoly::zero();
        for (c, i, j) in coeffs {
            let term = &MPoly::int(c)
                * &(&MPoly::var(Var::X).pow(i as u32) * &MPoly::var(Var::Y).pow(j as u32));
            p = &p + &term;
        }
        let text = p.to_string();
        prop_assert_eq!(MPoly::parse(&text).unwrap(), p);
    }

    #[test]
    fn classifier_swap_symmetry(seeds in (0i64..=4, -4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)) {
        // a <-> b leaves X, Y, and therefore the verdict unchanged.
        let (_, n1, d1, n2, d2) = seeds;
        let a = &Cyc12::from_rat(rat(n1, d1)) + &(&Cyc12::from_rat(rat(n2, d2)) * &Cyc12::i());
        let b = Cyc12::from_rat(rat(n2, d1));
        for planar in [false, true] {
            prop_assert_eq!(
                classify(&a, &b, planar).verdict,
                classify(&b, &a, planar).verdict
            );
        }
        prop_assert!(coordinates_equivalence_check(&a, &b));
    }
}

#[test]
fn histogram_conservation_and_parallel_agreement() {
    let mut r = rng(0xBEEF);
    for n in [4usize, 6, 8] {
        for _ in 0..5 {
            let g = random_cubic_multigraph(n, &mut r);
            let h = pair_histogram(&g).unwrap();
            let hs = pair_histogram_sequential(&g).unwrap();
            let e = g.edges.len();
            let mut total: u64 = 0;
            for i in 0..=e {
                for j in 0..=e {
                    assert_eq!(h.get(i, j), hs.get(i, j), "parallel/sequential divergence");
                    total += h.get(i, j);
                }
            }
            // Half of all vertex assignments are enumerated (the rest
            // come by complement pairing).
            assert_eq!(total, 1u64 << (n - 1));
        }
    }
}

#[test]
fn signature_reversal_symmetry() {
    // Complement pairing makes Holant(g, [x,y,z]) = Holant(g, [z,y,x]).
    let mut r = rng(0xCAFE);
    for _ in 0..10 {
        let g = random_cubic_multigraph(6, &mut r);
        let fwd = SymSignature::from_ints(&[2, -1, 5]);
        let rev = SymSignature::from_ints(&[5, -1, 2]);
        assert_eq!(
            holant_eval_graph(&g, &fwd).unwrap(),
            holant_eval_graph(&g, &rev).unwrap()
        );
    }
}
