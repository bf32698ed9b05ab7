use proptest::prelude::*;
use topozeta::lattice::ExponentVector;
use topozeta::newton::{MonomialIdeal, Polynomial};
use topozeta::resolution::{analyze_candidate, principalize, zeta_from_resolution};
use topozeta::zeta::{zeta, Variant, ZetaRequest};

fn ideal_strategy() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec((0i64..=8, 0i64..=8), 1..=4)
        .prop_filter("not the unit ideal", |gs| gs.iter().any(|&(a, b)| a + b > 0))
        .prop_map(|gs| {
            let gens = gs.into_iter().filter(|&(a, b)| a + b > 0).map(|(a, b)| ExponentVector::from([a, b]));
            MonomialIdeal::new(gens.collect()).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn resolution_agrees_with_cone_formula(i in ideal_strategy(), n in 0i64..=5, m in 0i64..=5) {
        let g = Polynomial::monomial(ExponentVector::from([n, m]));
        let d = principalize(&i, &g).unwrap();
        let from_diagram = zeta_from_resolution(&d).unwrap().normalize();
        let from_cones = zeta(&ZetaRequest::new(i.clone(), g.clone())).unwrap().normalize();
        prop_assert_eq!(&from_diagram, &from_cones);
        let global = zeta(&ZetaRequest::new(i, g).variant(Variant::Global)).unwrap().normalize();
        prop_assert_eq!(&global, &from_cones);
    }

    #[test]
    fn poles_are_candidates_and_residues_split(i in ideal_strategy(), n in 0i64..=3, m in 0i64..=3) {
        let g = Polynomial::monomial(ExponentVector::from([n, m]));
        let d = principalize(&i, &g).unwrap();
        let z = zeta_from_resolution(&d).unwrap();
        let candidates: Vec<_> = d.nodes.iter().filter_map(|node| node.candidate()).collect();
        for pole in &z.poles().entries {
            prop_assert!(candidates.contains(&pole.location));
        }
        for s0 in &candidates {
            let a = analyze_candidate(&d, s0).unwrap();
            if a.expected_order == 1 {
                prop_assert_eq!(a.residue(), z.laurent_coefficient(s0, 1));
            } else {
                prop_assert!(z.laurent_coefficient(s0, 2) > topozeta::arith::int(0));
            }
        }
    }

    #[test]
    fn exceptional_data_follow_update_rules(i in ideal_strategy()) {
        let d = principalize(&i, &Polynomial::one(2)).unwrap();
        for node in &d.nodes {
            prop_assert!(node.nu >= 1 && node.n >= 0);
        }
        let exceptional = d.nodes.iter().filter(|n| n.label.starts_with("E_")).count();
        prop_assert_eq!(exceptional, d.blowups);
    }
}
