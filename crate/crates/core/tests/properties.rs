mod common;

use std::sync::Arc;

use fibcat::fibration::{validate_smallness, SmallnessPredicate};
use fibcat::fincat::{opposite, validate_category};
use fibcat::finset::{all_functions, pullback, FinFn, FinSetObj};
use fibcat::internal::{canonical_faithful_diagram, internalize, is_faithful_diagram};
use fibcat::spans::{choice_set, spans, spans_equivalent};
use proptest::prelude::*;

fn arb_function(max: usize) -> impl Strategy<Value = FinFn> {
    (0..=max, 1..=max).prop_flat_map(|(n, m)| {
        proptest::collection::vec(0..m, n).prop_map(move |table| {
            FinFn::new(FinSetObj::range(table.len()), FinSetObj::range(m), table).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn span_equivalence_is_an_equivalence(seed in any::<u64>()) {
        let c = common::random_category(seed);
        for a in c.objects() {
            for b in c.objects() {
                let ss = spans(&c, a, b);
                let eq = |i: usize, j: usize| spans_equivalent(&c, &ss[i], &ss[j]).unwrap();
                for i in 0..ss.len() {
                    prop_assert!(eq(i, i));
                    for j in 0..ss.len() {
                        prop_assert_eq!(eq(i, j), eq(j, i));
                        for k in 0..ss.len() {
                            if eq(i, j) && eq(j, k) {
                                prop_assert!(eq(i, k));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn every_span_has_one_representative(seed in any::<u64>()) {
        let c = common::random_category(seed);
        for a in c.objects() {
            for b in c.objects() {
                let cs = choice_set(&c, a, b);
                let reps = cs.representatives();
                for s in spans(&c, a, b) {
                    let hits = reps
                        .iter()
                        .filter(|r| spans_equivalent(&c, &s, r).unwrap())
                        .count();
                    prop_assert_eq!(hits, 1);
                    prop_assert_eq!(cs.representative_of(&s), reps.iter().copied().find(|r| spans_equivalent(&c, &s, r).unwrap()));
                }
            }
        }
    }

    #[test]
    fn tables_round_trip(seed in any::<u64>()) {
        let c = common::random_category(seed);
        let back = validate_category(&c.to_raw()).unwrap();
        prop_assert!(back.same_structure(&c));
        prop_assert!(opposite(&opposite(&c)).same_structure(&c));
    }

    #[test]
    fn internal_categories_have_faithful_canonical_diagrams(seed in any::<u64>()) {
        let c = common::random_category(seed);
        let cat = internalize(&c);
        let d = canonical_faithful_diagram(&cat).unwrap();
        prop_assert!(is_faithful_diagram(&cat, &d));
    }

    #[test]
    fn all_morphisms_are_a_smallness_class(seed in any::<u64>()) {
        let c = common::random_category(seed);
        prop_assert!(validate_smallness(&SmallnessPredicate::all(Arc::new(c))).is_empty());
    }

    #[test]
    fn pullbacks_mediate_uniquely(f in arb_function(3), g in arb_function(3)) {
        let g = FinFn::new(g.dom().clone(), f.cod().clone(), g.table().iter().map(|&y| y % f.cod().len()).collect()).unwrap();
        let pb = pullback(&f, &g).unwrap();
        prop_assert_eq!(pb.p1.then(&f).unwrap(), pb.p2.then(&g).unwrap());
        // every cone from a two-element set factors exactly once
        let two = FinSetObj::range(2);
        for a in all_functions(&two, f.dom()) {
            for b in all_functions(&two, g.dom()) {
                let commutes = a.then(&f).unwrap() == b.then(&g).unwrap();
                let factorizations = all_functions(&two, &pb.apex)
                    .into_iter()
                    .filter(|m| m.then(&pb.p1).unwrap() == a && m.then(&pb.p2).unwrap() == b)
                    .count();
                prop_assert_eq!(factorizations, usize::from(commutes));
            }
        }
    }
}
