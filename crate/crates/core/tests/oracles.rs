//! Library results against brute-force recomputations from the
//! definitions.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use fibcat::category::{check_category_laws, Category};
use fibcat::externalization::{externalize, families, fam_compose, hom_enumerate, Fam, FamObject};
use fibcat::fibration::{fiber, is_cartesian, Fibration};
use fibcat::fincat::{FinCategory, MorId, ObjId};
use fibcat::finset::{all_functions, pullback, FinFn, FinSetObj, Label};
use fibcat::fixtures;
use fibcat::internal::internalize;
use fibcat::spans::{choice_set, concretize, spans, spans_equivalent, Span};

/// Cospans `(h, k)` with `h∘f = k∘g`.
fn closing_cospans(c: &FinCategory, s: &Span, a: ObjId, b: ObjId) -> BTreeSet<(MorId, MorId)> {
    let mut out = BTreeSet::new();
    for h in c.morphisms().filter(|&h| c.dom(h) == a) {
        for k in c.morphisms().filter(|&k| c.dom(k) == b && c.cod(k) == c.cod(h)) {
            if c.compose(s.left, h) == c.compose(s.right, k) {
                out.insert((h, k));
            }
        }
    }
    out
}

fn object_pairs(c: &FinCategory) -> Vec<(ObjId, ObjId)> {
    c.objects().flat_map(|a| c.objects().map(move |b| (a, b))).collect()
}

#[test]
fn span_equivalence_is_equality_of_closing_cospans() {
    for c in common::corpus(24) {
        for (a, b) in object_pairs(&c) {
            let ss = spans(&c, a, b);
            let sig: Vec<_> = ss.iter().map(|s| closing_cospans(&c, s, a, b)).collect();
            for (i, s) in ss.iter().enumerate() {
                for (j, t) in ss.iter().enumerate() {
                    let got = spans_equivalent(&c, s, t).unwrap();
                    assert_eq!(got, sig[i] == sig[j], "{} {s:?} {t:?}", c.name());
                }
            }
        }
    }
}

#[test]
fn spans_are_all_pairs_with_a_common_domain() {
    for c in common::corpus(24) {
        for (a, b) in object_pairs(&c) {
            let mut expected = Vec::new();
            for f in c.morphisms().filter(|&f| c.cod(f) == a) {
                for g in c.morphisms().filter(|&g| c.cod(g) == b && c.dom(g) == c.dom(f)) {
                    expected.push((f, g));
                }
            }
            let mut got: Vec<_> = spans(&c, a, b).iter().map(|s| (s.left, s.right)).collect();
            got.sort();
            expected.sort();
            assert_eq!(got, expected);
        }
    }
}

#[test]
fn choice_set_classes_match_signature_count() {
    for c in common::corpus(24) {
        for (a, b) in object_pairs(&c) {
            let cs = choice_set(&c, a, b);
            let sigs: BTreeSet<_> = spans(&c, a, b)
                .iter()
                .map(|s| closing_cospans(&c, s, a, b))
                .collect();
            assert_eq!(cs.len(), sigs.len(), "{}", c.name());
        }
    }
}

#[test]
fn concretization_is_faithful_on_generated_categories() {
    for c in common::corpus(24) {
        let u = concretize(&c).unwrap();
        assert!(u.law_violations(&c).is_empty(), "{}", c.name());
        assert!(u.is_faithful(&c), "{}", c.name());
    }
}

#[test]
fn pullback_is_the_set_of_matching_pairs() {
    let x = FinSetObj::range(3);
    let z = FinSetObj::range(2);
    for f in all_functions(&x, &z) {
        for g in all_functions(&z, &z) {
            let pb = pullback(&f, &g).unwrap();
            let expected: BTreeSet<(usize, usize)> = (0..3)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .filter(|&(i, j)| f.apply(i) == g.apply(j))
                .collect();
            let got: BTreeSet<(usize, usize)> = (0..pb.apex.len())
                .map(|k| (pb.p1.apply(k), pb.p2.apply(k)))
                .collect();
            assert_eq!(got, expected);
            assert_eq!(pb.apex.len(), expected.len());
        }
    }
}

/// `(v∘u, c∘<g∘u, f>)` recomputed elementwise, by label.
#[test]
fn fam_composition_follows_the_formula() {
    for c in [fixtures::arrow(), fixtures::cyclic(2), fixtures::parallel_pair()] {
        let cat = internalize(&c);
        let objs: Vec<FamObject> = (0..=2)
            .flat_map(|n| families(&cat, &FinSetObj::range(n)))
            .collect();
        for x in &objs {
            for y in &objs {
                for z in &objs {
                    for m1 in hom_enumerate(&cat, x, y) {
                        for m2 in hom_enumerate(&cat, y, z) {
                            let got = fam_compose(&cat, &m1, &m2).unwrap();
                            for i in 0..x.index.len() {
                                let j = m1.u().apply(i);
                                assert_eq!(got.u().apply(i), m2.u().apply(j));
                                let f = c.require_morphism(&cat.c1.label(m1.f().apply(i)).to_string()).unwrap();
                                let g = c.require_morphism(&cat.c1.label(m2.f().apply(j)).to_string()).unwrap();
                                let h = c.compose(f, g).unwrap();
                                assert_eq!(
                                    cat.c1.label(got.f().apply(i)),
                                    &Label::sym(c.morphism_name(h))
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fam_homs_count_componentwise() {
    // |hom((I,X),(J,Y))| = Σ_u Π_i |hom(X i, Y u i)|
    let c = fixtures::parallel_pair();
    let cat = internalize(&c);
    let objs: Vec<FamObject> = (0..=2)
        .flat_map(|n| families(&cat, &FinSetObj::range(n)))
        .collect();
    for x in &objs {
        for y in &objs {
            let expected: usize = all_functions(&x.index, &y.index)
                .iter()
                .map(|u| {
                    (0..x.index.len())
                        .map(|i| c.hom(ObjId(x.family.apply(i)), ObjId(y.family.apply(u.apply(i)))).len())
                        .product::<usize>()
                })
                .sum();
            assert_eq!(hom_enumerate(&cat, x, y).len(), expected);
        }
    }
}

#[test]
fn fiber_of_arrow_over_two() {
    let p = externalize(Arc::new(internalize(&fixtures::arrow())));
    let f = fiber(&p, &FinSetObj::range(2), 3).unwrap();
    assert_eq!((f.object_count(), f.morphism_count()), (4, 9));
}

#[test]
fn chosen_lifts_are_cartesian() {
    for c in [fixtures::arrow(), fixtures::cyclic(2)] {
        let p = externalize(Arc::new(internalize(&c)));
        for y in p.total().objects(2).items {
            for i in p.base().objects(2).items {
                for u in all_functions(&i, &y.index) {
                    let lift = p.chosen_lift(&y, &u).unwrap();
                    assert_eq!(p.project_mor(&lift), u);
                    assert!(is_cartesian(&p, &lift, 2).cartesian);
                }
            }
        }
    }
}

#[test]
fn fam_laws_on_small_indices() {
    for c in [fixtures::terminal(), fixtures::arrow(), fixtures::cyclic(2)] {
        let r = check_category_laws(&Fam::new(Arc::new(internalize(&c))), c.name(), 2);
        assert!(r.is_pass(), "{}", c.name());
        assert!(r.stats["triples"] > 0);
    }
}

#[test]
fn identity_function_is_a_vertical_identity() {
    let cat = Arc::new(internalize(&fixtures::cyclic(3)));
    let p = externalize(cat.clone());
    for x in families(&cat, &FinSetObj::range(2)) {
        let id = p.total().id(&x);
        assert_eq!(p.project_mor(&id), FinFn::identity(&x.index));
        let over: BTreeMap<_, _> = p
            .morphisms_over(&x, &x, &FinFn::identity(&x.index))
            .into_iter()
            .map(|m| (m, ()))
            .collect();
        assert_eq!(over.len(), 9);
        assert!(over.contains_key(&id));
    }
}
