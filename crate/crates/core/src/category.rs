//! A query interface for categories whose objects and morphisms can be
//! enumerated on demand.
//!
//! Finite categories answer every query completely. Infinite ones (finite
//! sets, families over finite sets) enumerate objects up to a cardinality
//! bound and say so through [`Universe::complete`].

use std::fmt::Debug;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::fincat::{FinCategory, MorId, ObjId};
use crate::finset::{self, all_functions, constrained_functions, FinFn, FinSetObj};
use crate::par;
use crate::report::Report;

/// A finite slice of a (possibly infinite) collection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe<T> {
    pub items: Vec<T>,
    /// False when the enumeration was cut at a bound.
    pub complete: bool,
}

impl<T> Universe<T> {
    pub fn complete(items: Vec<T>) -> Self {
        Universe {
            items,
            complete: true,
        }
    }

    pub fn truncated(items: Vec<T>) -> Self {
        Universe {
            items,
            complete: false,
        }
    }
}

/// A limit cone `(apex, p1, p2)` over a cospan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackCone<M> {
    pub p1: M,
    pub p2: M,
}

pub trait Category: Sync + Send {
    type Obj: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn dom(&self, m: &Self::Mor) -> Self::Obj;
    fn cod(&self, m: &Self::Mor) -> Self::Obj;
    fn id(&self, a: &Self::Obj) -> Self::Mor;
    /// First `f`, then `g` (that is, `g∘f`), when composable.
    fn then(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Mor>;
    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Mor>;
    fn objects(&self, bound: usize) -> Universe<Self::Obj>;

    fn describe_obj(&self, a: &Self::Obj) -> Value;
    fn describe_mor(&self, m: &Self::Mor) -> Value;

    /// All `t` with `through∘t = target`.
    fn factorizations(&self, target: &Self::Mor, through: &Self::Mor) -> Vec<Self::Mor> {
        let a = self.dom(target);
        let b = self.dom(through);
        self.hom(&a, &b)
            .into_iter()
            .filter(|t| self.then(t, through).as_ref() == Some(target))
            .collect()
    }

    /// Global elements `1 → a`, when the category has a terminal object
    /// the checks know about.
    fn points(&self, _a: &Self::Obj) -> Option<Vec<Self::Mor>> {
        None
    }

    /// A pullback of `f: X → Z ← Y: g`, if the category has one.
    fn pullback(&self, _f: &Self::Mor, _g: &Self::Mor) -> Option<PullbackCone<Self::Mor>> {
        None
    }

    /// Whether the square `top: X → Y` over `bottom: I → J`, with legs
    /// `left: X → I` and `right: Y → J`, commutes and is a pullback.
    fn is_pullback_square(
        &self,
        top: &Self::Mor,
        left: &Self::Mor,
        right: &Self::Mor,
        bottom: &Self::Mor,
    ) -> bool {
        if self.then(top, right) != self.then(left, bottom) || self.then(top, right).is_none() {
            return false;
        }
        let Some(cone) = self.pullback(bottom, right) else {
            return false;
        };
        let x = self.dom(top);
        let apex = self.dom(&cone.p1);
        let mediators: Vec<Self::Mor> = self
            .hom(&x, &apex)
            .into_iter()
            .filter(|m| {
                self.then(m, &cone.p1).as_ref() == Some(left)
                    && self.then(m, &cone.p2).as_ref() == Some(top)
            })
            .collect();
        mediators.len() == 1 && self.is_iso(&mediators[0])
    }

    fn is_iso(&self, m: &Self::Mor) -> bool {
        let (a, b) = (self.dom(m), self.cod(m));
        let (ida, idb) = (self.id(&a), self.id(&b));
        self.hom(&b, &a).iter().any(|inv| {
            self.then(m, inv).as_ref() == Some(&ida) && self.then(inv, m).as_ref() == Some(&idb)
        })
    }

    /// Composes and panics on a typing error; for callers that have
    /// already established composability.
    fn comp(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        self.then(f, g).unwrap_or_else(|| {
            panic!(
                "composition of {} then {} is not defined",
                self.describe_mor(f),
                self.describe_mor(g)
            )
        })
    }
}

impl Category for FinCategory {
    type Obj = ObjId;
    type Mor = MorId;

    fn dom(&self, m: &MorId) -> ObjId {
        FinCategory::dom(self, *m)
    }

    fn cod(&self, m: &MorId) -> ObjId {
        FinCategory::cod(self, *m)
    }

    fn id(&self, a: &ObjId) -> MorId {
        self.identity(*a)
    }

    fn then(&self, f: &MorId, g: &MorId) -> Option<MorId> {
        self.compose(*f, *g)
    }

    fn hom(&self, a: &ObjId, b: &ObjId) -> Vec<MorId> {
        FinCategory::hom(self, *a, *b).to_vec()
    }

    fn objects(&self, _bound: usize) -> Universe<ObjId> {
        Universe::complete(FinCategory::objects(self).collect())
    }

    fn describe_obj(&self, a: &ObjId) -> Value {
        json!(self.object_name(*a))
    }

    fn describe_mor(&self, m: &MorId) -> Value {
        json!(self.morphism_name(*m))
    }

    fn pullback(&self, f: &MorId, g: &MorId) -> Option<PullbackCone<MorId>> {
        find_pullback(self, *f, *g)
    }

    fn is_iso(&self, m: &MorId) -> bool {
        FinCategory::is_iso(self, *m)
    }
}

/// Exhaustive pullback search in a finite category: the least commuting
/// cone (by object, then legs) through which every commuting cone factors
/// uniquely.
pub fn find_pullback(c: &FinCategory, f: MorId, g: MorId) -> Option<PullbackCone<MorId>> {
    if c.cod(f) != c.cod(g) {
        return None;
    }
    let (x, y) = (c.dom(f), c.dom(g));
    let cones: Vec<(MorId, MorId)> = c
        .objects()
        .flat_map(|p| {
            c.hom(p, x).iter().flat_map(move |&p1| {
                c.hom(p, y).iter().filter_map(move |&p2| {
                    (c.compose(p1, f) == c.compose(p2, g)).then_some((p1, p2))
                })
            })
        })
        .collect();
    cones.iter().find_map(|&(p1, p2)| {
        let p = c.dom(p1);
        let universal = cones.iter().all(|&(q1, q2)| {
            let q = c.dom(q1);
            c.hom(q, p)
                .iter()
                .filter(|&&m| c.compose(m, p1) == Some(q1) && c.compose(m, p2) == Some(q2))
                .count()
                == 1
        });
        universal.then_some(PullbackCone { p1, p2 })
    })
}

/// The category of finite sets and functions. Objects are enumerated as
/// the canonical sets `{0, ..., n-1}` with `n` up to the bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinSets;

impl Category for FinSets {
    type Obj = FinSetObj;
    type Mor = FinFn;

    fn dom(&self, m: &FinFn) -> FinSetObj {
        m.dom().clone()
    }

    fn cod(&self, m: &FinFn) -> FinSetObj {
        m.cod().clone()
    }

    fn id(&self, a: &FinSetObj) -> FinFn {
        FinFn::identity(a)
    }

    fn then(&self, f: &FinFn, g: &FinFn) -> Option<FinFn> {
        f.then(g).ok()
    }

    fn hom(&self, a: &FinSetObj, b: &FinSetObj) -> Vec<FinFn> {
        all_functions(a, b)
    }

    fn objects(&self, bound: usize) -> Universe<FinSetObj> {
        Universe::truncated((0..=bound).map(FinSetObj::range).collect())
    }

    fn describe_obj(&self, a: &FinSetObj) -> Value {
        serde_json::to_value(a).expect("labels serialize")
    }

    fn describe_mor(&self, m: &FinFn) -> Value {
        json!({
            "dom": self.describe_obj(m.dom()),
            "cod": self.describe_obj(m.cod()),
            "table": m,
        })
    }

    fn points(&self, a: &FinSetObj) -> Option<Vec<FinFn>> {
        Some(all_functions(&FinSetObj::range(1), a))
    }

    fn factorizations(&self, target: &FinFn, through: &FinFn) -> Vec<FinFn> {
        if target.cod() != through.cod() {
            return Vec::new();
        }
        let choices: Vec<Vec<usize>> = (0..target.dom().len())
            .map(|z| through.fiber(target.apply(z)))
            .collect();
        constrained_functions(target.dom(), through.dom(), &choices)
    }

    fn pullback(&self, f: &FinFn, g: &FinFn) -> Option<PullbackCone<FinFn>> {
        finset::pullback(f, g).ok().map(|pb| PullbackCone {
            p1: pb.p1,
            p2: pb.p2,
        })
    }

    fn is_iso(&self, m: &FinFn) -> bool {
        m.is_bijective()
    }

    fn is_pullback_square(&self, top: &FinFn, left: &FinFn, right: &FinFn, bottom: &FinFn) -> bool {
        let Ok(pb) = finset::pullback(bottom, right) else {
            return false;
        };
        match pb.mediate(left, top) {
            Ok(m) => m.is_bijective(),
            Err(_) => false,
        }
    }
}

/// Identity and associativity laws over every composable triple between
/// objects of the bounded universe.
pub fn check_category_laws<C: Category>(c: &C, name: &str, bound: usize) -> Report {
    let universe = c.objects(bound);
    let objs = &universe.items;
    let homs: Vec<Vec<Vec<C::Mor>>> =
        par::map(objs, |a| objs.iter().map(|b| c.hom(a, b)).collect());
    let mut report = Report::new("category-laws", name).bounded(bound, universe.complete);
    report.stat("objects", objs.len() as u64);
    report.stat("morphisms", homs.iter().flatten().map(|h| h.len() as u64).sum());

    for (k, a) in objs.iter().enumerate() {
        let ida = c.id(a);
        for (l, b) in objs.iter().enumerate() {
            let idb = c.id(b);
            for f in &homs[k][l] {
                let left = c.then(&ida, f);
                let right = c.then(f, &idb);
                if left.as_ref() != Some(f) || right.as_ref() != Some(f) {
                    report.fail(json!({
                        "law": "unit",
                        "morphism": c.describe_mor(f),
                    }));
                }
            }
        }
    }

    let starts: Vec<(usize, usize)> = (0..objs.len())
        .flat_map(|k| (0..objs.len()).map(move |l| (k, l)))
        .collect();
    let outcomes = par::map(&starts, |&(k, l)| {
        let mut triples = 0u64;
        for f in &homs[k][l] {
            for (m, gs) in homs[l].iter().enumerate() {
                for g in gs {
                    let fg = c.comp(f, g);
                    for h in homs[m].iter().flatten() {
                        triples += 1;
                        let left = c.comp(&fg, h);
                        let right = c.comp(f, &c.comp(g, h));
                        if left != right {
                            let w = json!({
                                "law": "associativity",
                                "f": c.describe_mor(f),
                                "g": c.describe_mor(g),
                                "h": c.describe_mor(h),
                            });
                            return (triples, Some(w));
                        }
                    }
                }
            }
        }
        (triples, None)
    });
    for (triples, failure) in outcomes {
        report.stat("triples", triples);
        if let Some(w) = failure {
            report.fail(w);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arrow_has_all_pullbacks() {
        let arr = fixtures::arrow();
        for f in arr.morphisms() {
            for g in arr.morphisms() {
                if arr.cod(f) == arr.cod(g) {
                    assert!(find_pullback(&arr, f, g).is_some());
                }
            }
        }
    }

    #[test]
    fn fixtures_satisfy_the_laws() {
        for c in fixtures::all() {
            let r = check_category_laws(&c, c.name(), 0);
            assert!(r.is_pass(), "{}", c.name());
            assert!(r.exhaustive);
        }
    }

    #[test]
    fn missing_pullback_detected() {
        let c = fixtures::cospan_without_pullback();
        let p = c.morphism_id("p").unwrap();
        let q = c.morphism_id("q").unwrap();
        assert!(find_pullback(&c, p, q).is_none());
    }

    #[test]
    fn finset_factorizations_match_filtering() {
        let sets = FinSets;
        let x = FinSetObj::range(2);
        let y = FinSetObj::range(3);
        let z = FinSetObj::range(2);
        for target in all_functions(&x, &z) {
            for through in all_functions(&y, &z) {
                let fast = sets.factorizations(&target, &through);
                let slow: Vec<FinFn> = all_functions(&x, &y)
                    .into_iter()
                    .filter(|t| t.then(&through).unwrap() == target)
                    .collect();
                assert_eq!(fast, slow);
            }
        }
    }
}
