//! `Fam(C)` for an internal category `C` in finite sets, fibered over
//! finite sets by `proj: (I, X) ↦ I`.
//!
//! The base is infinite, so every enumeration of index sets stops at a
//! cardinality bound; enumerations over a fixed index set are complete.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::category::{Category, FinSets, Universe};
use crate::error::{Error, Result};
use crate::fibration::Fibration;
use crate::finset::{all_functions, constrained_functions, FinFn, FinSetObj};
use crate::internal::InternalCategory;

/// An `I`-indexed family `X: I → C0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamObject {
    pub index: FinSetObj,
    pub family: FinFn,
}

impl FamObject {
    pub fn new(cat: &InternalCategory, family: FinFn) -> Result<FamObject> {
        if family.cod() != &cat.c0 {
            return Err(Error::InvalidFamMorphism(
                "a family must land in C0".into(),
            ));
        }
        Ok(FamObject {
            index: family.dom().clone(),
            family,
        })
    }
}

/// `(u, f): (I, X) → (J, Y)` with `d0∘f = X` and `d1∘f = Y∘u`. Only
/// constructed through [`FamMorphism::new`], so always valid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamMorphism {
    dom: FamObject,
    cod: FamObject,
    u: FinFn,
    f: FinFn,
}

impl FamMorphism {
    pub fn new(
        cat: &InternalCategory,
        dom: FamObject,
        cod: FamObject,
        u: FinFn,
        f: FinFn,
    ) -> Result<FamMorphism> {
        if u.dom() != &dom.index || u.cod() != &cod.index {
            return Err(Error::InvalidFamMorphism("u must map I to J".into()));
        }
        if f.dom() != &dom.index || f.cod() != &cat.c1 {
            return Err(Error::InvalidFamMorphism("f must map I to C1".into()));
        }
        for i in 0..dom.index.len() {
            let fi = f.apply(i);
            if cat.d0.apply(fi) != dom.family.apply(i) {
                return Err(Error::InvalidFamMorphism(format!(
                    "d0(f({})) differs from X({})",
                    dom.index.label(i),
                    dom.index.label(i)
                )));
            }
            if cat.d1.apply(fi) != cod.family.apply(u.apply(i)) {
                return Err(Error::InvalidFamMorphism(format!(
                    "d1(f({})) differs from Y(u({}))",
                    dom.index.label(i),
                    dom.index.label(i)
                )));
            }
        }
        Ok(FamMorphism { dom, cod, u, f })
    }

    pub fn dom(&self) -> &FamObject {
        &self.dom
    }

    pub fn cod(&self) -> &FamObject {
        &self.cod
    }

    pub fn u(&self) -> &FinFn {
        &self.u
    }

    pub fn f(&self) -> &FinFn {
        &self.f
    }
}

/// `(v, g)∘(u, f) = (v∘u, c∘<g∘u, f>)`.
pub fn fam_compose(
    cat: &InternalCategory,
    first: &FamMorphism,
    second: &FamMorphism,
) -> Result<FamMorphism> {
    if first.cod != second.dom {
        return Err(Error::NotComposable(
            "codomain of the first family morphism differs from the domain of the second".into(),
        ));
    }
    let vu = first.u.then(&second.u)?;
    let table = (0..first.dom.index.len())
        .map(|i| {
            let g = second.f.apply(first.u.apply(i));
            cat.compose(g, first.f.apply(i))
                .ok_or_else(|| Error::Internal("component arrows are not composable".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = FinFn::new(first.dom.index.clone(), cat.c1.clone(), table)?;
    FamMorphism::new(cat, first.dom.clone(), second.cod.clone(), vu, f)
}

/// `(id_I, i∘X)`.
pub fn fam_identity(cat: &InternalCategory, o: &FamObject) -> FamMorphism {
    let f = o.family.then(&cat.i).expect("families land in C0");
    FamMorphism {
        dom: o.clone(),
        cod: o.clone(),
        u: FinFn::identity(&o.index),
        f,
    }
}

/// `(u, i∘Y∘u): (I, Y∘u) → (J, Y)`.
pub fn fam_cartesian_lift(cat: &InternalCategory, y: &FamObject, u: &FinFn) -> Result<FamMorphism> {
    if u.cod() != &y.index {
        return Err(Error::NotComposable(
            "reindexing map must land in the family's index set".into(),
        ));
    }
    let yu = u.then(&y.family)?;
    let f = yu.then(&cat.i)?;
    let dom = FamObject {
        index: u.dom().clone(),
        family: yu,
    };
    FamMorphism::new(cat, dom, y.clone(), u.clone(), f)
}

/// Every `(u, f): o1 → o2`, ordered by `u` then `f`.
pub fn hom_enumerate(cat: &InternalCategory, o1: &FamObject, o2: &FamObject) -> Vec<FamMorphism> {
    all_functions(&o1.index, &o2.index)
        .into_iter()
        .flat_map(|u| morphisms_over_u(cat, o1, o2, &u))
        .collect()
}

fn morphisms_over_u(
    cat: &InternalCategory,
    o1: &FamObject,
    o2: &FamObject,
    u: &FinFn,
) -> Vec<FamMorphism> {
    let choices: Vec<Vec<usize>> = (0..o1.index.len())
        .map(|i| {
            cat.hom(o1.family.apply(i), o2.family.apply(u.apply(i)))
                .to_vec()
        })
        .collect();
    constrained_functions(&o1.index, &cat.c1, &choices)
        .into_iter()
        .map(|f| FamMorphism {
            dom: o1.clone(),
            cod: o2.clone(),
            u: u.clone(),
            f,
        })
        .collect()
}

/// Every family over `index`.
pub fn families(cat: &InternalCategory, index: &FinSetObj) -> Vec<FamObject> {
    all_functions(index, &cat.c0)
        .into_iter()
        .map(|family| FamObject {
            index: index.clone(),
            family,
        })
        .collect()
}

/// The total category `Fam(C)`.
#[derive(Clone, Debug)]
pub struct Fam {
    cat: Arc<InternalCategory>,
}

impl Fam {
    pub fn new(cat: Arc<InternalCategory>) -> Self {
        Fam { cat }
    }

    pub fn internal(&self) -> &InternalCategory {
        &self.cat
    }
}

impl Category for Fam {
    type Obj = FamObject;
    type Mor = FamMorphism;

    fn dom(&self, m: &FamMorphism) -> FamObject {
        m.dom.clone()
    }

    fn cod(&self, m: &FamMorphism) -> FamObject {
        m.cod.clone()
    }

    fn id(&self, o: &FamObject) -> FamMorphism {
        fam_identity(&self.cat, o)
    }

    fn then(&self, f: &FamMorphism, g: &FamMorphism) -> Option<FamMorphism> {
        fam_compose(&self.cat, f, g).ok()
    }

    fn hom(&self, a: &FamObject, b: &FamObject) -> Vec<FamMorphism> {
        hom_enumerate(&self.cat, a, b)
    }

    fn objects(&self, bound: usize) -> Universe<FamObject> {
        Universe::truncated(
            (0..=bound)
                .flat_map(|n| families(&self.cat, &FinSetObj::range(n)))
                .collect(),
        )
    }

    fn describe_obj(&self, o: &FamObject) -> Value {
        json!({ "index": o.index, "family": o.family })
    }

    fn describe_mor(&self, m: &FamMorphism) -> Value {
        json!({
            "dom": self.describe_obj(&m.dom),
            "cod": self.describe_obj(&m.cod),
            "u": m.u,
            "f": m.f,
        })
    }
}

/// `proj: Fam(C) → FinSet` with the formula lifts as its cleavage.
#[derive(Clone, Debug)]
pub struct Externalization {
    fam: Fam,
}

pub fn externalize(cat: Arc<InternalCategory>) -> Externalization {
    Externalization { fam: Fam::new(cat) }
}

impl Externalization {
    pub fn internal(&self) -> &InternalCategory {
        self.fam.internal()
    }

    pub fn internal_arc(&self) -> &Arc<InternalCategory> {
        &self.fam.cat
    }
}

impl Fibration for Externalization {
    type Base = FinSets;
    type Total = Fam;

    fn name(&self) -> String {
        format!("Fam({})", self.internal().name())
    }

    fn base(&self) -> &FinSets {
        &FinSets
    }

    fn total(&self) -> &Fam {
        &self.fam
    }

    fn project_obj(&self, x: &FamObject) -> FinSetObj {
        x.index.clone()
    }

    fn project_mor(&self, m: &FamMorphism) -> FinFn {
        m.u.clone()
    }

    fn objects_over(&self, i: &FinSetObj, _bound: usize) -> Universe<FamObject> {
        Universe::complete(families(self.internal(), i))
    }

    fn morphisms_over(&self, x: &FamObject, y: &FamObject, u: &FinFn) -> Vec<FamMorphism> {
        if u.dom() != &x.index || u.cod() != &y.index {
            return Vec::new();
        }
        morphisms_over_u(self.internal(), x, y, u)
    }

    fn chosen_lift(&self, y: &FamObject, u: &FinFn) -> Option<FamMorphism> {
        fam_cartesian_lift(self.internal(), y, u).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{fiber, is_cartesian, is_vertical};
    use crate::fixtures;
    use crate::internal::internalize;

    fn ext(c: crate::fincat::FinCategory) -> Externalization {
        externalize(Arc::new(internalize(&c)))
    }

    fn constant_family(cat: &InternalCategory, n: usize, x: usize) -> FamObject {
        let i = FinSetObj::range(n);
        FamObject::new(cat, FinFn::constant(&i, &cat.c0, x).unwrap()).unwrap()
    }

    #[test]
    fn identity_on_empty_and_singleton() {
        let p = ext(fixtures::arrow());
        let cat = p.internal();
        let e = constant_family(cat, 0, 0);
        let id = fam_identity(cat, &e);
        assert!(id.f().table().is_empty());
        let one = constant_family(cat, 1, 1);
        let id = fam_identity(cat, &one);
        assert_eq!(cat.c1.label(id.f().apply(0)), &crate::finset::Label::sym("id_b"));
    }

    #[test]
    fn singleton_composites_match_the_category() {
        let c = fixtures::square();
        let p = ext(c.clone());
        let cat = p.internal();
        let objs: Vec<FamObject> = (0..cat.c0.len()).map(|x| constant_family(cat, 1, x)).collect();
        for a in &objs {
            for b in &objs {
                let hab = hom_enumerate(cat, a, b);
                let (x, y) = (a.family.apply(0), b.family.apply(0));
                assert_eq!(hab.len(), cat.hom(x, y).len());
                for m in &hab {
                    for d in &objs {
                        for n in hom_enumerate(cat, b, d) {
                            let mn = fam_compose(cat, m, &n).unwrap();
                            let expected = c.compose(
                                crate::fincat::MorId(m.f().apply(0)),
                                crate::fincat::MorId(n.f().apply(0)),
                            );
                            assert_eq!(Some(mn.f().apply(0)), expected.map(|k| k.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_index_has_one_morphism_per_u() {
        let p = ext(fixtures::cyclic(2));
        let cat = p.internal();
        let e = constant_family(cat, 0, 0);
        let y = constant_family(cat, 3, 0);
        assert_eq!(hom_enumerate(cat, &e, &y).len(), 1);
    }

    #[test]
    fn discrete_mismatch_is_empty() {
        let p = ext(fixtures::discrete(2));
        let cat = p.internal();
        let x = constant_family(cat, 2, 0);
        let y = constant_family(cat, 2, 1);
        assert!(hom_enumerate(cat, &x, &y).is_empty());
    }

    #[test]
    fn fiber_of_arrow_over_two() {
        let p = ext(fixtures::arrow());
        let f = fiber(&p, &FinSetObj::range(2), 2).unwrap();
        // families {a,b}^2; vertical morphisms: (1 + 1 + 1)^2 over the
        // three hom-sets a→a, a→b, b→b
        assert_eq!((f.object_count(), f.morphism_count()), (4, 9));
    }

    #[test]
    fn lift_along_identity_is_identity() {
        let p = ext(fixtures::cyclic(2));
        let cat = p.internal();
        let y = constant_family(cat, 2, 0);
        let lift = fam_cartesian_lift(cat, &y, &FinFn::identity(&y.index)).unwrap();
        assert_eq!(lift, fam_identity(cat, &y));
    }

    #[test]
    fn lift_at_a_point_picks_the_component() {
        let p = ext(fixtures::arrow());
        let cat = p.internal();
        let j = FinSetObj::range(2);
        let y = FamObject::new(cat, FinFn::new(j.clone(), cat.c0.clone(), vec![0, 1]).unwrap()).unwrap();
        let pick = FinFn::new(FinSetObj::range(1), j, vec![1]).unwrap();
        let lift = fam_cartesian_lift(cat, &y, &pick).unwrap();
        assert_eq!(lift.dom().family.apply(0), 1);
        assert!(is_cartesian(&p, &lift, 2).cartesian);
    }

    #[test]
    fn vertical_non_iso_is_not_cartesian() {
        let p = ext(fixtures::arrow());
        let cat = p.internal();
        let (a, b) = (constant_family(cat, 1, 0), constant_family(cat, 1, 1));
        let m = hom_enumerate(cat, &a, &b).pop().unwrap();
        assert!(is_vertical(&p, &m));
        let check = is_cartesian(&p, &m, 2);
        assert!(!check.cartesian);
        assert!(check.counterexample.is_some());
    }

    #[test]
    fn rejects_ill_typed_morphism() {
        let p = ext(fixtures::arrow());
        let cat = p.internal();
        let (a, b) = (constant_family(cat, 1, 0), constant_family(cat, 1, 1));
        let u = FinFn::identity(&a.index);
        // id_a does not land over b
        let f = FinFn::new(a.index.clone(), cat.c1.clone(), vec![cat.identity(0)]).unwrap();
        assert!(FamMorphism::new(cat, a, b, u, f).is_err());
    }
}
