//! The arrow category of a base and its codomain fibration.

use serde_json::{json, Value};

use crate::category::{Category, FinSets, Universe};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;

use super::Fibration;

/// A commuting square from the arrow `dom` to the arrow `cod`:
/// `top: dom(dom) → dom(cod)` over `bottom: cod(dom) → cod(cod)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square<M> {
    pub dom: M,
    pub cod: M,
    pub top: M,
    pub bottom: M,
}

#[derive(Clone, Debug)]
pub struct ArrowCategory<B> {
    base: B,
}

impl<B: Category> ArrowCategory<B> {
    pub fn new(base: B) -> Self {
        ArrowCategory { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }
}

impl<B: Category> Category for ArrowCategory<B> {
    type Obj = B::Mor;
    type Mor = Square<B::Mor>;

    fn dom(&self, m: &Self::Mor) -> B::Mor {
        m.dom.clone()
    }

    fn cod(&self, m: &Self::Mor) -> B::Mor {
        m.cod.clone()
    }

    fn id(&self, f: &B::Mor) -> Self::Mor {
        Square {
            dom: f.clone(),
            cod: f.clone(),
            top: self.base.id(&self.base.dom(f)),
            bottom: self.base.id(&self.base.cod(f)),
        }
    }

    fn then(&self, s: &Self::Mor, t: &Self::Mor) -> Option<Self::Mor> {
        if s.cod != t.dom {
            return None;
        }
        Some(Square {
            dom: s.dom.clone(),
            cod: t.cod.clone(),
            top: self.base.then(&s.top, &t.top)?,
            bottom: self.base.then(&s.bottom, &t.bottom)?,
        })
    }

    fn hom(&self, f: &B::Mor, g: &B::Mor) -> Vec<Self::Mor> {
        let b = &self.base;
        let bottoms = b.hom(&b.cod(f), &b.cod(g));
        let mut out = Vec::new();
        for top in b.hom(&b.dom(f), &b.dom(g)) {
            let tg = b.then(&top, g);
            for bottom in &bottoms {
                if tg == b.then(f, bottom) {
                    out.push(Square {
                        dom: f.clone(),
                        cod: g.clone(),
                        top: top.clone(),
                        bottom: bottom.clone(),
                    });
                }
            }
        }
        out
    }

    fn objects(&self, bound: usize) -> Universe<B::Mor> {
        let objs = self.base.objects(bound);
        let items = objs
            .items
            .iter()
            .flat_map(|a| objs.items.iter().flat_map(move |c| self.base.hom(a, c)))
            .collect();
        Universe {
            items,
            complete: objs.complete,
        }
    }

    fn describe_obj(&self, f: &B::Mor) -> Value {
        self.base.describe_mor(f)
    }

    fn describe_mor(&self, s: &Self::Mor) -> Value {
        json!({
            "dom": self.base.describe_mor(&s.dom),
            "cod": self.base.describe_mor(&s.cod),
            "top": self.base.describe_mor(&s.top),
            "bottom": self.base.describe_mor(&s.bottom),
        })
    }
}

/// `cod: B→ → B`, with pullback squares as chosen lifts.
#[derive(Clone, Debug)]
pub struct Codomain<B> {
    arrows: ArrowCategory<B>,
    name: String,
}

impl<B: Category> Codomain<B> {
    pub fn new(base: B, name: impl Into<String>) -> Self {
        Codomain {
            arrows: ArrowCategory::new(base),
            name: name.into(),
        }
    }
}

impl Codomain<FinSets> {
    pub fn over_sets() -> Self {
        Codomain::new(FinSets, "cod(FinSet)")
    }
}

impl<B: Category> Fibration for Codomain<B> {
    type Base = B;
    type Total = ArrowCategory<B>;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn base(&self) -> &B {
        &self.arrows.base
    }

    fn total(&self) -> &ArrowCategory<B> {
        &self.arrows
    }

    fn project_obj(&self, f: &B::Mor) -> B::Obj {
        self.base().cod(f)
    }

    fn project_mor(&self, s: &Square<B::Mor>) -> B::Mor {
        s.bottom.clone()
    }

    fn objects_over(&self, j: &B::Obj, bound: usize) -> Universe<B::Mor> {
        let objs = self.base().objects(bound);
        Universe {
            items: objs.items.iter().flat_map(|a| self.base().hom(a, j)).collect(),
            complete: objs.complete,
        }
    }

    fn morphisms_over(&self, x: &B::Mor, y: &B::Mor, u: &B::Mor) -> Vec<Square<B::Mor>> {
        let b = self.base();
        if b.cod(x) != b.dom(u) || b.cod(u) != b.cod(y) {
            return Vec::new();
        }
        let xu = b.comp(x, u);
        b.factorizations(&xu, y)
            .into_iter()
            .map(|top| Square {
                dom: x.clone(),
                cod: y.clone(),
                top,
                bottom: u.clone(),
            })
            .collect()
    }

    fn chosen_lift(&self, y: &B::Mor, u: &B::Mor) -> Option<Square<B::Mor>> {
        let cone = self.base().pullback(u, y)?;
        Some(Square {
            dom: cone.p1,
            cod: y.clone(),
            top: cone.p2,
            bottom: u.clone(),
        })
    }
}

/// The codomain fibration over a finite category, provided every cospan
/// has a pullback.
pub fn fundamental_fibration(b: FinCategory) -> Result<Codomain<FinCategory>> {
    for f in b.morphisms() {
        for g in b.morphisms() {
            if b.cod(f) == b.cod(g) && Category::pullback(&b, &f, &g).is_none() {
                return Err(Error::MissingPullback {
                    first: b.morphism_name(f).to_string(),
                    second: b.morphism_name(g).to_string(),
                });
            }
        }
    }
    let name = format!("cod({})", b.name());
    Ok(Codomain::new(b, name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{cleave, fiber, is_cartesian, is_fibration};
    use crate::finset::{all_functions, pullback, FinSetObj};
    use crate::fixtures;

    #[test]
    fn terminal_base() {
        let p = fundamental_fibration(fixtures::terminal()).unwrap();
        let objs = p.total().objects(0);
        assert_eq!(objs.items.len(), 1);
        assert!(is_fibration(&p, 0).is_pass());
    }

    #[test]
    fn arrow_base_is_valid() {
        let p = fundamental_fibration(fixtures::arrow()).unwrap();
        assert!(is_fibration(&p, 0).is_pass());
        let cl = cleave(&p, 0).unwrap();
        for m in cl.entries.values() {
            assert!(is_cartesian(&p, m, 0).cartesian);
        }
    }

    #[test]
    fn missing_pullback_reported() {
        let err = fundamental_fibration(fixtures::cospan_without_pullback()).unwrap_err();
        assert!(matches!(err, Error::MissingPullback { .. }));
    }

    #[test]
    fn fiber_over_terminal_object_is_the_base() {
        // Arr has terminal object b; cod over b is the slice Arr/b ≅ Arr
        let arr = fixtures::arrow();
        let b = arr.object_id("b").unwrap();
        let p = fundamental_fibration(arr.clone()).unwrap();
        let f = fiber(&p, &b, 0).unwrap();
        assert!(crate::fincat::find_isomorphism(&f, &arr).is_some());
    }

    #[test]
    fn finset_lifts_are_pullbacks() {
        let p = Codomain::over_sets();
        for n in 0..=2 {
            for m in 0..=2 {
                let (i, j) = (FinSetObj::range(n), FinSetObj::range(m));
                for u in all_functions(&i, &j) {
                    for y in p.objects_over(&j, 2).items {
                        let lift = p.chosen_lift(&y, &u).unwrap();
                        let pb = pullback(&u, &y).unwrap();
                        assert_eq!(lift.dom.dom(), &pb.apex);
                        assert!(FinSets.is_pullback_square(&lift.top, &lift.dom, &y, &u));
                    }
                }
            }
        }
    }

    #[test]
    fn cartesian_iff_pullback_on_small_sets() {
        let p = Codomain::over_sets();
        let sets: Vec<FinSetObj> = (0..=2).map(FinSetObj::range).collect();
        for i in &sets {
            for j in &sets {
                for u in all_functions(i, j) {
                    for y in p.objects_over(j, 1).items {
                        for x in p.objects_over(i, 1).items {
                            for s in p.morphisms_over(&x, &y, &u) {
                                let square = FinSets.is_pullback_square(&s.top, &x, &y, &u);
                                assert_eq!(is_cartesian(&p, &s, 2).cartesian, square);
                            }
                        }
                    }
                }
            }
        }
    }
}
