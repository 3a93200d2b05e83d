//! Fibrations presented by enumeration oracles.
//!
//! A [`Fibration`] answers "which total objects lie over `I`" and "which
//! total morphisms lie over `u`". Tabulated fibrations answer completely;
//! the externalization and the codomain fibration over finite sets
//! enumerate index sets up to a cardinality bound, and every check over
//! them reports whether its quantifiers were cut.

mod codomain;
mod smallness;
mod tabulated;

pub use codomain::{fundamental_fibration, ArrowCategory, Codomain, Square};
pub use smallness::{
    check_smallness, validate_smallness, SmallnessAxiom, SmallnessCheck, SmallnessPredicate,
    SmallnessViolation,
};
pub use tabulated::{identity_fibration, FunctorFibration, ProjectionLegs};

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::category::{Category, Universe};
use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCategory, RawCategory};
use crate::par;
use crate::report::Report;

pub type BaseObj<P> = <<P as Fibration>::Base as Category>::Obj;
pub type BaseMor<P> = <<P as Fibration>::Base as Category>::Mor;
pub type TotalObj<P> = <<P as Fibration>::Total as Category>::Obj;
pub type TotalMor<P> = <<P as Fibration>::Total as Category>::Mor;

pub trait Fibration: Sync + Send {
    type Base: Category;
    type Total: Category;

    fn name(&self) -> String;
    fn base(&self) -> &Self::Base;
    fn total(&self) -> &Self::Total;
    fn project_obj(&self, x: &TotalObj<Self>) -> BaseObj<Self>;
    fn project_mor(&self, m: &TotalMor<Self>) -> BaseMor<Self>;

    /// Total objects over `i`, up to the bound where the fiber is infinite.
    fn objects_over(&self, i: &BaseObj<Self>, bound: usize) -> Universe<TotalObj<Self>>;

    /// Total morphisms `x → y` projecting to `u`.
    fn morphisms_over(
        &self,
        x: &TotalObj<Self>,
        y: &TotalObj<Self>,
        u: &BaseMor<Self>,
    ) -> Vec<TotalMor<Self>> {
        self.total()
            .hom(x, y)
            .into_iter()
            .filter(|m| &self.project_mor(m) == u)
            .collect()
    }

    /// A reindexing `u*Y → Y` given by formula, when the fibration has one.
    /// Checks treat it as a claim and verify it.
    fn chosen_lift(&self, _y: &TotalObj<Self>, _u: &BaseMor<Self>) -> Option<TotalMor<Self>> {
        None
    }
}

/// Total objects over every base object in the bounded universe.
pub fn total_objects<P: Fibration>(p: &P, bound: usize) -> Universe<TotalObj<P>> {
    let base = p.base().objects(bound);
    let mut complete = base.complete;
    let mut items = Vec::new();
    for i in &base.items {
        let over = p.objects_over(i, bound);
        complete &= over.complete;
        items.extend(over.items);
    }
    Universe { items, complete }
}

pub fn is_vertical<P: Fibration>(p: &P, m: &TotalMor<P>) -> bool {
    let i = p.project_obj(&p.total().dom(m));
    p.project_mor(m) == p.base().id(&i)
}

pub(crate) fn text(v: Value) -> String {
    match v {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

/// The fiber over `i` as a validated finite category. Over an infinite
/// fiber this is the full subcategory on the enumerated objects.
pub fn fiber<P: Fibration>(p: &P, i: &BaseObj<P>, bound: usize) -> Result<FinCategory> {
    let t = p.total();
    let id = p.base().id(i);
    let objects = p.objects_over(i, bound).items;
    let names: Vec<String> = objects.iter().map(|x| text(t.describe_obj(x))).collect();
    let mut raw = RawCategory::new(format!("{}[{}]", p.name(), text(p.base().describe_obj(i))));
    for n in &names {
        raw = raw.object(n);
    }
    let mut morphisms: Vec<TotalMor<P>> = Vec::new();
    let mut index = BTreeMap::new();
    for (a, x) in objects.iter().enumerate() {
        for (b, y) in objects.iter().enumerate() {
            for m in p.morphisms_over(x, y, &id) {
                let name = format!("{}#{}", text(t.describe_mor(&m)), morphisms.len());
                raw = raw.morphism(&name, &names[a], &names[b]);
                index.insert(m.clone(), name);
                morphisms.push(m);
            }
        }
    }
    for (a, x) in objects.iter().enumerate() {
        let idx = t.id(x);
        let name = index
            .get(&idx)
            .ok_or_else(|| Error::Internal("identity is not vertical".into()))?;
        raw = raw.identity(&names[a], name);
    }
    for f in &morphisms {
        for g in &morphisms {
            if let Some(h) = t.then(f, g) {
                let name = index
                    .get(&h)
                    .ok_or_else(|| Error::Internal("vertical morphisms do not compose".into()))?;
                raw = raw.compose(&index[f], &index[g], name);
            }
        }
    }
    validate_category(&raw).map_err(|v| Error::InvalidCategory(format!("{v:?}")))
}

/// Outcome of a bounded cartesianness check.
#[derive(Clone, Debug)]
pub struct CartesianCheck {
    pub cartesian: bool,
    pub exhaustive: bool,
    pub queries: u64,
    /// The first `(v, g)` without exactly one mediating `γ`.
    pub counterexample: Option<Value>,
}

/// For every `v: J → PX` and `g: Z → Y` with `Pg = Pφ∘v`, exactly one
/// `γ: Z → X` with `φ∘γ = g` and `Pγ = v`. `J` ranges over the bounded
/// base universe.
pub fn is_cartesian<P: Fibration>(p: &P, phi: &TotalMor<P>, bound: usize) -> CartesianCheck {
    let (b, t) = (p.base(), p.total());
    let x = t.dom(phi);
    let y = t.cod(phi);
    let px = p.project_obj(&x);
    let pphi = p.project_mor(phi);
    let base = b.objects(bound);
    let queries: Vec<(BaseObj<P>, BaseMor<P>)> = base
        .items
        .iter()
        .flat_map(|j| b.hom(j, &px).into_iter().map(move |v| (j.clone(), v)))
        .collect();
    let outcomes = par::map(&queries, |(j, v)| {
        let w = b.comp(v, &pphi);
        let zs = p.objects_over(j, bound);
        let mut checked = 0u64;
        for z in &zs.items {
            let mut composites: HashMap<TotalMor<P>, usize> = HashMap::new();
            for gamma in p.morphisms_over(z, &x, v) {
                *composites.entry(t.comp(&gamma, phi)).or_insert(0) += 1;
            }
            for g in p.morphisms_over(z, &y, &w) {
                checked += 1;
                let n = composites.get(&g).copied().unwrap_or(0);
                if n != 1 {
                    let cx = json!({
                        "v": b.describe_mor(v),
                        "g": t.describe_mor(&g),
                        "mediators": n,
                    });
                    return (Some(cx), zs.complete, checked);
                }
            }
        }
        (None, zs.complete, checked)
    });
    let mut check = CartesianCheck {
        cartesian: true,
        exhaustive: base.complete,
        queries: 0,
        counterexample: None,
    };
    for (cx, complete, n) in outcomes {
        check.exhaustive &= complete;
        check.queries += n;
        if let Some(cx) = cx {
            if check.cartesian {
                check.cartesian = false;
                check.counterexample = Some(cx);
            }
        }
    }
    check
}

fn lift_queries<P: Fibration>(p: &P, bound: usize) -> (Vec<(TotalObj<P>, BaseMor<P>)>, bool) {
    let b = p.base();
    let base = b.objects(bound);
    let ys = total_objects(p, bound);
    let mut out = Vec::new();
    for y in &ys.items {
        let py = p.project_obj(y);
        for i in &base.items {
            for u in b.hom(i, &py) {
                out.push((y.clone(), u));
            }
        }
    }
    (out, ys.complete)
}

/// A cartesian lift of `y` along `u`. With `least`, the least cartesian
/// morphism over `u` (the identity when `u` is one); otherwise the
/// fibration's formula lift when it verifies, falling back to search.
fn find_lift<P: Fibration>(
    p: &P,
    y: &TotalObj<P>,
    u: &BaseMor<P>,
    bound: usize,
    least: bool,
) -> (Option<TotalMor<P>>, bool) {
    let (b, t) = (p.base(), p.total());
    if least && b.id(&b.cod(u)) == *u {
        return (Some(t.id(y)), true);
    }
    if !least {
        if let Some(m) = p.chosen_lift(y, u) {
            let check = is_cartesian(p, &m, bound);
            if check.cartesian {
                return (Some(m), check.exhaustive);
            }
        }
    }
    let xs = p.objects_over(&b.dom(u), bound);
    let mut candidates: Vec<TotalMor<P>> = xs
        .items
        .iter()
        .flat_map(|x| p.morphisms_over(x, y, u))
        .collect();
    candidates.sort();
    let found = par::find_map_first(&candidates, |m| {
        let check = is_cartesian(p, m, bound);
        check.cartesian.then(|| (m.clone(), check.exhaustive))
    });
    match found {
        Some((m, exhaustive)) => (Some(m), exhaustive && xs.complete),
        None => (None, xs.complete),
    }
}

/// A reindexing `u*Y → Y`: the fibration's formula lift when it has one,
/// otherwise the least cartesian lift in the bounded universe.
pub fn reindex<P: Fibration>(p: &P, y: &TotalObj<P>, u: &BaseMor<P>, bound: usize) -> Option<TotalMor<P>> {
    p.chosen_lift(y, u)
        .or_else(|| find_lift(p, y, u, bound, true).0)
}

/// Searches a cartesian lift for every `(Y, u: I → PY)` in the bounded
/// universe.
pub fn is_fibration<P: Fibration>(p: &P, bound: usize) -> Report {
    let (queries, complete) = lift_queries(p, bound);
    let outcomes = par::map(&queries, |(y, u)| find_lift(p, y, u, bound, false));
    let mut report = Report::new("is-fibration", p.name()).bounded(bound, complete);
    report.stat("queries", queries.len() as u64);
    for ((y, u), (lift, exhaustive)) in queries.iter().zip(outcomes) {
        report.set_exhaustive(exhaustive, bound);
        match lift {
            Some(m) => {
                if report.witnesses.len() < WITNESS_LIMIT {
                    report.witness(json!({
                        "object": p.total().describe_obj(y),
                        "along": p.base().describe_mor(u),
                        "lift": p.total().describe_mor(&m),
                    }));
                }
            }
            None => report.fail(json!({
                "object": p.total().describe_obj(y),
                "along": p.base().describe_mor(u),
                "reason": "no cartesian morphism over this base morphism",
            })),
        }
    }
    report
}

/// How many witnesses a report lists before it only counts.
pub const WITNESS_LIMIT: usize = 16;

/// Chosen reindexings `(Y, u) ↦ ū Y`.
#[derive(Clone, Debug)]
pub struct Cleavage<P: Fibration> {
    pub entries: BTreeMap<(TotalObj<P>, BaseMor<P>), TotalMor<P>>,
    pub exhaustive: bool,
}

impl<P: Fibration> Cleavage<P> {
    pub fn get(&self, y: &TotalObj<P>, u: &BaseMor<P>) -> Option<&TotalMor<P>> {
        self.entries.get(&(y.clone(), u.clone()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The least cartesian lift for every `(Y, u)` in the bounded universe,
/// identities over identities.
pub fn cleave<P: Fibration>(p: &P, bound: usize) -> Result<Cleavage<P>> {
    let (queries, complete) = lift_queries(p, bound);
    let outcomes = par::map(&queries, |(y, u)| find_lift(p, y, u, bound, true));
    let mut cleavage = Cleavage {
        entries: BTreeMap::new(),
        exhaustive: complete,
    };
    for ((y, u), (lift, exhaustive)) in queries.into_iter().zip(outcomes) {
        cleavage.exhaustive &= exhaustive;
        match lift {
            Some(m) => {
                cleavage.entries.insert((y, u), m);
            }
            None => {
                return Err(Error::NotAFibration {
                    object: text(p.total().describe_obj(&y)),
                    morphism: text(p.base().describe_mor(&u)),
                })
            }
        }
    }
    Ok(cleavage)
}

/// A functor from a fibration to the codomain fibration over the same
/// base, strictly over the base: `X ↦ (UX: |X| → PX)`, `f ↦ |f|`, with
/// `Uf` the square `(|f|, Pf)`.
pub trait FiberedFunctor<P: Fibration>: Sync + Send {
    fn on_object(&self, x: &TotalObj<P>) -> BaseMor<P>;
    fn on_morphism(&self, f: &TotalMor<P>) -> BaseMor<P>;
}

/// Checks that `U` is a faithful fibered functor into the codomain
/// fibration with small object legs.
///
/// Cartesian preservation is checked on one cartesian lift per `(Y, u)`:
/// every cartesian morphism is such a lift precomposed with a vertical
/// isomorphism, and a functor keeps pullback squares pullbacks under
/// that, so with functoriality checked this covers all of them.
pub fn is_concrete_fibration<P, U, S>(p: &P, u: &U, small: S, bound: usize) -> Report
where
    P: Fibration,
    U: FiberedFunctor<P>,
    S: Fn(&BaseMor<P>) -> bool + Sync,
{
    let (b, t) = (p.base(), p.total());
    let objects = total_objects(p, bound);
    let mut report = Report::new("concrete-fibration", p.name()).bounded(bound, objects.complete);
    report.stat("objects", objects.items.len() as u64);

    for x in &objects.items {
        let leg = u.on_object(x);
        if b.cod(&leg) != p.project_obj(x) {
            report.fail(json!({
                "property": "over_base",
                "object": t.describe_obj(x),
                "leg": b.describe_mor(&leg),
            }));
        }
        if !small(&leg) {
            report.fail(json!({
                "property": "small_leg",
                "object": t.describe_obj(x),
                "leg": b.describe_mor(&leg),
            }));
        }
        if u.on_morphism(&t.id(x)) != b.id(&b.dom(&leg)) {
            report.fail(json!({
                "property": "identity",
                "object": t.describe_obj(x),
            }));
        }
    }

    let pairs: Vec<(TotalObj<P>, TotalObj<P>)> = objects
        .items
        .iter()
        .flat_map(|x| objects.items.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    let per_pair = par::map(&pairs, |(x, y)| {
        let (ux, uy) = (u.on_object(x), u.on_object(y));
        let mut first: BTreeMap<(BaseMor<P>, BaseMor<P>), TotalMor<P>> = BTreeMap::new();
        let mut images = Vec::new();
        let mut failure = None;
        for f in t.hom(x, y) {
            let top = u.on_morphism(&f);
            let pf = p.project_mor(&f);
            images.push((f.clone(), top.clone()));
            if failure.is_some() {
                continue;
            }
            if b.dom(&top) != b.dom(&ux) || b.cod(&top) != b.dom(&uy) {
                failure = Some(json!({"property": "square_shape", "morphism": t.describe_mor(&f)}));
            } else if b.then(&top, &uy) != b.then(&ux, &pf) {
                failure = Some(json!({"property": "square_commutes", "morphism": t.describe_mor(&f)}));
            } else if let Some(prev) = first.get(&(top.clone(), pf.clone())) {
                failure = Some(json!({
                    "property": "faithful",
                    "first": t.describe_mor(prev),
                    "second": t.describe_mor(&f),
                }));
            } else {
                first.insert((top, pf), f);
            }
        }
        (images, failure)
    });
    let mut image: HashMap<TotalMor<P>, BaseMor<P>> = HashMap::new();
    let mut homs: HashMap<(TotalObj<P>, TotalObj<P>), Vec<TotalMor<P>>> = HashMap::new();
    for ((x, y), (images, failure)) in pairs.iter().zip(per_pair) {
        report.stat("morphisms", images.len() as u64);
        homs.insert((x.clone(), y.clone()), images.iter().map(|(f, _)| f.clone()).collect());
        image.extend(images);
        if let Some(cx) = failure {
            report.fail(cx);
        }
    }

    let triples: Vec<(TotalObj<P>, TotalObj<P>, TotalObj<P>)> = pairs
        .iter()
        .flat_map(|(x, y)| {
            objects
                .items
                .iter()
                .map(move |z| (x.clone(), y.clone(), z.clone()))
        })
        .collect();
    let functorial = par::map(&triples, |(x, y, z)| {
        let gs = &homs[&(y.clone(), z.clone())];
        for f in &homs[&(x.clone(), y.clone())] {
            let uf = &image[f];
            for g in gs {
                let gf = t.comp(f, g);
                if image.get(&gf) != b.then(uf, &image[g]).as_ref() {
                    return Some(json!({
                        "property": "composition",
                        "first": t.describe_mor(f),
                        "second": t.describe_mor(g),
                    }));
                }
            }
        }
        None
    });
    for cx in functorial.into_iter().flatten() {
        report.fail(cx);
    }

    let (queries, complete) = lift_queries(p, bound);
    report.set_exhaustive(complete, bound);
    let lifts = par::map(&queries, |(y, v)| {
        let (lift, exhaustive) = find_lift(p, y, v, bound, false);
        let Some(phi) = lift else {
            return (exhaustive, Some(json!({"property": "fibration", "object": t.describe_obj(y), "along": b.describe_mor(v)})));
        };
        let x = t.dom(&phi);
        let ok = b.is_pullback_square(&u.on_morphism(&phi), &u.on_object(&x), &u.on_object(y), v);
        let cx = (!ok).then(|| {
            json!({
                "property": "cartesian_preserved",
                "lift": t.describe_mor(&phi),
            })
        });
        (exhaustive, cx)
    });
    report.stat("cartesian_lifts", queries.len() as u64);
    for (exhaustive, cx) in lifts {
        report.set_exhaustive(exhaustive, bound);
        if let Some(cx) = cx {
            report.fail(cx);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_fibration_basics() {
        let p = identity_fibration(fixtures::arrow());
        let c = p.total();
        for m in c.morphisms() {
            assert_eq!(is_vertical(&p, &m), c.is_identity(m));
            assert!(is_cartesian(&p, &m, 0).cartesian);
        }
        assert!(is_fibration(&p, 0).is_pass());
        let cl = cleave(&p, 0).unwrap();
        for ((_, u), m) in &cl.entries {
            assert_eq!(u, m);
        }
        for a in c.objects() {
            let f = fiber(&p, &a, 0).unwrap();
            assert_eq!((f.object_count(), f.morphism_count()), (1, 1));
        }
    }
}
