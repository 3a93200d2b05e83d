//! Choice spans for externalizations: the disjoint union of componentwise
//! choice sets, and the pullback construction of `Σ_{A,B}` that counts
//! spans instead of classes.

use serde_json::json;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::externalization::{fam_cartesian_lift, Externalization, FamMorphism, FamObject};
use crate::fibration::Fibration;
use crate::fincat::{FinCategory, ObjId};
use crate::finset::{diagonal, product, product_map, pullback, FinFn, FinSetObj, Label, Product, Pullback};
use crate::report::Report;
use crate::spans::choice_set;

use super::{mediating_outcomes, mediating_report, ChoiceSpanData};

fn require_family(p: &Externalization, x: &FamObject, what: &str) -> Result<()> {
    if x.family.cod() != &p.internal().c0 {
        return Err(Error::InvalidFamMorphism(format!("{what} must land in C0")));
    }
    Ok(())
}

/// `Σ = ⊔_i Σ_{A_i, B_i}` with `π` the evident projection and `R` the
/// family of representative apices; `π_A`, `π_B` are the representative
/// legs over `π`.
///
/// `p` must be the externalization of `internalize(c)`.
pub fn fam_choice_span(
    p: &Externalization,
    c: &FinCategory,
    a: &FamObject,
    b: &FamObject,
) -> Result<ChoiceSpanData<Externalization>> {
    let cat = p.internal();
    if cat.c0.len() != c.object_count() || cat.c1.len() != c.morphism_count() {
        return Err(Error::InvalidInternal(
            "the externalization is not that of the given category".into(),
        ));
    }
    require_family(p, a, "A")?;
    require_family(p, b, "B")?;
    if a.index != b.index {
        return Err(Error::EndpointMismatch("A and B must share an index set".into()));
    }
    let index = a.index.clone();
    let mut labels = Vec::new();
    let mut over = Vec::new();
    let mut apex = Vec::new();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for i in 0..index.len() {
        let set = choice_set(c, ObjId(a.family.apply(i)), ObjId(b.family.apply(i)));
        for s in set.representatives() {
            labels.push(Label::pair(
                index.label(i).clone(),
                Label::triple(
                    Label::sym(c.object_name(s.apex)),
                    Label::sym(c.morphism_name(s.left)),
                    Label::sym(c.morphism_name(s.right)),
                ),
            ));
            over.push(i);
            apex.push(s.apex.0);
            left.push(s.left.0);
            right.push(s.right.0);
        }
    }
    let sigma = FinSetObj::new(labels)?;
    let pi = FinFn::new(sigma.clone(), index, over)?;
    let r = FamObject::new(cat, FinFn::new(sigma.clone(), cat.c0.clone(), apex)?)?;
    let left = FinFn::new(sigma.clone(), cat.c1.clone(), left)?;
    let right = FinFn::new(sigma.clone(), cat.c1.clone(), right)?;
    assemble(p, a, b, sigma, pi, r, left, right)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    p: &Externalization,
    a: &FamObject,
    b: &FamObject,
    sigma: FinSetObj,
    pi: FinFn,
    r: FamObject,
    left: FinFn,
    right: FinFn,
) -> Result<ChoiceSpanData<Externalization>> {
    let cat = p.internal();
    let id = FinFn::identity(&sigma);
    let pa_cod = fam_cartesian_lift(cat, a, &pi)?.dom().clone();
    let pb_cod = fam_cartesian_lift(cat, b, &pi)?.dom().clone();
    let pa = FamMorphism::new(cat, r.clone(), pa_cod, id.clone(), left.clone())?;
    let pb = FamMorphism::new(cat, r.clone(), pb_cod, id, right.clone())?;
    let pi_a = FamMorphism::new(cat, r.clone(), a.clone(), pi.clone(), left)?;
    let pi_b = FamMorphism::new(cat, r.clone(), b.clone(), pi.clone(), right)?;
    Ok(ChoiceSpanData {
        a: a.clone(),
        b: b.clone(),
        sigma,
        pi,
        r,
        pi_a,
        pi_b,
        vertical: Some((pa, pb)),
    })
}

/// The same candidate with the element `k` of `Σ` removed.
pub fn drop_sigma_element(
    p: &Externalization,
    cand: &ChoiceSpanData<Externalization>,
    k: usize,
) -> Result<ChoiceSpanData<Externalization>> {
    let keep: Vec<usize> = (0..cand.sigma.len()).filter(|&x| x != k).collect();
    let sigma = FinSetObj::new(keep.iter().map(|&x| cand.sigma.label(x).clone()).collect())?;
    let incl = FinFn::new(sigma.clone(), cand.sigma.clone(), keep)?;
    let r = FamObject::new(p.internal(), incl.then(&cand.r.family)?)?;
    assemble(
        p,
        &cand.a,
        &cand.b,
        sigma,
        incl.then(&cand.pi)?,
        r,
        incl.then(cand.pi_a.f())?,
        incl.then(cand.pi_b.f())?,
    )
}

/// The limits behind `Σ_{A,B}`: `S = {(x, (f, g)) | d0 f = d0 g = x}` and
/// `Σ = {(i, s) ∈ I × S | d1 f = A i, d1 g = B i}`.
#[derive(Clone, Debug)]
pub struct SigmaConstruction {
    pub objects_squared: Product,
    pub arrows_squared: Product,
    /// Pullback of `Δ0` against `d0 × d0`.
    pub s: Pullback,
    pub sigma_map: FinFn,
    pub s1: FinFn,
    pub s2: FinFn,
    /// Pullback of `<A, B>` against `(d1 × d1)∘<s1, s2>`.
    pub sigma: Pullback,
    pub pi: FinFn,
    pub h: FinFn,
}

/// `Σ_{A,B}` by pullbacks, with the vertical span `(id, s1∘h)`,
/// `(id, s2∘h)` from `R = σ∘h` and legs `π_A = (π, s1∘h)`,
/// `π_B = (π, s2∘h)`.
pub fn small_fib_choice_span(
    p: &Externalization,
    a: &FamObject,
    b: &FamObject,
) -> Result<(ChoiceSpanData<Externalization>, SigmaConstruction)> {
    let cat = p.internal();
    require_family(p, a, "A")?;
    require_family(p, b, "B")?;
    if a.index != b.index {
        return Err(Error::EndpointMismatch("A and B must share an index set".into()));
    }
    let c0 = &cat.c0;
    let c1 = &cat.c1;
    let objects_squared = product(c0, c0);
    let arrows_squared = product(c1, c1);
    let d0d0 = product_map(&arrows_squared, &objects_squared, &cat.d0, &cat.d0)?;
    let d1d1 = product_map(&arrows_squared, &objects_squared, &cat.d1, &cat.d1)?;
    let s = pullback(&diagonal(c0), &d0d0)?;
    let sigma_map = s.p1.clone();
    let s1 = s.p2.then(&arrows_squared.p1)?;
    let s2 = s.p2.then(&arrows_squared.p2)?;
    let ab = objects_squared.pair(&a.family, &b.family)?;
    let sigma = pullback(&ab, &s.p2.then(&d1d1)?)?;
    let pi = sigma.p1.clone();
    let h = sigma.p2.clone();
    let r = FamObject::new(cat, h.then(&sigma_map)?)?;
    let cand = assemble(
        p,
        a,
        b,
        sigma.apex.clone(),
        pi.clone(),
        r,
        h.then(&s1)?,
        h.then(&s2)?,
    )?;
    Ok((
        cand,
        SigmaConstruction {
            objects_squared,
            arrows_squared,
            s,
            sigma_map,
            s1,
            s2,
            sigma,
            pi,
            h,
        },
    ))
}

/// The mediating form for the pullback construction, plus the
/// factorization behind it: for every vertical `(a, X, b)` over `u`, the
/// unique `ũ: J → S` with `σ∘ũ = X` and `<s1, s2>∘ũ = <a, b>` induces
/// `ū` with `π∘ū = u`, `h∘ū = ũ`, and that `ū` is the mediator found by
/// search.
pub fn verify_small_fib_isbell(
    p: &Externalization,
    a: &FamObject,
    b: &FamObject,
    bound: usize,
) -> Report {
    let mut report = Report::new("small-fib-isbell", p.name()).bounded(bound, true);
    let (cand, sc) = match small_fib_choice_span(p, a, b) {
        Ok(r) => r,
        Err(e) => {
            report.fail(json!({ "construction": e.to_string() }));
            return report;
        }
    };
    report.witness(json!({
        "A": p.total().describe_obj(a),
        "B": p.total().describe_obj(b),
        "sigma": sc.sigma.apex,
        "pi": sc.pi,
    }));
    let (outcomes, complete) = match mediating_outcomes(p, &cand, bound) {
        Ok(r) => r,
        Err(e) => {
            report.fail(json!({ "malformed": e.to_string() }));
            return report;
        }
    };
    report.set_exhaustive(complete, bound);
    mediating_report(p, &mut report, &outcomes);
    for o in &outcomes {
        let x = o.span.left.dom();
        let factor = sc
            .arrows_squared
            .pair(o.span.left.f(), o.span.right.f())
            .and_then(|ab| sc.s.mediate(&x.family, &ab))
            .and_then(|tilde| Ok((sc.sigma.mediate(&o.u, &tilde)?, tilde)));
        let ok = match factor {
            Ok((ubar, tilde)) => {
                ubar.then(&sc.pi).ok().as_ref() == Some(&o.u)
                    && ubar.then(&sc.h).ok().as_ref() == Some(&tilde)
                    && tilde.then(&sc.sigma_map).ok().as_ref() == Some(&x.family)
                    && o.strict == [ubar]
            }
            Err(_) => false,
        };
        report.stat("factorizations", 1);
        if !ok {
            report.fail(json!({
                "property": "factorization",
                "u": o.u,
                "span": o.span.describe(p),
            }));
        }
    }
    report
}
