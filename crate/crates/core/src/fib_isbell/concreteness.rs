//! The faithful internal diagram of parallel pairs, and the fibered
//! functor `Fam(C) → cod(FinSet)` an internal diagram induces.

use std::sync::Arc;

use serde_json::json;

use crate::category::Category;
use crate::error::{Error, Result};
use crate::externalization::{externalize, Externalization, FamMorphism, FamObject};
use crate::fibration::{is_concrete_fibration, total_objects, FiberedFunctor, Fibration};
use crate::finset::{
    diagonal, is_mono, parallel_pair_pullback, product, product_map, pullback, FinFn, Product,
    Pullback,
};
use crate::internal::{act, is_faithful_diagram, validate_internal_diagram, InternalCategory, InternalDiagram};
use crate::report::Report;

use super::small_fib_choice_span;

/// Every stage of the construction. Elements of `F` are parallel pairs
/// `(s, t)` with `s = (x, (f1, f2))` and `t = ((f1, f2), y)`.
#[derive(Clone, Debug)]
pub struct ConcretenessConstruction {
    pub objects_squared: Product,
    pub arrows_squared: Product,
    pub delta0: FinFn,
    pub delta1: FinFn,
    /// `Δ0` against `d0 × d0`; `p1 = σ`, `p2 = <s1, s2>`.
    pub s: Pullback,
    /// `d1 × d1` against `Δ0`; `p1 = <t1, t2>`, `p2 = τ`.
    pub t: Pullback,
    /// `<s1, s2>` against `<t1, t2>`.
    pub f: Pullback,
    /// `F → T`.
    pub p1: FinFn,
    /// `F → S`.
    pub p2: FinFn,
    pub epsilon: FinFn,
    /// `F ×_{C0} F` over `σ∘p2` and `p`; `p1 = q1`, `p2 = q2`.
    pub ff: Pullback,
    pub mu: FinFn,
    /// Pairs of composable pairs, `d0 × d0` against `d1 × d1`.
    pub pairs: Pullback,
    pub gamma: FinFn,
    /// `c × c` on pairs of composable pairs.
    pub cc: FinFn,
    pub diagram: InternalDiagram,
}

fn bug(what: &str) -> Error {
    Error::Internal(what.to_string())
}

/// Builds `(p, q)` on `F`: `p = τ∘p1`, `ε(k) = (k, k)`, and `k` acts by
/// `q(k, (f1, f2)) = (k f1, k f2)`, all through finite limits. Every
/// identity the construction promises is checked.
pub fn concreteness_diagram(cat: &InternalCategory) -> Result<ConcretenessConstruction> {
    let (c0, c1) = (&cat.c0, &cat.c1);
    let objects_squared = product(c0, c0);
    let arrows_squared = product(c1, c1);
    let delta0 = diagonal(c0);
    let delta1 = diagonal(c1);
    let d0d0 = product_map(&arrows_squared, &objects_squared, &cat.d0, &cat.d0)?;
    let d1d1 = product_map(&arrows_squared, &objects_squared, &cat.d1, &cat.d1)?;

    let s = pullback(&delta0, &d0d0)?;
    let t = pullback(&d1d1, &delta0)?;
    let f = pullback(&s.p2, &t.p1)?;
    let (p1, p2) = (f.p2.clone(), f.p1.clone());
    let p = p1.then(&t.p2)?;

    let cross = parallel_pair_pullback(&delta0, &d0d0, &d1d1)?;
    let mut ours: Vec<_> = (0..f.apex.len())
        .map(|k| {
            let (sk, tk) = (p2.apply(k), p1.apply(k));
            (s.p1.apply(sk), s.p2.apply(sk), t.p2.apply(tk))
        })
        .collect();
    let mut theirs: Vec<_> = (0..cross.apex.len())
        .map(|k| (cross.to_t_left.apply(k), cross.to_x.apply(k), cross.to_t_right.apply(k)))
        .collect();
    ours.sort_unstable();
    theirs.sort_unstable();
    if ours != theirs {
        return Err(bug("F is not the limit of the parallel pair d0×d0, d1×d1 over Δ0"));
    }

    let eps_s = s.mediate(&cat.d0, &delta1)?;
    let eps_t = t.mediate(&delta1, &cat.d1)?;
    let epsilon = f.mediate(&eps_s, &eps_t)?;
    if !is_mono(&epsilon) {
        return Err(bug("ε is not monic"));
    }

    let action = pullback(&cat.d0, &p)?;
    let ff = pullback(&p2.then(&s.p1)?, &p)?;
    let mu = ff.mediate(&action.p1.then(&epsilon)?, &action.p2)?;
    let pairs = pullback(&d0d0, &d1d1)?;
    let gamma = pairs.mediate(
        &ff.p1.then(&p2)?.then(&s.p2)?,
        &ff.p2.then(&p1)?.then(&t.p1)?,
    )?;
    let component = |proj: &FinFn| -> Result<FinFn> {
        let g = pairs.p1.then(proj)?;
        let h = pairs.p2.then(proj)?;
        Ok(cat.composable.mediate(&g, &h)?.then(&cat.c)?)
    };
    let cc = arrows_squared.pair(
        &component(&arrows_squared.p1)?,
        &component(&arrows_squared.p2)?,
    )?;
    let composites = mu.then(&gamma)?.then(&cc)?;
    let q_s = s.mediate(&action.p2.then(&p2)?.then(&s.p1)?, &composites)?;
    let q_t = t.mediate(&composites, &action.p1.then(&cat.d1)?)?;
    let q = f.mediate(&q_s, &q_t)?;

    let diagram = validate_internal_diagram(cat, p, q)
        .map_err(|v| bug(&format!("the parallel-pair action is not a diagram: {v:?}")))?;
    if !is_faithful_diagram(cat, &diagram) {
        return Err(bug("the parallel-pair action is not faithful"));
    }
    for k in 0..c1.len() {
        let unit = epsilon.apply(cat.identity(cat.d0.apply(k)));
        if act(cat, &diagram, k, unit)? != epsilon.apply(k) {
            return Err(bug("εf differs from f·ε(id_{d0 f})"));
        }
    }

    Ok(ConcretenessConstruction {
        objects_squared,
        arrows_squared,
        delta0,
        delta1,
        s,
        t,
        f,
        p1,
        p2,
        epsilon,
        ff,
        mu,
        pairs,
        gamma,
        cc,
        diagram,
    })
}

/// The fibered functor of an internal diagram: `(I, X)` goes to the
/// pullback `X*F → I` of `p` along `X`, and `(u, f)` acts by
/// `(i, a) ↦ (u i, f(i)·a)`.
#[derive(Clone, Debug)]
pub struct DiagramFunctor {
    cat: Arc<InternalCategory>,
    diagram: InternalDiagram,
}

impl DiagramFunctor {
    pub fn new(cat: Arc<InternalCategory>, diagram: InternalDiagram) -> Self {
        DiagramFunctor { cat, diagram }
    }

    pub fn diagram(&self) -> &InternalDiagram {
        &self.diagram
    }

    /// `X*F`, with `p1` the leg to `I`.
    pub fn carrier(&self, x: &FamObject) -> Pullback {
        pullback(&x.family, &self.diagram.p).expect("families land in C0")
    }
}

impl FiberedFunctor<Externalization> for DiagramFunctor {
    fn on_object(&self, x: &FamObject) -> FinFn {
        self.carrier(x).p1
    }

    fn on_morphism(&self, m: &FamMorphism) -> FinFn {
        let (src, dst) = (self.carrier(m.dom()), self.carrier(m.cod()));
        let table = (0..src.apex.len())
            .map(|k| {
                let (i, a) = (src.p1.apply(k), src.p2.apply(k));
                let moved = act(&self.cat, &self.diagram, m.f().apply(i), a).expect("typed");
                dst.locate(m.u().apply(i), moved).expect("the action lands over Y")
            })
            .collect();
        FinFn::new(src.apex.clone(), dst.apex.clone(), table).expect("typed")
    }
}

pub struct SigmaFunctorCheck {
    pub construction: ConcretenessConstruction,
    pub functor: DiagramFunctor,
    pub report: Report,
}

/// The concrete-fibration check for the functor of the parallel-pair
/// diagram, every finite-set morphism small, together with an
/// element-level bijection between `X*F` and `Σ_{X,X}` for every family
/// in the bound.
pub fn sigma_fibered_functor(cat: Arc<InternalCategory>, bound: usize) -> Result<SigmaFunctorCheck> {
    let construction = concreteness_diagram(&cat)?;
    let functor = DiagramFunctor::new(cat.clone(), construction.diagram.clone());
    let p = externalize(cat);
    let mut report = is_concrete_fibration(&p, &functor, |_| true, bound);
    report.check = "sigma-fibered-functor".into();

    let objects = total_objects(&p, bound);
    let c = &construction;
    for x in &objects.items {
        let (_, sc) = small_fib_choice_span(&p, x, x)?;
        let carrier = functor.carrier(x);
        let mut hit = vec![false; carrier.apex.len()];
        let mut ok = sc.sigma.apex.len() == carrier.apex.len();
        for k in 0..sc.sigma.apex.len() {
            let (i, s) = (sc.sigma.p1.apply(k), sc.sigma.p2.apply(k));
            let tk = c.t.locate(c.s.p2.apply(s), x.family.apply(i));
            let image = tk
                .and_then(|tk| c.f.locate(s, tk))
                .and_then(|a| carrier.locate(i, a));
            match image {
                Some(e) if !hit[e] => hit[e] = true,
                _ => ok = false,
            }
        }
        report.stat("sigma_comparisons", 1);
        if !ok {
            report.fail(json!({
                "property": "sigma_agreement",
                "object": p.total().describe_obj(x),
            }));
        }
    }
    Ok(SigmaFunctorCheck {
        construction,
        functor,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::internal::{internalize, terminal_diagram};

    #[test]
    fn discrete_parallel_pairs_are_identities() {
        let cat = internalize(&fixtures::discrete(3));
        let c = concreteness_diagram(&cat).unwrap();
        assert_eq!(c.f.apex.len(), 3);
        assert!(c.epsilon.is_bijective());
    }

    #[test]
    fn cyclic_group_pairs() {
        // F = {(f1, f2)}: all 4 pairs of elements of Z/2
        let cat = internalize(&fixtures::cyclic(2));
        let c = concreteness_diagram(&cat).unwrap();
        assert_eq!(c.f.apex.len(), 4);
    }

    #[test]
    fn terminal_diagram_collapses() {
        let cat = Arc::new(internalize(&fixtures::parallel_pair()));
        let d = terminal_diagram(&cat).unwrap();
        let functor = DiagramFunctor::new(cat.clone(), d);
        let p = externalize(cat);
        let r = is_concrete_fibration(&p, &functor, |_| true, 1);
        assert!(!r.is_pass());
        assert_eq!(r.counterexample.unwrap()["property"], "faithful");
    }
}
