//! The fibrational Isbell condition, its mediating form over a cleavage,
//! and the constructions that satisfy it.

mod concreteness;
mod constructions;

pub use concreteness::{
    concreteness_diagram, sigma_fibered_functor, ConcretenessConstruction, DiagramFunctor,
    SigmaFunctorCheck,
};
pub use constructions::{
    drop_sigma_element, fam_choice_span, small_fib_choice_span, verify_small_fib_isbell,
    SigmaConstruction,
};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::Category;
use crate::error::{Error, Result};
use crate::fibration::{reindex, BaseMor, BaseObj, Fibration, TotalMor, TotalObj};
use crate::par;
use crate::report::Report;

/// An `(A, B)`-span `A <-f- X -g-> B` in the total category with `Pf = Pg`.
pub struct PSpan<P: Fibration> {
    pub left: TotalMor<P>,
    pub right: TotalMor<P>,
}

impl<P: Fibration> Clone for PSpan<P> {
    fn clone(&self) -> Self {
        PSpan {
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<P: Fibration> std::fmt::Debug for PSpan<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PSpan")
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

impl<P: Fibration> PSpan<P> {
    pub fn new(p: &P, left: TotalMor<P>, right: TotalMor<P>) -> Result<Self> {
        let t = p.total();
        if t.dom(&left) != t.dom(&right) {
            return Err(Error::EndpointMismatch("span legs must share a domain".into()));
        }
        if p.project_mor(&left) != p.project_mor(&right) {
            return Err(Error::EndpointMismatch("span legs must have equal projections".into()));
        }
        Ok(PSpan { left, right })
    }

    pub fn apex(&self, p: &P) -> TotalObj<P> {
        p.total().dom(&self.left)
    }

    pub fn describe(&self, p: &P) -> Value {
        json!({
            "left": p.total().describe_mor(&self.left),
            "right": p.total().describe_mor(&self.right),
        })
    }
}

/// Outcome of a bounded universal check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub exhaustive: bool,
}

/// `(A, B)`-cospans `A -h-> Z <-k- B` with `Ph = Pk`, over base objects
/// in the bounded universe.
pub fn pcospans<P: Fibration>(
    p: &P,
    a: &TotalObj<P>,
    b: &TotalObj<P>,
    bound: usize,
) -> (Vec<(TotalMor<P>, TotalMor<P>)>, bool) {
    let base = p.base();
    let i = p.project_obj(a);
    let ks = base.objects(bound);
    let mut complete = ks.complete;
    let mut out = Vec::new();
    for k in &ks.items {
        let zs = p.objects_over(k, bound);
        complete &= zs.complete;
        for v in base.hom(&i, k) {
            for z in &zs.items {
                let hs = p.morphisms_over(a, z, &v);
                if hs.is_empty() {
                    continue;
                }
                for kk in p.morphisms_over(b, z, &v) {
                    for h in &hs {
                        out.push((h.clone(), kk.clone()));
                    }
                }
            }
        }
    }
    (out, complete)
}

/// `(A, B)`-spans whose apex lies over the bounded universe.
pub fn pspans<P: Fibration>(
    p: &P,
    a: &TotalObj<P>,
    b: &TotalObj<P>,
    bound: usize,
) -> (Vec<PSpan<P>>, bool) {
    let base = p.base();
    let i = p.project_obj(a);
    let js = base.objects(bound);
    let mut complete = js.complete;
    let mut out = Vec::new();
    for j in &js.items {
        let xs = p.objects_over(j, bound);
        complete &= xs.complete;
        for u in base.hom(j, &i) {
            for x in &xs.items {
                let gs = p.morphisms_over(x, b, &u);
                for f in p.morphisms_over(x, a, &u) {
                    for g in &gs {
                        out.push(PSpan {
                            left: f.clone(),
                            right: g.clone(),
                        });
                    }
                }
            }
        }
    }
    (out, complete)
}

fn agree<P: Fibration>(
    p: &P,
    cospans: &[(TotalMor<P>, TotalMor<P>)],
    (f, g): (&TotalMor<P>, &TotalMor<P>),
    (f2, g2): (&TotalMor<P>, &TotalMor<P>),
) -> bool {
    let t = p.total();
    cospans
        .iter()
        .all(|(h, k)| (t.then(f, h) == t.then(g, k)) == (t.then(f2, h) == t.then(g2, k)))
}

/// `Pf = Pf'` and, for every bounded `(A, B)`-cospan, `hf = kg` iff
/// `hf' = kg'`.
pub fn pspans_equivalent<P: Fibration>(
    p: &P,
    s1: &PSpan<P>,
    s2: &PSpan<P>,
    bound: usize,
) -> Result<Verdict> {
    let t = p.total();
    let (a, b) = (t.cod(&s1.left), t.cod(&s1.right));
    if t.cod(&s2.left) != a || t.cod(&s2.right) != b {
        return Err(Error::EndpointMismatch("spans have different feet".into()));
    }
    if p.project_mor(&s1.left) != p.project_mor(&s2.left) {
        return Ok(Verdict {
            holds: false,
            exhaustive: true,
        });
    }
    let (cospans, complete) = pcospans(p, &a, &b, bound);
    Ok(Verdict {
        holds: agree(p, &cospans, (&s1.left, &s1.right), (&s2.left, &s2.right)),
        exhaustive: complete,
    })
}

/// A candidate choice span `A <-π_A- R -π_B-> B` over `π: Σ → I`, with the
/// vertical span `π*A <-p_A- R -p_B-> π*B` when the fibration is cloven.
pub struct ChoiceSpanData<P: Fibration> {
    pub a: TotalObj<P>,
    pub b: TotalObj<P>,
    pub sigma: BaseObj<P>,
    pub pi: BaseMor<P>,
    pub r: TotalObj<P>,
    pub pi_a: TotalMor<P>,
    pub pi_b: TotalMor<P>,
    pub vertical: Option<(TotalMor<P>, TotalMor<P>)>,
}

impl<P: Fibration> Clone for ChoiceSpanData<P> {
    fn clone(&self) -> Self {
        ChoiceSpanData {
            a: self.a.clone(),
            b: self.b.clone(),
            sigma: self.sigma.clone(),
            pi: self.pi.clone(),
            r: self.r.clone(),
            pi_a: self.pi_a.clone(),
            pi_b: self.pi_b.clone(),
            vertical: self.vertical.clone(),
        }
    }
}

impl<P: Fibration> ChoiceSpanData<P> {
    fn malformation(&self, p: &P) -> Option<&'static str> {
        let (b, t) = (p.base(), p.total());
        if t.dom(&self.pi_a) != self.r || t.dom(&self.pi_b) != self.r {
            return Some("choice legs must start at R");
        }
        if t.cod(&self.pi_a) != self.a || t.cod(&self.pi_b) != self.b {
            return Some("choice legs must end at A and B");
        }
        if p.project_mor(&self.pi_a) != self.pi || p.project_mor(&self.pi_b) != self.pi {
            return Some("choice legs must lie over π");
        }
        if b.dom(&self.pi) != self.sigma || b.cod(&self.pi) != p.project_obj(&self.a) {
            return Some("π must map Σ to I");
        }
        if p.project_obj(&self.b) != p.project_obj(&self.a) {
            return Some("A and B must lie in the same fiber");
        }
        None
    }

    pub fn describe(&self, p: &P) -> Value {
        let (b, t) = (p.base(), p.total());
        json!({
            "sigma": b.describe_obj(&self.sigma),
            "pi": b.describe_mor(&self.pi),
            "R": t.describe_obj(&self.r),
        })
    }
}

/// How `∼_P` is tested when comparing a span with `(π_Aθ, S, π_Bθ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// The relation as defined: one biconditional per `(A, B)`-cospan.
    Literal,
    /// Also after reindexing both spans along every point `1 → J`, so the
    /// comparison is made index by index. Coincides with `Literal` over
    /// bases without points.
    Pointwise,
}

struct ThetaOutcome {
    literal_nose: usize,
    literal_classes: usize,
    pointwise_nose: usize,
    pointwise_classes: usize,
    exhaustive: bool,
}

/// Whether a vertical morphism is invertible; its inverse is vertical too.
pub fn is_vertical_iso<P: Fibration>(p: &P, m: &TotalMor<P>) -> bool {
    let (b, t) = (p.base(), p.total());
    let (x, y) = (t.dom(m), t.cod(m));
    let id = b.id(&p.project_obj(&x));
    let (idx, idy) = (t.id(&x), t.id(&y));
    p.morphisms_over(&y, &x, &id).iter().any(|inv| {
        t.then(m, inv).as_ref() == Some(&idx) && t.then(inv, m).as_ref() == Some(&idy)
    })
}

/// Number of classes of `thetas` under `θ ~ θ'` iff `θ = θ'∘ι` for a
/// vertical isomorphism `ι`. Such an `ι` forces `Pθ = Pθ'`.
fn vertical_iso_classes<P: Fibration>(p: &P, thetas: &[&TotalMor<P>]) -> usize {
    let (b, t) = (p.base(), p.total());
    let mut reps: Vec<&TotalMor<P>> = Vec::new();
    for &th in thetas {
        let s = t.dom(th);
        let w = p.project_mor(th);
        let id_j = b.id(&p.project_obj(&s));
        let related = reps.iter().filter(|r| p.project_mor(r) == w).any(|r| {
            p.morphisms_over(&s, &t.dom(r), &id_j)
                .iter()
                .any(|i| t.then(i, r).as_ref() == Some(th) && is_vertical_iso(p, i))
        });
        if !related {
            reps.push(th);
        }
    }
    reps.len()
}

/// Which bounded cospans close a pair of legs, as a bit vector. Two spans
/// over the same base morphism are `∼_P` iff their signatures agree.
fn signature<P: Fibration>(
    p: &P,
    cospans: &[(TotalMor<P>, TotalMor<P>)],
    f: &TotalMor<P>,
    g: &TotalMor<P>,
) -> Vec<bool> {
    let t = p.total();
    cospans.iter().map(|(h, k)| t.then(f, h) == t.then(g, k)).collect()
}

/// The literal signature and, per point of the apex's base object, the
/// signature of the legs reindexed to that point.
type Key = (Vec<bool>, Vec<Vec<bool>>);

fn key<P: Fibration>(
    p: &P,
    cospans: &[(TotalMor<P>, TotalMor<P>)],
    points: &[BaseMor<P>],
    f: &TotalMor<P>,
    g: &TotalMor<P>,
    bound: usize,
) -> Key {
    let t = p.total();
    let x = t.dom(f);
    let at_points = points
        .iter()
        .map(|pt| {
            let l = reindex(p, &x, pt, bound).expect("reindexing along a point");
            signature(p, cospans, &t.comp(&l, f), &t.comp(&l, g))
        })
        .collect();
    (signature(p, cospans, f, g), at_points)
}

/// Checks the fibrational Isbell condition for `cand` against every
/// bounded `(A, B)`-span: exactly one cartesian `θ: S → R` up to vertical
/// isomorphism of `S` with `(f, X, g) ∼_P (π_Aθ, S, π_Bθ)`.
///
/// The status follows `reading`; counts under both readings and on the
/// nose are reported as stats.
pub fn check_fib_isbell<P: Fibration>(
    p: &P,
    cand: &ChoiceSpanData<P>,
    bound: usize,
    reading: Reading,
) -> Report {
    let (base, t) = (p.base(), p.total());
    let mut report = Report::new("fib-isbell", p.name()).bounded(bound, true);
    report.witness(json!({ "reading": reading, "candidate": cand.describe(p) }));
    if let Some(why) = cand.malformation(p) {
        report.fail(json!({ "malformed": why }));
        return report;
    }
    let (cospans, cos_complete) = pcospans(p, &cand.a, &cand.b, bound);
    let (spans, span_complete) = pspans(p, &cand.a, &cand.b, bound);
    report.set_exhaustive(cos_complete && span_complete, bound);
    report.stat("cospans", cospans.len() as u64);
    report.stat("spans", spans.len() as u64);

    let mut groups: BTreeMap<BaseMor<P>, Vec<usize>> = BTreeMap::new();
    for (k, s) in spans.iter().enumerate() {
        groups.entry(p.project_mor(&s.left)).or_default().push(k);
    }
    let groups: Vec<(BaseMor<P>, Vec<usize>)> = groups.into_iter().collect();

    let per_group = par::map(&groups, |(u, members)| {
        let j = base.dom(u);
        let points = base.points(&j).unwrap_or_default();
        let ss = p.objects_over(&j, bound);
        let ws = base.factorizations(u, &cand.pi);
        let thetas: Vec<TotalMor<P>> = ss
            .items
            .iter()
            .flat_map(|s| ws.iter().flat_map(move |w| p.morphisms_over(s, &cand.r, w)))
            .collect();
        let keys = par::map(&thetas, |th| {
            key(p, &cospans, &points, &t.comp(th, &cand.pi_a), &t.comp(th, &cand.pi_b), bound)
        });
        let mut by_key: HashMap<&Key, Vec<usize>> = HashMap::new();
        let mut by_sig: HashMap<&Vec<bool>, Vec<usize>> = HashMap::new();
        for (k, key) in keys.iter().enumerate() {
            by_key.entry(key).or_default().push(k);
            by_sig.entry(&key.0).or_default().push(k);
        }
        let mut cartesian: Vec<Option<bool>> = vec![None; thetas.len()];
        let mut exhaustive = ss.complete;
        let span_keys = par::map(members, |&k| {
            key(p, &cospans, &points, &spans[k].left, &spans[k].right, bound)
        });
        // spans with equal keys have the same matches
        let mut lit_memo: HashMap<&Vec<bool>, (usize, usize)> = HashMap::new();
        let mut pw_memo: HashMap<&Key, (usize, usize)> = HashMap::new();
        let mut count = |list: &[usize]| -> (usize, usize) {
            let kept: Vec<&TotalMor<P>> = list
                .iter()
                .copied()
                .filter(|&c| {
                    *cartesian[c].get_or_insert_with(|| {
                        let check = crate::fibration::is_cartesian(p, &thetas[c], bound);
                        exhaustive &= check.exhaustive;
                        check.cartesian
                    })
                })
                .map(|c| &thetas[c])
                .collect();
            (kept.len(), vertical_iso_classes(p, &kept))
        };
        let mut outcomes = Vec::new();
        for (&k, sk) in members.iter().zip(&span_keys) {
            let none = Vec::new();
            let (literal_nose, literal_classes) = match lit_memo.get(&sk.0) {
                Some(&r) => r,
                None => {
                    let r = count(by_sig.get(&sk.0).unwrap_or(&none));
                    lit_memo.insert(&sk.0, r);
                    r
                }
            };
            let (pointwise_nose, pointwise_classes) = match pw_memo.get(sk) {
                Some(&r) => r,
                None => {
                    let r = count(by_key.get(sk).unwrap_or(&none));
                    pw_memo.insert(sk, r);
                    r
                }
            };
            outcomes.push((
                k,
                ThetaOutcome {
                    literal_nose,
                    literal_classes,
                    pointwise_nose,
                    pointwise_classes,
                    exhaustive: true,
                },
            ));
        }
        for o in &mut outcomes {
            o.1.exhaustive = exhaustive;
        }
        (thetas.len() as u64, outcomes)
    });
    let mut outcomes: Vec<(usize, ThetaOutcome)> = Vec::with_capacity(spans.len());
    for (n, o) in per_group {
        report.stat("theta_candidates", n);
        outcomes.extend(o);
    }
    outcomes.sort_by_key(|(k, _)| *k);

    let mut divergent_nose = 0u64;
    let mut divergent_reading = 0u64;
    for (k, o) in &outcomes {
        let s = &spans[*k];
        report.set_exhaustive(o.exhaustive, bound);
        let (nose, classes) = match reading {
            Reading::Literal => (o.literal_nose, o.literal_classes),
            Reading::Pointwise => (o.pointwise_nose, o.pointwise_classes),
        };
        if (o.literal_classes == 1) != (o.pointwise_classes == 1) {
            divergent_reading += 1;
        }
        if classes == 1 && nose != 1 {
            divergent_nose += 1;
        }
        if classes != 1 {
            report.fail(json!({
                "span": s.describe(p),
                "reading": reading,
                "theta_up_to_vertical_iso": classes,
                "theta_on_the_nose": nose,
                "reason": if classes == 0 { "no cartesian θ" } else { "θ not unique" },
            }));
        }
    }
    report.stat("unique_only_up_to_vertical_iso", divergent_nose);
    report.stat("readings_disagree", divergent_reading);
    if divergent_nose > 0 {
        report.warnings.push(format!(
            "θ unique up to vertical isomorphism but not on the nose for {divergent_nose} spans"
        ));
    }
    if divergent_reading > 0 {
        report.warnings.push(format!(
            "literal and pointwise readings of ∼_P disagree on uniqueness for {divergent_reading} spans"
        ));
    }
    report
}

/// One query of the mediating form: a vertical span `u*A <-a- X -b-> u*B`
/// and the `ū` with `π∘ū = u` that classify it.
pub struct MediatingOutcome<P: Fibration> {
    pub u: BaseMor<P>,
    pub span: PSpan<P>,
    /// `ū` with `ū*R = X`, `ū*(p_A) = a` and `ū*(p_B) = b` exactly.
    pub strict: Vec<BaseMor<P>>,
    /// `ū` whose reindexed span is vertically isomorphic to `(a, X, b)`.
    pub iso: Vec<BaseMor<P>>,
}

/// Reindexing along `ū` transported to vertical morphisms: the `p̃` with
/// `κ_A ∘ p̃ = p_A ∘ (ū*R → R)`, where `κ_A: u*A → π*A` is the cartesian
/// comparison over `ū`.
fn reindex_leg<P: Fibration>(
    p: &P,
    ubar: &BaseMor<P>,
    lift_r: &TotalMor<P>,
    leg: &TotalMor<P>,
    lift_pi: &TotalMor<P>,
    lift_u: &TotalMor<P>,
) -> Result<TotalMor<P>> {
    let (b, t) = (p.base(), p.total());
    let ua = t.dom(lift_u);
    let kappa: Vec<TotalMor<P>> = p
        .morphisms_over(&ua, &t.dom(lift_pi), ubar)
        .into_iter()
        .filter(|k| t.then(k, lift_pi).as_ref() == Some(lift_u))
        .collect();
    let [kappa] = kappa.as_slice() else {
        return Err(Error::Internal(format!(
            "{} comparison maps into a chosen lift",
            kappa.len()
        )));
    };
    let ur = t.dom(lift_r);
    let target = t.comp(lift_r, leg);
    let id = b.id(&b.dom(ubar));
    let tilde: Vec<TotalMor<P>> = p
        .morphisms_over(&ur, &ua, &id)
        .into_iter()
        .filter(|m| t.then(m, kappa).as_ref() == Some(&target))
        .collect();
    match tilde.as_slice() {
        [m] => Ok(m.clone()),
        _ => Err(Error::Internal(format!(
            "{} factorizations through a cartesian morphism",
            tilde.len()
        ))),
    }
}

/// Runs every query of the mediating form.
pub fn mediating_outcomes<P: Fibration>(
    p: &P,
    cand: &ChoiceSpanData<P>,
    bound: usize,
) -> Result<(Vec<MediatingOutcome<P>>, bool)> {
    let (b, t) = (p.base(), p.total());
    if let Some(why) = cand.malformation(p) {
        return Err(Error::InvalidFunctor(why.into()));
    }
    let (pa, pb) = cand
        .vertical
        .clone()
        .ok_or_else(|| Error::InvalidFunctor("candidate has no vertical span".into()))?;
    let no_lift = || Error::NotAFibration {
        object: crate::fibration::text(t.describe_obj(&cand.a)),
        morphism: crate::fibration::text(b.describe_mor(&cand.pi)),
    };
    let lpa = reindex(p, &cand.a, &cand.pi, bound).ok_or_else(no_lift)?;
    let lpb = reindex(p, &cand.b, &cand.pi, bound).ok_or_else(no_lift)?;
    if t.dom(&pa) != cand.r || t.dom(&pb) != cand.r || t.cod(&pa) != t.dom(&lpa) || t.cod(&pb) != t.dom(&lpb) {
        return Err(Error::InvalidFunctor(
            "vertical span must run from R to π*A and π*B".into(),
        ));
    }
    let i = p.project_obj(&cand.a);
    let js = b.objects(bound);
    let queries: Vec<BaseMor<P>> = js.items.iter().flat_map(|j| b.hom(j, &i)).collect();
    let per_u = par::map(&queries, |u| -> Result<(Vec<MediatingOutcome<P>>, bool)> {
        let j = b.dom(u);
        let id = b.id(&j);
        let la = reindex(p, &cand.a, u, bound).ok_or_else(no_lift)?;
        let lb = reindex(p, &cand.b, u, bound).ok_or_else(no_lift)?;
        let (ua, ub) = (t.dom(&la), t.dom(&lb));
        let mut reindexed = Vec::new();
        for ubar in b.factorizations(u, &cand.pi) {
            let lr = reindex(p, &cand.r, &ubar, bound).ok_or_else(no_lift)?;
            let ta = reindex_leg(p, &ubar, &lr, &pa, &lpa, &la)?;
            let tb = reindex_leg(p, &ubar, &lr, &pb, &lpb, &lb)?;
            reindexed.push((ubar, t.dom(&lr), ta, tb));
        }
        let xs = p.objects_over(&j, bound);
        let mut out = Vec::new();
        for x in &xs.items {
            let bs = p.morphisms_over(x, &ub, &id);
            for a in p.morphisms_over(x, &ua, &id) {
                for bb in &bs {
                    let mut strict = Vec::new();
                    let mut iso = Vec::new();
                    for (ubar, ur, ta, tb) in &reindexed {
                        if ur == x && ta == &a && tb == bb {
                            strict.push(ubar.clone());
                        }
                        let matched = p.morphisms_over(x, ur, &id).iter().any(|io| {
                            t.then(io, ta).as_ref() == Some(&a)
                                && t.then(io, tb).as_ref() == Some(bb)
                                && is_vertical_iso(p, io)
                        });
                        if matched {
                            iso.push(ubar.clone());
                        }
                    }
                    out.push(MediatingOutcome {
                        u: u.clone(),
                        span: PSpan {
                            left: a.clone(),
                            right: bb.clone(),
                        },
                        strict,
                        iso,
                    });
                }
            }
        }
        Ok((out, xs.complete))
    });
    let mut all = Vec::new();
    let mut complete = js.complete;
    for r in per_u {
        let (out, c) = r?;
        complete &= c;
        all.extend(out);
    }
    Ok((all, complete))
}

/// The mediating form over the cleavage: for every `u: J → I` and vertical
/// `(u*A, u*B)`-span `(a, X, b)`, exactly one `ū: J → Σ` with `π∘ū = u`
/// reindexing the vertical choice span to `(a, X, b)`.
///
/// Passing requires a unique `ū` with equality on the nose; the counts
/// under vertical isomorphism are reported alongside.
pub fn check_mediating_form<P: Fibration>(p: &P, cand: &ChoiceSpanData<P>, bound: usize) -> Report {
    let mut report = Report::new("mediating-form", p.name()).bounded(bound, true);
    report.witness(json!({ "candidate": cand.describe(p) }));
    let (outcomes, complete) = match mediating_outcomes(p, cand, bound) {
        Ok(r) => r,
        Err(e) => {
            report.fail(json!({ "malformed": e.to_string() }));
            return report;
        }
    };
    report.set_exhaustive(complete, bound);
    mediating_report(p, &mut report, &outcomes);
    report
}

fn mediating_report<P: Fibration>(p: &P, report: &mut Report, outcomes: &[MediatingOutcome<P>]) {
    let b = p.base();
    report.stat("queries", outcomes.len() as u64);
    let mut iso_not_unique = 0u64;
    for o in outcomes {
        report.stat("strict_unique", (o.strict.len() == 1) as u64);
        report.stat("iso_exists", (!o.iso.is_empty()) as u64);
        report.stat("iso_unique", (o.iso.len() == 1) as u64);
        if o.strict.len() == 1 && o.iso.len() != 1 {
            iso_not_unique += 1;
        }
        if o.strict.len() != 1 {
            report.fail(json!({
                "u": b.describe_mor(&o.u),
                "span": o.span.describe(p),
                "strict_mediators": o.strict.iter().map(|m| b.describe_mor(m)).collect::<Vec<_>>(),
                "iso_mediators": o.iso.len(),
            }));
        }
    }
    if iso_not_unique > 0 {
        report.warnings.push(format!(
            "ū unique on the nose but not up to vertical isomorphism for {iso_not_unique} spans"
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::identity_fibration;
    use crate::fixtures;

    #[test]
    fn terminal_fiber_is_vacuous() {
        let p = identity_fibration(fixtures::terminal());
        let c = p.total();
        let x = c.objects().next().unwrap();
        let id = c.identity(x);
        let cand = ChoiceSpanData {
            a: x,
            b: x,
            sigma: x,
            pi: id,
            r: x,
            pi_a: id,
            pi_b: id,
            vertical: None,
        };
        let r = check_fib_isbell(&p, &cand, 0, Reading::Literal);
        assert!(r.is_pass(), "{r:?}");
        assert_eq!(r.stats["spans"], 1);
    }

    #[test]
    fn malformed_candidate_fails() {
        let p = identity_fibration(fixtures::arrow());
        let c = p.total();
        let u = c.morphism_id("u").unwrap();
        let (a, b) = (c.dom(u), c.cod(u));
        let cand = ChoiceSpanData {
            a,
            b,
            sigma: a,
            pi: u,
            r: a,
            pi_a: u,
            pi_b: u,
            vertical: None,
        };
        let r = check_fib_isbell(&p, &cand, 0, Reading::Literal);
        assert!(!r.is_pass());
        assert!(r.counterexample.unwrap().get("malformed").is_some());
    }
}
