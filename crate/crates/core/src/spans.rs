//! Spans, cospans, span equivalence, choice sets, and the faithful functor
//! into finite sets built from choice sets.
//!
//! Two `(A, B)`-spans `(f, X, g)` and `(f', X', g')` are equivalent when
//! every `(A, B)`-cospan `(h, Z, k)` satisfies `h∘f = k∘g` exactly when it
//! satisfies `h∘f' = k∘g'`. Equivalence is decided by enumerating every
//! cospan.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, ObjId};
use crate::finset::{FinFn, FinSetObj, Label};
use crate::par;
use crate::report::Report;

/// An `(A, B)`-span `A <-left- apex -right-> B`. Ordered by
/// `(apex, left, right)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Span {
    pub apex: ObjId,
    pub left: MorId,
    pub right: MorId,
}

impl Span {
    pub fn new(c: &FinCategory, left: MorId, right: MorId) -> Result<Span> {
        if c.dom(left) != c.dom(right) {
            return Err(Error::EndpointMismatch(format!(
                "legs {} and {} do not share a domain",
                c.morphism_name(left),
                c.morphism_name(right)
            )));
        }
        Ok(Span {
            apex: c.dom(left),
            left,
            right,
        })
    }

    pub fn source(&self, c: &FinCategory) -> ObjId {
        c.cod(self.left)
    }

    pub fn target(&self, c: &FinCategory) -> ObjId {
        c.cod(self.right)
    }

    pub fn describe(&self, c: &FinCategory) -> String {
        format!(
            "({}, {}, {})",
            c.morphism_name(self.left),
            c.object_name(self.apex),
            c.morphism_name(self.right)
        )
    }
}

/// An `(A, B)`-cospan `A -left-> apex <-right- B`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Cospan {
    pub apex: ObjId,
    pub left: MorId,
    pub right: MorId,
}

impl Cospan {
    pub fn new(c: &FinCategory, left: MorId, right: MorId) -> Result<Cospan> {
        if c.cod(left) != c.cod(right) {
            return Err(Error::EndpointMismatch(format!(
                "legs {} and {} do not share a codomain",
                c.morphism_name(left),
                c.morphism_name(right)
            )));
        }
        Ok(Cospan {
            apex: c.cod(left),
            left,
            right,
        })
    }
}

/// All `(A, B)`-spans in ascending `(apex, left, right)` order.
pub fn spans(c: &FinCategory, a: ObjId, b: ObjId) -> Vec<Span> {
    let mut out = Vec::new();
    for x in c.objects() {
        for &left in c.hom(x, a) {
            for &right in c.hom(x, b) {
                out.push(Span {
                    apex: x,
                    left,
                    right,
                });
            }
        }
    }
    out
}

/// All `(A, B)`-cospans in ascending `(apex, left, right)` order.
pub fn cospans(c: &FinCategory, a: ObjId, b: ObjId) -> Vec<Cospan> {
    let mut out = Vec::new();
    for z in c.objects() {
        for &left in c.hom(a, z) {
            for &right in c.hom(b, z) {
                out.push(Cospan {
                    apex: z,
                    left,
                    right,
                });
            }
        }
    }
    out
}

/// `h∘f = k∘g` for span `(f, X, g)` and cospan `(h, Z, k)`.
pub fn closes(c: &FinCategory, s: &Span, k: &Cospan) -> bool {
    c.compose(s.left, k.left) == c.compose(s.right, k.right)
}

fn endpoints(c: &FinCategory, s: &Span) -> (ObjId, ObjId) {
    (s.source(c), s.target(c))
}

pub fn spans_equivalent(c: &FinCategory, s1: &Span, s2: &Span) -> Result<bool> {
    let (a, b) = endpoints(c, s1);
    if endpoints(c, s2) != (a, b) {
        return Err(Error::EndpointMismatch(format!(
            "{} and {} are spans between different objects",
            s1.describe(c),
            s2.describe(c)
        )));
    }
    Ok(cospans(c, a, b)
        .iter()
        .all(|k| closes(c, s1, k) == closes(c, s2, k)))
}

/// The truth table of `closes` over a fixed cospan list; equal signatures
/// are exactly equivalent spans.
pub(crate) fn signature(c: &FinCategory, s: &Span, cospans: &[Cospan]) -> Vec<bool> {
    cospans.iter().map(|k| closes(c, s, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanClass {
    pub representative: Span,
    pub members: Vec<Span>,
}

/// A choice set `Σ_{A,B}`: one lexicographically least representative
/// per equivalence class of `(A, B)`-spans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceSet {
    pub source: ObjId,
    pub target: ObjId,
    pub classes: Vec<SpanClass>,
    index: HashMap<Span, usize>,
}

impl ChoiceSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> Vec<Span> {
        self.classes.iter().map(|k| k.representative).collect()
    }

    /// Index of the class containing `s`.
    pub fn class_of(&self, s: &Span) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn representative_of(&self, s: &Span) -> Option<Span> {
        self.class_of(s).map(|k| self.classes[k].representative)
    }

    pub fn to_json(&self, c: &FinCategory) -> Value {
        json!({
            "source": c.object_name(self.source),
            "target": c.object_name(self.target),
            "size": self.len(),
            "classes": self.classes.iter().map(|k| json!({
                "representative": k.representative.describe(c),
                "members": k.members.iter().map(|m| m.describe(c)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn choice_set(c: &FinCategory, a: ObjId, b: ObjId) -> ChoiceSet {
    let all = spans(c, a, b);
    let cos = cospans(c, a, b);
    let mut by_sig: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut classes: Vec<SpanClass> = Vec::new();
    let mut index = HashMap::new();
    // spans arrive in ascending order, so the first member of each class
    // is its least element
    for s in all {
        let sig = signature(c, &s, &cos);
        let k = *by_sig.entry(sig).or_insert_with(|| {
            classes.push(SpanClass {
                representative: s,
                members: Vec::new(),
            });
            classes.len() - 1
        });
        classes[k].members.push(s);
        index.insert(s, k);
    }
    ChoiceSet {
        source: a,
        target: b,
        classes,
        index,
    }
}

pub fn choice_set_by_name(c: &FinCategory, a: &str, b: &str) -> Result<ChoiceSet> {
    Ok(choice_set(c, c.require_object(a)?, c.require_object(b)?))
}

/// Choice sets for every ordered pair of objects.
#[derive(Clone, Debug)]
pub struct IsbellReport {
    pub category: String,
    pub entries: Vec<ChoiceSet>,
}

impl IsbellReport {
    pub fn size(&self, a: ObjId, b: ObjId) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.source == a && e.target == b)
            .map(ChoiceSet::len)
    }

    pub fn to_report(&self, c: &FinCategory) -> Report {
        let mut r = Report::new("isbell-check", c.name());
        r.stat("pairs", self.entries.len() as u64);
        r.stat(
            "representatives",
            self.entries.iter().map(|e| e.len() as u64).sum(),
        );
        for e in &self.entries {
            r.witness(e.to_json(c));
        }
        r
    }
}

pub fn isbell_report(c: &FinCategory) -> IsbellReport {
    let pairs: Vec<(ObjId, ObjId)> = c
        .objects()
        .flat_map(|a| c.objects().map(move |b| (a, b)))
        .collect();
    IsbellReport {
        category: c.name().to_string(),
        entries: par::map(&pairs, |&(a, b)| choice_set(c, a, b)),
    }
}

/// A functor from a finite category into finite sets, given by its object
/// sets and morphism tables.
#[derive(Clone, Debug)]
pub struct SetFunctor {
    pub sets: Vec<FinSetObj>,
    pub maps: Vec<FinFn>,
}

impl SetFunctor {
    /// Endpoint, identity and composition violations.
    pub fn law_violations(&self, c: &FinCategory) -> Vec<String> {
        let mut out = Vec::new();
        for f in c.morphisms() {
            let m = &self.maps[f.0];
            if m.dom() != &self.sets[c.dom(f).0] || m.cod() != &self.sets[c.cod(f).0] {
                out.push(format!("U({}) has the wrong endpoints", c.morphism_name(f)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in c.objects() {
            if self.maps[c.identity(a).0] != FinFn::identity(&self.sets[a.0]) {
                out.push(format!("U(id_{}) is not an identity", c.object_name(a)));
            }
        }
        for f in c.morphisms() {
            for g in c.morphisms() {
                if let Some(h) = c.compose(f, g) {
                    let composite = self.maps[f.0].then(&self.maps[g.0]).expect("typed");
                    if composite != self.maps[h.0] {
                        out.push(format!(
                            "U does not preserve {}",
                            c.describe_composite(f, g)
                        ));
                    }
                }
            }
        }
        out
    }

    pub fn faithfulness_witness(&self, c: &FinCategory) -> Option<(MorId, MorId)> {
        for a in c.objects() {
            for b in c.objects() {
                let hom = c.hom(a, b);
                for (k, &f) in hom.iter().enumerate() {
                    for &g in &hom[k + 1..] {
                        if self.maps[f.0] == self.maps[g.0] {
                            return Some((f, g));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_faithful(&self, c: &FinCategory) -> bool {
        self.faithfulness_witness(c).is_none()
    }

    pub fn to_json(&self, c: &FinCategory) -> Value {
        json!({
            "objects": c.objects().map(|a| json!({
                "object": c.object_name(a),
                "set": self.sets[a.0],
            })).collect::<Vec<_>>(),
            "morphisms": c.morphisms().map(|f| json!({
                "morphism": c.morphism_name(f),
                "table": self.maps[f.0],
            })).collect::<Vec<_>>(),
        })
    }
}

/// The concretization `U`: `U(B)` is the disjoint union over all objects
/// `A` of the representatives of `Σ_{A,B}`, tagged `(A, (X, f, g))`, and
/// `U(m)` sends the class of `(f, X, g)` to the class of `(f, X, m∘g)`.
/// The result is checked functorial and faithful before it is returned.
pub fn concretize(c: &FinCategory) -> Result<SetFunctor> {
    let report = isbell_report(c);
    let n = c.object_count();
    let choice = |a: ObjId, b: ObjId| &report.entries[a.0 * n + b.0];
    let tag = |a: ObjId, s: &Span| {
        Label::pair(
            Label::sym(c.object_name(a)),
            Label::triple(
                Label::sym(c.object_name(s.apex)),
                Label::sym(c.morphism_name(s.left)),
                Label::sym(c.morphism_name(s.right)),
            ),
        )
    };

    let mut sets = Vec::with_capacity(n);
    // position of (A, class index) inside U(B)
    let mut offsets = vec![vec![0usize; n]; n];
    for b in c.objects() {
        let mut labels = Vec::new();
        for a in c.objects() {
            offsets[b.0][a.0] = labels.len();
            for rep in choice(a, b).representatives() {
                labels.push(tag(a, &rep));
            }
        }
        sets.push(FinSetObj::new(labels).map_err(|e| Error::Internal(e.to_string()))?);
    }

    let mut maps = Vec::with_capacity(c.morphism_count());
    for m in c.morphisms() {
        let (b, b2) = (c.dom(m), c.cod(m));
        let mut table = Vec::with_capacity(sets[b.0].len());
        for a in c.objects() {
            let src = choice(a, b);
            let dst = choice(a, b2);
            for class in &src.classes {
                let push = |s: &Span| Span {
                    apex: s.apex,
                    left: s.left,
                    right: c.compose(s.right, m).expect("composable"),
                };
                let image = dst.class_of(&push(&class.representative)).ok_or_else(|| {
                    Error::Internal("post-composite is not an (A, B')-span".into())
                })?;
                // every member must land in the same class
                if class
                    .members
                    .iter()
                    .any(|s| dst.class_of(&push(s)) != Some(image))
                {
                    return Err(Error::Internal(format!(
                        "post-composition by {} does not respect span equivalence",
                        c.morphism_name(m)
                    )));
                }
                table.push(offsets[b2.0][a.0] + image);
            }
        }
        maps.push(
            FinFn::new(sets[b.0].clone(), sets[b2.0].clone(), table)
                .map_err(|e| Error::Internal(e.to_string()))?,
        );
    }

    let u = SetFunctor { sets, maps };
    let violations = u.law_violations(c);
    if !violations.is_empty() {
        return Err(Error::Internal(violations.join("; ")));
    }
    if let Some((f, g)) = u.faithfulness_witness(c) {
        return Err(Error::Internal(format!(
            "concretization identifies {} and {}",
            c.morphism_name(f),
            c.morphism_name(g)
        )));
    }
    Ok(u)
}
