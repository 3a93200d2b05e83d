//! Classes of small morphisms and their four closure axioms.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::category::Category;
use crate::fincat::{FinCategory, MorId};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallnessAxiom {
    IsomorphismsSmall,
    ClosedUnderComposition,
    PullbackStable,
    RightCancellation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SmallnessViolation {
    pub axiom: SmallnessAxiom,
    pub witness: Value,
}

#[derive(Clone, Debug)]
pub struct SmallnessCheck {
    pub violations: Vec<SmallnessViolation>,
    pub exhaustive: bool,
    /// Stability instances skipped because the pullback does not exist.
    pub skipped_pullbacks: u64,
    pub morphisms: u64,
}

impl SmallnessCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_report(&self, subject: &str, bound: Option<usize>) -> Report {
        let mut r = Report::new("smallness", subject);
        if let Some(b) = bound {
            r = r.bounded(b, self.exhaustive);
        }
        r.stat("morphisms", self.morphisms);
        r.stat("skipped_pullbacks", self.skipped_pullbacks);
        for v in &self.violations {
            r.fail(serde_json::to_value(v).expect("serializable"));
        }
        r
    }
}

/// Checks the four axioms over every morphism between objects of the
/// bounded universe. A missing pullback is a violation when
/// `require_pullbacks` is set and a skip otherwise.
pub fn check_smallness<C, S>(c: &C, small: S, bound: usize, require_pullbacks: bool) -> SmallnessCheck
where
    C: Category,
    S: Fn(&C::Mor) -> bool + Sync,
{
    let objs = c.objects(bound);
    let mut morphisms = Vec::new();
    for a in &objs.items {
        for b in &objs.items {
            morphisms.extend(c.hom(a, b));
        }
    }
    let mut check = SmallnessCheck {
        violations: Vec::new(),
        exhaustive: objs.complete,
        skipped_pullbacks: 0,
        morphisms: morphisms.len() as u64,
    };
    let mut violation = |axiom, witness| check.violations.push(SmallnessViolation { axiom, witness });
    let d = |m: &C::Mor| c.describe_mor(m);
    let flags: Vec<bool> = morphisms.iter().map(&small).collect();

    for (m, &s) in morphisms.iter().zip(&flags) {
        if !s && c.is_iso(m) {
            violation(SmallnessAxiom::IsomorphismsSmall, json!({ "iso": d(m) }));
        }
    }
    for (f, &sf) in morphisms.iter().zip(&flags) {
        for (g, &sg) in morphisms.iter().zip(&flags) {
            let Some(gf) = c.then(f, g) else { continue };
            if sf && sg && !small(&gf) {
                violation(
                    SmallnessAxiom::ClosedUnderComposition,
                    json!({ "first": d(f), "second": d(g) }),
                );
            }
            // f then g: g small and g∘f small force f small
            if sg && !sf && small(&gf) {
                violation(
                    SmallnessAxiom::RightCancellation,
                    json!({ "f": d(g), "g": d(f), "f∘g": d(&gf) }),
                );
            }
        }
    }
    let mut skipped = 0;
    for (f, &sf) in morphisms.iter().zip(&flags) {
        if !sf {
            continue;
        }
        for g in &morphisms {
            if c.cod(f) != c.cod(g) {
                continue;
            }
            match c.pullback(f, g) {
                Some(cone) => {
                    if !small(&cone.p2) {
                        violation(
                            SmallnessAxiom::PullbackStable,
                            json!({ "small": d(f), "along": d(g), "pulled_back": d(&cone.p2) }),
                        );
                    }
                }
                None if require_pullbacks => violation(
                    SmallnessAxiom::PullbackStable,
                    json!({ "small": d(f), "along": d(g), "pulled_back": null }),
                ),
                None => skipped += 1,
            }
        }
    }
    check.skipped_pullbacks = skipped;
    check
}

/// A class of small morphisms in a finite category.
#[derive(Clone, Debug)]
pub struct SmallnessPredicate {
    pub base: Arc<FinCategory>,
    pub members: BTreeSet<MorId>,
}

impl SmallnessPredicate {
    /// Every morphism small.
    pub fn all(base: Arc<FinCategory>) -> Self {
        let members = base.morphisms().collect();
        SmallnessPredicate { base, members }
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members.contains(&m)
    }
}

/// The four axioms, with stability checked along every pullback that
/// exists in the base.
pub fn validate_smallness(s: &SmallnessPredicate) -> Vec<SmallnessViolation> {
    check_smallness(&*s.base, |m: &MorId| s.contains(*m), 0, false).violations
}
