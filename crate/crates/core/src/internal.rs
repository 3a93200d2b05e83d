//! Internal categories in finite sets and their internal diagrams
//! (category actions).
//!
//! Conventions, fixed by the pullback squares:
//!
//! * `C1 ×_{C0} C1` is the pullback of `d0` against `d1`; its elements are
//!   pairs `(g, f)` with `d0 g = d1 f`, and `c(g, f)` is `g∘f`.
//! * for a diagram `(p, q)` the action domain `C1 ×_{C0} F` is the
//!   pullback of `d0` against `p`; its elements are pairs `(k, a)` with
//!   `d0 k = p a`, and `q(k, a)` is written `k·a`.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, FinSetError, Result};
use crate::fincat::FinCategory;
use crate::finset::{pullback, FinFn, FinSetObj, Label, Pullback};

/// Unvalidated internal-category tables, by label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawInternalCategory {
    pub name: String,
    pub c0: Vec<Label>,
    pub c1: Vec<Label>,
    pub d0: Vec<(Label, Label)>,
    pub d1: Vec<(Label, Label)>,
    pub i: Vec<(Label, Label)>,
    /// `((g, f), g∘f)`.
    pub c: Vec<((Label, Label), Label)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum InternalViolation {
    Structure { detail: String },
    CompositionDomain { g: Label, f: Label, detail: String },
    IdentitySource { object: Label },
    IdentityTarget { object: Label },
    CompositeSource { g: Label, f: Label },
    CompositeTarget { g: Label, f: Label },
    LeftUnit { morphism: Label, got: Label },
    RightUnit { morphism: Label, got: Label },
    Associativity { h: Label, g: Label, f: Label, left: Label, right: Label },
}

/// A validated internal category `(C0, C1, d0, d1, c, i)` in finite sets.
#[derive(Clone, Debug)]
pub struct InternalCategory {
    name: String,
    pub c0: FinSetObj,
    pub c1: FinSetObj,
    pub d0: FinFn,
    pub d1: FinFn,
    /// `C1 ×_{C0} C1` with `p1 = π1` (the later arrow) and `p2 = π2`.
    pub composable: Pullback,
    pub c: FinFn,
    pub i: FinFn,
    homs: Vec<Vec<usize>>,
}

fn structure<E: std::fmt::Display>(e: E) -> Vec<InternalViolation> {
    vec![InternalViolation::Structure {
        detail: e.to_string(),
    }]
}

pub fn validate_internal_category(
    raw: &RawInternalCategory,
) -> std::result::Result<InternalCategory, Vec<InternalViolation>> {
    let c0 = FinSetObj::new(raw.c0.clone()).map_err(structure)?;
    let c1 = FinSetObj::new(raw.c1.clone()).map_err(structure)?;
    let d0 = FinFn::from_pairs(c1.clone(), c0.clone(), raw.d0.clone()).map_err(structure)?;
    let d1 = FinFn::from_pairs(c1.clone(), c0.clone(), raw.d1.clone()).map_err(structure)?;
    let i = FinFn::from_pairs(c0.clone(), c1.clone(), raw.i.clone()).map_err(structure)?;
    let composable = pullback(&d0, &d1).map_err(structure)?;

    let mut violations = Vec::new();
    let mut table = vec![usize::MAX; composable.apex.len()];
    for ((g, f), h) in &raw.c {
        let (gi, fi, hi) = match (c1.require(g), c1.require(f), c1.require(h)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (a, b, c) => {
                let bad = [a.err(), b.err(), c.err()].into_iter().flatten().next();
                violations.push(InternalViolation::Structure {
                    detail: bad.map(|e| e.to_string()).unwrap_or_default(),
                });
                continue;
            }
        };
        match composable.locate(gi, fi) {
            Some(k) if table[k] == usize::MAX => table[k] = hi,
            Some(_) => violations.push(InternalViolation::CompositionDomain {
                g: g.clone(),
                f: f.clone(),
                detail: "composite defined twice".into(),
            }),
            None => violations.push(InternalViolation::CompositionDomain {
                g: g.clone(),
                f: f.clone(),
                detail: "composite defined on a non-composable pair".into(),
            }),
        }
    }
    for (k, v) in table.iter().enumerate() {
        if *v == usize::MAX {
            let (g, f) = (composable.p1.apply(k), composable.p2.apply(k));
            violations.push(InternalViolation::CompositionDomain {
                g: c1.label(g).clone(),
                f: c1.label(f).clone(),
                detail: "composite missing for a composable pair".into(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let c = FinFn::new(composable.apex.clone(), c1.clone(), table).map_err(structure)?;
    InternalCategory::from_parts(raw.name.clone(), c0, c1, d0, d1, c, i)
}

impl InternalCategory {
    /// Assembles and checks an internal category from function tables;
    /// `c` must be defined on `pullback(d0, d1)`.
    pub fn from_parts(
        name: String,
        c0: FinSetObj,
        c1: FinSetObj,
        d0: FinFn,
        d1: FinFn,
        c: FinFn,
        i: FinFn,
    ) -> std::result::Result<InternalCategory, Vec<InternalViolation>> {
        let composable = pullback(&d0, &d1).map_err(structure)?;
        if c.dom() != &composable.apex || c.cod() != &c1 || i.dom() != &c0 || i.cod() != &c1 {
            return Err(structure("structure maps have the wrong endpoints"));
        }
        let mut violations = Vec::new();
        let lbl = |k: usize| c1.label(k).clone();
        for x in 0..c0.len() {
            if d0.apply(i.apply(x)) != x {
                violations.push(InternalViolation::IdentitySource {
                    object: c0.label(x).clone(),
                });
            }
            if d1.apply(i.apply(x)) != x {
                violations.push(InternalViolation::IdentityTarget {
                    object: c0.label(x).clone(),
                });
            }
        }
        for k in 0..composable.apex.len() {
            let (g, f) = (composable.p1.apply(k), composable.p2.apply(k));
            let h = c.apply(k);
            if d0.apply(h) != d0.apply(f) {
                violations.push(InternalViolation::CompositeSource { g: lbl(g), f: lbl(f) });
            }
            if d1.apply(h) != d1.apply(g) {
                violations.push(InternalViolation::CompositeTarget { g: lbl(g), f: lbl(f) });
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let comp = |g: usize, f: usize| composable.locate(g, f).map(|k| c.apply(k));
        for f in 0..c1.len() {
            let left = comp(i.apply(d1.apply(f)), f).expect("identity is composable");
            if left != f {
                violations.push(InternalViolation::LeftUnit {
                    morphism: lbl(f),
                    got: lbl(left),
                });
            }
            let right = comp(f, i.apply(d0.apply(f))).expect("identity is composable");
            if right != f {
                violations.push(InternalViolation::RightUnit {
                    morphism: lbl(f),
                    got: lbl(right),
                });
            }
        }
        for k in 0..composable.apex.len() {
            let (g, f) = (composable.p1.apply(k), composable.p2.apply(k));
            let gf = c.apply(k);
            for h in 0..c1.len() {
                let Some(hg) = comp(h, g) else { continue };
                let left = comp(hg, f).expect("typed");
                let right = comp(h, gf).expect("typed");
                if left != right {
                    violations.push(InternalViolation::Associativity {
                        h: lbl(h),
                        g: lbl(g),
                        f: lbl(f),
                        left: lbl(left),
                        right: lbl(right),
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }
        let mut homs = vec![Vec::new(); c0.len() * c0.len()];
        for f in 0..c1.len() {
            homs[d0.apply(f) * c0.len() + d1.apply(f)].push(f);
        }
        Ok(InternalCategory {
            name,
            c0,
            c1,
            d0,
            d1,
            composable,
            c,
            i,
            homs,
        })
    }

    pub fn rename(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Arrow elements from `x` to `y`, ascending.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x * self.c0.len() + y]
    }

    /// `g∘f` on element positions, when `d0 g = d1 f`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composable.locate(g, f).map(|k| self.c.apply(k))
    }

    pub fn identity(&self, x: usize) -> usize {
        self.i.apply(x)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "C0": self.c0,
            "C1": self.c1,
            "d0": self.d0,
            "d1": self.d1,
            "i": self.i,
            "c": self.c,
        })
    }
}

/// The internal category of a finite category: `C0` its objects, `C1` its
/// morphisms, labelled by name.
pub fn internalize(c: &FinCategory) -> InternalCategory {
    let c0 = FinSetObj::from_syms(c.objects().map(|a| c.object_name(a).to_string()))
        .expect("object names are distinct");
    let c1 = FinSetObj::from_syms(c.morphisms().map(|f| c.morphism_name(f).to_string()))
        .expect("morphism names are distinct");
    let d0 = FinFn::new(c1.clone(), c0.clone(), c.morphisms().map(|f| c.dom(f).0).collect())
        .expect("typed");
    let d1 = FinFn::new(c1.clone(), c0.clone(), c.morphisms().map(|f| c.cod(f).0).collect())
        .expect("typed");
    let i = FinFn::new(c0.clone(), c1.clone(), c.objects().map(|a| c.identity(a).0).collect())
        .expect("typed");
    let composable = pullback(&d0, &d1).expect("common codomain");
    let table = (0..composable.apex.len())
        .map(|k| {
            let (g, f) = (composable.p1.apply(k), composable.p2.apply(k));
            c.compose(crate::fincat::MorId(f), crate::fincat::MorId(g))
                .expect("composable")
                .0
        })
        .collect();
    let cmap = FinFn::new(composable.apex.clone(), c1.clone(), table).expect("typed");
    InternalCategory::from_parts(c.name().to_string(), c0, c1, d0, d1, cmap, i)
        .expect("a valid category internalizes to a valid internal category")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "identity", rename_all = "snake_case")]
pub enum DiagramViolation {
    Shape { detail: String },
    /// `p∘q = d1∘π1` fails at `(k, a)`.
    Typing { k: Label, a: Label },
    /// `q∘<ip, id_F> = id_F` fails at `a`.
    Unit { a: Label, got: Label },
    /// `q∘(C1 ×_{C0} q) = q∘(c ×_{C0} F)` fails at `(g, (f, a))`.
    Action { g: Label, f: Label, a: Label, left: Label, right: Label },
}

/// An internal diagram `(p: F → C0, q: C1 ×_{C0} F → F)`.
#[derive(Clone, Debug)]
pub struct InternalDiagram {
    pub p: FinFn,
    /// `C1 ×_{C0} F`, the pullback of `d0` against `p`.
    pub action_domain: Pullback,
    pub q: FinFn,
}

impl InternalDiagram {
    pub fn carrier(&self) -> &FinSetObj {
        self.p.dom()
    }
}

pub fn validate_internal_diagram(
    cat: &InternalCategory,
    p: FinFn,
    q: FinFn,
) -> std::result::Result<InternalDiagram, Vec<DiagramViolation>> {
    let shape = |d: &str| {
        vec![DiagramViolation::Shape {
            detail: d.to_string(),
        }]
    };
    if p.cod() != &cat.c0 {
        return Err(shape("p must land in C0"));
    }
    let action = pullback(&cat.d0, &p).map_err(|e| shape(&e.to_string()))?;
    if q.dom() != &action.apex || q.cod() != p.dom() {
        return Err(shape("q must map C1 ×_{C0} F to F"));
    }
    let f_set = p.dom().clone();
    let mut violations = Vec::new();

    let pq = q.then(&p).expect("typed");
    let d1pi1 = action.p1.then(&cat.d1).expect("typed");
    for k in 0..action.apex.len() {
        if pq.apply(k) != d1pi1.apply(k) {
            violations.push(DiagramViolation::Typing {
                k: cat.c1.label(action.p1.apply(k)).clone(),
                a: f_set.label(action.p2.apply(k)).clone(),
            });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let unit_pair = action
        .mediate(&p.then(&cat.i).expect("typed"), &FinFn::identity(&f_set))
        .map_err(|e| shape(&e.to_string()))?;
    let unit = unit_pair.then(&q).expect("typed");
    for a in 0..f_set.len() {
        if unit.apply(a) != a {
            violations.push(DiagramViolation::Unit {
                a: f_set.label(a).clone(),
                got: f_set.label(unit.apply(a)).clone(),
            });
        }
    }

    let (left, right, triples) = action_sides(cat, &action, &q).map_err(|e| shape(&e.to_string()))?;
    for k in 0..triples.apex.len() {
        if left.apply(k) != right.apply(k) {
            let g = triples.p1.apply(k);
            let inner = triples.p2.apply(k);
            violations.push(DiagramViolation::Action {
                g: cat.c1.label(g).clone(),
                f: cat.c1.label(action.p1.apply(inner)).clone(),
                a: f_set.label(action.p2.apply(inner)).clone(),
                left: f_set.label(left.apply(k)).clone(),
                right: f_set.label(right.apply(k)).clone(),
            });
        }
    }
    if violations.is_empty() {
        Ok(InternalDiagram {
            p,
            action_domain: action,
            q,
        })
    } else {
        Err(violations)
    }
}

/// Both sides of the action identity on the common domain
/// `C1 ×_{C0} (C1 ×_{C0} F)`: `(q∘(C1 × q), q∘(c × F), domain)`.
fn action_sides(
    cat: &InternalCategory,
    action: &Pullback,
    q: &FinFn,
) -> std::result::Result<(FinFn, FinFn, Pullback), FinSetError> {
    let triples = pullback(&cat.d0, &action.p1.then(&cat.d1)?)?;
    let c1_times_q = action.mediate(&triples.p1, &triples.p2.then(q)?)?;
    let gf = cat
        .composable
        .mediate(&triples.p1, &triples.p2.then(&action.p1)?)?
        .then(&cat.c)?;
    let c_times_f = action.mediate(&gf, &triples.p2.then(&action.p2)?)?;
    Ok((c1_times_q.then(q)?, c_times_f.then(q)?, triples))
}

/// `f·a = q(f, a)`; requires `p(a) = d0(f)`.
pub fn act(cat: &InternalCategory, d: &InternalDiagram, f: usize, a: usize) -> Result<usize> {
    match d.action_domain.locate(f, a) {
        Some(k) => Ok(d.q.apply(k)),
        None => Err(Error::NotComposable(format!(
            "{}·{}: p({}) differs from d0({})",
            cat.c1.label(f),
            d.carrier().label(a),
            d.carrier().label(a),
            cat.c1.label(f)
        ))),
    }
}

pub fn act_label(
    cat: &InternalCategory,
    d: &InternalDiagram,
    f: &Label,
    a: &Label,
) -> Result<Label> {
    let fi = cat.c1.require(f).map_err(Error::from)?;
    let ai = d.carrier().require(a).map_err(Error::from)?;
    act(cat, d, fi, ai).map(|r| d.carrier().label(r).clone())
}

/// A pair of distinct parallel arrows that act identically on every
/// element over their common source.
///
/// This is the singleton-stage form of faithfulness. In finite sets a
/// pair of generalized elements `f, g: I → C1` is separated exactly when
/// one of its components is, provided every fiber of `p` over a source
/// object is inhabited.
pub fn faithfulness_witness(cat: &InternalCategory, d: &InternalDiagram) -> Option<(usize, usize)> {
    let fibers: HashMap<usize, Vec<usize>> = (0..d.carrier().len()).fold(HashMap::new(), |mut m, a| {
        m.entry(d.p.apply(a)).or_insert_with(Vec::new).push(a);
        m
    });
    let empty = Vec::new();
    for x in 0..cat.c0.len() {
        for y in 0..cat.c0.len() {
            let hom = cat.hom(x, y);
            let over = fibers.get(&x).unwrap_or(&empty);
            for (k, &f) in hom.iter().enumerate() {
                for &g in &hom[k + 1..] {
                    let collapsed = over.iter().all(|&a| {
                        act(cat, d, f, a).expect("typed") == act(cat, d, g, a).expect("typed")
                    });
                    if collapsed {
                        return Some((f, g));
                    }
                }
            }
        }
    }
    None
}

pub fn is_faithful_diagram(cat: &InternalCategory, d: &InternalDiagram) -> bool {
    faithfulness_witness(cat, d).is_none()
}

/// `(d1, c)`: `C1` acting on itself by post-composition.
pub fn canonical_faithful_diagram(cat: &InternalCategory) -> Result<InternalDiagram> {
    let d = validate_internal_diagram(cat, cat.d1.clone(), cat.c.clone())
        .map_err(|v| Error::Internal(format!("canonical diagram is not a diagram: {v:?}")))?;
    if let Some((f, g)) = faithfulness_witness(cat, &d) {
        return Err(Error::Internal(format!(
            "canonical diagram identifies {} and {}",
            cat.c1.label(f),
            cat.c1.label(g)
        )));
    }
    Ok(d)
}

/// `(id_{C0}, d1∘π1)`: every arrow acts by moving to its target.
pub fn terminal_diagram(cat: &InternalCategory) -> Result<InternalDiagram> {
    let p = FinFn::identity(&cat.c0);
    let action = pullback(&cat.d0, &p)?;
    let q = action.p1.then(&cat.d1)?;
    validate_internal_diagram(cat, p, q)
        .map_err(|v| Error::InvalidInternal(format!("{v:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn z2_raw() -> RawInternalCategory {
        let l = |s: &str| Label::sym(s);
        RawInternalCategory {
            name: "Z2".into(),
            c0: vec![l("*")],
            c1: vec![l("e"), l("s")],
            d0: vec![(l("e"), l("*")), (l("s"), l("*"))],
            d1: vec![(l("e"), l("*")), (l("s"), l("*"))],
            i: vec![(l("*"), l("e"))],
            c: vec![
                ((l("e"), l("e")), l("e")),
                ((l("e"), l("s")), l("s")),
                ((l("s"), l("e")), l("s")),
                ((l("s"), l("s")), l("e")),
            ],
        }
    }

    #[test]
    fn discrete_internal_category_is_valid() {
        let l = |s: &str| Label::sym(s);
        let raw = RawInternalCategory {
            name: "disc".into(),
            c0: vec![l("x"), l("y")],
            c1: vec![l("x"), l("y")],
            d0: vec![(l("x"), l("x")), (l("y"), l("y"))],
            d1: vec![(l("x"), l("x")), (l("y"), l("y"))],
            i: vec![(l("x"), l("x")), (l("y"), l("y"))],
            c: vec![((l("x"), l("x")), l("x")), ((l("y"), l("y")), l("y"))],
        };
        assert!(validate_internal_category(&raw).is_ok());
    }

    #[test]
    fn cyclic_group_internal() {
        let z2 = validate_internal_category(&z2_raw()).unwrap();
        assert_eq!(z2.composable.apex.len(), 4);
    }

    #[test]
    fn broken_unit_is_named() {
        let mut raw = z2_raw();
        // e∘s = e instead of s
        raw.c[1].1 = Label::sym("e");
        let errs = validate_internal_category(&raw).unwrap_err();
        assert!(errs.iter().any(|v| matches!(
            v,
            InternalViolation::LeftUnit { morphism, .. } if *morphism == Label::sym("s")
        )));
    }

    #[test]
    fn composite_off_the_pullback_rejected() {
        let l = |s: &str| Label::sym(s);
        let mut raw = RawInternalCategory {
            name: "arr".into(),
            c0: vec![l("a"), l("b")],
            c1: vec![l("id_a"), l("id_b"), l("u")],
            d0: vec![(l("id_a"), l("a")), (l("id_b"), l("b")), (l("u"), l("a"))],
            d1: vec![(l("id_a"), l("a")), (l("id_b"), l("b")), (l("u"), l("b"))],
            i: vec![(l("a"), l("id_a")), (l("b"), l("id_b"))],
            c: vec![
                ((l("id_a"), l("id_a")), l("id_a")),
                ((l("id_b"), l("id_b")), l("id_b")),
                ((l("id_b"), l("u")), l("u")),
                ((l("u"), l("id_a")), l("u")),
            ],
        };
        assert!(validate_internal_category(&raw).is_ok());
        raw.c.push(((l("u"), l("u")), l("u")));
        let errs = validate_internal_category(&raw).unwrap_err();
        assert!(matches!(&errs[0], InternalViolation::CompositionDomain { .. }));
    }

    #[test]
    fn internalize_sizes() {
        let t = internalize(&fixtures::terminal());
        assert_eq!((t.c0.len(), t.c1.len()), (1, 1));
        let arr = internalize(&fixtures::arrow());
        assert_eq!((arr.c0.len(), arr.c1.len()), (2, 3));
        for c in fixtures::all() {
            let ic = internalize(&c);
            assert_eq!(ic.c1.len(), c.morphism_count());
        }
    }

    #[test]
    fn act_on_canonical_z2() {
        let z2 = internalize(&fixtures::cyclic(2));
        let d = canonical_faithful_diagram(&z2).unwrap();
        let l = |s: &str| Label::sym(s);
        assert_eq!(act_label(&z2, &d, &l("s"), &l("e")).unwrap(), l("s"));
        assert_eq!(act_label(&z2, &d, &l("e"), &l("s")).unwrap(), l("s"));
        // g·(f·a) = (g∘f)·a with g = f = a = s
        let lhs = act_label(&z2, &d, &l("s"), &act_label(&z2, &d, &l("s"), &l("s")).unwrap()).unwrap();
        let ss = z2.compose(1, 1).unwrap();
        let rhs = act_label(&z2, &d, z2.c1.label(ss), &l("s")).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, l("s"));
    }

    #[test]
    fn act_requires_matching_source() {
        let arr = internalize(&fixtures::arrow());
        let d = canonical_faithful_diagram(&arr).unwrap();
        // u·u is not defined: p(u) = b but d0(u) = a
        let u = Label::sym("u");
        assert!(matches!(
            act_label(&arr, &d, &u, &u),
            Err(Error::NotComposable(_))
        ));
    }

    #[test]
    fn terminal_diagram_collapses_z2() {
        let z2 = internalize(&fixtures::cyclic(2));
        let d = terminal_diagram(&z2).unwrap();
        assert!(!is_faithful_diagram(&z2, &d));
    }

    #[test]
    fn canonical_diagram_faithful_on_fixtures() {
        for c in fixtures::all() {
            let ic = internalize(&c);
            let d = canonical_faithful_diagram(&ic).unwrap();
            assert!(is_faithful_diagram(&ic, &d));
            assert_eq!(d.carrier().len(), c.morphism_count());
        }
    }

    #[test]
    fn identity_one_pins_orientation() {
        // p∘q = d1∘π1 on the canonical diagram of Arr
        let arr = internalize(&fixtures::arrow());
        let d = canonical_faithful_diagram(&arr).unwrap();
        let lhs = d.q.then(&d.p).unwrap();
        let rhs = d.action_domain.p1.then(&arr.d1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mis_oriented_action_rejected() {
        // acting by pre-composition (p = d0) is not a diagram in this
        // orientation
        let arr = internalize(&fixtures::arrow());
        let action = pullback(&arr.d0, &arr.d0).unwrap();
        let q = action.p2.clone();
        assert!(validate_internal_diagram(&arr, arr.d0.clone(), q).is_err());
    }
}
