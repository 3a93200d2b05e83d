use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::*;
use crate::category::{check_category_laws, Category, FinSets};
use crate::externalization::{externalize, Externalization, Fam, FamObject, families};
use crate::fib_isbell::{
    check_fib_isbell, fam_choice_span, sigma_fibered_functor, verify_small_fib_isbell, Reading,
};
use crate::fibration::{check_smallness, SmallnessPredicate};
use crate::fibration::{cleave, is_fibration, Fibration};
use crate::fincat::{validate_category, FinCategory, RawCategory, RawMorphism};
use crate::finset::{FinFn, FinSetObj, Label};
use crate::internal::{
    canonical_faithful_diagram, faithfulness_witness, internalize, validate_internal_category,
    InternalCategory, RawInternalCategory,
};
use crate::report::Report;
use crate::spans::{concretize, isbell_report};

pub const COMMANDS: [&str; 7] = [
    "validate",
    "isbell-check",
    "concretize",
    "externalize",
    "fib-isbell",
    "concrete-check",
    "smallness-check",
];

/// The validated semantic objects of a document, by declared name.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub internals: BTreeMap<String, Arc<InternalCategory>>,
    /// Source category of each `internal ... from` declaration.
    pub sources: BTreeMap<String, String>,
    /// `(internal category, family)`.
    pub families: BTreeMap<String, (String, FamObject)>,
}

/// Final report of a command together with its process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn raw_category(name: &str, t: &Tables) -> RawCategory {
    RawCategory {
        name: name.to_string(),
        objects: t.objects.iter().map(|o| o.name.clone()).collect(),
        morphisms: t
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                name: m.name.name.clone(),
                dom: m.dom.name.clone(),
                cod: m.cod.name.clone(),
            })
            .collect(),
        identities: t
            .identities
            .iter()
            .map(|i| (i.object.name.clone(), i.morphism.name.clone()))
            .collect(),
        compose: t
            .compose
            .iter()
            .map(|c| (c.first.name.clone(), c.second.name.clone(), c.result.name.clone()))
            .collect(),
    }
}

fn raw_internal(name: &str, t: &Tables) -> RawInternalCategory {
    let sym = |i: &Ident| Label::sym(i.name.clone());
    RawInternalCategory {
        name: name.to_string(),
        c0: t.objects.iter().map(sym).collect(),
        c1: t.morphisms.iter().map(|m| sym(&m.name)).collect(),
        d0: t.morphisms.iter().map(|m| (sym(&m.name), sym(&m.dom))).collect(),
        d1: t.morphisms.iter().map(|m| (sym(&m.name), sym(&m.cod))).collect(),
        i: t.identities.iter().map(|i| (sym(&i.object), sym(&i.morphism))).collect(),
        c: t
            .compose
            .iter()
            .map(|c| ((sym(&c.second), sym(&c.first)), sym(&c.result)))
            .collect(),
    }
}

fn decl_report(kind: &str, name: &Ident) -> Report {
    let mut r = Report::new(format!("valid-{kind}"), name.name.clone());
    r.witness(json!({ "line": name.pos.line, "col": name.pos.col }));
    r
}

fn merge(top: &mut Report, sub: Report) {
    top.absorb(&sub);
    top.witness(serde_json::to_value(&sub).expect("serializable"));
}

/// Validates every declaration in document order. Declarations that fail
/// are left out of the model; whatever depends on them fails too.
pub fn build(doc: &SpecDocument) -> (Model, Report) {
    let mut model = Model::default();
    let mut report = Report::new("validate", "document");
    for decl in &doc.decls {
        let sub = match decl {
            Decl::Category(c) => {
                let mut r = decl_report("category", &c.name);
                match validate_category(&raw_category(&c.name.name, &c.tables)) {
                    Ok(cat) => {
                        r.stat("objects", cat.object_count() as u64);
                        r.stat("morphisms", cat.morphism_count() as u64);
                        model.categories.insert(c.name.name.clone(), Arc::new(cat));
                    }
                    Err(v) => r.fail(json!({ "violations": v })),
                }
                r
            }
            Decl::Internal(d) => {
                let mut r = decl_report("internal", &d.name);
                let built = match &d.source {
                    InternalSource::Category(c) => match model.categories.get(&c.name) {
                        Some(cat) => {
                            model.sources.insert(d.name.name.clone(), c.name.clone());
                            let mut i = internalize(cat);
                            i.rename(&d.name.name);
                            Ok(i)
                        }
                        None => Err(json!({ "invalid_source": c.name })),
                    },
                    InternalSource::Tables(t) => {
                        validate_internal_category(&raw_internal(&d.name.name, t))
                            .map_err(|v| json!({ "violations": v }))
                    }
                };
                match built {
                    Ok(cat) => {
                        r.stat("objects", cat.c0.len() as u64);
                        r.stat("morphisms", cat.c1.len() as u64);
                        model.internals.insert(d.name.name.clone(), Arc::new(cat));
                    }
                    Err(w) => r.fail(w),
                }
                r
            }
            Decl::Family(f) => {
                let mut r = decl_report("family", &f.name);
                match build_family(&model, f) {
                    Ok(x) => {
                        r.stat("index", x.index.len() as u64);
                        model.families.insert(f.name.name.clone(), (f.over.name.clone(), x));
                    }
                    Err(w) => r.fail(w),
                }
                r
            }
            Decl::Smallness(s) => {
                let mut r = decl_report("smallness", &s.name);
                if s.on.name != FINSET && !model.categories.contains_key(&s.on.name) {
                    r.fail(json!({ "invalid_category": s.on.name }));
                }
                r
            }
            Decl::Check(_) => continue,
        };
        merge(&mut report, sub);
    }
    (model, report)
}

fn build_family(model: &Model, f: &FamilyDecl) -> Result<FamObject, Value> {
    let cat = model
        .internals
        .get(&f.over.name)
        .ok_or_else(|| json!({ "invalid_internal": f.over.name }))?;
    let index = FinSetObj::from_syms(f.index.iter().map(|i| i.name.clone()))
        .map_err(|e| json!({ "index": e.to_string() }))?;
    let pairs = f
        .assign
        .iter()
        .map(|(i, x)| (Label::sym(i.name.clone()), Label::sym(x.name.clone())));
    let family = FinFn::from_pairs(index, cat.c0.clone(), pairs)
        .map_err(|e| json!({ "assignment": e.to_string() }))?;
    FamObject::new(cat, family).map_err(|e| json!({ "family": e.to_string() }))
}

/// Targets of `command`: the arguments of its check directives, or every
/// declaration of the relevant kind when there are none.
fn targets(doc: &SpecDocument, command: &str) -> Vec<Vec<Ident>> {
    let given: Vec<Vec<Ident>> = doc
        .checks()
        .filter(|c| c.command.name == command)
        .map(|c| c.args.clone())
        .filter(|a| !a.is_empty())
        .collect();
    if !given.is_empty() {
        return given;
    }
    let names: Vec<Ident> = match command {
        "isbell-check" | "concretize" => doc.categories().map(|c| c.name.clone()).collect(),
        "externalize" | "fib-isbell" | "concrete-check" => {
            doc.internals().map(|c| c.name.clone()).collect()
        }
        "smallness-check" => doc.smallness().map(|c| c.name.clone()).collect(),
        _ => Vec::new(),
    };
    names.into_iter().map(|n| vec![n]).collect()
}

fn wrong_kind(id: &Ident, expected: &str) -> DslError {
    DslError::WrongKind {
        pos: id.pos,
        name: id.name.clone(),
        expected: expected.to_string(),
    }
}

fn arity(args: &[Ident], allowed: &[usize], command: &str) -> Result<(), DslError> {
    if allowed.contains(&args.len()) {
        return Ok(());
    }
    let pos = args.first().map(|a| a.pos).unwrap_or_default();
    Err(DslError::Syntax {
        pos,
        message: format!("`check {command}` takes {allowed:?} arguments, got {}", args.len()),
    })
}

fn failed(check: &str, subject: &str, error: impl ToString) -> Report {
    let mut r = Report::new(check, subject);
    r.fail(json!({ "error": error.to_string() }));
    r
}

fn concretize_report(c: &FinCategory) -> Report {
    let mut r = Report::new("concretize", c.name());
    match concretize(c) {
        Ok(u) => {
            r.stat("elements", u.sets.iter().map(|s| s.len() as u64).sum());
            r.witness(u.to_json(c));
            for v in u.law_violations(c) {
                r.fail(json!({ "property": "functor_laws", "detail": v }));
            }
            if let Some((f, g)) = u.faithfulness_witness(c) {
                r.fail(json!({
                    "property": "faithful",
                    "f": c.morphism_name(f),
                    "g": c.morphism_name(g),
                }));
            }
        }
        Err(e) => r.fail(json!({ "error": e.to_string() })),
    }
    r
}

fn externalize_report(cat: &Arc<InternalCategory>, bound: usize) -> Report {
    let p = externalize(cat.clone());
    let mut r = Report::new("externalize", cat.name()).bounded(bound, true);
    merge(&mut r, check_category_laws(&Fam::new(cat.clone()), cat.name(), bound));
    merge(&mut r, is_fibration(&p, bound));
    match cleave(&p, bound) {
        Ok(c) => {
            r.stat("chosen_lifts", c.len() as u64);
            r.set_exhaustive(c.exhaustive, bound);
        }
        Err(e) => r.fail(json!({ "error": e.to_string() })),
    }
    r
}

fn concrete_report(cat: &Arc<InternalCategory>, bound: usize) -> Report {
    let mut r = Report::new("concrete-check", cat.name()).bounded(bound, true);
    match canonical_faithful_diagram(cat) {
        Ok(d) => {
            if let Some((f, g)) = faithfulness_witness(cat, &d) {
                r.fail(json!({
                    "property": "canonical_diagram_faithful",
                    "f": cat.c1.label(f),
                    "g": cat.c1.label(g),
                }));
            }
        }
        Err(e) => r.fail(json!({ "error": e.to_string() })),
    }
    match sigma_fibered_functor(cat.clone(), bound) {
        Ok(check) => merge(&mut r, check.report),
        Err(e) => r.fail(json!({ "error": e.to_string() })),
    }
    r
}

fn fib_isbell_pair(
    p: &Externalization,
    source: Option<&FinCategory>,
    a: &FamObject,
    b: &FamObject,
    bound: usize,
) -> Report {
    let t = p.total();
    let mut r = Report::new("fib-isbell-pair", p.name()).bounded(bound, true);
    r.witness(json!({ "a": t.describe_obj(a), "b": t.describe_obj(b) }));
    merge(&mut r, verify_small_fib_isbell(p, a, b, bound));
    if let Some(c) = source {
        match fam_choice_span(p, c, a, b) {
            Ok(cand) => merge(&mut r, check_fib_isbell(p, &cand, bound, Reading::Pointwise)),
            Err(e) => r.fail(json!({ "error": e.to_string() })),
        }
    }
    r
}

fn fib_isbell_report(
    model: &Model,
    cat: &Arc<InternalCategory>,
    pairs: Option<(&FamObject, &FamObject)>,
    bound: usize,
) -> Report {
    let p = externalize(cat.clone());
    let source = model
        .sources
        .get(cat.name())
        .and_then(|c| model.categories.get(c))
        .map(|c| &**c);
    let mut r = Report::new("fib-isbell", cat.name()).bounded(bound, true);
    let chosen: Vec<(FamObject, FamObject)> = match pairs {
        Some((a, b)) => vec![(a.clone(), b.clone())],
        None => {
            let declared: Vec<&FamObject> = model
                .families
                .values()
                .filter(|(over, _)| over == cat.name())
                .map(|(_, x)| x)
                .collect();
            let fams = if declared.is_empty() {
                families(cat, &FinSetObj::range(1))
            } else {
                declared.into_iter().cloned().collect()
            };
            fams.iter()
                .flat_map(|a| fams.iter().filter(|b| b.index == a.index).map(move |b| (a.clone(), b.clone())))
                .collect()
        }
    };
    r.stat("pairs", chosen.len() as u64);
    for (a, b) in &chosen {
        merge(&mut r, fib_isbell_pair(&p, source, a, b, bound));
    }
    r
}

fn smallness_report(doc: &SpecDocument, model: &Model, name: &str, bound: usize) -> Report {
    let decl = doc.smallness().find(|s| s.name.name == name).expect("resolved");
    if decl.on.name == FINSET {
        let SmallnessRule::Predicate(pred) = &decl.rule else {
            unreachable!("resolution requires a predicate on FinSet")
        };
        let check = match pred.name.as_str() {
            "all" => check_smallness(&FinSets, |_: &FinFn| true, bound, true),
            "injective" => check_smallness(&FinSets, FinFn::is_injective, bound, true),
            "surjective" => check_smallness(&FinSets, FinFn::is_surjective, bound, true),
            _ => check_smallness(&FinSets, FinFn::is_bijective, bound, true),
        };
        let mut r = check.to_report(name, Some(bound));
        r.check = "smallness-check".into();
        return r;
    }
    let Some(base) = model.categories.get(&decl.on.name) else {
        return failed("smallness-check", name, format!("invalid category {}", decl.on.name));
    };
    let pred = match &decl.rule {
        SmallnessRule::Predicate(_) => SmallnessPredicate::all(base.clone()),
        SmallnessRule::Members(ms) => SmallnessPredicate {
            base: base.clone(),
            members: ms
                .iter()
                .map(|m| base.morphism_id(&m.name).expect("resolved"))
                .collect(),
        },
    };
    let check = check_smallness(&**base, |m| pred.contains(*m), 0, false);
    let mut r = check.to_report(name, None);
    r.check = "smallness-check".into();
    r
}

/// Runs one command over a parsed document. Usage errors (unknown
/// command, a directive naming the wrong kind of declaration) are `Err`;
/// a failed validation or check is a report with exit code 1.
pub fn run_check(doc: &SpecDocument, command: &str, bound: usize) -> Result<Outcome, DslError> {
    if !COMMANDS.contains(&command) {
        return Err(DslError::UnknownDirective(command.to_string()));
    }
    let (model, validation) = build(doc);
    if command == "validate" {
        let exit_code = if validation.is_pass() { 0 } else { 1 };
        return Ok(Outcome {
            report: validation,
            exit_code,
        });
    }

    let bounded = !matches!(command, "isbell-check" | "concretize");
    let mut report = Report::new(command, "document");
    if bounded {
        report = report.bounded(bound, true);
    }
    if !validation.is_pass() {
        report.absorb(&validation);
    }
    for args in targets(doc, command) {
        let head = &args[0];
        let sub = match command {
            "isbell-check" | "concretize" => {
                arity(&args, &[1], command)?;
                if doc.categories().all(|c| c.name.name != head.name) {
                    return Err(wrong_kind(head, "category"));
                }
                match model.categories.get(&head.name) {
                    Some(c) if command == "isbell-check" => isbell_report(c).to_report(c),
                    Some(c) => concretize_report(c),
                    None => failed(command, &head.name, "invalid category"),
                }
            }
            "externalize" | "concrete-check" | "fib-isbell" => {
                if command == "fib-isbell" {
                    arity(&args, &[1, 3], command)?;
                } else {
                    arity(&args, &[1], command)?;
                }
                if doc.internals().all(|c| c.name.name != head.name) {
                    return Err(wrong_kind(head, "internal category"));
                }
                let mut pair = None;
                for a in &args[1..] {
                    if doc.families().all(|f| f.name.name != a.name) {
                        return Err(wrong_kind(a, "family"));
                    }
                    match model.families.get(&a.name) {
                        Some((over, _)) if over != &head.name => {
                            return Err(wrong_kind(a, &format!("family over {}", head.name)))
                        }
                        _ => {}
                    }
                }
                if args.len() == 3 {
                    pair = match (model.families.get(&args[1].name), model.families.get(&args[2].name)) {
                        (Some(a), Some(b)) => Some((&a.1, &b.1)),
                        _ => None,
                    };
                }
                match model.internals.get(&head.name) {
                    None => failed(command, &head.name, "invalid internal category"),
                    Some(_) if args.len() == 3 && pair.is_none() => {
                        failed(command, &head.name, "invalid family")
                    }
                    Some(cat) => match command {
                        "externalize" => externalize_report(cat, bound),
                        "concrete-check" => concrete_report(cat, bound),
                        _ => fib_isbell_report(&model, cat, pair, bound),
                    },
                }
            }
            _ => {
                arity(&args, &[1], command)?;
                if doc.smallness().all(|s| s.name.name != head.name) {
                    return Err(wrong_kind(head, "smallness declaration"));
                }
                smallness_report(doc, &model, &head.name, bound)
            }
        };
        merge(&mut report, sub);
    }
    let exit_code = if report.is_pass() { 0 } else { 1 };
    Ok(Outcome { report, exit_code })
}
