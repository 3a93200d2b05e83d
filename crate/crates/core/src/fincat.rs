//! Finite categories given by explicit composition tables.
//!
//! Composition is stored in diagrammatic order: `compose(f, g)` is the
//! composite "first `f`, then `g`", which is written `g∘f` in the usual
//! notation. Reports print both forms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct MorId(pub usize);

/// Unvalidated composition-table data, referring to objects and morphisms
/// by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    /// `(object, identity morphism)`.
    pub identities: Vec<(String, String)>,
    /// `(first, second, composite)`: the composite is `second∘first`.
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

impl RawCategory {
    pub fn new(name: impl Into<String>) -> Self {
        RawCategory {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn morphism(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.morphisms.push(RawMorphism {
            name: name.to_string(),
            dom: dom.to_string(),
            cod: cod.to_string(),
        });
        self
    }

    /// Declares an object together with its identity morphism `id_<obj>`.
    pub fn object_with_identity(self, name: &str) -> Self {
        let id = format!("id_{name}");
        self.object(name).morphism(&id, name, name).identity(name, &id)
    }

    pub fn identity(mut self, obj: &str, mor: &str) -> Self {
        self.identities.push((obj.to_string(), mor.to_string()));
        self
    }

    /// Records `second∘first = result`.
    pub fn compose(mut self, first: &str, second: &str, result: &str) -> Self {
        self.compose
            .push((first.to_string(), second.to_string(), result.to_string()));
        self
    }

    /// Adds table entries for every composable pair that involves a
    /// declared identity and is not already listed.
    pub fn with_identity_composites(mut self) -> Self {
        let ids: HashMap<&str, &str> = self
            .identities
            .iter()
            .map(|(o, m)| (m.as_str(), o.as_str()))
            .collect();
        let listed: BTreeSet<(String, String)> = self
            .compose
            .iter()
            .map(|(a, b, _)| (a.clone(), b.clone()))
            .collect();
        let mut extra = Vec::new();
        for f in &self.morphisms {
            for g in &self.morphisms {
                if f.cod != g.dom || listed.contains(&(f.name.clone(), g.name.clone())) {
                    continue;
                }
                if ids.contains_key(f.name.as_str()) {
                    extra.push((f.name.clone(), g.name.clone(), g.name.clone()));
                } else if ids.contains_key(g.name.as_str()) {
                    extra.push((f.name.clone(), g.name.clone(), f.name.clone()));
                }
            }
        }
        self.compose.extend(extra);
        self
    }
}

/// A failed category law or table defect, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    DuplicateId { id: String },
    UndefinedId { context: String, id: String },
    MissingIdentity { object: String },
    IdentityTyping { object: String, morphism: String },
    /// Composite given for a non-composable pair, or missing for a composable one.
    Partiality { first: String, second: String, detail: String },
    DuplicateComposite { first: String, second: String },
    CompositeTyping { first: String, second: String, result: String },
    LeftIdentity { object: String, morphism: String, got: String },
    RightIdentity { object: String, morphism: String, got: String },
    Associativity {
        f: String,
        g: String,
        h: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId { id } => write!(out, "identifier {id} declared twice"),
            Violation::UndefinedId { context, id } => {
                write!(out, "undefined identifier {id} in {context}")
            }
            Violation::MissingIdentity { object } => write!(out, "object {object} has no identity"),
            Violation::IdentityTyping { object, morphism } => {
                write!(out, "identity {morphism} of {object} is not an endomorphism of it")
            }
            Violation::Partiality {
                first,
                second,
                detail,
            } => write!(out, "{second}∘{first} (= {first};{second}): {detail}"),
            Violation::DuplicateComposite { first, second } => {
                write!(out, "{second}∘{first} (= {first};{second}) defined twice")
            }
            Violation::CompositeTyping {
                first,
                second,
                result,
            } => write!(
                out,
                "{second}∘{first} (= {first};{second}) = {result} has the wrong endpoints"
            ),
            Violation::LeftIdentity {
                object,
                morphism,
                got,
            } => write!(out, "{morphism}∘id_{object} = {got}, expected {morphism}"),
            Violation::RightIdentity {
                object,
                morphism,
                got,
            } => write!(out, "id_{object}∘{morphism} = {got}, expected {morphism}"),
            Violation::Associativity {
                f,
                g,
                h,
                left,
                right,
            } => write!(
                out,
                "({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right} (diagrammatic {f};{g};{h})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct MorphismInfo {
    name: String,
    dom: ObjId,
    cod: ObjId,
}

/// A validated (sealed) finite category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismInfo>,
    identity: Vec<MorId>,
    /// `table[f * m + g]` = first `f` then `g`.
    table: Vec<Option<MorId>>,
    homs: Vec<Vec<MorId>>,
    obj_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

/// Checks a raw table against the category axioms.
pub fn validate_category(raw: &RawCategory) -> std::result::Result<FinCategory, Vec<Violation>> {
    let mut violations = Vec::new();

    let mut obj_index = HashMap::new();
    for (k, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.clone(), ObjId(k)).is_some() {
            violations.push(Violation::DuplicateId { id: o.clone() });
        }
    }
    let mut mor_index = HashMap::new();
    let mut morphisms = Vec::new();
    for (k, m) in raw.morphisms.iter().enumerate() {
        if mor_index.insert(m.name.clone(), MorId(k)).is_some() || obj_index.contains_key(&m.name)
        {
            violations.push(Violation::DuplicateId { id: m.name.clone() });
        }
        let lookup = |id: &str| {
            obj_index.get(id).copied().ok_or_else(|| Violation::UndefinedId {
                context: format!("morphism {}", m.name),
                id: id.to_string(),
            })
        };
        match (lookup(&m.dom), lookup(&m.cod)) {
            (Ok(dom), Ok(cod)) => morphisms.push(MorphismInfo {
                name: m.name.clone(),
                dom,
                cod,
            }),
            (d, c) => {
                violations.extend(d.err());
                violations.extend(c.err());
                morphisms.push(MorphismInfo {
                    name: m.name.clone(),
                    dom: ObjId(usize::MAX),
                    cod: ObjId(usize::MAX),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let n = raw.objects.len();
    let m = morphisms.len();
    let mor = |ctx: &str, id: &str, out: &mut Vec<Violation>| -> Option<MorId> {
        let r = mor_index.get(id).copied();
        if r.is_none() {
            out.push(Violation::UndefinedId {
                context: ctx.to_string(),
                id: id.to_string(),
            });
        }
        r
    };

    let mut identity = vec![None; n];
    for (o, i) in &raw.identities {
        let ctx = format!("identity of {o}");
        let Some(&obj) = obj_index.get(o) else {
            violations.push(Violation::UndefinedId {
                context: ctx,
                id: o.clone(),
            });
            continue;
        };
        let Some(idm) = mor(&ctx, i, &mut violations) else {
            continue;
        };
        let info = &morphisms[idm.0];
        if info.dom != obj || info.cod != obj {
            violations.push(Violation::IdentityTyping {
                object: o.clone(),
                morphism: i.clone(),
            });
        }
        identity[obj.0] = Some(idm);
    }

    let mut table: Vec<Option<MorId>> = vec![None; m * m];
    for (f, g, h) in &raw.compose {
        let ctx = format!("composite {g}∘{f}");
        let (Some(fi), Some(gi), Some(hi)) = (
            mor(&ctx, f, &mut violations),
            mor(&ctx, g, &mut violations),
            mor(&ctx, h, &mut violations),
        ) else {
            continue;
        };
        if morphisms[fi.0].cod != morphisms[gi.0].dom {
            violations.push(Violation::Partiality {
                first: f.clone(),
                second: g.clone(),
                detail: "composite defined on a non-composable pair".into(),
            });
            continue;
        }
        let slot = &mut table[fi.0 * m + gi.0];
        if slot.is_some() {
            violations.push(Violation::DuplicateComposite {
                first: f.clone(),
                second: g.clone(),
            });
            continue;
        }
        *slot = Some(hi);
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    for (k, id) in identity.iter().enumerate() {
        if id.is_none() {
            violations.push(Violation::MissingIdentity {
                object: raw.objects[k].clone(),
            });
        }
    }
    for fi in 0..m {
        for gi in 0..m {
            let composable = morphisms[fi].cod == morphisms[gi].dom;
            let defined = table[fi * m + gi];
            if composable && defined.is_none() {
                violations.push(Violation::Partiality {
                    first: morphisms[fi].name.clone(),
                    second: morphisms[gi].name.clone(),
                    detail: "composite missing for a composable pair".into(),
                });
            }
            if let Some(h) = defined {
                if morphisms[h.0].dom != morphisms[fi].dom || morphisms[h.0].cod != morphisms[gi].cod
                {
                    violations.push(Violation::CompositeTyping {
                        first: morphisms[fi].name.clone(),
                        second: morphisms[gi].name.clone(),
                        result: morphisms[h.0].name.clone(),
                    });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let identity: Vec<MorId> = identity.into_iter().map(|i| i.expect("checked")).collect();
    let name = |k: MorId| morphisms[k.0].name.clone();
    for f in 0..m {
        let (a, b) = (morphisms[f].dom, morphisms[f].cod);
        let left = table[identity[a.0].0 * m + f].expect("total");
        if left != MorId(f) {
            violations.push(Violation::LeftIdentity {
                object: raw.objects[a.0].clone(),
                morphism: name(MorId(f)),
                got: name(left),
            });
        }
        let right = table[f * m + identity[b.0].0].expect("total");
        if right != MorId(f) {
            violations.push(Violation::RightIdentity {
                object: raw.objects[b.0].clone(),
                morphism: name(MorId(f)),
                got: name(right),
            });
        }
    }
    for f in 0..m {
        for g in 0..m {
            let Some(fg) = table[f * m + g] else { continue };
            for h in 0..m {
                let Some(gh) = table[g * m + h] else { continue };
                let left = table[fg.0 * m + h].expect("total");
                let right = table[f * m + gh.0].expect("total");
                if left != right {
                    violations.push(Violation::Associativity {
                        f: name(MorId(f)),
                        g: name(MorId(g)),
                        h: name(MorId(h)),
                        left: name(left),
                        right: name(right),
                    });
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    let mut homs = vec![Vec::new(); n * n];
    for (k, info) in morphisms.iter().enumerate() {
        homs[info.dom.0 * n + info.cod.0].push(MorId(k));
    }
    Ok(FinCategory {
        name: raw.name.clone(),
        objects: raw.objects.clone(),
        morphisms,
        identity,
        table,
        homs,
        obj_index,
        mor_index,
    })
}

impl FinCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn morphism_name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn require_object(&self, name: &str) -> Result<ObjId> {
        self.object_id(name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn require_morphism(&self, name: &str) -> Result<MorId> {
        self.morphism_id(name)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.dom(f).0] == f
    }

    /// First `f`, then `g`; `None` unless `cod(f) = dom(g)`.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.table[f.0 * self.morphisms.len() + g.0]
    }

    /// `g∘f`.
    pub fn after(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose(f, g)
    }

    /// Morphisms `a → b` in ascending id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a.0 * self.objects.len() + b.0]
    }

    pub fn hom_by_name(&self, a: &str, b: &str) -> Result<Vec<MorId>> {
        Ok(self.hom(self.require_object(a)?, self.require_object(b)?).to_vec())
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.hom(self.cod(f), self.dom(f)).iter().any(|&g| {
            self.compose(f, g) == Some(self.identity(self.dom(f)))
                && self.compose(g, f) == Some(self.identity(self.cod(f)))
        })
    }

    /// `"g∘f (f;g)"`.
    pub fn describe_composite(&self, f: MorId, g: MorId) -> String {
        let (f, g) = (self.morphism_name(f), self.morphism_name(g));
        format!("{g}∘{f} ({f};{g})")
    }

    /// Converts back to raw table data (full table, including identity
    /// composites).
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory::new(self.name.clone());
        raw.objects = self.objects.clone();
        for info in &self.morphisms {
            raw.morphisms.push(RawMorphism {
                name: info.name.clone(),
                dom: self.objects[info.dom.0].clone(),
                cod: self.objects[info.cod.0].clone(),
            });
        }
        for a in self.objects() {
            raw.identities.push((
                self.object_name(a).to_string(),
                self.morphism_name(self.identity(a)).to_string(),
            ));
        }
        for f in self.morphisms() {
            for g in self.morphisms() {
                if let Some(h) = self.compose(f, g) {
                    raw.compose.push((
                        self.morphism_name(f).to_string(),
                        self.morphism_name(g).to_string(),
                        self.morphism_name(h).to_string(),
                    ));
                }
            }
        }
        raw
    }

    /// The opposite category: same ids, endpoints swapped, composition
    /// reversed.
    pub fn opposite(&self) -> FinCategory {
        let m = self.morphisms.len();
        let mut table = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                table[f * m + g] = self.table[g * m + f];
            }
        }
        let n = self.objects.len();
        let morphisms: Vec<MorphismInfo> = self
            .morphisms
            .iter()
            .map(|info| MorphismInfo {
                name: info.name.clone(),
                dom: info.cod,
                cod: info.dom,
            })
            .collect();
        let mut homs = vec![Vec::new(); n * n];
        for (k, info) in morphisms.iter().enumerate() {
            homs[info.dom.0 * n + info.cod.0].push(MorId(k));
        }
        FinCategory {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            table,
            homs,
            obj_index: self.obj_index.clone(),
            mor_index: self.mor_index.clone(),
        }
    }

    /// Same underlying table, ignoring the category's name.
    pub fn same_structure(&self, other: &FinCategory) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.table == other.table
    }
}

/// `hom(C, A, B)` by object name.
pub fn hom(c: &FinCategory, a: &str, b: &str) -> Result<Vec<MorId>> {
    c.hom_by_name(a, b)
}

pub fn opposite(c: &FinCategory) -> FinCategory {
    c.opposite()
}

/// A functor between finite categories, checked on construction.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> std::result::Result<FinFunctor, Vec<String>> {
        let mut problems = Vec::new();
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return Err(vec!["object or morphism map is not total".into()]);
        }
        if obj_map.iter().any(|o| o.0 >= target.object_count())
            || mor_map.iter().any(|f| f.0 >= target.morphism_count())
        {
            return Err(vec!["map refers outside the target category".into()]);
        }
        for f in source.morphisms() {
            let img = mor_map[f.0];
            if target.dom(img) != obj_map[source.dom(f).0]
                || target.cod(img) != obj_map[source.cod(f).0]
            {
                problems.push(format!(
                    "{} does not preserve endpoints",
                    source.morphism_name(f)
                ));
            }
        }
        for a in source.objects() {
            if mor_map[source.identity(a).0] != target.identity(obj_map[a.0]) {
                problems.push(format!(
                    "identity of {} is not preserved",
                    source.object_name(a)
                ));
            }
        }
        if problems.is_empty() {
            for f in source.morphisms() {
                for g in source.morphisms() {
                    if let Some(h) = source.compose(f, g) {
                        if target.compose(mor_map[f.0], mor_map[g.0]) != Some(mor_map[h.0]) {
                            problems.push(format!(
                                "composite {} is not preserved",
                                source.describe_composite(f, g)
                            ));
                        }
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(FinFunctor {
                source,
                target,
                obj_map,
                mor_map,
            })
        } else {
            Err(problems)
        }
    }

    pub fn identity(c: Arc<FinCategory>) -> FinFunctor {
        FinFunctor {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
            source: c.clone(),
            target: c,
        }
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn map_obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a.0]
    }

    pub fn map_mor(&self, f: MorId) -> MorId {
        self.mor_map[f.0]
    }

    /// A parallel pair identified by the functor, if any.
    pub fn faithfulness_witness(&self) -> Option<(MorId, MorId)> {
        let c = &self.source;
        for a in c.objects() {
            for b in c.objects() {
                let hom = c.hom(a, b);
                for (k, &f) in hom.iter().enumerate() {
                    for &g in &hom[k + 1..] {
                        if self.mor_map[f.0] == self.mor_map[g.0] {
                            return Some((f, g));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_faithful(&self) -> bool {
        self.faithfulness_witness().is_none()
    }
}

pub fn is_faithful(f: &FinFunctor) -> bool {
    f.is_faithful()
}

/// Searches for an isomorphism of categories by backtracking over object
/// bijections and per-hom-set morphism bijections.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<(Vec<ObjId>, Vec<MorId>)> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let n = c.object_count();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let obj_map: Vec<ObjId> = perm.iter().map(|&k| ObjId(k)).collect();
        let hom_sizes_match = c.objects().all(|a| {
            c.objects()
                .all(|b| c.hom(a, b).len() == d.hom(obj_map[a.0], obj_map[b.0]).len())
        });
        if hom_sizes_match {
            let mut mor_map = vec![None; c.morphism_count()];
            for a in c.objects() {
                mor_map[c.identity(a).0] = Some(d.identity(obj_map[a.0]));
            }
            let order: Vec<MorId> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
            if assign_morphisms(c, d, &obj_map, &order, 0, &mut mor_map) {
                return Some((obj_map, mor_map.into_iter().map(|m| m.expect("full")).collect()));
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn assign_morphisms(
    c: &FinCategory,
    d: &FinCategory,
    obj_map: &[ObjId],
    order: &[MorId],
    k: usize,
    mor_map: &mut Vec<Option<MorId>>,
) -> bool {
    if k == order.len() {
        return c.morphisms().all(|f| {
            c.morphisms().all(|g| match c.compose(f, g) {
                Some(h) => {
                    d.compose(mor_map[f.0].expect("full"), mor_map[g.0].expect("full"))
                        == mor_map[h.0]
                }
                None => true,
            })
        });
    }
    let f = order[k];
    let candidates = d.hom(obj_map[c.dom(f).0], obj_map[c.cod(f).0]);
    for &cand in candidates {
        if mor_map.contains(&Some(cand)) {
            continue;
        }
        mor_map[f.0] = Some(cand);
        // prune on composites whose three parts are all assigned
        let consistent = c.morphisms().all(|g| {
            [(f, g), (g, f)].iter().all(|&(x, y)| match c.compose(x, y) {
                Some(h) => match (mor_map[x.0], mor_map[y.0], mor_map[h.0]) {
                    (Some(mx), Some(my), Some(mh)) => d.compose(mx, my) == Some(mh),
                    _ => true,
                },
                None => true,
            })
        });
        if consistent && assign_morphisms(c, d, obj_map, order, k + 1, mor_map) {
            return true;
        }
        mor_map[f.0] = None;
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_and_arrow_validate() {
        let t = fixtures::terminal();
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
        let arr = fixtures::arrow();
        assert_eq!((arr.object_count(), arr.morphism_count()), (2, 3));
    }

    #[test]
    fn hom_sets() {
        let t = fixtures::terminal();
        assert_eq!(hom(&t, "*", "*").unwrap(), vec![MorId(0)]);
        let arr = fixtures::arrow();
        let u = arr.morphism_id("u").unwrap();
        assert_eq!(hom(&arr, "a", "b").unwrap(), vec![u]);
        let d2 = fixtures::discrete(2);
        assert!(hom(&d2, "a", "b").unwrap().is_empty());
        assert!(matches!(hom(&d2, "a", "zz"), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn idempotent_table_is_a_valid_category() {
        // The two-element monoid {e, s} with s∘s = s satisfies every law
        // (exhaustive check over all triples below).
        let raw = RawCategory::new("Idem")
            .object("*")
            .morphism("e", "*", "*")
            .morphism("s", "*", "*")
            .identity("*", "e")
            .compose("e", "e", "e")
            .compose("e", "s", "s")
            .compose("s", "e", "s")
            .compose("s", "s", "s");
        assert!(validate_category(&raw).is_ok());
    }

    #[test]
    fn broken_unit_reported() {
        let raw = RawCategory::new("Bad")
            .object("*")
            .morphism("e", "*", "*")
            .morphism("s", "*", "*")
            .identity("*", "e")
            .compose("e", "e", "e")
            .compose("e", "s", "e")
            .compose("s", "e", "s")
            .compose("s", "s", "e");
        let errs = validate_category(&raw).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::LeftIdentity { morphism, .. } if morphism == "s")));
    }

    #[test]
    fn non_associative_table_reported() {
        // (a;a);b = b;b = a but a;(a;b) = a;a = b
        let raw = RawCategory::new("NonAssoc")
            .object("*")
            .morphism("e", "*", "*")
            .morphism("a", "*", "*")
            .morphism("b", "*", "*")
            .identity("*", "e")
            .compose("a", "a", "b")
            .compose("a", "b", "a")
            .compose("b", "a", "b")
            .compose("b", "b", "a")
            .with_identity_composites();
        let errs = validate_category(&raw).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn dangling_and_partial_tables() {
        let raw = RawCategory::new("Dangling")
            .object("a")
            .morphism("f", "a", "nowhere");
        let errs = validate_category(&raw).unwrap_err();
        assert!(matches!(&errs[0], Violation::UndefinedId { id, .. } if id == "nowhere"));

        let raw = RawCategory::new("Partial")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("u", "a", "b")
            .compose("id_a", "id_a", "id_a")
            .compose("id_b", "id_b", "id_b")
            .compose("u", "id_b", "u");
        let errs = validate_category(&raw).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::Partiality { first, .. } if first == "id_a")));

        let raw = RawCategory::new("Overdefined")
            .object_with_identity("a")
            .object_with_identity("b")
            .morphism("u", "a", "b")
            .compose("u", "u", "u")
            .with_identity_composites();
        let errs = validate_category(&raw).unwrap_err();
        assert!(matches!(&errs[0], Violation::Partiality { .. }));
    }

    #[test]
    fn faithfulness_examples() {
        let arr = Arc::new(fixtures::arrow());
        assert!(FinFunctor::identity(arr.clone()).is_faithful());

        let pp = Arc::new(fixtures::parallel_pair());
        let u = arr.morphism_id("u").unwrap();
        let f = FinFunctor::new(
            pp.clone(),
            arr.clone(),
            vec![arr.object_id("a").unwrap(), arr.object_id("b").unwrap()],
            pp.morphisms()
                .map(|m| {
                    if pp.is_identity(m) {
                        arr.identity(ObjId(pp.dom(m).0))
                    } else {
                        u
                    }
                })
                .collect(),
        )
        .unwrap();
        assert!(!f.is_faithful());
        assert!(f.faithfulness_witness().is_some());

        // collapsing two discrete identities is still faithful
        let d2 = Arc::new(fixtures::discrete(2));
        let t = Arc::new(fixtures::terminal());
        let g = FinFunctor::new(d2, t, vec![ObjId(0), ObjId(0)], vec![MorId(0), MorId(0)]).unwrap();
        assert!(g.is_faithful());
    }

    #[test]
    fn functor_violations_reported() {
        let arr = Arc::new(fixtures::arrow());
        let swapped = FinFunctor::new(
            arr.clone(),
            arr.clone(),
            vec![ObjId(1), ObjId(0)],
            arr.morphisms().collect(),
        );
        assert!(swapped.is_err());
    }

    #[test]
    fn opposite_examples() {
        let t = fixtures::terminal();
        assert!(t.opposite().same_structure(&t));
        let arr = fixtures::arrow();
        let op = arr.opposite();
        let u = op.morphism_id("u").unwrap();
        assert_eq!(op.object_name(op.dom(u)), "b");
        assert_eq!(op.object_name(op.cod(u)), "a");
        assert!(op.opposite().same_structure(&arr));
    }

    #[test]
    fn isomorphism_search() {
        let arr = fixtures::arrow();
        assert!(find_isomorphism(&arr, &arr.opposite()).is_some());
        assert!(find_isomorphism(&arr, &fixtures::discrete(2)).is_none());
        let z2 = fixtures::cyclic(2);
        let idem = validate_category(
            &RawCategory::new("Idem")
                .object("*")
                .morphism("e", "*", "*")
                .morphism("s", "*", "*")
                .identity("*", "e")
                .compose("s", "s", "s")
                .with_identity_composites(),
        )
        .unwrap();
        assert!(find_isomorphism(&z2, &idem).is_none());
    }
}
