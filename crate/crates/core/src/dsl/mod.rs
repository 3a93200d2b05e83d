//! A line-oriented text format for categories, internal categories,
//! families and smallness predicates, with check directives.
//!
//! ```text
//! # the arrow category
//! category Arr
//!   objects a b
//!   morphism id_a : a -> a
//!   morphism id_b : b -> b
//!   morphism u : a -> b
//!   identity a = id_a
//!   identity b = id_b
//!   compose id_a ; id_a = id_a
//!   compose id_a ; u = u
//!   compose u ; id_b = u
//!   compose id_b ; id_b = id_b
//! end
//!
//! internal ArrI from Arr
//!
//! family X over ArrI
//!   index 0 1
//!   assign 0 = a
//!   assign 1 = b
//! end
//!
//! smallness S on Arr
//!   members id_a id_b
//! end
//!
//! check fib-isbell ArrI X X
//! ```
//!
//! `compose f ; g = h` reads "first `f`, then `g`": `h = g∘f`. Compose
//! tables are never completed automatically. An `internal` block takes the
//! same lines as a `category` block and is validated as an internal
//! category in finite sets.

use std::fmt::{self, Write as _};

mod parse;
mod run;

pub use parse::parse;
pub use run::{build, run_check, Model, Outcome, COMMANDS};

use thiserror::Error;

/// A 1-based source position. Positions never take part in equality, so
/// two documents compare equal exactly when their syntax trees do.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl std::hash::Hash for Pos {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>, pos: Pos) -> Self {
        Ident {
            name: name.into(),
            pos,
        }
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: Ident,
    pub dom: Ident,
    pub cod: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityDecl {
    pub object: Ident,
    pub morphism: Ident,
}

/// `first ; second = result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeDecl {
    pub first: Ident,
    pub second: Ident,
    pub result: Ident,
}

/// Objects, morphisms and the explicit composition table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tables {
    pub objects: Vec<Ident>,
    pub morphisms: Vec<MorphismDecl>,
    pub identities: Vec<IdentityDecl>,
    pub compose: Vec<ComposeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Ident,
    pub tables: Tables,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InternalSource {
    /// The internal category of a declared finite category.
    Category(Ident),
    Tables(Tables),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalDecl {
    pub name: Ident,
    pub source: InternalSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: Ident,
    pub over: Ident,
    pub index: Vec<Ident>,
    /// `(index element, object of C0)`.
    pub assign: Vec<(Ident, Ident)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallnessRule {
    Members(Vec<Ident>),
    /// A named predicate: `all`, or on `FinSet` also `injective`,
    /// `surjective`, `bijective`.
    Predicate(Ident),
}

/// The built-in base of finite sets, usable as a smallness target.
pub const FINSET: &str = "FinSet";

pub const PREDICATES: [&str; 4] = ["all", "injective", "surjective", "bijective"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallnessDecl {
    pub name: Ident,
    pub on: Ident,
    pub rule: SmallnessRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDecl {
    pub command: Ident,
    pub args: Vec<Ident>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Category(CategoryDecl),
    Internal(InternalDecl),
    Family(FamilyDecl),
    Smallness(SmallnessDecl),
    Check(CheckDecl),
}

impl Decl {
    /// The declared name; `None` for check directives.
    pub fn name(&self) -> Option<&Ident> {
        match self {
            Decl::Category(d) => Some(&d.name),
            Decl::Internal(d) => Some(&d.name),
            Decl::Family(d) => Some(&d.name),
            Decl::Smallness(d) => Some(&d.name),
            Decl::Check(_) => None,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            Decl::Check(d) => d.command.pos,
            d => d.name().expect("named").pos,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub decls: Vec<Decl>,
}

impl SpecDocument {
    pub fn categories(&self) -> impl Iterator<Item = &CategoryDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Category(c) => Some(c),
            _ => None,
        })
    }

    pub fn internals(&self) -> impl Iterator<Item = &InternalDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Internal(c) => Some(c),
            _ => None,
        })
    }

    pub fn families(&self) -> impl Iterator<Item = &FamilyDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Family(c) => Some(c),
            _ => None,
        })
    }

    pub fn smallness(&self) -> impl Iterator<Item = &SmallnessDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Smallness(c) => Some(c),
            _ => None,
        })
    }

    pub fn checks(&self) -> impl Iterator<Item = &CheckDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Check(c) => Some(c),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: unresolved {kind} `{name}`")]
    Unresolved { pos: Pos, kind: String, name: String },
    #[error("{pos}: `{name}` is already declared")]
    Duplicate { pos: Pos, name: String },
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("{pos}: `{name}` is not a {expected}")]
    WrongKind { pos: Pos, name: String, expected: String },
}

impl DslError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            DslError::Syntax { pos, .. }
            | DslError::Unresolved { pos, .. }
            | DslError::Duplicate { pos, .. }
            | DslError::WrongKind { pos, .. } => Some(*pos),
            DslError::UnknownDirective(_) => None,
        }
    }
}

/// The full table of a finite category as a declaration.
pub fn category_decl(c: &crate::fincat::FinCategory) -> CategoryDecl {
    let raw = c.to_raw();
    let id = |s: &String| Ident::new(s.clone(), Pos::default());
    CategoryDecl {
        name: id(&raw.name),
        tables: Tables {
            objects: raw.objects.iter().map(id).collect(),
            morphisms: raw
                .morphisms
                .iter()
                .map(|m| MorphismDecl {
                    name: id(&m.name),
                    dom: id(&m.dom),
                    cod: id(&m.cod),
                })
                .collect(),
            identities: raw
                .identities
                .iter()
                .map(|(o, m)| IdentityDecl {
                    object: id(o),
                    morphism: id(m),
                })
                .collect(),
            compose: raw
                .compose
                .iter()
                .map(|(f, g, h)| ComposeDecl {
                    first: id(f),
                    second: id(g),
                    result: id(h),
                })
                .collect(),
        },
    }
}

fn print_tables(out: &mut String, t: &Tables) {
    if !t.objects.is_empty() {
        out.push_str("  objects");
        for o in &t.objects {
            write!(out, " {o}").unwrap();
        }
        out.push('\n');
    }
    for m in &t.morphisms {
        writeln!(out, "  morphism {} : {} -> {}", m.name, m.dom, m.cod).unwrap();
    }
    for i in &t.identities {
        writeln!(out, "  identity {} = {}", i.object, i.morphism).unwrap();
    }
    for c in &t.compose {
        writeln!(out, "  compose {} ; {} = {}", c.first, c.second, c.result).unwrap();
    }
}

fn print_list(out: &mut String, head: &str, items: &[Ident]) {
    out.push_str(head);
    for i in items {
        write!(out, " {i}").unwrap();
    }
    out.push('\n');
}

/// Canonical text of a document: blocks in document order, lines within a
/// block grouped by kind.
pub fn print(doc: &SpecDocument) -> String {
    let mut out = String::new();
    for (k, decl) in doc.decls.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match decl {
            Decl::Category(c) => {
                writeln!(out, "category {}", c.name).unwrap();
                print_tables(&mut out, &c.tables);
                out.push_str("end\n");
            }
            Decl::Internal(d) => match &d.source {
                InternalSource::Category(c) => writeln!(out, "internal {} from {c}", d.name).unwrap(),
                InternalSource::Tables(t) => {
                    writeln!(out, "internal {}", d.name).unwrap();
                    print_tables(&mut out, t);
                    out.push_str("end\n");
                }
            },
            Decl::Family(f) => {
                writeln!(out, "family {} over {}", f.name, f.over).unwrap();
                print_list(&mut out, "  index", &f.index);
                for (i, x) in &f.assign {
                    writeln!(out, "  assign {i} = {x}").unwrap();
                }
                out.push_str("end\n");
            }
            Decl::Smallness(s) => {
                writeln!(out, "smallness {} on {}", s.name, s.on).unwrap();
                match &s.rule {
                    SmallnessRule::Members(m) => print_list(&mut out, "  members", m),
                    SmallnessRule::Predicate(p) => writeln!(out, "  predicate {p}").unwrap(),
                }
                out.push_str("end\n");
            }
            Decl::Check(c) => {
                print_list(&mut out, &format!("check {}", c.command), &c.args);
            }
        }
    }
    out
}
