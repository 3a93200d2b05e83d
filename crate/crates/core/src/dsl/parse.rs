use std::collections::{BTreeMap, BTreeSet};

use super::*;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Colon,
    Semi,
    Eq,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '*' | '.' | '-' | '+')
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<(Tok, Pos)>, DslError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos {
            line: lineno,
            col: k + 1,
        };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let arrow = c == '-' && chars.get(k + 1) == Some(&'>');
        if arrow {
            out.push((Tok::Arrow, pos));
            k += 2;
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
            continue;
        }
        if !is_word_char(c) {
            return Err(DslError::Syntax {
                pos,
                message: format!("unexpected character `{c}`"),
            });
        }
        let start = k;
        while k < chars.len()
            && is_word_char(chars[k])
            && !(chars[k] == '-' && chars.get(k + 1) == Some(&'>'))
        {
            k += 1;
        }
        out.push((Tok::Word(chars[start..k].iter().collect()), pos));
    }
    Ok(out)
}

/// One lexed line, consumed left to right.
struct Line {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Line {
    fn next_pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn error(&self, message: String) -> DslError {
        DslError::Syntax {
            pos: self.next_pos(),
            message,
        }
    }

    fn found(&self) -> String {
        match self.toks.get(self.at) {
            Some((t, _)) => format!("found {t}"),
            None => "found end of line".to_string(),
        }
    }

    fn word(&mut self, what: &str) -> Result<Ident, DslError> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), pos)) => {
                self.at += 1;
                Ok(Ident::new(w.clone(), *pos))
            }
            _ => Err(self.error(format!("expected {what}, {}", self.found()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), _)) if w == kw => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`, {}", self.found()))),
        }
    }

    fn punct(&mut self, t: Tok) -> Result<(), DslError> {
        if self.toks.get(self.at).map(|x| &x.0) == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, {}", self.found())))
        }
    }

    fn rest(&mut self) -> Result<Vec<Ident>, DslError> {
        let mut out = Vec::new();
        while self.at < self.toks.len() {
            out.push(self.word("an identifier")?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), DslError> {
        match self.toks.get(self.at) {
            None => Ok(()),
            Some((t, pos)) => Err(DslError::Syntax {
                pos: *pos,
                message: format!("unexpected {t} at end of line"),
            }),
        }
    }

    fn peek_word(&self) -> Option<&str> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), _)) => Some(w),
            _ => None,
        }
    }
}

struct Parser {
    lines: Vec<Line>,
    at: usize,
    eof: Pos,
}

impl Parser {
    fn next_line(&mut self) -> Option<Line> {
        let line = self.lines.get_mut(self.at)?;
        self.at += 1;
        Some(Line {
            toks: std::mem::take(&mut line.toks),
            at: 0,
            end: line.end,
        })
    }

    /// Lines up to the closing `end`; `Ok(None)` on `end`.
    fn block_line(&mut self, opened: &Ident) -> Result<Option<(Ident, Line)>, DslError> {
        let Some(mut line) = self.next_line() else {
            return Err(DslError::Syntax {
                pos: self.eof,
                message: format!("block `{opened}` opened at {} is never closed", opened.pos),
            });
        };
        let kw = line.word("a block entry or `end`")?;
        if kw.name == "end" {
            line.finish()?;
            return Ok(None);
        }
        Ok(Some((kw, line)))
    }

    fn tables(&mut self, opened: &Ident) -> Result<Tables, DslError> {
        let mut t = Tables::default();
        while let Some((kw, mut line)) = self.block_line(opened)? {
            match kw.name.as_str() {
                "objects" => t.objects.extend(line.rest()?),
                "morphism" => {
                    let name = line.word("a morphism name")?;
                    line.punct(Tok::Colon)?;
                    let dom = line.word("a domain object")?;
                    line.punct(Tok::Arrow)?;
                    let cod = line.word("a codomain object")?;
                    t.morphisms.push(MorphismDecl { name, dom, cod });
                }
                "identity" => {
                    let object = line.word("an object")?;
                    line.punct(Tok::Eq)?;
                    let morphism = line.word("a morphism")?;
                    t.identities.push(IdentityDecl { object, morphism });
                }
                "compose" => {
                    let first = line.word("a morphism")?;
                    line.punct(Tok::Semi)?;
                    let second = line.word("a morphism")?;
                    line.punct(Tok::Eq)?;
                    let result = line.word("a morphism")?;
                    t.compose.push(ComposeDecl {
                        first,
                        second,
                        result,
                    });
                }
                other => {
                    return Err(DslError::Syntax {
                        pos: kw.pos,
                        message: format!(
                            "unknown entry `{other}`; expected objects, morphism, identity, compose or end"
                        ),
                    })
                }
            }
            line.finish()?;
        }
        Ok(t)
    }

    fn family(&mut self, name: Ident, over: Ident) -> Result<FamilyDecl, DslError> {
        let mut f = FamilyDecl {
            name,
            over,
            index: Vec::new(),
            assign: Vec::new(),
        };
        let opened = f.name.clone();
        while let Some((kw, mut line)) = self.block_line(&opened)? {
            match kw.name.as_str() {
                "index" => f.index.extend(line.rest()?),
                "assign" => {
                    let i = line.word("an index element")?;
                    line.punct(Tok::Eq)?;
                    let x = line.word("an object")?;
                    f.assign.push((i, x));
                }
                other => {
                    return Err(DslError::Syntax {
                        pos: kw.pos,
                        message: format!("unknown entry `{other}`; expected index, assign or end"),
                    })
                }
            }
            line.finish()?;
        }
        Ok(f)
    }

    fn smallness(&mut self, name: Ident, on: Ident) -> Result<SmallnessDecl, DslError> {
        let mut rule = None;
        while let Some((kw, mut line)) = self.block_line(&name)? {
            let r = match kw.name.as_str() {
                "members" => SmallnessRule::Members(line.rest()?),
                "predicate" => SmallnessRule::Predicate(line.word("a predicate name")?),
                other => {
                    return Err(DslError::Syntax {
                        pos: kw.pos,
                        message: format!("unknown entry `{other}`; expected members, predicate or end"),
                    })
                }
            };
            line.finish()?;
            match (&mut rule, r) {
                (None, r) => rule = Some(r),
                (Some(SmallnessRule::Members(m)), SmallnessRule::Members(more)) => m.extend(more),
                _ => {
                    return Err(DslError::Syntax {
                        pos: kw.pos,
                        message: "a smallness block takes either members or one predicate".into(),
                    })
                }
            }
        }
        let rule = rule.unwrap_or(SmallnessRule::Members(Vec::new()));
        Ok(SmallnessDecl { name, on, rule })
    }

    fn decl(&mut self, mut line: Line) -> Result<Decl, DslError> {
        let kw = line.word("a declaration")?;
        let decl = match kw.name.as_str() {
            "category" => {
                let name = line.word("a category name")?;
                line.finish()?;
                let tables = self.tables(&name)?;
                Decl::Category(CategoryDecl { name, tables })
            }
            "internal" => {
                let name = line.word("an internal category name")?;
                if line.peek_word() == Some("from") {
                    line.keyword("from")?;
                    let c = line.word("a category name")?;
                    line.finish()?;
                    Decl::Internal(InternalDecl {
                        name,
                        source: InternalSource::Category(c),
                    })
                } else {
                    line.finish()?;
                    let tables = self.tables(&name)?;
                    Decl::Internal(InternalDecl {
                        name,
                        source: InternalSource::Tables(tables),
                    })
                }
            }
            "family" => {
                let name = line.word("a family name")?;
                line.keyword("over")?;
                let over = line.word("an internal category name")?;
                line.finish()?;
                Decl::Family(self.family(name, over)?)
            }
            "smallness" => {
                let name = line.word("a smallness name")?;
                line.keyword("on")?;
                let on = line.word("a category name")?;
                line.finish()?;
                Decl::Smallness(self.smallness(name, on)?)
            }
            "check" => {
                let command = line.word("a check command")?;
                let args = line.rest()?;
                Decl::Check(CheckDecl { command, args })
            }
            other => {
                return Err(DslError::Syntax {
                    pos: kw.pos,
                    message: format!(
                        "unknown declaration `{other}`; expected category, internal, family, smallness or check"
                    ),
                })
            }
        };
        Ok(decl)
    }
}

/// Parses and resolves a document. Every cross-reference is checked; the
/// category laws are not (see [`super::build`]).
pub fn parse(text: &str) -> Result<SpecDocument, DslError> {
    let mut lines = Vec::new();
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let toks = lex_line(raw, k + 1)?;
        last = k + 1;
        if !toks.is_empty() {
            lines.push(Line {
                toks,
                at: 0,
                end: Pos {
                    line: k + 1,
                    col: raw.chars().count() + 1,
                },
            });
        }
    }
    let mut parser = Parser {
        lines,
        at: 0,
        eof: Pos {
            line: last + 1,
            col: 1,
        },
    };
    let mut doc = SpecDocument::default();
    while let Some(line) = parser.next_line() {
        doc.decls.push(parser.decl(line)?);
    }
    resolve(&doc)?;
    Ok(doc)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Category,
    Internal,
    Family,
    Smallness,
}

fn unresolved(id: &Ident, kind: &str) -> DslError {
    DslError::Unresolved {
        pos: id.pos,
        kind: kind.to_string(),
        name: id.name.clone(),
    }
}

fn expect_kind(
    names: &BTreeMap<&str, Kind>,
    id: &Ident,
    kind: Kind,
    what: &str,
) -> Result<(), DslError> {
    match names.get(id.name.as_str()) {
        None => Err(unresolved(id, what)),
        Some(k) if *k == kind => Ok(()),
        Some(_) => Err(DslError::WrongKind {
            pos: id.pos,
            name: id.name.clone(),
            expected: what.to_string(),
        }),
    }
}

fn resolve_tables(t: &Tables) -> Result<(), DslError> {
    let objects: BTreeSet<&str> = t.objects.iter().map(|o| o.name.as_str()).collect();
    let morphisms: BTreeSet<&str> = t.morphisms.iter().map(|m| m.name.name.as_str()).collect();
    let object = |id: &Ident| {
        if objects.contains(id.name.as_str()) {
            Ok(())
        } else {
            Err(unresolved(id, "object"))
        }
    };
    let morphism = |id: &Ident| {
        if morphisms.contains(id.name.as_str()) {
            Ok(())
        } else {
            Err(unresolved(id, "morphism"))
        }
    };
    for m in &t.morphisms {
        object(&m.dom)?;
        object(&m.cod)?;
    }
    for i in &t.identities {
        object(&i.object)?;
        morphism(&i.morphism)?;
    }
    for c in &t.compose {
        morphism(&c.first)?;
        morphism(&c.second)?;
        morphism(&c.result)?;
    }
    Ok(())
}

fn resolve(doc: &SpecDocument) -> Result<(), DslError> {
    let mut names: BTreeMap<&str, Kind> = BTreeMap::new();
    for d in &doc.decls {
        let kind = match d {
            Decl::Category(_) => Kind::Category,
            Decl::Internal(_) => Kind::Internal,
            Decl::Family(_) => Kind::Family,
            Decl::Smallness(_) => Kind::Smallness,
            Decl::Check(_) => continue,
        };
        let name = d.name().expect("named");
        if name.name == FINSET || names.insert(&name.name, kind).is_some() {
            return Err(DslError::Duplicate {
                pos: name.pos,
                name: name.name.clone(),
            });
        }
    }
    let categories: BTreeMap<&str, &CategoryDecl> =
        doc.categories().map(|c| (c.name.name.as_str(), c)).collect();
    let internal_objects = |name: &str| -> Vec<&str> {
        let d = doc.internals().find(|d| d.name.name == name).expect("resolved");
        let t = match &d.source {
            InternalSource::Tables(t) => t,
            InternalSource::Category(c) => &categories[c.name.as_str()].tables,
        };
        t.objects.iter().map(|o| o.name.as_str()).collect()
    };

    for d in &doc.decls {
        match d {
            Decl::Category(c) => resolve_tables(&c.tables)?,
            Decl::Internal(i) => match &i.source {
                InternalSource::Category(c) => expect_kind(&names, c, Kind::Category, "category")?,
                InternalSource::Tables(t) => resolve_tables(t)?,
            },
            Decl::Family(f) => {
                expect_kind(&names, &f.over, Kind::Internal, "internal category")?;
                let objects = internal_objects(&f.over.name);
                let index: BTreeSet<&str> = f.index.iter().map(|i| i.name.as_str()).collect();
                for (i, x) in &f.assign {
                    if !index.contains(i.name.as_str()) {
                        return Err(unresolved(i, "index element"));
                    }
                    if !objects.contains(&x.name.as_str()) {
                        return Err(unresolved(x, "object"));
                    }
                }
            }
            Decl::Smallness(s) => {
                let on_sets = s.on.name == FINSET;
                if !on_sets {
                    expect_kind(&names, &s.on, Kind::Category, "category")?;
                }
                match &s.rule {
                    SmallnessRule::Members(ms) => {
                        if on_sets {
                            return Err(DslError::Syntax {
                                pos: s.name.pos,
                                message: "smallness on FinSet needs a predicate".into(),
                            });
                        }
                        let t = &categories[s.on.name.as_str()].tables;
                        for m in ms {
                            if !t.morphisms.iter().any(|d| d.name.name == m.name) {
                                return Err(unresolved(m, "morphism"));
                            }
                        }
                    }
                    SmallnessRule::Predicate(p) => {
                        let known = if on_sets { &PREDICATES[..] } else { &PREDICATES[..1] };
                        if !known.contains(&p.name.as_str()) {
                            return Err(unresolved(p, "predicate"));
                        }
                    }
                }
            }
            Decl::Check(c) => {
                if !COMMANDS.contains(&c.command.name.as_str()) {
                    return Err(DslError::UnknownDirective(c.command.name.clone()));
                }
                for a in &c.args {
                    if !names.contains_key(a.name.as_str()) {
                        return Err(unresolved(a, "declaration"));
                    }
                }
            }
        }
    }
    Ok(())
}
