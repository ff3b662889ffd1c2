//! The `.quiver` text format.
//!
//! ```text
//! # comments run to the end of the line
//! quiver running_example
//! vertices: a b c d e f g h
//! arrow a1: a -> e
//! arrow a2: e -> f
//! rel a4 * a2          # a2 then a4 is zero
//! ```
//!
//! One declaration per line, labels are `[A-Za-z0-9_]+`, `vertices:` may
//! repeat. Labels may be used before they are declared.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::quiver::{build_presentation, BuildError, GentlePresentation, RawQuiver};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declared<T> {
    pub item: T,
    pub at: Location,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub label: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelDecl {
    pub second: String,
    pub first: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverFile {
    pub name: String,
    pub vertices: Vec<Declared<String>>,
    pub arrows: Vec<Declared<ArrowDecl>>,
    pub relations: Vec<Declared<RelDecl>>,
    /// Comment text with its location; not reproduced by [`render_quiver_file`].
    pub comments: Vec<Declared<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("undeclared label `{0}`")]
    UndeclaredLabel(String),
    #[error("duplicate declaration of `{0}`")]
    DuplicateDeclaration(String),
    #[error("{0}")]
    Build(BuildError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    /// Absent for whole-quiver conditions such as connectivity.
    pub at: Option<Location>,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some(at) => write!(f, "{at}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct DslErrors {
    pub errors: Vec<DslError>,
}

impl fmt::Display for DslErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.errors.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Label(&'a str),
    Colon,
    To,
    Star,
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(Tok<'_>, Location)>, DslError> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    let col = |i: usize| Location {
        line: lineno,
        col: line[..i].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b' ' || c == b'\t' || c == b'\r' {
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Label(&line[start..i]), col(start)));
        } else if c == b':' {
            out.push((Tok::Colon, col(i)));
            i += 1;
        } else if c == b'*' {
            out.push((Tok::Star, col(i)));
            i += 1;
        } else if line[i..].starts_with("->") {
            out.push((Tok::To, col(i)));
            i += 2;
        } else {
            let ch = line[i..].chars().next().unwrap();
            return Err(DslError {
                kind: DslErrorKind::Syntax(format!("unexpected character `{ch}`")),
                at: Some(col(i)),
            });
        }
    }
    Ok(out)
}

fn syntax(msg: impl Into<String>, at: Location) -> DslError {
    DslError {
        kind: DslErrorKind::Syntax(msg.into()),
        at: Some(at),
    }
}

/// Matches `toks` against a pattern where `None` is a label slot.
fn shape<'a>(
    toks: &[(Tok<'a>, Location)],
    pattern: &[Option<Tok<'static>>],
    what: &str,
    eol: Location,
) -> Result<Vec<(&'a str, Location)>, DslError> {
    let mut labels = Vec::new();
    for (k, want) in pattern.iter().enumerate() {
        let Some((tok, at)) = toks.get(k) else {
            return Err(syntax(format!("incomplete {what} declaration"), eol));
        };
        match (want, tok) {
            (None, Tok::Label(l)) => labels.push((*l, *at)),
            (Some(w), t) if w == t => {}
            _ => return Err(syntax(format!("malformed {what} declaration"), *at)),
        }
    }
    if let Some((_, at)) = toks.get(pattern.len()) {
        return Err(syntax(
            format!("trailing input after {what} declaration"),
            *at,
        ));
    }
    Ok(labels)
}

/// Parses and resolves a `.quiver` file. Every problem is reported, not
/// just the first.
pub fn parse_quiver_file(text: &str) -> Result<QuiverFile, DslErrors> {
    let mut errors = Vec::new();
    let mut name: Option<Declared<String>> = None;
    let mut file = QuiverFile {
        name: String::new(),
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
        comments: Vec::new(),
    };
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(h) => {
                file.comments.push(Declared {
                    item: raw_line[h + 1..].trim().to_string(),
                    at: Location {
                        line: lineno,
                        col: raw_line[..h].chars().count() + 1,
                    },
                });
                &raw_line[..h]
            }
            None => raw_line,
        };
        let toks = match tokenize(line, lineno) {
            Ok(t) => t,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let eol = Location {
            line: lineno,
            col: line.trim_end().chars().count() + 1,
        };
        let Some((Tok::Label(keyword), kw_at)) = toks.first().cloned() else {
            if let Some((_, at)) = toks.first() {
                errors.push(syntax("expected a declaration keyword", *at));
            }
            continue;
        };
        let rest = &toks[1..];
        let result = match keyword {
            "quiver" => shape(rest, &[None], "quiver", eol).map(|l| {
                if let Some(prev) = &name {
                    errors.push(DslError {
                        kind: DslErrorKind::DuplicateDeclaration(format!(
                            "quiver (first at line {})",
                            prev.at.line
                        )),
                        at: Some(kw_at),
                    });
                } else {
                    name = Some(Declared {
                        item: l[0].0.to_string(),
                        at: l[0].1,
                    });
                }
            }),
            "vertices" => match rest.first() {
                Some((Tok::Colon, _)) => {
                    let mut res = Ok(());
                    for (tok, at) in &rest[1..] {
                        match tok {
                            Tok::Label(l) => file.vertices.push(Declared {
                                item: l.to_string(),
                                at: *at,
                            }),
                            _ => {
                                res = Err(syntax("expected a vertex label", *at));
                                break;
                            }
                        }
                    }
                    res
                }
                Some((_, at)) => Err(syntax("expected `:` after `vertices`", *at)),
                None => Err(syntax("expected `:` after `vertices`", eol)),
            },
            "arrow" => shape(
                rest,
                &[None, Some(Tok::Colon), None, Some(Tok::To), None],
                "arrow",
                eol,
            )
            .map(|l| {
                file.arrows.push(Declared {
                    item: ArrowDecl {
                        label: l[0].0.into(),
                        source: l[1].0.into(),
                        target: l[2].0.into(),
                    },
                    at: l[0].1,
                })
            }),
            "rel" => shape(rest, &[None, Some(Tok::Star), None], "rel", eol).map(|l| {
                file.relations.push(Declared {
                    item: RelDecl {
                        second: l[0].0.into(),
                        first: l[1].0.into(),
                    },
                    at: kw_at,
                })
            }),
            other => Err(syntax(format!("unknown keyword `{other}`"), kw_at)),
        };
        if let Err(e) = result {
            errors.push(e);
        }
    }
    match name {
        Some(n) => file.name = n.item,
        None => errors.push(syntax(
            "missing `quiver NAME` header",
            Location { line: 1, col: 1 },
        )),
    }
    resolve(&file, &mut errors);
    if errors.is_empty() {
        Ok(file)
    } else {
        errors.sort_by_key(|e| e.at);
        Err(DslErrors { errors })
    }
}

/// Second pass: every label declared once, every reference declared.
fn resolve(file: &QuiverFile, errors: &mut Vec<DslError>) {
    let mut labels: HashMap<&str, bool> = HashMap::new();
    let decls = file.vertices.iter().map(|v| (v.item.as_str(), false, v.at));
    for (label, is_arrow, at) in decls.chain(
        file.arrows
            .iter()
            .map(|a| (a.item.label.as_str(), true, a.at)),
    ) {
        if labels.contains_key(label) {
            errors.push(DslError {
                kind: DslErrorKind::DuplicateDeclaration(label.to_string()),
                at: Some(at),
            });
        } else {
            labels.insert(label, is_arrow);
        }
    }
    let is = |label: &str, arrow: bool| labels.get(label) == Some(&arrow);
    let undeclared = |label: &str, at: Location| DslError {
        kind: DslErrorKind::UndeclaredLabel(label.to_string()),
        at: Some(at),
    };
    for a in &file.arrows {
        for end in [&a.item.source, &a.item.target] {
            if !is(end, false) {
                errors.push(undeclared(end, a.at));
            }
        }
    }
    let mut seen_rel: HashMap<(&str, &str), usize> = HashMap::new();
    for r in &file.relations {
        for l in [&r.item.second, &r.item.first] {
            if !is(l, true) {
                errors.push(undeclared(l, r.at));
            }
        }
        if let Some(line) = seen_rel.insert((&r.item.second, &r.item.first), r.at.line) {
            errors.push(DslError {
                kind: DslErrorKind::DuplicateDeclaration(format!(
                    "rel {} * {} (first at line {line})",
                    r.item.second, r.item.first
                )),
                at: Some(r.at),
            });
        }
    }
}

impl QuiverFile {
    pub fn to_raw(&self) -> RawQuiver {
        let mut raw = RawQuiver::new(self.name.clone());
        for v in &self.vertices {
            raw = raw.vertex(&v.item);
        }
        for a in &self.arrows {
            raw = raw.arrow(&a.item.label, &a.item.source, &a.item.target);
        }
        for r in &self.relations {
            raw = raw.relation(&r.item.second, &r.item.first);
        }
        raw
    }

    /// Validates the file as a gentle presentation, locating errors on the
    /// declaration that caused them where possible.
    pub fn to_presentation(&self) -> Result<GentlePresentation, DslErrors> {
        build_presentation(&self.to_raw()).map_err(|e| DslErrors {
            errors: e
                .errors
                .into_iter()
                .map(|b| {
                    let at = match &b {
                        BuildError::NonComposableRelation { second, first, .. } => self
                            .relations
                            .iter()
                            .find(|r| &r.item.second == second && &r.item.first == first)
                            .map(|r| r.at),
                        _ => None,
                    };
                    DslError {
                        kind: DslErrorKind::Build(b),
                        at,
                    }
                })
                .collect(),
        })
    }

    pub fn from_raw(raw: &RawQuiver) -> QuiverFile {
        let at = Location { line: 0, col: 0 };
        QuiverFile {
            name: raw.name.clone(),
            vertices: raw
                .vertices
                .iter()
                .map(|v| Declared {
                    item: v.clone(),
                    at,
                })
                .collect(),
            arrows: raw
                .arrows
                .iter()
                .map(|a| Declared {
                    item: ArrowDecl {
                        label: a.label.clone(),
                        source: a.source.clone(),
                        target: a.target.clone(),
                    },
                    at,
                })
                .collect(),
            relations: raw
                .relations
                .iter()
                .map(|r| Declared {
                    item: RelDecl {
                        second: r.second.clone(),
                        first: r.first.clone(),
                    },
                    at,
                })
                .collect(),
            comments: Vec::new(),
        }
    }
}

/// Parses `text` and validates it as a gentle presentation.
pub fn parse_presentation(text: &str) -> Result<GentlePresentation, DslErrors> {
    parse_quiver_file(text)?.to_presentation()
}

/// Canonical text: header, one `vertices:` line, arrows, relations.
pub fn render_quiver_file(file: &QuiverFile) -> String {
    let mut out = format!("quiver {}\n", file.name);
    let names: Vec<&str> = file.vertices.iter().map(|v| v.item.as_str()).collect();
    out.push_str(&format!("vertices: {}\n", names.join(" ")));
    for a in &file.arrows {
        out.push_str(&format!(
            "arrow {}: {} -> {}\n",
            a.item.label, a.item.source, a.item.target
        ));
    }
    for r in &file.relations {
        out.push_str(&format!("rel {} * {}\n", r.item.second, r.item.first));
    }
    out
}

pub fn render_presentation(p: &GentlePresentation) -> String {
    render_quiver_file(&QuiverFile::from_raw(&p.to_raw()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::phi::compute_phi;

    #[test]
    fn minimal_file() {
        let f = parse_quiver_file("quiver a2\nvertices: v1 v2\narrow a: v1 -> v2\n").unwrap();
        assert_eq!(f.name, "a2");
        assert_eq!(f.vertices.len(), 2);
        assert_eq!(f.to_raw(), fixtures::a2());
    }

    #[test]
    fn running_file() {
        let text = render_presentation(&build_presentation(&fixtures::running_example()).unwrap());
        assert_eq!(text.lines().filter(|l| l.starts_with("rel ")).count(), 4);
        let p = parse_presentation(&text).unwrap();
        assert_eq!(
            compute_phi(&p).unwrap().0.to_string(),
            "[(2,3),(2,4),(3,2)]"
        );
    }

    #[test]
    fn comments_and_forward_references() {
        let text = "# header\n\nquiver x   # name\narrow a: u -> v\nvertices: u\nvertices: v\n";
        let f = parse_quiver_file(text).unwrap();
        assert_eq!(f.comments.len(), 2);
        assert_eq!(f.comments[1].at, Location { line: 3, col: 12 });
        assert_eq!(
            render_quiver_file(&f),
            "quiver x\nvertices: u v\narrow a: u -> v\n"
        );
    }

    #[test]
    fn canonical_round_trip() {
        let text =
            "quiver k\nvertices: v1 v2 v3\narrow a: v1 -> v2\narrow b: v2 -> v3\nrel b * a\n";
        assert_eq!(render_quiver_file(&parse_quiver_file(text).unwrap()), text);
    }

    #[test]
    fn syntax_error_location() {
        let err = parse_quiver_file("quiver x\nvertices: u v\narrow a: u => v\n").unwrap_err();
        assert_eq!(err.errors.len(), 1);
        assert_eq!(err.errors[0].at, Some(Location { line: 3, col: 12 }));
        assert!(matches!(err.errors[0].kind, DslErrorKind::Syntax(_)));
        let err = parse_quiver_file("quiver x\nvertices: u\narrow a: u ->\n").unwrap_err();
        assert_eq!(err.errors[0].at, Some(Location { line: 3, col: 14 }));
    }

    #[test]
    fn missing_header() {
        let err = parse_quiver_file("vertices: u\n").unwrap_err();
        assert!(matches!(&err.errors[0].kind, DslErrorKind::Syntax(m) if m.contains("header")));
    }

    #[test]
    fn undeclared_and_duplicate() {
        let text = "quiver x\nvertices: u v u\narrow a: u -> w\nrel a * zz\nrel a * zz\n";
        let err = parse_quiver_file(text).unwrap_err();
        let kinds: Vec<&DslErrorKind> = err.errors.iter().map(|e| &e.kind).collect();
        assert!(kinds.contains(&&DslErrorKind::DuplicateDeclaration("u".into())));
        assert!(kinds.contains(&&DslErrorKind::UndeclaredLabel("w".into())));
        assert!(kinds.contains(&&DslErrorKind::UndeclaredLabel("zz".into())));
        assert!(err.errors.iter().any(
            |e| matches!(&e.kind, DslErrorKind::DuplicateDeclaration(m) if m.starts_with("rel"))
        ));
    }

    #[test]
    fn non_composable_relation_is_located() {
        let text = "quiver x\nvertices: u v w\narrow b: u -> v\narrow g: u -> w\n\nrel g * b\n";
        let err = parse_presentation(text).unwrap_err();
        assert_eq!(err.errors.len(), 1);
        assert!(matches!(
            err.errors[0].kind,
            DslErrorKind::Build(BuildError::NonComposableRelation { .. })
        ));
        assert_eq!(err.errors[0].at, Some(Location { line: 6, col: 1 }));
    }

    #[test]
    fn non_gentle_is_unlocated() {
        let err = parse_presentation("quiver l\nvertices: v\narrow a: v -> v\n").unwrap_err();
        assert_eq!(err.errors[0].at, None);
        assert!(matches!(
            err.errors[0].kind,
            DslErrorKind::Build(BuildError::NotGentle(_))
        ));
    }
}
