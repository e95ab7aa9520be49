//! Quiver documents.
//!
//! A document is a list of statements separated by newlines or `;`, with
//! `#` starting a comment:
//!
//! ```text
//! vertices: v w
//! arrow a: v -> w
//! arrow b: w -> v param t
//! build: triple
//! torus: generic
//! ```
//!
//! `build` is one of `as-is`, `double`, `triple` (default `as-is`); `torus`
//! is `trivial` or `generic` (default `trivial`). A tripled build selects the
//! tripled kernel, the other builds the zero-potential kernel.

use std::fmt;

use coha_core::{KernelMode, QKernel, Quiver, Torus, ZetaKernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Build {
    AsIs,
    Double,
    Triple,
}

impl Build {
    fn as_str(self) -> &'static str {
        match self {
            Build::AsIs => "as-is",
            Build::Double => "double",
            Build::Triple => "triple",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub param: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub build: Build,
    pub torus: Torus,
}

/// A syntax or semantic error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Statement<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Statement<'_> {
    fn error(&self, message: impl Into<String>) -> DocError {
        DocError { line: self.line, column: self.column, message: message.into() }
    }
}

fn statements(src: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (l, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in line.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let text = piece.trim();
            if !text.is_empty() {
                out.push(Statement { text, line: l + 1, column: offset + lead + 1 });
            }
            offset += piece.len() + 1;
        }
    }
    out
}

fn parse_arrow(st: &Statement<'_>, name: &str, rest: &str) -> Result<ArrowDecl, DocError> {
    let spaced = rest.replace("->", " -> ");
    let toks: Vec<&str> = spaced.split_whitespace().collect();
    let (source, target, param) = match toks.as_slice() {
        [s, "->", t] => (s, t, None),
        [s, "->", t, "param", p] => (s, t, Some(p.to_string())),
        _ => return Err(st.error("expected `arrow NAME: SOURCE -> TARGET [param NAME]`")),
    };
    Ok(ArrowDecl { name: name.to_owned(), source: source.to_string(), target: target.to_string(), param })
}

impl QuiverDocument {
    pub fn parse(src: &str) -> Result<Self, DocError> {
        let mut vertices: Option<Vec<String>> = None;
        let mut arrows: Vec<(ArrowDecl, (usize, usize))> = Vec::new();
        let mut build = None;
        let mut torus = None;
        let mut first = (1, 1);
        for (k, st) in statements(src).into_iter().enumerate() {
            if k == 0 {
                first = (st.line, st.column);
            }
            let (head, rest) = st.text.split_once(':').ok_or_else(|| st.error("expected `key: value`"))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            let rest = rest.trim();
            match head.as_slice() {
                ["vertices"] => {
                    if vertices.is_some() {
                        return Err(st.error("duplicate `vertices` statement"));
                    }
                    let vs: Vec<String> =
                        rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).map(str::to_owned).collect();
                    if vs.is_empty() {
                        return Err(st.error("`vertices` needs at least one name"));
                    }
                    vertices = Some(vs);
                }
                ["arrow", name] => arrows.push((parse_arrow(&st, name, rest)?, (st.line, st.column))),
                ["build"] => {
                    if build.is_some() {
                        return Err(st.error("duplicate `build` statement"));
                    }
                    build = Some(match rest {
                        "as-is" => Build::AsIs,
                        "double" => Build::Double,
                        "triple" => Build::Triple,
                        _ => return Err(st.error(format!("unknown build {rest:?}; expected as-is, double or triple"))),
                    });
                }
                ["torus"] => {
                    if torus.is_some() {
                        return Err(st.error("duplicate `torus` statement"));
                    }
                    torus = Some(match rest {
                        "trivial" => Torus::Trivial,
                        "generic" => Torus::Generic,
                        _ => return Err(st.error(format!("unknown torus {rest:?}; expected trivial or generic"))),
                    });
                }
                _ => return Err(st.error(format!("unknown key {:?}", head.join(" ")))),
            }
        }
        let vertices = vertices.ok_or(DocError { line: first.0, column: first.1, message: "missing `vertices` statement".into() })?;
        let doc = QuiverDocument {
            vertices,
            arrows: arrows.iter().map(|(a, _)| a.clone()).collect(),
            build: build.unwrap_or(Build::AsIs),
            torus: torus.unwrap_or(Torus::Trivial),
        };
        let mut q = Quiver::new(doc.vertices.clone())
            .map_err(|e| DocError { line: first.0, column: first.1, message: e.to_string() })?;
        for (a, (line, column)) in &arrows {
            for v in [&a.source, &a.target] {
                if !doc.vertices.contains(v) {
                    return Err(DocError { line: *line, column: *column, message: format!("unknown vertex {v:?}") });
                }
            }
            q.add_arrow(&a.name, &a.source, &a.target, a.param.as_deref())
                .map_err(|e| DocError { line: *line, column: *column, message: e.to_string() })?;
        }
        Ok(doc)
    }

    /// The plain quiver of the declared vertices and arrows.
    pub fn original(&self) -> Quiver {
        let mut q = Quiver::new(self.vertices.clone()).expect("validated on parse");
        for a in &self.arrows {
            q.add_arrow(&a.name, &a.source, &a.target, a.param.as_deref()).expect("validated on parse");
        }
        q
    }

    /// The quiver after the build directive.
    pub fn quiver(&self) -> Result<Quiver, coha_core::Error> {
        let q = self.original();
        match self.build {
            Build::AsIs => Ok(q),
            Build::Double => q.double(),
            Build::Triple => q.triple(),
        }
    }

    pub fn kernel(&self) -> Result<QKernel, coha_core::Error> {
        let mode = if self.build == Build::Triple { KernelMode::Tripled } else { KernelMode::ZeroPotential };
        ZetaKernel::new(self.quiver()?, mode, self.torus)
    }
}

/// The canonical form: one statement per line, all keys explicit.
impl fmt::Display for QuiverDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for a in &self.arrows {
            write!(f, "arrow {}: {} -> {}", a.name, a.source, a.target)?;
            if let Some(p) = &a.param {
                write!(f, " param {p}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "build: {}", self.build.as_str())?;
        let torus = match self.torus {
            Torus::Trivial => "trivial",
            Torus::Generic => "generic",
        };
        writeln!(f, "torus: {torus}")
    }
}

/// Documents for the built-in quivers.
pub fn preset(name: &str) -> Option<&'static str> {
    Some(match name {
        "arrowless" => "vertices: v\nbuild: as-is\ntorus: trivial\n",
        "jordan" => "vertices: v\narrow a: v -> v\nbuild: as-is\ntorus: generic\n",
        "two-loop" => "vertices: v\narrow a: v -> v\narrow b: v -> v\nbuild: as-is\ntorus: trivial\n",
        "symmetric-a2" => "vertices: v w\narrow a: v -> w\narrow b: w -> v\nbuild: as-is\ntorus: generic\n",
        "tripled-jordan" => "vertices: v\narrow a: v -> v\nbuild: triple\ntorus: generic\n",
        "tripled-a2" => "vertices: v w\narrow a: v -> w\nbuild: triple\ntorus: generic\n",
        "a2" => "vertices: v w\narrow a: v -> w\nbuild: as-is\ntorus: trivial\n",
        _ => return None,
    })
}

pub const PRESETS: [&str; 7] = ["arrowless", "jordan", "two-loop", "symmetric-a2", "tripled-jordan", "tripled-a2", "a2"];
