//! Quivers, their doubles and triples, and torus parameter labels.

use std::collections::HashSet;
use std::fmt;

use crate::error::Error;
use crate::poly::{hbar, Polynomial, Symbol, Var};
use crate::scalar::Scalar;

/// An integer linear form `k*hbar + sum c_s * s` in the torus parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamLabel {
    pub hbar: i64,
    pub terms: Vec<(Symbol, i64)>,
}

impl ParamLabel {
    pub fn param(name: &str) -> Self {
        ParamLabel { hbar: 0, terms: vec![(Symbol::new(name), 1)] }
    }

    pub fn hbar_multiple(k: i64) -> Self {
        ParamLabel { hbar: k, terms: Vec::new() }
    }

    pub fn negated(&self) -> Self {
        ParamLabel { hbar: -self.hbar, terms: self.terms.iter().map(|&(s, c)| (s, -c)).collect() }
    }

    /// `hbar - self`.
    pub fn complement(&self) -> Self {
        let mut n = self.negated();
        n.hbar += 1;
        n
    }

    pub fn poly<C: Scalar>(&self) -> Polynomial<C> {
        let mut p = Polynomial::zero();
        if self.hbar != 0 {
            p += Polynomial::var(Var::Param(hbar())).scale(&C::from_int(self.hbar));
        }
        for &(s, c) in &self.terms {
            p += Polynomial::var(Var::Param(s)).scale(&C::from_int(c));
        }
        p
    }
}

impl fmt::Display for ParamLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly::<crate::scalar::Rational>())
    }
}

/// Where an arrow comes from in a doubled or tripled quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowRole {
    Original,
    /// The reverse `a*` of the original arrow with the given index.
    Reverse { of: usize },
    /// The loop added at a vertex by tripling.
    Loop,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub label: ParamLabel,
    pub role: ArrowRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuiverKind {
    Plain,
    Doubled,
    Tripled,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    kind: QuiverKind,
}

const RESERVED: [&str; 4] = ["x", "y", "z", "hbar"];

fn valid_identifier(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// A quiver with the given vertices and no arrows.
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !valid_identifier(v) {
                return Err(Error::InvalidQuiver(format!("invalid vertex name {v:?}")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        Ok(Quiver { vertices, arrows: Vec::new(), kind: QuiverKind::Plain })
    }

    /// Adds an original arrow. The torus parameter defaults to `u_<name>`.
    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str, param: Option<&str>) -> Result<(), Error> {
        if self.kind != QuiverKind::Plain {
            return Err(Error::InvalidQuiver("arrows can only be added to a plain quiver".into()));
        }
        if !valid_identifier(name) {
            return Err(Error::InvalidQuiver(format!("invalid arrow name {name:?}")));
        }
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(Error::InvalidQuiver(format!("duplicate arrow {name:?}")));
        }
        let source = self.vertex_index(source)?;
        let target = self.vertex_index(target)?;
        let param = param.map_or_else(|| format!("u_{name}"), str::to_owned);
        if !valid_identifier(&param) || RESERVED.contains(&param.as_str()) {
            return Err(Error::InvalidQuiver(format!("invalid parameter name {param:?}")));
        }
        self.arrows.push(Arrow {
            name: name.to_owned(),
            source,
            target,
            label: ParamLabel::param(&param),
            role: ArrowRole::Original,
        });
        Ok(())
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, Error> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {name:?}")))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn original_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| a.role == ArrowRole::Original)
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == i && a.target == j).count()
    }

    pub fn check_symmetric(&self) -> Result<(), Error> {
        for i in 0..self.vertex_count() {
            for j in i + 1..self.vertex_count() {
                let (f, b) = (self.arrow_count(i, j), self.arrow_count(j, i));
                if f != b {
                    return Err(Error::NotSymmetric {
                        from: self.vertices[i].clone(),
                        to: self.vertices[j].clone(),
                        forward: f,
                        backward: b,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    /// The quiver of original arrows.
    pub fn original(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.original_arrows().cloned().collect(),
            kind: QuiverKind::Plain,
        }
    }

    /// Adds `a*: t(a) -> s(a)` with label `hbar - u_a` for every arrow.
    pub fn double(&self) -> Result<Quiver, Error> {
        if self.kind != QuiverKind::Plain {
            return Err(Error::InvalidQuiver("only a plain quiver can be doubled".into()));
        }
        let mut arrows = self.arrows.clone();
        for (k, a) in self.arrows.iter().enumerate() {
            let name = format!("{}*", a.name);
            arrows.push(Arrow {
                name,
                source: a.target,
                target: a.source,
                label: a.label.complement(),
                role: ArrowRole::Reverse { of: k },
            });
        }
        Ok(Quiver { vertices: self.vertices.clone(), arrows, kind: QuiverKind::Doubled })
    }

    /// The double plus a loop `omega_<v>` with label `-hbar` at every vertex.
    pub fn triple(&self) -> Result<Quiver, Error> {
        let mut q = self.double()?;
        for (i, v) in self.vertices.iter().enumerate() {
            q.arrows.push(Arrow {
                name: format!("omega_{v}"),
                source: i,
                target: i,
                label: ParamLabel::hbar_multiple(-1),
                role: ArrowRole::Loop,
            });
        }
        q.kind = QuiverKind::Tripled;
        Ok(q)
    }
}
