//! The `.bnet` network format plus the two sidecar formats: phenotype
//! assignments and perturbable-variable lists.
//!
//! A `.bnet` file holds one `name, expression` line per variable. Expressions
//! use `!` > `&` > `|` precedence with parentheses and the constants
//! `0`/`1`/`true`/`false`. Blank lines and `#` comments are skipped, as is
//! the conventional `targets, factors` header. Declaration order is the
//! variable order everywhere downstream.

use crate::error::{Error, Result};
use crate::expr::BoolExpr;
use crate::network::BooleanNetwork;
use crate::trival::TriValue;

/// A conjunction of traits `variable ↔ value` with values in {0, 1, ⋆}.
/// A subspace satisfies the phenotype iff it matches every trait exactly;
/// in particular `v ↔ ⋆` requires v to be free, not merely unconstrained.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Phenotype {
    pub traits: Vec<(String, TriValue)>,
}

impl Phenotype {
    /// Whether every trait holds in `m`. Errors if a trait names a variable
    /// the subspace does not know.
    pub fn satisfied_by(&self, m: &crate::network::Subspace) -> Result<bool> {
        for (name, want) in &self.traits {
            let got = m
                .get(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            if got != *want {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_star_free(&self) -> bool {
        self.traits.iter().all(|(_, v)| !v.is_star())
    }
}

/// An ordered, duplicate-free list of perturbable variables. Names are
/// validated against a concrete network at the point of use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerturbationSet {
    pub names: Vec<String>,
}

impl PerturbationSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(PerturbationSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

struct LineParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    src: &'a str,
}

impl<'a> LineParser<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        LineParser {
            chars: src.chars().collect(),
            pos: 0,
            line,
            src,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                self.bump();
            }
            _ => return Err(self.err("expected an identifier")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    // expr := term ('|' term)*
    fn expr(&mut self) -> Result<BoolExpr> {
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            if self.eat('|') {
                terms.push(self.term()?);
            } else {
                break;
            }
        }
        Ok(BoolExpr::or(terms))
    }

    // term := factor ('&' factor)*
    fn term(&mut self) -> Result<BoolExpr> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.eat('&') {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(BoolExpr::and(factors))
    }

    // factor := '!' factor | '(' expr ')' | const | ident
    fn factor(&mut self) -> Result<BoolExpr> {
        self.skip_ws();
        match self.peek() {
            Some('!') => {
                self.bump();
                Ok(BoolExpr::not(self.factor()?))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some('0') => {
                self.bump();
                Ok(BoolExpr::Const(false))
            }
            Some('1') => {
                self.bump();
                Ok(BoolExpr::Const(true))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident()?;
                match name.as_str() {
                    "true" => Ok(BoolExpr::Const(true)),
                    "false" => Ok(BoolExpr::Const(false)),
                    _ => Ok(BoolExpr::var(name)),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn finish_expr(&mut self) -> Result<BoolExpr> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.err(format!(
                "trailing input `{}`",
                &self.src[self
                    .src
                    .char_indices()
                    .nth(self.pos)
                    .map(|(i, _)| i)
                    .unwrap_or(self.src.len())..]
            )));
        }
        Ok(e)
    }
}

/// Strips a trailing comment and surrounding whitespace; `None` for lines
/// with no content.
fn content(line: &str) -> Option<&str> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let line = line.trim().trim_end_matches('\r');
    if line.is_empty() {
        None
    } else {
        Some(line)
    }
}

/// Parses `.bnet` text into a network. Declaration order is preserved;
/// duplicate declarations and references to undeclared variables are errors.
pub fn parse_bnet(text: &str) -> Result<BooleanNetwork> {
    let mut pairs: Vec<(String, BoolExpr)> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let Some(line) = content(raw) else { continue };
        // Conventional header emitted by other tools.
        let lowered = line.to_ascii_lowercase();
        if lowered == "targets, factors" || lowered == "targets,factors" {
            continue;
        }
        let comma = line.find(',').ok_or(Error::Syntax {
            line: lineno,
            col: line.chars().count() + 1,
            msg: "expected `name, expression`".into(),
        })?;
        let mut name_parser = LineParser::new(&line[..comma], lineno);
        let name = name_parser.ident()?;
        name_parser.skip_ws();
        if name_parser.pos < name_parser.chars.len() {
            return Err(name_parser.err("variable name must be a single identifier"));
        }
        if name == "true" || name == "false" {
            return Err(Error::Syntax {
                line: lineno,
                col: 1,
                msg: format!("`{name}` is a reserved constant"),
            });
        }
        let mut parser = LineParser::new(&line[comma + 1..], lineno);
        let expr = parser.finish_expr()?;
        if pairs.iter().any(|(n, _)| n == &name) {
            return Err(Error::DuplicateVariable(name));
        }
        pairs.push((name, expr));
        lines_of.push(lineno);
    }
    let declared: Vec<String> = pairs.iter().map(|(n, _)| n.clone()).collect();
    for ((name, expr), lineno) in pairs.iter().zip(&lines_of) {
        for referenced in expr.variables() {
            if !declared.iter().any(|d| d == referenced) {
                return Err(Error::Syntax {
                    line: *lineno,
                    col: 1,
                    msg: format!(
                        "update function for `{name}` references undeclared variable `{referenced}`"
                    ),
                });
            }
        }
    }
    BooleanNetwork::from_functions(pairs)
}

/// Canonical `.bnet` serialization: one line per variable in declaration
/// order, `And`/`Or` parenthesized. `parse_bnet(render_bnet(f))` rebuilds the
/// identical tree.
pub fn render_bnet(f: &BooleanNetwork) -> String {
    f.functions()
        .map(|(name, expr)| format!("{name}, {expr}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses phenotype text: one `name = 0|1|*` line per trait.
pub fn parse_phenotype(text: &str) -> Result<Phenotype> {
    let mut traits: Vec<(String, TriValue)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let Some(line) = content(raw) else { continue };
        let (name_part, value_part) = line.split_once('=').ok_or(Error::Syntax {
            line: lineno,
            col: 1,
            msg: "expected `name = value`".into(),
        })?;
        let mut name_parser = LineParser::new(name_part, lineno);
        let name = name_parser.ident()?;
        name_parser.skip_ws();
        if name_parser.pos < name_parser.chars.len() {
            return Err(name_parser.err("trait name must be a single identifier"));
        }
        let value_str = value_part.trim();
        let value = match value_str {
            v if v.chars().count() == 1 => TriValue::from_char(v.chars().next().unwrap()),
            _ => None,
        }
        .ok_or(Error::Syntax {
            line: lineno,
            col: 1,
            msg: format!("unknown value `{value_str}` (expected 0, 1, or *)"),
        })?;
        if traits.iter().any(|(n, _)| n == &name) {
            return Err(Error::DuplicateVariable(name));
        }
        traits.push((name, value));
    }
    Ok(Phenotype { traits })
}

/// Parses a perturbable-variable list: one identifier per line.
pub fn parse_perturbables(text: &str) -> Result<PerturbationSet> {
    let mut names = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let Some(line) = content(raw) else { continue };
        let mut parser = LineParser::new(line, lineno + 1);
        let name = parser.ident()?;
        parser.skip_ws();
        if parser.pos < parser.chars.len() {
            return Err(parser.err("expected one variable name per line"));
        }
        names.push(name);
    }
    PerturbationSet::new(names)
}
