//! Lattice spec files.
//!
//! Text form, one directive per line (`#` starts a comment):
//!
//! ```text
//! lattice MO2
//! elements: 0, a, a', b, b', 1
//! covers: 0 < a < 1; 0 < a' < 1; 0 < b < 1; 0 < b' < 1
//! ortho: 0 ~ 1; a ~ a'; b ~ b'
//! meta: source = builtin
//! ```
//!
//! `covers` lists Hasse-diagram edges (chains `x < y < z` are allowed); the
//! order is their reflexive-transitive closure. `0` and `1` are reserved for
//! the bottom and top. Directives other than `lattice` may repeat and
//! accumulate. The equivalent JSON form is an object with keys `name`,
//! `elements`, `covers` (pairs), `ortho` (pairs) and optional `metadata`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{audit, AxiomReport, ElemId, LatticeError, OmlLattice};
use crate::elemset::{ElemSet, MAX_REPRESENTABLE};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid JSON spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Semantic(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Parsed but not yet validated lattice description.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub ortho: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

const RESERVED_PUNCT: &[char] = &[',', ';', '<', '~', ':', '#', '='];

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax { line, column, message: message.into() }
}

/// Splits `text` on `sep`, yielding trimmed pieces with their 1-based column.
fn pieces(text: &str, base_col: usize, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), sep))) {
        if c == sep {
            let raw = &text[start..i];
            let lead = raw.len() - raw.trim_start().len();
            out.push((base_col + text[..start + lead].chars().count(), raw.trim()));
            start = i + c.len_utf8();
        }
    }
    out
}

fn check_name(line: usize, col: usize, name: &str) -> Result<(), SpecError> {
    if name.is_empty() {
        return Err(syntax(line, col, "expected an element name"));
    }
    if let Some((off, c)) = name.char_indices().find(|(_, c)| c.is_whitespace() || RESERVED_PUNCT.contains(c)) {
        return Err(syntax(line, col + name[..off].chars().count(), format!("unexpected character `{c}` in element name")));
    }
    Ok(())
}

impl LatticeSpec {
    /// Parses the text grammar. Only syntax is checked here.
    pub fn parse_text(text: &str) -> Result<Self, SpecError> {
        let mut spec = LatticeSpec::default();
        let mut seen_header = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let body = line.trim();
            let col0 = raw[..indent].chars().count() + 1;
            if let Some(rest) = body.strip_prefix("lattice") {
                if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
                    return Err(syntax(line_no, col0, "unknown directive"));
                }
                if seen_header {
                    return Err(syntax(line_no, col0, "duplicate `lattice` header"));
                }
                let name = rest.trim();
                if name.is_empty() {
                    return Err(syntax(line_no, col0 + 7, "`lattice` needs a name"));
                }
                spec.name = name.to_owned();
                seen_header = true;
                continue;
            }
            let Some(colon) = body.find(':') else {
                return Err(syntax(line_no, col0, "expected `<directive>: ...`"));
            };
            let key = body[..colon].trim();
            let rest = &body[colon + 1..];
            let rest_col = col0 + body[..colon + 1].chars().count();
            match key {
                "elements" => {
                    for (col, name) in pieces(rest, rest_col, ',') {
                        if name.is_empty() && rest.trim().is_empty() {
                            break;
                        }
                        check_name(line_no, col, name)?;
                        spec.elements.push(name.to_owned());
                    }
                }
                "covers" => {
                    for (col, chain) in pieces(rest, rest_col, ';') {
                        if chain.is_empty() {
                            continue;
                        }
                        let links = pieces(chain, col, '<');
                        if links.len() < 2 {
                            return Err(syntax(line_no, col, "expected `a < b`"));
                        }
                        for (c, n) in &links {
                            check_name(line_no, *c, n)?;
                        }
                        for w in links.windows(2) {
                            spec.covers.push((w[0].1.to_owned(), w[1].1.to_owned()));
                        }
                    }
                }
                "ortho" => {
                    for (col, pair) in pieces(rest, rest_col, ';') {
                        if pair.is_empty() {
                            continue;
                        }
                        let sides = pieces(pair, col, '~');
                        if sides.len() != 2 {
                            return Err(syntax(line_no, col, "expected `a ~ b`"));
                        }
                        for (c, n) in &sides {
                            check_name(line_no, *c, n)?;
                        }
                        spec.ortho.push((sides[0].1.to_owned(), sides[1].1.to_owned()));
                    }
                }
                "meta" => {
                    for (col, kv) in pieces(rest, rest_col, ';') {
                        if kv.is_empty() {
                            continue;
                        }
                        let Some((k, v)) = kv.split_once('=') else {
                            return Err(syntax(line_no, col, "expected `key = value`"));
                        };
                        spec.metadata.insert(k.trim().to_owned(), v.trim().to_owned());
                    }
                }
                other => return Err(syntax(line_no, col0, format!("unknown directive `{other}`"))),
            }
        }
        if !seen_header {
            return Err(syntax(1, 1, "missing `lattice <name>` header"));
        }
        Ok(spec)
    }

    pub fn parse_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Dispatches on the first non-blank character: `{` selects JSON.
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    /// Resolves names and computes the order closure and orthocomplement
    /// table, without checking lattice axioms.
    pub fn resolve(&self, max_elements: usize) -> Result<(Vec<String>, Vec<ElemSet>, Vec<ElemId>), SpecError> {
        let n = self.elements.len();
        let cap = max_elements.min(MAX_REPRESENTABLE);
        if n > cap {
            return Err(LatticeError::CapExceeded { size: n, cap }.into());
        }
        let mut index: HashMap<&str, ElemId> = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if index.insert(e.as_str(), i).is_some() {
                return Err(SpecError::Semantic(format!("duplicate element name `{e}`")));
            }
        }
        for reserved in ["0", "1"] {
            if !index.contains_key(reserved) {
                return Err(SpecError::Semantic(format!("reserved element `{reserved}` is missing")));
            }
        }
        let id = |name: &str| -> Result<ElemId, SpecError> {
            index.get(name).copied().ok_or_else(|| SpecError::Semantic(format!("unknown element `{name}`")))
        };

        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        let mut succ = vec![ElemSet::EMPTY; n];
        for (a, b) in &self.covers {
            let (ia, ib) = (id(a)?, id(b)?);
            if ia == ib {
                return Err(SpecError::Semantic(format!("cover `{a} < {a}` is reflexive")));
            }
            succ[ia].insert(ib);
        }
        // Closure by repeated propagation; n is small.
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut u = up[a];
                for b in succ[a].iter() {
                    u = u.union(up[b]);
                }
                if u != up[a] {
                    up[a] = u;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if let Some((a, b)) = (0..n).find_map(|a| up[a].iter().find(|&b| b != a && up[b].contains(a)).map(|b| (a, b))) {
            return Err(SpecError::Semantic(format!(
                "cover relation has a cycle through `{}` and `{}`",
                self.elements[a], self.elements[b]
            )));
        }

        let mut ortho = vec![usize::MAX; n];
        for (a, b) in &self.ortho {
            let (ia, ib) = (id(a)?, id(b)?);
            for (x, y) in [(ia, ib), (ib, ia)] {
                if ortho[x] != usize::MAX && ortho[x] != y {
                    return Err(SpecError::Semantic(format!(
                        "orthocomplement is not involutive: `{}` is paired with both `{}` and `{}`",
                        self.elements[x], self.elements[ortho[x]], self.elements[y]
                    )));
                }
                ortho[x] = y;
            }
        }
        if let Some(x) = ortho.iter().position(|&y| y == usize::MAX) {
            return Err(SpecError::Semantic(format!("element `{}` has no orthocomplement", self.elements[x])));
        }
        Ok((self.elements.clone(), up, ortho))
    }

    /// Full axiom audit without constructing a lattice.
    pub fn audit(&self, max_elements: usize) -> Result<AxiomReport, SpecError> {
        let (names, up, ortho) = self.resolve(max_elements)?;
        Ok(audit(&names, &up, &ortho))
    }

    pub fn build(&self, max_elements: usize) -> Result<OmlLattice, SpecError> {
        let (names, up, ortho) = self.resolve(max_elements)?;
        let zero = names.iter().position(|n| n == "0").unwrap();
        let one = names.iter().position(|n| n == "1").unwrap();
        let lattice = OmlLattice::from_order(self.name.clone(), names, up, ortho, max_elements)?;
        if lattice.zero() != zero || lattice.one() != one {
            return Err(SpecError::Semantic("elements `0` and `1` must be the bottom and top".into()));
        }
        Ok(lattice)
    }

    /// Describes an existing lattice: Hasse covers in `(lower, upper)` id
    /// order, each orthocomplement pair once with the smaller id first.
    pub fn from_lattice(lattice: &OmlLattice) -> Self {
        let nm = |x: ElemId| lattice.name_of(x).to_owned();
        LatticeSpec {
            name: lattice.name().to_owned(),
            elements: lattice.names().to_vec(),
            covers: lattice.covers().into_iter().map(|(a, b)| (nm(a), nm(b))).collect(),
            ortho: lattice
                .elements()
                .filter(|&x| x < lattice.ortho(x))
                .map(|x| (nm(x), nm(lattice.ortho(x))))
                .collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "lattice {}", self.name).unwrap();
        writeln!(out, "elements: {}", self.elements.join(", ")).unwrap();
        let covers: Vec<String> = self.covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
        writeln!(out, "covers: {}", covers.join("; ")).unwrap();
        let ortho: Vec<String> = self.ortho.iter().map(|(a, b)| format!("{a} ~ {b}")).collect();
        writeln!(out, "ortho: {}", ortho.join("; ")).unwrap();
        if !self.metadata.is_empty() {
            let meta: Vec<String> = self.metadata.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            writeln!(out, "meta: {}", meta.join("; ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Parses and validates a spec document (text or JSON).
pub fn parse_lattice_spec(text: &str, max_elements: usize) -> Result<OmlLattice, SpecError> {
    LatticeSpec::parse(text)?.build(max_elements)
}

pub fn export_text(lattice: &OmlLattice) -> String {
    LatticeSpec::from_lattice(lattice).to_text()
}

pub fn export_json(lattice: &OmlLattice) -> String {
    LatticeSpec::from_lattice(lattice).to_json()
}
