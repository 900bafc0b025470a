//! Line-oriented text formats.
//!
//! ```text
//! # the worked example
//! factor H1: orders = 2 2 2
//! factor H2: orders = 2 2 3
//! pinch: u = a1 a2 a3 ; v = a6^2 a5 a4
//!
//! gen: a1 a2
//! gen: a1 a3
//! ```
//!
//! Generators are numbered `a1, a2, ...` across both factors, `H1` first.
//! Orders are integers `>= 2`, or `0` / `inf` for infinite order. A word
//! is a whitespace-separated list of syllables `aN` or `aN^k`; `1` is the
//! identity. `#` starts a comment. Instead of `factor`/`pinch` lines a
//! group of F-type can be given as
//!
//! ```text
//! ftype: orders = 2 2 2 2 2 3 ; p = 3 ; U = a1 a2 a3 ; V = a4 a5 a6
//! ```
//!
//! which sets `u = U` and `v = V^-1`. `gen:` lines form a tuple; a blank
//! line starts the next tuple.

use crate::amalgam::{AmalgamPresentation, GroupWord, Side};
use crate::classify::{build_ftype, FTypeSpec};
use crate::error::{Error, Result};
use crate::factor::{CyclicFactorPresentation, Order};
use crate::nielsen::GeneratingTuple;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + s[..st].chars().count(), &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((base + s[..st].chars().count(), &s[st..]));
    }
    out
}

/// Parses a word; `column` is the 1-based column where `s` starts.
pub fn parse_word_at(s: &str, line: usize, column: usize) -> Result<Vec<(usize, i64)>> {
    let toks = tokens(s, column);
    if toks.is_empty() {
        return Err(Error::parse(line, column, "expected a word"));
    }
    if let [(_, "1")] = toks.as_slice() {
        return Ok(vec![]);
    }
    toks.into_iter()
        .map(|(col, tok)| {
            let bad = || Error::parse(line, col, format!("invalid syllable '{tok}'"));
            let body = tok.strip_prefix('a').ok_or_else(bad)?;
            let (g, k) = match body.split_once('^') {
                Some((g, k)) => (g, k.parse::<i64>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let g: usize = g.parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(Error::parse(line, col, "generators are numbered from a1"));
            }
            Ok((g - 1, k))
        })
        .collect()
}

pub fn parse_word(s: &str) -> Result<Vec<(usize, i64)>> {
    parse_word_at(s, 1, 1)
}

pub fn format_raw(raw: &[(usize, i64)]) -> String {
    if raw.is_empty() {
        return "1".into();
    }
    raw.iter()
        .map(|&(g, k)| {
            if k == 1 {
                format!("a{}", g + 1)
            } else {
                format!("a{}^{}", g + 1, k)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A group word with letters joined, e.g. `a1 a4 a2`.
pub fn format_word(w: &GroupWord) -> String {
    w.to_string()
}

fn parse_orders(s: &str, line: usize, column: usize) -> Result<Vec<u64>> {
    let toks = tokens(s, column);
    if toks.is_empty() {
        return Err(Error::parse(line, column, "expected at least one order"));
    }
    toks.into_iter()
        .map(|(col, tok)| match tok {
            "inf" | "∞" => Ok(0),
            _ => {
                let e: u64 = tok
                    .parse()
                    .map_err(|_| Error::parse(line, col, format!("invalid order '{tok}'")))?;
                if e == 1 {
                    return Err(Error::parse(
                        line,
                        col,
                        "orders must be at least 2 (0 or inf for infinite)",
                    ));
                }
                Ok(e)
            }
        })
        .collect()
}

/// Splits `key = value ; key = value` fields, keeping value columns.
fn fields(s: &str, column: usize) -> Vec<(&str, usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(';') {
        if let Some((k, v)) = part.split_once('=') {
            let vcol = column + s[..offset].chars().count() + k.chars().count() + 1;
            out.push((k.trim(), vcol, v));
        }
        offset += part.len() + 1;
    }
    out
}

type Raw = Vec<(usize, i64)>;

#[derive(Default)]
struct Builder {
    h1: Option<(usize, Vec<u64>)>,
    h2: Option<(usize, Vec<u64>)>,
    pinch: Option<(usize, Raw, Raw)>,
    ftype: Option<(usize, FTypeSpec)>,
}

impl Builder {
    /// Consumes a presentation line; returns false for other lines.
    fn line(&mut self, text: &str, n: usize) -> Result<bool> {
        let trimmed = text.trim_start();
        let indent = text.len() - trimmed.len();
        let Some((head, rest)) = trimmed.split_once(':') else {
            return Ok(false);
        };
        let col = indent + head.chars().count() + 2;
        match head.trim() {
            "factor H1" | "factor H2" => {
                let f = fields(rest, col);
                let [("orders", c, v)] = f.as_slice() else {
                    return Err(Error::parse(n, col, "expected 'orders = ...'"));
                };
                let orders = parse_orders(v, n, *c)?;
                if head.trim().ends_with("H1") {
                    self.h1 = Some((n, orders));
                } else {
                    self.h2 = Some((n, orders));
                }
            }
            "pinch" => {
                let f = fields(rest, col);
                let [("u", cu, u), ("v", cv, v)] = f.as_slice() else {
                    return Err(Error::parse(n, col, "expected 'u = <word> ; v = <word>'"));
                };
                self.pinch = Some((n, parse_word_at(u, n, *cu)?, parse_word_at(v, n, *cv)?));
            }
            "ftype" => {
                let f = fields(rest, col);
                let [("orders", co, o), ("p", cp, p), ("U", cu, u), ("V", cv, v)] = f.as_slice() else {
                    return Err(Error::parse(
                        n,
                        col,
                        "expected 'orders = .. ; p = .. ; U = .. ; V = ..'",
                    ));
                };
                let split = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(n, *cp, format!("invalid split '{}'", p.trim())))?;
                self.ftype = Some((
                    n,
                    FTypeSpec {
                        orders: parse_orders(o, n, *co)?,
                        split,
                        u: parse_word_at(u, n, *cu)?,
                        v: parse_word_at(v, n, *cv)?,
                    },
                ));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn is_empty(&self) -> bool {
        self.h1.is_none() && self.h2.is_none() && self.pinch.is_none() && self.ftype.is_none()
    }

    fn build(self) -> Result<AmalgamPresentation> {
        let at = |n: usize| move |e: Error| Error::parse(n, 1, e.to_string());
        if let Some((n, spec)) = self.ftype {
            if self.h1.is_some() || self.h2.is_some() || self.pinch.is_some() {
                return Err(Error::parse(n, 1, "ftype cannot be combined with factor/pinch lines"));
            }
            return build_ftype(&spec, 0).map(|(g, _)| g).map_err(at(n));
        }
        let (n1, o1) = self.h1.ok_or_else(|| Error::parse(1, 1, "missing 'factor H1' line"))?;
        let (n2, o2) = self.h2.ok_or_else(|| Error::parse(1, 1, "missing 'factor H2' line"))?;
        let (np, u, v) = self.pinch.ok_or_else(|| Error::parse(1, 1, "missing 'pinch' line"))?;
        let h1 = CyclicFactorPresentation::from_codes(0, &o1).map_err(at(n1))?;
        let h2 = CyclicFactorPresentation::from_codes(o1.len(), &o2).map_err(at(n2))?;
        let u = h1.normalize(&u).map_err(at(np))?;
        let v = h2.normalize(&v).map_err(at(np))?;
        AmalgamPresentation::new(h1, h2, u, v).map_err(at(np))
    }
}

pub fn parse_presentation(text: &str) -> Result<AmalgamPresentation> {
    let mut b = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if !b.line(line, i + 1)? {
            return Err(Error::parse(i + 1, 1, format!("unexpected line '{}'", line.trim())));
        }
    }
    b.build()
}

fn format_orders(orders: &[Order]) -> String {
    orders
        .iter()
        .map(|o| o.code().to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_presentation(g: &AmalgamPresentation) -> String {
    format!(
        "factor H1: orders = {}\nfactor H2: orders = {}\npinch: u = {} ; v = {}\n",
        format_orders(g.factor(Side::H1).orders()),
        format_orders(g.factor(Side::H2).orders()),
        g.u(),
        g.v()
    )
}

/// A presentation with tuples of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub presentation: AmalgamPresentation,
    pub tuples: Vec<GeneratingTuple>,
}

/// Parses presentation lines and `gen:` blocks. Without presentation lines
/// `default` is used.
pub fn parse_document(text: &str, default: Option<&AmalgamPresentation>) -> Result<Document> {
    let mut b = Builder::default();
    // (line, column, word) per `gen:` line, one block per tuple.
    let mut blocks: Vec<Vec<(usize, usize, Raw)>> = vec![vec![]];
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            if raw.trim().is_empty() && !blocks.last().expect("nonempty").is_empty() {
                blocks.push(vec![]);
            }
            continue;
        }
        if b.line(line, n)? {
            continue;
        }
        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        let Some(rest) = trimmed.strip_prefix("gen:") else {
            return Err(Error::parse(
                n,
                indent + 1,
                format!("unexpected line '{}'", line.trim()),
            ));
        };
        let col = indent + 5;
        blocks
            .last_mut()
            .expect("nonempty")
            .push((n, col, parse_word_at(rest, n, col)?));
    }
    let presentation = if b.is_empty() {
        default
            .cloned()
            .ok_or_else(|| Error::parse(1, 1, "no presentation given"))?
    } else {
        b.build()?
    };
    let tuples = blocks
        .into_iter()
        .filter(|blk| !blk.is_empty())
        .map(|blk| {
            blk.into_iter()
                .map(|(n, col, raw)| {
                    presentation
                        .word_from_raw(&raw)
                        .map_err(|e| Error::parse(n, col, e.to_string()))
                })
                .collect::<Result<Vec<_>>>()
                .map(GeneratingTuple::new)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Document { presentation, tuples })
}

pub fn format_document(doc: &Document) -> String {
    let mut out = format_presentation(&doc.presentation);
    for t in &doc.tuples {
        out.push('\n');
        for w in &t.elements {
            out.push_str(&format!("gen: {w}\n"));
        }
    }
    out
}

/// One word per non-blank line.
pub fn parse_word_lines(text: &str, g: &AmalgamPresentation) -> Result<Vec<GroupWord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let w = parse_word_at(line, i + 1, 1)?;
        out.push(g.word_from_raw(&w).map_err(|e| Error::parse(i + 1, 1, e.to_string()))?);
    }
    Ok(out)
}
