//! Plain-text polyhedron files.
//!
//! ```text
//! # comments run to the end of the line
//! H 2 3          # dimension, number of rows
//! 0 -1 0         # b a_1 … a_d, meaning ⟨a, x⟩ ≤ b
//! 0 0 -1
//! 1 1 1
//! ```
//!
//! Generator files start with `V d` and hold up to three sections `V n`
//! (vertices), `R n` (rays) and `L n` (lines) of `d` tokens per row. The
//! empty set is `EMPTY d`. Numbers are `p` or `p/q`.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{primitive_direction, QVector, Rational, ZVector};
use crate::polyhedron::{Constraint, HRep, Polyhedron, VRep};

/// A parsed file, before any conversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyhedronFile {
    H(HRep),
    V(VRep),
    Empty(usize),
}

impl PolyhedronFile {
    pub fn dim(&self) -> usize {
        match self {
            PolyhedronFile::H(h) => h.dim,
            PolyhedronFile::V(v) => v.dim,
            PolyhedronFile::Empty(d) => *d,
        }
    }

    pub fn to_polyhedron(&self) -> Result<Polyhedron> {
        match self {
            PolyhedronFile::H(h) => Polyhedron::from_h(h),
            PolyhedronFile::V(v) => Polyhedron::from_v(v),
            PolyhedronFile::Empty(d) => Ok(Polyhedron::empty(*d)),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_rational(tok: &str) -> Option<Rational> {
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line as tokens, with its 1-based number.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            self.last = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }

    fn expect_tokens(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let last = self.last;
        self.next_tokens()
            .ok_or_else(|| parse_err(last + 1, format!("unexpected end of file, expected {what}")))
    }
}

fn parse_count(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_row(line: usize, toks: &[&str], len: usize) -> Result<QVector> {
    if toks.len() != len {
        return Err(parse_err(line, format!("expected {len} numbers, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| parse_rational(t).ok_or_else(|| parse_err(line, format!("invalid number `{t}`"))))
        .collect()
}

/// Parses one polyhedron file.
pub fn parse(text: &str) -> Result<PolyhedronFile> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.expect_tokens("a header")?;
    let file = match head.as_slice() {
        ["EMPTY", d] => PolyhedronFile::Empty(parse_count(line, d, "dimension")?),
        ["H", d, n] => {
            let d = parse_count(line, d, "dimension")?;
            let n = parse_count(line, n, "row count")?;
            let mut constraints = Vec::with_capacity(n);
            for _ in 0..n {
                let (line, toks) = lines.expect_tokens("an inequality row")?;
                let row = parse_row(line, &toks, d + 1)?;
                if row[1..].iter().all(Zero::is_zero) {
                    return Err(parse_err(line, "zero normal"));
                }
                constraints.push(
                    Constraint::from_rational(&row[1..], row[0].clone())
                        .map_err(|e| parse_err(line, e.to_string()))?,
                );
            }
            PolyhedronFile::H(HRep::new(d, constraints).map_err(|e| parse_err(line, e.to_string()))?)
        }
        ["V", d] => {
            let d = parse_count(line, d, "dimension")?;
            let mut v = VRep {
                dim: d,
                ..VRep::default()
            };
            let mut seen = [false; 3];
            while let Some((line, toks)) = lines.next_tokens() {
                let (slot, n) = match toks.as_slice() {
                    [kind, n] if ["V", "R", "L"].contains(kind) => {
                        let slot = ["V", "R", "L"].iter().position(|k| k == kind).expect("listed");
                        (slot, parse_count(line, n, "row count")?)
                    }
                    _ => return Err(parse_err(line, "expected a section header `V n`, `R n` or `L n`")),
                };
                if std::mem::replace(&mut seen[slot], true) {
                    return Err(parse_err(line, "repeated section"));
                }
                for _ in 0..n {
                    let (line, toks) = lines.expect_tokens("a generator row")?;
                    let row = parse_row(line, &toks, d)?;
                    if slot == 0 {
                        v.vertices.push(row);
                    } else {
                        let dir: ZVector =
                            primitive_direction(&row).map_err(|_| parse_err(line, "zero direction"))?;
                        if slot == 1 {
                            v.rays.push(dir);
                        } else {
                            v.lines.push(dir);
                        }
                    }
                }
            }
            if v.vertices.is_empty() && (!v.rays.is_empty() || !v.lines.is_empty()) {
                return Err(parse_err(line, "directions given without a vertex"));
            }
            if v.vertices.is_empty() {
                PolyhedronFile::Empty(d)
            } else {
                PolyhedronFile::V(v)
            }
        }
        _ => return Err(parse_err(line, "expected `H d n`, `V d` or `EMPTY d`")),
    };
    if let Some((line, _)) = lines.next_tokens() {
        if !matches!(file, PolyhedronFile::V(_)) {
            return Err(parse_err(line, "trailing content"));
        }
    }
    Ok(file)
}

/// Parses and converts to a canonical polyhedron.
pub fn read_polyhedron(text: &str) -> Result<Polyhedron> {
    parse(text)?.to_polyhedron()
}

fn write_row(out: &mut String, row: impl IntoIterator<Item = String>) {
    let row: Vec<String> = row.into_iter().collect();
    out.push_str(&row.join(" "));
    out.push('\n');
}

/// Canonical inequality file; equations appear as two opposite rows.
pub fn write_h(p: &Polyhedron) -> String {
    PolyhedronFile::from_h(p).to_string()
}

/// Canonical generator file.
pub fn write_v(p: &Polyhedron) -> String {
    if p.is_empty() {
        return PolyhedronFile::Empty(p.dim()).to_string();
    }
    PolyhedronFile::V(p.vrep().clone()).to_string()
}

impl PolyhedronFile {
    pub fn from_h(p: &Polyhedron) -> Self {
        if p.is_empty() {
            PolyhedronFile::Empty(p.dim())
        } else {
            PolyhedronFile::H(p.hrep().clone())
        }
    }
}

impl fmt::Display for PolyhedronFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            PolyhedronFile::Empty(d) => {
                writeln!(out, "EMPTY {d}")?;
            }
            PolyhedronFile::H(h) => {
                writeln!(out, "H {} {}", h.dim, h.constraints.len())?;
                for c in &h.constraints {
                    write_row(
                        &mut out,
                        std::iter::once(c.bound().to_string()).chain(c.normal().iter().map(|a| a.to_string())),
                    );
                }
            }
            PolyhedronFile::V(v) => {
                writeln!(out, "V {}", v.dim)?;
                writeln!(out, "V {}", v.vertices.len())?;
                for x in &v.vertices {
                    write_row(&mut out, x.iter().map(|t| t.to_string()));
                }
                for (tag, dirs) in [("R", &v.rays), ("L", &v.lines)] {
                    if !dirs.is_empty() {
                        writeln!(out, "{tag} {}", dirs.len())?;
                        for r in dirs {
                            write_row(&mut out, r.iter().map(|t| t.to_string()));
                        }
                    }
                }
            }
        }
        f.write_str(&out)
    }
}
