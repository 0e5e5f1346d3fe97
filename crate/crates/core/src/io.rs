//! Text formats for codes and partial spreads.
//!
//! Code files start with
//! `rankcode kind=<sym|herm> p=<p> k=<k> n=<n> field=<p^k#c0,...,ck>`
//! followed by one word per line: `n²` element indices, row-major.
//!
//! Spread files start with
//! `subspaces kind=<symplectic|hermitian> p=<p> k=<k> n=<n> field=<...> dim=<d>`
//! followed by one member per line: the `d × 2n` canonical basis, row-major.
//!
//! Lines starting with `#` are comments.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::codes::{Provenance, RankCode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::forms::{FormKind, MatrixSpace};
use crate::linalg::{Mat, Subspace};
use crate::polar::{Kind, PolarSpace};
use crate::spreads::PartialSpread;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseError { line, msg: msg.into() }
}

struct Header {
    tag: String,
    fields: HashMap<String, String>,
}

fn parse_header(line: &str) -> Result<Header> {
    let mut parts = line.split_whitespace();
    let tag = parts.next().ok_or_else(|| parse_err(1, "empty header"))?.to_string();
    let mut fields = HashMap::new();
    for part in parts {
        let (k, v) = part.split_once('=').ok_or_else(|| parse_err(1, format!("bad header field {part:?}")))?;
        fields.insert(k.to_string(), v.to_string());
    }
    Ok(Header { tag, fields })
}

impl Header {
    fn get(&self, key: &str) -> Result<&str> {
        self.fields.get(key).map(|s| s.as_str()).ok_or_else(|| parse_err(1, format!("missing {key}")))
    }

    fn num(&self, key: &str) -> Result<u32> {
        self.get(key)?.parse().map_err(|_| parse_err(1, format!("bad {key}")))
    }

    /// Field named by the header, checked against `p` and `k`.
    fn field(&self) -> Result<Arc<Field>> {
        let field = Field::from_descriptor(self.get("field")?)?;
        if field.p() != self.num("p")? || field.k() != self.num("k")? {
            return Err(parse_err(1, "field descriptor disagrees with p and k"));
        }
        Ok(field)
    }
}

fn body_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_entries(line_no: usize, line: &str, count: usize, q: u32) -> Result<Vec<u32>> {
    let vals: Vec<u32> = line
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| parse_err(line_no, format!("bad entry {t:?}"))))
        .collect::<Result<_>>()?;
    if vals.len() != count {
        return Err(parse_err(line_no, format!("expected {count} entries, found {}", vals.len())));
    }
    if let Some(v) = vals.iter().find(|&&v| v >= q) {
        return Err(parse_err(line_no, format!("entry {v} outside the field")));
    }
    Ok(vals)
}

fn join(vals: &[u32]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn format_code(code: &RankCode) -> String {
    let space = code.space();
    let f = space.field();
    let mut out = format!(
        "rankcode kind={} p={} k={} n={} field={}\n",
        space.kind().name(),
        f.p(),
        f.k(),
        space.n(),
        f.descriptor()
    );
    let _ = writeln!(out, "# {}", code.provenance());
    for w in code.words() {
        out.push_str(&join(w.data()));
        out.push('\n');
    }
    out
}

/// Parses a code file. Unless `trust` is set the minimum distance is recomputed.
pub fn parse_code(text: &str, trust: bool) -> Result<RankCode> {
    let first = text.lines().next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = parse_header(first)?;
    if header.tag != "rankcode" {
        return Err(parse_err(1, "not a rankcode file"));
    }
    let kind = FormKind::parse(header.get("kind")?).ok_or_else(|| parse_err(1, "bad kind"))?;
    let n = header.num("n")? as usize;
    let field = header.field()?;
    let space = match kind {
        FormKind::Sym => MatrixSpace::sym(n, &field),
        FormKind::Herm => MatrixSpace::herm(n, &field).map_err(|e| parse_err(1, e.to_string()))?,
    };
    let mut words = Vec::new();
    for (line_no, line) in body_lines(text) {
        let vals = parse_entries(line_no, line, n * n, field.q())?;
        words.push(Mat::from_vec(&field, n, n, vals));
    }
    let provenance = Provenance::new("imported");
    let mut code = RankCode::new(space, words, provenance).map_err(|e| match e {
        Error::InvariantViolation(m) => Error::InvariantViolation(m),
        other => Error::InvariantViolation(other.to_string()),
    })?;
    if !trust && code.len() >= 2 {
        code.verify()?;
    }
    Ok(code)
}

pub fn write_code(code: &RankCode, path: &Path) -> Result<()> {
    std::fs::write(path, format_code(code))?;
    Ok(())
}

pub fn read_code(path: &Path, trust: bool) -> Result<RankCode> {
    parse_code(&std::fs::read_to_string(path)?, trust)
}

pub fn format_spread(spread: &PartialSpread) -> String {
    let space = &spread.space;
    let f = space.field();
    let kind = match space.kind() {
        Kind::Symplectic => "symplectic",
        Kind::Hermitian => "hermitian",
    };
    let dim = spread.members.first().map_or(space.n(), |m| m.dim());
    let mut out = format!(
        "subspaces kind={kind} p={} k={} n={} field={} dim={dim}\n",
        f.p(),
        f.k(),
        space.n(),
        f.descriptor()
    );
    let _ = writeln!(out, "# {}", spread.provenance);
    for m in &spread.members {
        out.push_str(&join(m.basis().data()));
        out.push('\n');
    }
    out
}

/// Parses a spread file and checks that it is a partial spread.
pub fn parse_spread(text: &str) -> Result<PartialSpread> {
    let first = text.lines().next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = parse_header(first)?;
    if header.tag != "subspaces" {
        return Err(parse_err(1, "not a subspaces file"));
    }
    let n = header.num("n")? as usize;
    let dim = header.num("dim")? as usize;
    let field = header.field()?;
    let space = match header.get("kind")? {
        "symplectic" => PolarSpace::symplectic(n, &field),
        "hermitian" => PolarSpace::hermitian(n, &field).map_err(|e| parse_err(1, e.to_string()))?,
        other => return Err(parse_err(1, format!("bad kind {other:?}"))),
    };
    let mut members = Vec::new();
    for (line_no, line) in body_lines(text) {
        let vals = parse_entries(line_no, line, dim * 2 * n, field.q())?;
        let s = Subspace::span(&Mat::from_vec(&field, dim, 2 * n, vals));
        if s.dim() != dim {
            return Err(Error::InvariantViolation(format!("line {line_no}: rows are dependent")));
        }
        members.push(s);
    }
    let spread = PartialSpread { space, members, provenance: "imported".into() };
    spread.verify().map_err(|e| Error::InvariantViolation(e.to_string()))?;
    Ok(spread)
}

pub fn write_spread(spread: &PartialSpread, path: &Path) -> Result<()> {
    std::fs::write(path, format_spread(spread))?;
    Ok(())
}

pub fn read_spread(path: &Path) -> Result<PartialSpread> {
    parse_spread(&std::fs::read_to_string(path)?)
}
