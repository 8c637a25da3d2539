//! Text formats for every instance kind.
//!
//! The line formats share one layout: a header `p <kind> ...`, then one
//! record per line. Blank lines and lines starting with `#` are ignored.
//! Serialization is canonical (records sorted ascending, LF endings), so
//! parsing a serialized value gives back the same value.

mod crbds;
mod gmc;
mod happy;
mod rmis;
mod wexpr;

pub use crbds::{parse_crbds, serialize_crbds};
pub use gmc::{parse_gmc, serialize_gmc};
pub use happy::{parse_happy, serialize_happy};
pub use rmis::{parse_rmis, serialize_rmis};
pub use wexpr::{parse_wexpr, serialize_wexpr};

use std::str::FromStr;

use thiserror::Error;

use crate::cwexpr::WExpression;
use crate::graph::ColoredGraph;
use crate::multiway::GmcInstance;
use crate::source::{CrbdsInstance, RmisInstance};

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

type ParseResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    Happy,
    Gmc,
    Wexpr,
    Rmis,
    Crbds,
}

impl InstanceKind {
    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::Happy => "happy",
            InstanceKind::Gmc => "gmc",
            InstanceKind::Wexpr => "wexpr",
            InstanceKind::Rmis => "rmis",
            InstanceKind::Crbds => "crbds",
        }
    }
}

/// Any parsed instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceFile {
    Happy(ColoredGraph),
    Gmc(GmcInstance),
    Wexpr(WExpression),
    Rmis(RmisInstance),
    Crbds(CrbdsInstance),
}

impl InstanceFile {
    /// Detects the kind from the header; text without a `p` header is read
    /// as an expression.
    pub fn parse(text: &str) -> ParseResult<Self> {
        let header = records(text).next();
        let kind = match header.as_ref().map(|r| r.fields.as_slice()) {
            Some([(_, "p"), (_, kind), ..]) => match *kind {
                "happy" => InstanceKind::Happy,
                "gmc" => InstanceKind::Gmc,
                "rmis" => InstanceKind::Rmis,
                "crbds" => InstanceKind::Crbds,
                other => {
                    let r = header.as_ref().unwrap();
                    return Err(ParseError::new(r.line, r.fields[1].0, format!("unknown kind `{other}`")));
                }
            },
            _ => InstanceKind::Wexpr,
        };
        Ok(match kind {
            InstanceKind::Happy => InstanceFile::Happy(parse_happy(text)?),
            InstanceKind::Gmc => InstanceFile::Gmc(parse_gmc(text)?),
            InstanceKind::Wexpr => InstanceFile::Wexpr(parse_wexpr(text)?),
            InstanceKind::Rmis => InstanceFile::Rmis(parse_rmis(text)?),
            InstanceKind::Crbds => InstanceFile::Crbds(parse_crbds(text)?),
        })
    }

    pub fn kind(&self) -> InstanceKind {
        match self {
            InstanceFile::Happy(_) => InstanceKind::Happy,
            InstanceFile::Gmc(_) => InstanceKind::Gmc,
            InstanceFile::Wexpr(_) => InstanceKind::Wexpr,
            InstanceFile::Rmis(_) => InstanceKind::Rmis,
            InstanceFile::Crbds(_) => InstanceKind::Crbds,
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            InstanceFile::Happy(g) => serialize_happy(g),
            InstanceFile::Gmc(g) => serialize_gmc(g),
            InstanceFile::Wexpr(e) => serialize_wexpr(e),
            InstanceFile::Rmis(r) => serialize_rmis(r),
            InstanceFile::Crbds(c) => serialize_crbds(c),
        }
    }
}

/// One non-comment line split into `(column, token)` pairs.
pub(crate) struct Record<'a> {
    pub line: usize,
    pub fields: Vec<(usize, &'a str)>,
}

impl<'a> Record<'a> {
    pub fn tag(&self) -> &'a str {
        self.fields[0].1
    }

    pub fn error(&self, field: usize, message: impl Into<String>) -> ParseError {
        let column = self.fields.get(field).map_or(1, |f| f.0);
        ParseError::new(self.line, column, message)
    }

    /// The record must be `tag` followed by exactly `arity` integers.
    pub fn numbers(&self, arity: usize) -> ParseResult<Vec<usize>> {
        if self.fields.len() != arity + 1 {
            return Err(self.error(
                0,
                format!(
                    "`{}` expects {arity} values, found {}",
                    self.tag(),
                    self.fields.len() - 1
                ),
            ));
        }
        (1..=arity).map(|i| self.number(i)).collect()
    }

    fn number(&self, i: usize) -> ParseResult<usize> {
        let (_, tok) = self.fields[i];
        usize::from_str(tok).map_err(|_| self.error(i, format!("expected a non-negative integer, found `{tok}`")))
    }

    pub fn in_range(&self, i: usize, value: usize, lo: usize, hi: usize, what: &str) -> ParseResult<()> {
        if value < lo || value > hi {
            return Err(self.error(i, format!("{what} {value} outside {lo}..={hi}")));
        }
        Ok(())
    }
}

pub(crate) fn records(text: &str) -> impl Iterator<Item = Record<'_>> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let fields = tokens(line);
        match fields.first() {
            None => None,
            Some((_, t)) if t.starts_with('#') => None,
            Some(_) => Some(Record { line: i + 1, fields }),
        }
    })
}

fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((column(line, s), &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((column(line, s), &line[s..]));
    }
    out
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Reads the header `p <kind> <arity numbers>` and returns the numbers with
/// the remaining records.
pub(crate) fn header<'a>(
    text: &'a str,
    kind: &str,
    arity: usize,
) -> ParseResult<(Record<'a>, Vec<usize>, Vec<Record<'a>>)> {
    let mut all = records(text);
    let Some(head) = all.next() else {
        return Err(ParseError::new(1, 1, format!("missing `p {kind}` header")));
    };
    if head.tag() != "p" || head.fields.get(1).map(|f| f.1) != Some(kind) {
        return Err(head.error(0, format!("expected header `p {kind} ...`")));
    }
    if head.fields.len() != arity + 2 {
        return Err(head.error(0, format!("header `p {kind}` expects {arity} values")));
    }
    let numbers = (2..arity + 2)
        .map(|i| head.number(i))
        .collect::<ParseResult<Vec<_>>>()?;
    Ok((head, numbers, all.collect()))
}

pub(crate) fn unknown(rec: &Record<'_>, allowed: &str) -> ParseError {
    rec.error(0, format!("unknown record `{}`, expected one of {allowed}", rec.tag()))
}
