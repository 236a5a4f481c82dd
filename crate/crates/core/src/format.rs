//! Line-oriented text formats.
//!
//! `plmap v1`:
//!
//! ```text
//! # tent map
//! plmap v1 3
//! 0/1 0/1
//! 1/2 1/1
//! 1/1 0/1
//! ```
//!
//! `threads v1`: a header `threads v1 depth=<d> root=<p>/<q>`, then one thread
//! per line, coordinates separated by single spaces.
//!
//! In both formats `#` starts a comment running to the end of the line and
//! blank lines are ignored. Every rational must be canonical `p/q`.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::error::Error as CoreError;
use crate::inverse_limit::Thread;
use crate::plmap::PlMap;
use crate::rational::{parse_rational, RationalSyntax, UnitRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error(transparent)]
    Invalid(#[from] CoreError),
}

impl FormatError {
    fn at(line: usize, column: usize, reason: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            column,
            reason: reason.into(),
        }
    }
}

/// A content line: 1-based line number and its tokens with 1-based columns.
struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body
            .char_indices()
            .chain(std::iter::once((body.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((s + 1, &body[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn unit_token(line: usize, column: usize, token: &str) -> Result<UnitRational, FormatError> {
    let r = parse_rational(token).map_err(|reason: RationalSyntax| {
        FormatError::at(line, column, format!("`{token}`: {reason}"))
    })?;
    UnitRational::new(r)
        .map_err(|_| FormatError::at(line, column, format!("`{token}` outside [0,1]")))
}

pub fn parse_plmap(text: &str) -> Result<PlMap, FormatError> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| FormatError::at(1, 1, "missing `plmap v1 <n>` header"))?;
    let count = match header.tokens.as_slice() {
        [(_, "plmap"), (_, "v1"), (col, n)] => n.parse::<usize>().map_err(|_| {
            FormatError::at(header.number, *col, format!("bad breakpoint count `{n}`"))
        })?,
        _ => {
            return Err(FormatError::at(
                header.number,
                1,
                "missing `plmap v1 <n>` header",
            ))
        }
    };
    let mut points = Vec::with_capacity(count);
    let mut last_line = header.number;
    for line in lines {
        last_line = line.number;
        if points.len() == count {
            return Err(FormatError::at(
                line.number,
                1,
                "more breakpoints than declared",
            ));
        }
        match line.tokens.as_slice() {
            [(cx, x), (cy, y)] => {
                points.push((
                    unit_token(line.number, *cx, x)?,
                    unit_token(line.number, *cy, y)?,
                ));
            }
            _ => {
                return Err(FormatError::at(
                    line.number,
                    1,
                    "expected exactly two rationals `x y`",
                ))
            }
        }
    }
    if points.len() != count {
        return Err(FormatError::at(
            last_line + 1,
            1,
            format!("expected {count} breakpoints, found {}", points.len()),
        ));
    }
    Ok(PlMap::new(points)?)
}

pub fn emit_plmap(m: &PlMap) -> String {
    let mut out = format!("plmap v1 {}\n", m.len());
    for (x, y) in m.breakpoints() {
        let _ = writeln!(out, "{x} {y}");
    }
    out
}

/// Writes threads that share a depth and root.
pub fn emit_threads(depth: usize, root: &UnitRational, threads: &[Thread]) -> String {
    let mut out = format!("threads v1 depth={depth} root={root}\n");
    for t in threads {
        let mut first = true;
        for x in t.coords() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{x}");
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadDump {
    pub depth: usize,
    pub root: UnitRational,
    pub threads: Vec<Thread>,
}

/// Parses a thread dump, validating each line as a thread of `bonding`.
pub fn parse_threads(text: &str, bonding: &Arc<PlMap>) -> Result<ThreadDump, FormatError> {
    let mut lines = content_lines(text);
    let header = lines
        .next()
        .ok_or_else(|| FormatError::at(1, 1, "missing `threads v1` header"))?;
    let (depth, root) = match header.tokens.as_slice() {
        [(_, "threads"), (_, "v1"), (cd, d), (cr, r)] => {
            let depth = d
                .strip_prefix("depth=")
                .and_then(|v| v.parse::<usize>().ok())
                .filter(|&v| v >= 1)
                .ok_or_else(|| {
                    FormatError::at(header.number, *cd, format!("bad depth field `{d}`"))
                })?;
            let root_tok = r.strip_prefix("root=").ok_or_else(|| {
                FormatError::at(header.number, *cr, format!("bad root field `{r}`"))
            })?;
            (depth, unit_token(header.number, cr + 5, root_tok)?)
        }
        _ => {
            return Err(FormatError::at(
                header.number,
                1,
                "missing `threads v1` header",
            ))
        }
    };
    let mut threads = Vec::new();
    for line in lines {
        if line.tokens.len() != depth {
            return Err(FormatError::at(
                line.number,
                1,
                format!("expected {depth} coordinates, found {}", line.tokens.len()),
            ));
        }
        let coords = line
            .tokens
            .iter()
            .map(|(c, tok)| unit_token(line.number, *c, tok))
            .collect::<Result<Vec<_>, _>>()?;
        if coords[0] != root {
            return Err(FormatError::at(
                line.number,
                1,
                "first coordinate differs from root",
            ));
        }
        threads.push(Thread::new(bonding.clone(), coords)?);
    }
    Ok(ThreadDump {
        depth,
        root,
        threads,
    })
}
