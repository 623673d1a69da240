//! The `.ufr` text format for foundational relations.
//!
//! ```text
//! qprime 1
//! seeds 1
//! conn S+1 P0 P0
//! conn S+inf P0 P0
//! conn T0 q0 P0
//! edge q0 q0
//! ```
//!
//! `edge` lines take any two vertices (`q3`, `P2.4`); `conn` lines expand
//! to the edges of the connection. Validation happens after loading.

use std::fmt::Write as _;

use super::{connection_edges, FoundationalRelation, Sort, Tag, Vertex};
use crate::error::{Error, Result};

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn count(line: usize, word: Option<&str>, what: &str) -> Result<usize> {
    let word = word.ok_or_else(|| bad(line, format!("missing {what}")))?;
    word.parse()
        .map_err(|_| bad(line, format!("bad {what} `{word}`")))
}

fn vertex(line: usize, word: Option<&str>) -> Result<Vertex> {
    let word = word.ok_or_else(|| bad(line, "missing vertex"))?;
    let parsed = if let Some(j) = word.strip_prefix('q') {
        j.parse().ok().map(Vertex::Q)
    } else if let Some(rest) = word.strip_prefix('P') {
        rest.split_once('.').and_then(|(k, i)| {
            Some(Vertex::P {
                seed: k.parse().ok()?,
                index: i.parse().ok()?,
            })
        })
    } else {
        None
    };
    parsed.ok_or_else(|| bad(line, format!("bad vertex `{word}`")))
}

/// A `conn` endpoint: `qJ` or `Pk`, depending on the sort.
fn endpoint(line: usize, word: Option<&str>, sort: Sort) -> Result<usize> {
    let word = word.ok_or_else(|| bad(line, "missing connection endpoint"))?;
    let prefix = match sort {
        Sort::Seed => 'P',
        Sort::Element => 'q',
    };
    word.strip_prefix(prefix)
        .and_then(|x| x.parse().ok())
        .ok_or_else(|| bad(line, format!("expected {prefix}<number>, found `{word}`")))
}

pub fn parse_ufr(text: &str) -> Result<FoundationalRelation> {
    let mut qprime = None;
    let mut seeds = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(keyword) = words.next() else {
            continue;
        };
        match keyword {
            "qprime" => qprime = Some(count(line, words.next(), "Q' size")?),
            "seeds" => seeds = Some(count(line, words.next(), "seed count")?),
            "edge" => {
                let a = vertex(line, words.next())?;
                let b = vertex(line, words.next())?;
                edges.push((a, b));
            }
            "conn" => {
                let name = words
                    .next()
                    .ok_or_else(|| bad(line, "missing connection"))?;
                let tag: Tag = name.parse().map_err(|e: String| bad(line, e))?;
                let (from, to) = tag.sorts();
                let src = endpoint(line, words.next(), from)?;
                let dst = endpoint(line, words.next(), to)?;
                edges.extend(connection_edges(tag, src, dst));
            }
            other => return Err(bad(line, format!("unknown keyword `{other}`"))),
        }
        if let Some(extra) = words.next() {
            return Err(bad(line, format!("unexpected `{extra}`")));
        }
    }
    FoundationalRelation::new(qprime.unwrap_or(0), seeds.unwrap_or(0), edges)
}

/// Canonical text: connections first, then the `Q'` edges.
pub fn write_ufr(f: &FoundationalRelation) -> String {
    let mut out = String::new();
    writeln!(out, "qprime {}", f.qprime_size()).unwrap();
    writeln!(out, "seeds {}", f.seed_count()).unwrap();
    for (tag, src, dst) in f.connections() {
        let name = |sort: Sort, x: usize| match sort {
            Sort::Seed => format!("P{x}"),
            Sort::Element => format!("q{x}"),
        };
        let (a, b) = tag.sorts();
        writeln!(out, "conn {tag} {} {}", name(a, src), name(b, dst)).unwrap();
    }
    for &(a, b) in &f.profile().qprime_edges {
        writeln!(out, "edge q{a} q{b}").unwrap();
    }
    out
}
