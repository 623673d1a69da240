//! The `.ufa` text format and DOT rendering.
//!
//! ```text
//! ufa 1
//! tracks 2
//! states 2
//! start 0
//! accept 1
//! trans 0 _1 1
//! trans 0 11 0
//! ```

use std::fmt::Write as _;

use super::UnaryAutomaton;
use crate::diagram::{pattern_text, ConvLetter};
use crate::error::{Error, Result};

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::Format {
        line,
        message: message.into(),
    }
}

fn number(line: usize, word: Option<&str>, what: &str) -> Result<usize> {
    let word = word.ok_or_else(|| bad(line, format!("missing {what}")))?;
    word.parse()
        .map_err(|_| bad(line, format!("bad {what} `{word}`")))
}

pub fn parse_ufa(text: &str) -> Result<UnaryAutomaton> {
    let mut version = false;
    let mut tracks = None;
    let mut states = None;
    let mut start = None;
    let mut accept: Vec<(usize, usize)> = Vec::new();
    let mut trans: Vec<(usize, usize, u32, usize)> = Vec::new();
    let mut eps: Vec<(usize, usize, usize)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(keyword) = words.next() else {
            continue;
        };
        match keyword {
            "ufa" => {
                if number(line, words.next(), "version")? != 1 {
                    return Err(bad(line, "unsupported format version"));
                }
                version = true;
            }
            "tracks" => tracks = Some(number(line, words.next(), "track count")?),
            "states" => states = Some(number(line, words.next(), "state count")?),
            "start" => start = Some(number(line, words.next(), "start state")?),
            "accept" => {
                for w in words.by_ref() {
                    accept.push((line, number(line, Some(w), "state")?));
                }
            }
            "trans" => {
                let from = number(line, words.next(), "source state")?;
                let pattern = words.next().ok_or_else(|| bad(line, "missing pattern"))?;
                let n = tracks.ok_or_else(|| bad(line, "`tracks` must precede transitions"))?;
                if pattern.len() != n {
                    return Err(bad(line, format!("pattern `{pattern}` has wrong width")));
                }
                let letter = ConvLetter::parse(pattern)
                    .ok_or_else(|| bad(line, format!("bad pattern `{pattern}`")))?;
                let to = number(line, words.next(), "target state")?;
                trans.push((line, from, letter.active(), to));
            }
            "eps" => {
                let from = number(line, words.next(), "source state")?;
                let to = number(line, words.next(), "target state")?;
                eps.push((line, from, to));
            }
            other => return Err(bad(line, format!("unknown keyword `{other}`"))),
        }
        if words.next().is_some() {
            return Err(bad(line, "trailing input"));
        }
    }

    if !version {
        return Err(bad(1, "missing `ufa 1` header"));
    }
    let tracks = tracks.ok_or_else(|| bad(0, "missing `tracks`"))?;
    if tracks > super::MAX_TRACKS {
        return Err(Error::TooManyTracks(tracks));
    }
    let states = states.ok_or_else(|| bad(0, "missing `states`"))?;
    if states == 0 {
        return Err(bad(0, "an automaton needs at least one state"));
    }
    let start = start.ok_or_else(|| bad(0, "missing `start`"))?;
    let check = |line: usize, s: usize| {
        if s < states {
            Ok(s)
        } else {
            Err(bad(line, format!("state {s} out of range")))
        }
    };
    let mut a = UnaryAutomaton::new(tracks, states, check(0, start)?);
    for (line, s) in accept {
        a.set_accepting(check(line, s)?, true);
    }
    for (line, from, letter, to) in trans {
        a.add_transition(check(line, from)?, letter, check(line, to)?);
    }
    for (line, from, to) in eps {
        a.add_epsilon(check(line, from)?, check(line, to)?);
    }
    Ok(a)
}

/// Canonical text: transitions ordered by source state, then pattern, then
/// target.
pub fn write_ufa(a: &UnaryAutomaton) -> String {
    let mut out = String::new();
    writeln!(out, "ufa 1").unwrap();
    writeln!(out, "tracks {}", a.tracks()).unwrap();
    writeln!(out, "states {}", a.state_count()).unwrap();
    writeln!(out, "start {}", a.start()).unwrap();
    out.push_str("accept");
    for s in a.accepting_states() {
        write!(out, " {s}").unwrap();
    }
    out.push('\n');
    for s in 0..a.state_count() {
        let mut ts = a.transitions(s).to_vec();
        ts.sort_unstable();
        for (letter, to) in ts {
            writeln!(out, "trans {s} {} {to}", pattern_text(letter, a.tracks())).unwrap();
        }
    }
    for s in 0..a.state_count() {
        let mut es = a.epsilons(s).to_vec();
        es.sort_unstable();
        for to in es {
            writeln!(out, "eps {s} {to}").unwrap();
        }
    }
    out
}

pub fn to_dot(a: &UnaryAutomaton) -> String {
    let mut out = String::from("digraph ufa {\n  rankdir=LR;\n  init [shape=point];\n");
    for s in 0..a.state_count() {
        let shape = if a.is_accepting(s) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  s{s} [shape={shape},label=\"{s}\"];").unwrap();
    }
    writeln!(out, "  init -> s{};", a.start()).unwrap();
    for s in 0..a.state_count() {
        let mut ts = a.transitions(s).to_vec();
        ts.sort_unstable();
        for (letter, to) in ts {
            let label = pattern_text(letter, a.tracks());
            writeln!(out, "  s{s} -> s{to} [label=\"{label}\"];").unwrap();
        }
        let mut es = a.epsilons(s).to_vec();
        es.sort_unstable();
        for to in es {
            writeln!(out, "  s{s} -> s{to} [label=\"eps\",style=dashed];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
