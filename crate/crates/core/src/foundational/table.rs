//! Connection tags and the composition calculus of transitive relations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bundle of edges that is present entirely or not at all.
///
/// `S` tags join two seeds and are named by the index difference of their
/// edges; `T` tags run from a `Q'` element into a seed and `U` tags from a
/// seed to a `Q'` element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    SMinusInf,
    SMinus1,
    S0,
    SPlus1,
    SPlusInf,
    T0,
    TPlusInf,
    U0,
    UMinusInf,
}

impl Tag {
    pub const ALL: [Tag; 9] = [
        Tag::SMinusInf,
        Tag::SMinus1,
        Tag::S0,
        Tag::SPlus1,
        Tag::SPlusInf,
        Tag::T0,
        Tag::TPlusInf,
        Tag::U0,
        Tag::UMinusInf,
    ];

    pub const SEED_TO_SEED: [Tag; 5] = [
        Tag::S0,
        Tag::SPlus1,
        Tag::SMinus1,
        Tag::SPlusInf,
        Tag::SMinusInf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::SMinusInf => "S-inf",
            Tag::SMinus1 => "S-1",
            Tag::S0 => "S0",
            Tag::SPlus1 => "S+1",
            Tag::SPlusInf => "S+inf",
            Tag::T0 => "T0",
            Tag::TPlusInf => "T+inf",
            Tag::U0 => "U0",
            Tag::UMinusInf => "U-inf",
        }
    }

    /// Where the connection starts and ends.
    pub fn sorts(self) -> (Sort, Sort) {
        match self {
            Tag::T0 | Tag::TPlusInf => (Sort::Element, Sort::Seed),
            Tag::U0 | Tag::UMinusInf => (Sort::Seed, Sort::Element),
            _ => (Sort::Seed, Sort::Seed),
        }
    }

    /// Index pairs `(i, j)` of the edges making up the connection, with `0`
    /// standing for the `Q'` end of a `T` or `U` connection.
    pub fn pattern(self) -> &'static [(usize, usize)] {
        match self {
            Tag::S0 => &[(1, 1), (2, 2), (3, 3), (4, 4), (5, 5)],
            Tag::SPlus1 => &[(1, 2), (2, 3), (3, 4), (4, 5)],
            Tag::SMinus1 => &[(2, 1), (3, 2), (4, 3), (5, 4)],
            Tag::SPlusInf => &[(1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)],
            Tag::SMinusInf => &[(3, 1), (4, 1), (5, 1), (4, 2), (5, 2), (5, 3)],
            Tag::T0 => &[(0, 1)],
            Tag::TPlusInf => &[(0, 2), (0, 3), (0, 4), (0, 5)],
            Tag::U0 => &[(1, 0)],
            Tag::UMinusInf => &[(2, 0), (3, 0), (4, 0), (5, 0)],
        }
    }

    /// The `S` tag covering an index difference `j - i`.
    pub fn for_difference(delta: i64) -> Tag {
        match delta {
            i64::MIN..=-2 => Tag::SMinusInf,
            -1 => Tag::SMinus1,
            0 => Tag::S0,
            1 => Tag::SPlus1,
            _ => Tag::SPlusInf,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Tag, String> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown connection `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Seed,
    Element,
}

/// What transitivity forces between the outer ends of two chained
/// connections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enforced {
    /// These connections (possibly none).
    Connections(BTreeSet<Tag>),
    /// A single edge between two `Q'` elements.
    QPrimeEdge,
}

#[derive(Clone, Copy)]
enum Cell {
    Invalid,
    Tags(&'static [Tag]),
    Edge,
}

use Cell::{Edge, Invalid, Tags};
use Tag::*;

const STAR: &[Tag] = &[SMinusInf, SMinus1, S0, SPlus1, SPlusInf];
const NONE: Cell = Tags(&[]);

/// Rows: first connection; columns: second; both in [`Tag::ALL`] order.
const TABLE: [[Cell; 9]; 9] = [
    // S-inf
    [
        Tags(&[SMinusInf]),
        Tags(&[SMinusInf]),
        Tags(&[SMinusInf]),
        Tags(&[SMinusInf, SMinus1]),
        Tags(STAR),
        Invalid,
        Invalid,
        Tags(&[UMinusInf]),
        Tags(&[UMinusInf]),
    ],
    // S-1
    [
        Tags(&[SMinusInf]),
        Tags(&[SMinusInf]),
        Tags(&[SMinus1]),
        Tags(&[S0]),
        Tags(&[SPlus1, SPlusInf]),
        Invalid,
        Invalid,
        Tags(&[UMinusInf]),
        Tags(&[UMinusInf]),
    ],
    // S0
    [
        Tags(&[SMinusInf]),
        Tags(&[SMinus1]),
        Tags(&[S0]),
        Tags(&[SPlus1]),
        Tags(&[SPlusInf]),
        Invalid,
        Invalid,
        Tags(&[U0]),
        Tags(&[UMinusInf]),
    ],
    // S+1
    [
        Tags(&[SMinusInf, SMinus1]),
        Tags(&[S0]),
        Tags(&[SPlus1]),
        Tags(&[SPlusInf]),
        Tags(&[SPlusInf]),
        Invalid,
        Invalid,
        NONE,
        Tags(&[U0, UMinusInf]),
    ],
    // S+inf
    [
        Tags(STAR),
        Tags(&[SPlus1, SPlusInf]),
        Tags(&[SPlusInf]),
        Tags(&[SPlusInf]),
        Tags(&[SPlusInf]),
        Invalid,
        Invalid,
        NONE,
        Tags(&[U0, UMinusInf]),
    ],
    // T0
    [
        NONE,
        NONE,
        Tags(&[T0]),
        Tags(&[TPlusInf]),
        Tags(&[TPlusInf]),
        Invalid,
        Invalid,
        Edge,
        NONE,
    ],
    // T+inf
    [
        Tags(&[T0, TPlusInf]),
        Tags(&[T0, TPlusInf]),
        Tags(&[TPlusInf]),
        Tags(&[TPlusInf]),
        Tags(&[TPlusInf]),
        Invalid,
        Invalid,
        NONE,
        Edge,
    ],
    // U0
    [
        Invalid,
        Invalid,
        Invalid,
        Invalid,
        Invalid,
        Tags(&[S0]),
        Tags(&[SPlusInf]),
        Invalid,
        Invalid,
    ],
    // U-inf
    [
        Invalid,
        Invalid,
        Invalid,
        Invalid,
        Invalid,
        Tags(&[SMinus1, SMinusInf]),
        Tags(STAR),
        Invalid,
        Invalid,
    ],
];

fn position(t: Tag) -> usize {
    Tag::ALL.iter().position(|&x| x == t).unwrap()
}

/// Connections forced from the start of `first` to the end of `second` in a
/// transitive foundational relation.
pub fn connection_compose(first: Tag, second: Tag) -> Result<Enforced> {
    match TABLE[position(first)][position(second)] {
        Invalid => Err(Error::NotComposable(
            first.name().to_string(),
            second.name().to_string(),
        )),
        Tags(ts) => Ok(Enforced::Connections(ts.iter().copied().collect())),
        Edge => Ok(Enforced::QPrimeEdge),
    }
}
