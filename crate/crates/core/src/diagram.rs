//! Convolution of unary words and the column/row diagram coordinates.
//!
//! A tuple of words `(a^m1, ..., a^mn)` is read synchronously, one letter per
//! step, with finished tracks padded. Over a one-letter alphabet a convolution
//! letter is nothing more than the set of tracks still reading `a`, stored as a
//! bit pattern with track 0 in the most significant position so that the
//! numeric order of patterns matches their textual order.
//!
//! The diagram places the word `a^(x*D + y)` in column `x`, row `y` for a
//! pumping constant `D`.

use std::fmt;

use crate::error::{Error, Result};

/// The word `a^length`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UnaryWord(pub u64);

impl UnaryWord {
    pub fn len(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl From<u64> for UnaryWord {
    fn from(len: u64) -> Self {
        UnaryWord(len)
    }
}

/// Bit of track `track` in an `tracks`-track pattern.
#[inline]
pub fn track_bit(tracks: usize, track: usize) -> u32 {
    debug_assert!(track < tracks);
    1 << (tracks - 1 - track)
}

/// Pattern with every track active.
#[inline]
pub fn all_active(tracks: usize) -> u32 {
    if tracks == 0 {
        0
    } else {
        (1u32 << tracks) - 1
    }
}

/// One convolution letter: the set of tracks still reading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConvLetter {
    active: u32,
    tracks: u8,
}

impl ConvLetter {
    /// Returns `None` for the all-clear pattern or a pattern wider than `tracks`.
    pub fn new(active: u32, tracks: usize) -> Option<Self> {
        if active == 0 || active > all_active(tracks) {
            None
        } else {
            Some(ConvLetter {
                active,
                tracks: tracks as u8,
            })
        }
    }

    pub fn active(self) -> u32 {
        self.active
    }

    pub fn tracks(self) -> usize {
        self.tracks as usize
    }

    pub fn is_active(self, track: usize) -> bool {
        self.active & track_bit(self.tracks(), track) != 0
    }

    /// Parses a pattern such as `1_` or `10` (track 0 leftmost).
    pub fn parse(text: &str) -> Option<Self> {
        let tracks = text.len();
        if tracks == 0 || tracks > 31 {
            return None;
        }
        let mut active = 0u32;
        for c in text.chars() {
            active <<= 1;
            match c {
                '1' => active |= 1,
                '_' | '0' => {}
                _ => return None,
            }
        }
        ConvLetter::new(active, tracks)
    }
}

impl fmt::Display for ConvLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pattern_text(self.active, self.tracks()))
    }
}

/// Textual form of a raw pattern, `1` for active and `_` for padding.
pub fn pattern_text(active: u32, tracks: usize) -> String {
    (0..tracks)
        .map(|t| {
            if active & track_bit(tracks, t) != 0 {
                '1'
            } else {
                '_'
            }
        })
        .collect()
}

/// Convolution of a tuple of unary words.
pub fn conv(tuple: &[UnaryWord]) -> Vec<ConvLetter> {
    let tracks = tuple.len();
    let longest = tuple.iter().map(|w| w.0).max().unwrap_or(0);
    (0..longest)
        .map(|t| {
            let active = tuple
                .iter()
                .enumerate()
                .filter(|(_, w)| w.0 > t)
                .fold(0, |acc, (i, _)| acc | track_bit(tracks, i));
            ConvLetter {
                active,
                tracks: tracks as u8,
            }
        })
        .collect()
}

/// Raw-pattern convolution used on hot paths.
pub(crate) fn conv_raw(tuple: &[u64]) -> impl Iterator<Item = u32> + '_ {
    let tracks = tuple.len();
    let longest = tuple.iter().copied().max().unwrap_or(0);
    (0..longest).map(move |t| {
        tuple
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > t)
            .fold(0, |acc, (i, _)| acc | track_bit(tracks, i))
    })
}

/// Inverse of [`conv`] for `tracks` tracks.
pub fn unconv(letters: &[ConvLetter], tracks: usize) -> Result<Vec<UnaryWord>> {
    let mut lengths = vec![0u64; tracks];
    let mut finished = vec![false; tracks];
    for (position, letter) in letters.iter().enumerate() {
        if letter.tracks() != tracks {
            return Err(Error::ArityMismatch {
                expected: tracks,
                found: letter.tracks(),
            });
        }
        for track in 0..tracks {
            if letter.is_active(track) {
                if finished[track] {
                    return Err(Error::NonMonotonePadding { track, position });
                }
                lengths[track] += 1;
            } else {
                finished[track] = true;
            }
        }
    }
    Ok(lengths.into_iter().map(UnaryWord).collect())
}

/// Number of diagram rows; a common multiple of the loop lengths of an
/// automaton that also exceeds its state count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PumpingConstant(u64);

impl PumpingConstant {
    pub fn new(d: u64) -> Option<Self> {
        (d > 0).then_some(PumpingConstant(d))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for PumpingConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramCoord {
    pub column: u64,
    pub row: u64,
}

impl DiagramCoord {
    pub fn length(self, d: PumpingConstant) -> u64 {
        self.column * d.get() + self.row
    }
}

impl fmt::Display for DiagramCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.column, self.row)
    }
}

pub fn coords(u: UnaryWord, d: PumpingConstant) -> DiagramCoord {
    DiagramCoord {
        column: u.0 / d.get(),
        row: u.0 % d.get(),
    }
}

/// Shift by `n` columns; `None` when the result would fall off the left edge.
pub fn shift(u: UnaryWord, n: i64, d: PumpingConstant) -> Option<UnaryWord> {
    let target = u.0 as i128 + n as i128 * d.get() as i128;
    (target >= 0).then_some(UnaryWord(target as u64))
}
