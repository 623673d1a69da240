//! Unary automatic structures.
//!
//! Relations on the natural numbers are represented by synchronous
//! multi-track automata over a one-letter alphabet: the number `m` is the
//! word `a^m`, and a tuple is read as the convolution of its words. On top of
//! the automaton engine sit a relation algebra, a first-order query compiler,
//! certified transitive closure, the finite "foundational" description of
//! binary relations with its propagation and extraction, structure builders
//! and classifiers for orders, tournaments, forests and maps.

#![allow(clippy::needless_range_loop)]

pub mod automata;
pub mod builders;
pub mod classify;
pub mod closure;
pub mod diagram;
pub mod error;
pub mod fo;
pub mod foundational;
pub mod relation;

pub use automata::{Dfa, UnaryAutomaton};
pub use diagram::{ConvLetter, DiagramCoord, PumpingConstant, UnaryWord};
pub use error::{Error, Result};
pub use relation::Relation;
