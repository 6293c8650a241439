//! Two-way deterministic finite automata and the length of their shortest
//! accepted strings.
//!
//! * [`automaton`] and [`document`]: the model and its JSON format.
//! * [`simulate`]: full-tape and segment runs, trace rendering.
//! * [`dirdet`] and [`general`]: the two extremal families.
//! * [`oracle`]: exact shortest accepted strings.
//! * [`search`]: exhaustive and heuristic hunts for long shortest strings.
//! * [`report`]: verification tables and the bounds table.

pub mod automaton;
pub mod bounds;
pub mod dirdet;
pub mod document;
mod error;
pub mod general;
pub mod oracle;
pub mod report;
pub mod search;
pub mod simulate;

pub use automaton::{
    Direction, DirectionClass, DirectionPartition, Move, StateId, Symbol, TwoDfa, ValidationReport,
    Word,
};
pub use document::{parse_automaton, serialize_automaton, AutomatonDoc};
pub use error::{Error, Result};
