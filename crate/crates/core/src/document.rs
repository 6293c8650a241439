//! JSON document format for automata.
//!
//! ```json
//! {"states": 2, "initial": 2, "accepting": [1], "alphabet": ["a", "b"],
//!  "transitions": [{"state": 1, "symbol": "a", "target": 1, "move": "R"}],
//!  "aliases": {"2": "1'"}}
//! ```
//!
//! Serialization is canonical: transitions are listed with states ascending and,
//! within a state, alphabet letters in order followed by `LEND` and `REND`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::automaton::{check_token, Direction, Move, StateId, TwoDfa, ValidationReport};
use crate::automaton::{LEFT_END_TOKEN, MAX_STATES, RIGHT_END_TOKEN};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub states: u32,
    pub initial: StateId,
    pub accepting: Vec<StateId>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub aliases: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub state: StateId,
    pub symbol: String,
    pub target: StateId,
    #[serde(rename = "move")]
    pub dir: Direction,
}

/// Checks every structural invariant of a raw document.
pub fn validate_document(doc: &AutomatonDoc) -> ValidationReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let n = doc.states;
    let in_range = |q: StateId| q >= 1 && q <= n;

    if n == 0 {
        errors.push("automaton needs at least one state".to_string());
    }
    if n > MAX_STATES {
        errors.push(format!("at most {MAX_STATES} states are supported"));
    }
    if !in_range(doc.initial) {
        errors.push(format!(
            "initial state {} is out of range 1..={n}",
            doc.initial
        ));
    }
    for &q in &doc.accepting {
        if !in_range(q) {
            errors.push(format!("accepting state {q} is out of range 1..={n}"));
        }
    }
    let mut alphabet = BTreeSet::new();
    for tok in &doc.alphabet {
        if let Err(e) = check_token(tok) {
            errors.push(e);
        }
        if !alphabet.insert(tok.as_str()) {
            errors.push(format!("duplicate alphabet token `{tok}`"));
        }
    }
    let mut cells = BTreeSet::new();
    for t in &doc.transitions {
        if !in_range(t.state) {
            errors.push(format!(
                "transition source {} is out of range 1..={n}",
                t.state
            ));
        }
        if !in_range(t.target) {
            errors.push(format!(
                "transition target {} is out of range 1..={n}",
                t.target
            ));
        }
        let is_end = t.symbol == LEFT_END_TOKEN || t.symbol == RIGHT_END_TOKEN;
        if !is_end && !alphabet.contains(t.symbol.as_str()) {
            errors.push(format!(
                "transition symbol `{}` is not in the alphabet",
                t.symbol
            ));
        }
        if !cells.insert((t.state, t.symbol.as_str())) {
            errors.push(format!(
                "duplicate transition cell ({}, {})",
                t.state, t.symbol
            ));
        }
        let off_tape = (t.symbol == RIGHT_END_TOKEN && t.dir == Direction::Right)
            || (t.symbol == LEFT_END_TOKEN && t.dir == Direction::Left);
        if off_tape {
            warnings.push(format!(
                "off-tape move: δ({}, {}) moves {:?} past the end-marker",
                t.state, t.symbol, t.dir
            ));
        }
    }
    for key in doc.aliases.keys() {
        match key.parse::<StateId>() {
            Ok(q) if in_range(q) => {}
            _ => errors.push(format!("alias key `{key}` is not a state")),
        }
    }
    ValidationReport { errors, warnings }
}

impl TwoDfa {
    pub fn from_document(doc: &AutomatonDoc) -> Result<Self> {
        let report = validate_document(doc);
        if !report.is_ok() {
            return Err(Error::Invalid(report));
        }
        let mut a = TwoDfa::new(doc.alphabet.clone(), doc.states, doc.initial)?;
        for &q in &doc.accepting {
            a.set_accepting(q, true)?;
        }
        for t in &doc.transitions {
            let sym = a
                .symbol_of(&t.symbol)
                .ok_or_else(|| Error::UnknownToken(t.symbol.clone()))?;
            a.set_transition(t.state, sym, Some(Move::new(t.target, t.dir)))?;
        }
        for (key, alias) in &doc.aliases {
            // validated above
            let q: StateId = key.parse().expect("alias key checked");
            a.set_alias(q, alias.clone())?;
        }
        Ok(a)
    }

    pub fn to_document(&self) -> AutomatonDoc {
        AutomatonDoc {
            states: self.state_count(),
            initial: self.initial(),
            accepting: self.accepting().iter().copied().collect(),
            alphabet: self.alphabet().to_vec(),
            transitions: self
                .transitions()
                .map(|(q, sym, mv)| TransitionDoc {
                    state: q,
                    symbol: self.symbol_token(sym).to_string(),
                    target: mv.target,
                    dir: mv.dir,
                })
                .collect(),
            aliases: self
                .aliases()
                .iter()
                .map(|(q, s)| (q.to_string(), s.clone()))
                .collect(),
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<TwoDfa> {
    let doc: AutomatonDoc = serde_json::from_str(text)?;
    TwoDfa::from_document(&doc)
}

/// Canonical pretty-printed document, terminated by a newline.
pub fn serialize_automaton(a: &TwoDfa) -> String {
    let mut out =
        serde_json::to_string_pretty(&a.to_document()).expect("document is always serializable");
    out.push('\n');
    out
}
