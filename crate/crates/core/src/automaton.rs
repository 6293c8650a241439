//! The two-way deterministic automaton model.
//!
//! States are numbered `1..=n`. The tape of an input `w` is `⊢ w ⊣`; the
//! transition table is partial over `Σ ∪ {⊢, ⊣}` and stored densely, one row
//! per state with the alphabet letters first and the two end-markers last.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// State identifier, `1..=n`.
pub type StateId = u32;

/// An input word as a sequence of letter indices into the alphabet.
pub type Word = Vec<usize>;

/// Upper limit on the number of states.
pub const MAX_STATES: u32 = u16::MAX as u32;

/// Reserved spelling of the left end-marker in documents.
pub const LEFT_END_TOKEN: &str = "LEND";
/// Reserved spelling of the right end-marker in documents.
pub const RIGHT_END_TOKEN: &str = "REND";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl Direction {
    pub fn offset(self) -> isize {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }
}

/// A tape symbol: an alphabet letter or one of the end-markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Letter(usize),
    LeftEnd,
    RightEnd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub target: StateId,
    pub dir: Direction,
}

impl Move {
    pub fn new(target: StateId, dir: Direction) -> Self {
        Self { target, dir }
    }

    pub fn right(target: StateId) -> Self {
        Self::new(target, Direction::Right)
    }

    pub fn left(target: StateId) -> Self {
        Self::new(target, Direction::Left)
    }
}

/// Checks a single alphabet token: non-empty, no whitespace, not reserved.
pub fn check_token(token: &str) -> std::result::Result<(), String> {
    if token.is_empty() {
        return Err("empty alphabet token".into());
    }
    if token.chars().any(char::is_whitespace) {
        return Err(format!("alphabet token `{token}` contains whitespace"));
    }
    if token == LEFT_END_TOKEN || token == RIGHT_END_TOKEN {
        return Err(format!("alphabet token `{token}` is a reserved end-marker"));
    }
    Ok(())
}

/// A deterministic two-way finite automaton.
///
/// Accepting states only matter at the right end-marker: the automaton accepts
/// as soon as it arrives at `⊣` in a state of `accepting`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDfa {
    alphabet: Vec<String>,
    states: u32,
    initial: StateId,
    accepting: BTreeSet<StateId>,
    table: Vec<Option<Move>>,
    aliases: BTreeMap<StateId, String>,
}

impl TwoDfa {
    /// An automaton with no transitions and no accepting states.
    pub fn new(alphabet: Vec<String>, states: u32, initial: StateId) -> Result<Self> {
        let mut errors = Vec::new();
        if states == 0 {
            errors.push("automaton needs at least one state".to_string());
        }
        if states > MAX_STATES {
            errors.push(format!("at most {MAX_STATES} states are supported"));
        }
        if initial == 0 || initial > states {
            errors.push(format!(
                "initial state {initial} is out of range 1..={states}"
            ));
        }
        let mut seen = BTreeSet::new();
        for tok in &alphabet {
            if let Err(e) = check_token(tok) {
                errors.push(e);
            }
            if !seen.insert(tok.as_str()) {
                errors.push(format!("duplicate alphabet token `{tok}`"));
            }
        }
        if !errors.is_empty() {
            return Err(Error::Invalid(ValidationReport {
                errors,
                warnings: Vec::new(),
            }));
        }
        let width = alphabet.len() + 2;
        Ok(Self {
            alphabet,
            states,
            initial,
            accepting: BTreeSet::new(),
            table: vec![None; states as usize * width],
            aliases: BTreeMap::new(),
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_count(&self) -> u32 {
        self.states
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        1..=self.states
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(&q)
    }

    pub fn aliases(&self) -> &BTreeMap<StateId, String> {
        &self.aliases
    }

    /// Display name of a state: its alias if one is set, else the number.
    pub fn state_name(&self, q: StateId) -> String {
        self.aliases
            .get(&q)
            .cloned()
            .unwrap_or_else(|| q.to_string())
    }

    fn width(&self) -> usize {
        self.alphabet.len() + 2
    }

    fn column(&self, sym: Symbol) -> usize {
        match sym {
            Symbol::Letter(i) => i,
            Symbol::LeftEnd => self.alphabet.len(),
            Symbol::RightEnd => self.alphabet.len() + 1,
        }
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q == 0 || q > self.states {
            return Err(Error::StateOutOfRange {
                state: q,
                states: self.states,
            });
        }
        Ok(())
    }

    fn check_symbol(&self, sym: Symbol) -> Result<()> {
        match sym {
            Symbol::Letter(i) if i >= self.alphabet.len() => Err(Error::UnknownLetter(i)),
            _ => Ok(()),
        }
    }

    /// The transition `δ(q, sym)`, if defined.
    ///
    /// `q` must be a valid state and `sym` a valid symbol; this is the hot
    /// path of every simulation, so the bounds are only debug-asserted.
    #[inline]
    pub fn delta(&self, q: StateId, sym: Symbol) -> Option<Move> {
        debug_assert!(q >= 1 && q <= self.states);
        self.table[(q as usize - 1) * self.width() + self.column(sym)]
    }

    #[inline]
    pub fn delta_letter(&self, q: StateId, letter: usize) -> Option<Move> {
        self.table[(q as usize - 1) * self.width() + letter]
    }

    pub fn set_transition(&mut self, q: StateId, sym: Symbol, mv: Option<Move>) -> Result<()> {
        self.check_state(q)?;
        self.check_symbol(sym)?;
        if let Some(m) = mv {
            self.check_state(m.target)?;
        }
        let idx = (q as usize - 1) * self.width() + self.column(sym);
        self.table[idx] = mv;
        Ok(())
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) -> Result<()> {
        self.check_state(q)?;
        if accepting {
            self.accepting.insert(q);
        } else {
            self.accepting.remove(&q);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: StateId) -> Result<()> {
        self.check_state(q)?;
        self.initial = q;
        Ok(())
    }

    pub fn set_alias(&mut self, q: StateId, alias: impl Into<String>) -> Result<()> {
        self.check_state(q)?;
        self.aliases.insert(q, alias.into());
        Ok(())
    }

    /// All defined transitions in canonical order: states ascending, then
    /// alphabet letters in order, then `⊢`, then `⊣`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, Move)> + '_ {
        let s = self.alphabet.len();
        let width = self.width();
        self.table.iter().enumerate().filter_map(move |(idx, mv)| {
            let mv = (*mv)?;
            let q = (idx / width) as StateId + 1;
            let col = idx % width;
            let sym = match col {
                c if c < s => Symbol::Letter(c),
                c if c == s => Symbol::LeftEnd,
                _ => Symbol::RightEnd,
            };
            Some((q, sym, mv))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.table.iter().filter(|m| m.is_some()).count()
    }

    pub fn symbol_token(&self, sym: Symbol) -> &str {
        match sym {
            Symbol::Letter(i) => &self.alphabet[i],
            Symbol::LeftEnd => LEFT_END_TOKEN,
            Symbol::RightEnd => RIGHT_END_TOKEN,
        }
    }

    /// Resolves a document token (alphabet letter, `LEND` or `REND`).
    pub fn symbol_of(&self, token: &str) -> Option<Symbol> {
        match token {
            LEFT_END_TOKEN => Some(Symbol::LeftEnd),
            RIGHT_END_TOKEN => Some(Symbol::RightEnd),
            _ => self.letter_of(token).map(Symbol::Letter),
        }
    }

    pub fn letter_of(&self, token: &str) -> Option<usize> {
        self.alphabet.iter().position(|t| t == token)
    }

    /// Parses a whitespace-separated token sequence into a word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|tok| {
                self.letter_of(tok)
                    .ok_or_else(|| Error::UnknownToken(tok.into()))
            })
            .collect()
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        word.iter()
            .map(|&i| self.alphabet[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&i| i >= self.alphabet.len()) {
            Some(&i) => Err(Error::UnknownLetter(i)),
            None => Ok(()),
        }
    }

    /// Appends `extra` fresh letters with no transitions.
    pub fn pad_alphabet(&mut self, extra: usize) {
        if extra == 0 {
            return;
        }
        let old_width = self.width();
        let s = self.alphabet.len();
        let mut fresh = 0usize;
        for _ in 0..extra {
            loop {
                let tok = format!("z{fresh}");
                fresh += 1;
                if !self.alphabet.contains(&tok) {
                    self.alphabet.push(tok);
                    break;
                }
            }
        }
        let new_width = self.width();
        let mut table = vec![None; self.states as usize * new_width];
        for q in 0..self.states as usize {
            let old = &self.table[q * old_width..(q + 1) * old_width];
            let row = &mut table[q * new_width..(q + 1) * new_width];
            row[..s].copy_from_slice(&old[..s]);
            row[new_width - 2..].copy_from_slice(&old[s..]);
        }
        self.table = table;
    }

    /// Structural warnings: moves that would leave the tape.
    pub fn validate(&self) -> ValidationReport {
        let mut warnings = Vec::new();
        for (q, sym, mv) in self.transitions() {
            let off = matches!(
                (sym, mv.dir),
                (Symbol::RightEnd, Direction::Right) | (Symbol::LeftEnd, Direction::Left)
            );
            if off {
                warnings.push(format!(
                    "off-tape move: δ({q}, {}) moves {:?} past the end-marker",
                    self.symbol_token(sym),
                    mv.dir
                ));
            }
        }
        ValidationReport {
            errors: Vec::new(),
            warnings,
        }
    }

    /// Splits the states by the direction of the moves that enter them.
    pub fn classify_direction(&self) -> DirectionClass {
        let n = self.states as usize;
        let mut by_right = vec![false; n + 1];
        let mut by_left = vec![false; n + 1];
        for (_, _, mv) in self.transitions() {
            match mv.dir {
                Direction::Right => by_right[mv.target as usize] = true,
                Direction::Left => by_left[mv.target as usize] = true,
            }
        }
        let mut partition = DirectionPartition::default();
        for q in self.states() {
            let i = q as usize;
            match (by_right[i], by_left[i]) {
                (true, true) => return DirectionClass::NotDeterminate { state: q },
                (true, false) => partition.q_plus.insert(q),
                (false, true) => partition.q_minus.insert(q),
                (false, false) => partition.unconstrained.insert(q),
            };
        }
        DirectionClass::Determinate(partition)
    }

    pub fn is_direction_determinate(&self) -> bool {
        matches!(self.classify_direction(), DirectionClass::Determinate(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DirectionPartition {
    pub q_plus: BTreeSet<StateId>,
    pub q_minus: BTreeSet<StateId>,
    pub unconstrained: BTreeSet<StateId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectionClass {
    Determinate(DirectionPartition),
    /// `state` is entered both by a left move and by a right move.
    NotDeterminate {
        state: StateId,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .errors
            .iter()
            .map(|e| format!("error: {e}"))
            .chain(self.warnings.iter().map(|w| format!("warning: {w}")))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_letters() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn reserved_and_duplicate_tokens_are_rejected() {
        assert!(TwoDfa::new(vec!["LEND".into()], 1, 1).is_err());
        assert!(TwoDfa::new(vec!["REND".into()], 1, 1).is_err());
        assert!(TwoDfa::new(vec!["a".into(), "a".into()], 1, 1).is_err());
        assert!(TwoDfa::new(vec!["a b".into()], 1, 1).is_err());
        assert!(TwoDfa::new(vec!["".into()], 1, 1).is_err());
        assert!(TwoDfa::new(two_letters(), 0, 1).is_err());
        assert!(TwoDfa::new(two_letters(), 2, 3).is_err());
    }

    #[test]
    fn transition_range_checks() {
        let mut a = TwoDfa::new(two_letters(), 3, 1).unwrap();
        assert!(a
            .set_transition(1, Symbol::Letter(0), Some(Move::right(5)))
            .is_err());
        assert!(a
            .set_transition(4, Symbol::Letter(0), Some(Move::right(1)))
            .is_err());
        assert!(a
            .set_transition(1, Symbol::Letter(2), Some(Move::right(1)))
            .is_err());
        a.set_transition(3, Symbol::RightEnd, Some(Move::left(2)))
            .unwrap();
        assert_eq!(a.delta(3, Symbol::RightEnd), Some(Move::left(2)));
    }

    #[test]
    fn off_tape_moves_are_warnings() {
        let mut a = TwoDfa::new(two_letters(), 1, 1).unwrap();
        a.set_transition(1, Symbol::RightEnd, Some(Move::right(1)))
            .unwrap();
        let report = a.validate();
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 1);
        assert!(report.warnings[0].contains("off-tape"));

        a.set_transition(1, Symbol::LeftEnd, Some(Move::left(1)))
            .unwrap();
        assert_eq!(a.validate().warnings.len(), 2);
    }

    #[test]
    fn no_transitions_means_everything_unconstrained() {
        let a = TwoDfa::new(two_letters(), 3, 1).unwrap();
        match a.classify_direction() {
            DirectionClass::Determinate(p) => {
                assert!(p.q_plus.is_empty());
                assert!(p.q_minus.is_empty());
                assert_eq!(p.unconstrained, BTreeSet::from([1, 2, 3]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn transitions_are_listed_in_canonical_order() {
        let mut a = TwoDfa::new(two_letters(), 2, 1).unwrap();
        a.set_transition(2, Symbol::LeftEnd, Some(Move::right(1)))
            .unwrap();
        a.set_transition(1, Symbol::RightEnd, Some(Move::left(1)))
            .unwrap();
        a.set_transition(2, Symbol::Letter(1), Some(Move::right(2)))
            .unwrap();
        a.set_transition(1, Symbol::Letter(0), Some(Move::left(2)))
            .unwrap();
        let order: Vec<_> = a.transitions().map(|(q, s, _)| (q, s)).collect();
        assert_eq!(
            order,
            vec![
                (1, Symbol::Letter(0)),
                (1, Symbol::RightEnd),
                (2, Symbol::Letter(1)),
                (2, Symbol::LeftEnd),
            ]
        );
    }

    #[test]
    fn padding_keeps_existing_transitions() {
        let mut a = TwoDfa::new(two_letters(), 2, 1).unwrap();
        a.set_transition(1, Symbol::Letter(1), Some(Move::left(2)))
            .unwrap();
        a.set_transition(2, Symbol::LeftEnd, Some(Move::right(1)))
            .unwrap();
        a.set_transition(2, Symbol::RightEnd, Some(Move::left(1)))
            .unwrap();
        let before: Vec<_> = a.transitions().collect();
        a.pad_alphabet(2);
        assert_eq!(a.alphabet_size(), 4);
        assert_eq!(a.transitions().collect::<Vec<_>>(), before);
    }

    #[test]
    fn words_round_trip_through_tokens() {
        let a = TwoDfa::new(two_letters(), 1, 1).unwrap();
        let w = a.parse_word("  b a\tb ").unwrap();
        assert_eq!(w, vec![1, 0, 1]);
        assert_eq!(a.format_word(&w), "b a b");
        assert_eq!(a.parse_word("").unwrap(), Vec::<usize>::new());
        assert!(matches!(a.parse_word("a c"), Err(Error::UnknownToken(t)) if t == "c"));
    }
}
