//! Exact shortest accepted strings.
//!
//! A prefix `⊢u` is summarized by its [`Behavior`]: the state in which the
//! head first leaves `⊢u` to the right when started at `(q₀, ⊢)`, and, for
//! every state `q`, the state in which it leaves `⊢u` to the right after
//! entering the last cell of `⊢u` in `q`. Two prefixes with the same behavior
//! are interchangeable in every context, so a breadth-first search over
//! behaviors finds the shortest accepted string. Reject, loop and falling off
//! the tape are all collapsed into `⊥`, which is lossless because acceptance
//! can only happen at `⊣`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::automaton::{Direction, StateId, Symbol, TwoDfa, Word};
use crate::error::Result;
use crate::simulate::accepts;

/// Packed prefix summary. Slot 0 holds `init`, slot `q` holds `cross(q)`;
/// the value 0 stands for `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Behavior(Box<[u16]>);

impl Behavior {
    pub fn init(&self) -> Option<StateId> {
        decode(self.0[0])
    }

    pub fn cross(&self, q: StateId) -> Option<StateId> {
        decode(self.0[q as usize])
    }

    pub fn state_count(&self) -> usize {
        self.0.len() - 1
    }
}

fn decode(v: u16) -> Option<StateId> {
    (v != 0).then_some(v as StateId)
}

fn encode(q: Option<StateId>) -> u16 {
    q.map_or(0, |q| q as u16)
}

/// Behavior of the empty prefix, i.e. of `⊢` alone.
pub fn initial_behavior(a: &TwoDfa) -> Behavior {
    let exit = |q: StateId| match a.delta(q, Symbol::LeftEnd) {
        Some(mv) if mv.dir == Direction::Right => Some(mv.target),
        _ => None,
    };
    let mut slots = vec![0u16; a.state_count() as usize + 1];
    slots[0] = encode(exit(a.initial()));
    for q in a.states() {
        slots[q as usize] = encode(exit(q));
    }
    Behavior(slots.into_boxed_slice())
}

/// Behavior of `⊢u·letter` given the behavior `b` of `⊢u`.
pub fn extend_behavior(a: &TwoDfa, b: &Behavior, letter: usize) -> Behavior {
    let n = a.state_count();
    let mut slots = vec![0u16; n as usize + 1];
    for q in 1..=n {
        slots[q as usize] = encode(exit_right(a, b, letter, q));
    }
    slots[0] = match b.init() {
        Some(q) => slots[q as usize],
        None => 0,
    };
    Behavior(slots.into_boxed_slice())
}

/// Zig-zags between the new cell and the prefix until the head leaves to the
/// right; more than `n` visits to the new cell means a repeated state.
fn exit_right(a: &TwoDfa, b: &Behavior, letter: usize, mut p: StateId) -> Option<StateId> {
    for _ in 0..a.state_count() {
        let mv = a.delta_letter(p, letter)?;
        match mv.dir {
            Direction::Right => return Some(mv.target),
            Direction::Left => p = b.cross(mv.target)?,
        }
    }
    None
}

/// Whether a prefix with behavior `b` is accepted once `⊣` follows it.
pub fn accepts_here(a: &TwoDfa, b: &Behavior) -> bool {
    let Some(mut p) = b.init() else {
        return false;
    };
    for _ in 0..a.state_count() {
        if a.is_accepting(p) {
            return true;
        }
        match a.delta(p, Symbol::RightEnd) {
            Some(mv) if mv.dir == Direction::Left => match b.cross(mv.target) {
                Some(next) => p = next,
                None => return false,
            },
            _ => return false,
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestResult {
    pub word: Option<Word>,
    pub behaviors_explored: usize,
}

impl ShortestResult {
    pub fn found(&self) -> bool {
        self.word.is_some()
    }

    pub fn length(&self) -> Option<usize> {
        self.word.as_ref().map(Vec::len)
    }
}

struct Node {
    behavior: Behavior,
    parent: Option<(usize, usize)>,
}

/// Shortest accepted string by breadth-first search over behaviors.
///
/// Letters are tried in alphabet order and the queue is FIFO, so among all
/// shortest accepted strings the lexicographically least one is returned.
pub fn shortest_accepted(a: &TwoDfa) -> ShortestResult {
    let root = initial_behavior(a);
    let mut index: HashMap<Behavior, usize> = HashMap::new();
    let mut nodes = vec![Node {
        behavior: root.clone(),
        parent: None,
    }];
    index.insert(root.clone(), 0);
    if accepts_here(a, &root) {
        return ShortestResult {
            word: Some(Vec::new()),
            behaviors_explored: 1,
        };
    }

    let mut head = 0;
    while head < nodes.len() {
        for letter in 0..a.alphabet_size() {
            let next = extend_behavior(a, &nodes[head].behavior, letter);
            let Entry::Vacant(slot) = index.entry(next) else {
                continue;
            };
            let behavior = slot.key().clone();
            slot.insert(nodes.len());
            let goal = accepts_here(a, &behavior);
            nodes.push(Node {
                behavior,
                parent: Some((head, letter)),
            });
            if goal {
                return ShortestResult {
                    word: Some(reconstruct(&nodes, nodes.len() - 1)),
                    behaviors_explored: nodes.len(),
                };
            }
        }
        head += 1;
    }
    ShortestResult {
        word: None,
        behaviors_explored: nodes.len(),
    }
}

fn reconstruct(nodes: &[Node], mut at: usize) -> Word {
    let mut word = Vec::new();
    while let Some((parent, letter)) = nodes[at].parent {
        word.push(letter);
        at = parent;
    }
    word.reverse();
    word
}

/// Behavior of an explicit prefix; mainly for inspection and tests.
pub fn behavior_of(a: &TwoDfa, word: &[usize]) -> Result<Behavior> {
    a.check_word(word)?;
    Ok(word
        .iter()
        .fold(initial_behavior(a), |b, &l| extend_behavior(a, &b, l)))
}

/// Independent oracle: runs every string in length-then-lexicographic order
/// up to `max_len` and returns the first accepted one.
pub fn brute_force_shortest(a: &TwoDfa, max_len: usize) -> ShortestResult {
    let s = a.alphabet_size();
    let mut tried = 0usize;
    for len in 0..=max_len {
        if s == 0 && len > 0 {
            break;
        }
        let mut word = vec![0usize; len];
        loop {
            tried += 1;
            if accepts(a, &word) {
                return ShortestResult {
                    word: Some(word),
                    behaviors_explored: tried,
                };
            }
            if !next_word(&mut word, s) {
                break;
            }
        }
    }
    ShortestResult {
        word: None,
        behaviors_explored: tried,
    }
}

/// Advances `word` to its lexicographic successor of the same length.
pub fn next_word(word: &mut [usize], alphabet_size: usize) -> bool {
    for slot in word.iter_mut().rev() {
        *slot += 1;
        if *slot < alphabet_size {
            return true;
        }
        *slot = 0;
    }
    false
}
