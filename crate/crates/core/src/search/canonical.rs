//! Orbit representatives under letter permutations and state relabelings.
//!
//! The key relabels the initial state to 1, tries every bijection of the
//! remaining states onto `2..=n`, and for each one sorts the letter columns of
//! the transition table; the lexicographically least encoding wins. Sorting
//! the columns is the same as minimizing over all letter permutations, since
//! letters only appear as whole columns of the encoding.

use std::fmt;

use crate::automaton::{Direction, Move, StateId, Symbol, TwoDfa};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(pub Vec<u16>);

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{v:x}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for CanonKey {
    type Err = std::num::ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(CanonKey(Vec::new()));
        }
        s.split('.')
            .map(|p| u16::from_str_radix(p, 16))
            .collect::<Result<_, _>>()
            .map(CanonKey)
    }
}

/// Cell code: 0 undefined, else `1 + 2·(target-1) + [dir = Right]`.
pub fn encode_move(mv: Option<Move>, relabel: impl Fn(StateId) -> StateId) -> u16 {
    match mv {
        None => 0,
        Some(m) => {
            let dir = u16::from(m.dir == Direction::Right);
            1 + 2 * (relabel(m.target) as u16 - 1) + dir
        }
    }
}

pub fn decode_move(code: u16) -> Option<Move> {
    if code == 0 {
        return None;
    }
    let v = code - 1;
    let dir = if v % 2 == 1 {
        Direction::Right
    } else {
        Direction::Left
    };
    Some(Move::new((v / 2) as StateId + 1, dir))
}

/// Precomputed relabelings for a fixed state count.
#[derive(Debug, Clone)]
pub struct Canonicalizer {
    n: u32,
    /// `perms[i][old] = new`, index 0 unused.
    perms: Vec<Vec<StateId>>,
}

impl Canonicalizer {
    pub fn new(n: u32) -> Self {
        let rest: Vec<StateId> = (2..=n).collect();
        let mut orders = Vec::new();
        permutations(
            &rest,
            &mut Vec::new(),
            &mut vec![false; rest.len()],
            &mut orders,
        );
        // each order lists the new labels 2..=n assigned to non-initial states
        // in increasing old-label order; the initial state is handled per call
        let perms = orders
            .into_iter()
            .map(|o| {
                let mut p = vec![0; n as usize + 1];
                for (slot, label) in o.into_iter().enumerate() {
                    p[slot + 1] = label;
                }
                p
            })
            .collect();
        Self { n, perms }
    }

    pub fn relabelings(&self) -> usize {
        self.perms.len()
    }

    pub fn key(&self, a: &TwoDfa) -> CanonKey {
        self.min_encoding(a, None)
    }

    /// True when `a`, read with the identity labels and letter order, is
    /// already its own orbit representative. Requires initial state 1.
    pub fn is_canonical(&self, a: &TwoDfa) -> bool {
        debug_assert_eq!(a.initial(), 1);
        let identity = encode(a, &(0..=self.n).collect::<Vec<_>>(), false);
        self.min_encoding(a, Some(&identity)).0 == identity
    }

    fn min_encoding(&self, a: &TwoDfa, bail_below: Option<&Vec<u16>>) -> CanonKey {
        assert_eq!(
            a.state_count(),
            self.n,
            "canonicalizer built for another size"
        );
        let q0 = a.initial();
        let mut best: Option<Vec<u16>> = None;
        let mut relabel = vec![0; self.n as usize + 1];
        for p in &self.perms {
            // p[1..n) hands out new labels to old states other than q0
            let mut slot = 1;
            for old in 1..=self.n {
                if old == q0 {
                    relabel[old as usize] = 1;
                } else {
                    relabel[old as usize] = p[slot];
                    slot += 1;
                }
            }
            let enc = encode(a, &relabel, true);
            if let Some(target) = bail_below {
                if &enc < target {
                    return CanonKey(enc);
                }
            }
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        CanonKey(best.expect("at least one relabeling"))
    }
}

fn permutations(
    items: &[StateId],
    cur: &mut Vec<StateId>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<StateId>>,
) {
    if cur.len() == items.len() {
        out.push(cur.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permutations(items, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// `[n, s, accepting flags, ⊢ column, ⊣ column, letter columns…]`, each
/// column listed over the new labels `1..=n`.
fn encode(a: &TwoDfa, relabel: &[StateId], sort_letters: bool) -> Vec<u16> {
    let n = a.state_count() as usize;
    let s = a.alphabet_size();
    let mut inverse = vec![0; n + 1];
    for old in 1..=n {
        inverse[relabel[old] as usize] = old as StateId;
    }
    let column = |sym: Symbol| -> Vec<u16> {
        (1..=n)
            .map(|new| encode_move(a.delta(inverse[new], sym), |t| relabel[t as usize]))
            .collect()
    };
    let mut out = Vec::with_capacity(2 + n * (s + 3));
    out.push(n as u16);
    out.push(s as u16);
    out.extend((1..=n).map(|new| u16::from(a.is_accepting(inverse[new]))));
    out.extend(column(Symbol::LeftEnd));
    out.extend(column(Symbol::RightEnd));
    let mut letters: Vec<Vec<u16>> = (0..s).map(|l| column(Symbol::Letter(l))).collect();
    if sort_letters {
        letters.sort_unstable();
    }
    out.extend(letters.into_iter().flatten());
    out
}

/// Orbit key of `a`.
pub fn canonical_form(a: &TwoDfa) -> CanonKey {
    Canonicalizer::new(a.state_count()).key(a)
}
