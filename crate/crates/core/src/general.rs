//! The inductive family `Aₙ` with witnesses `wₙ` of length `3·2^(n-2) - 1`.
//!
//! `A₂` works over `{a, b}` with `w₂ = a b`. `A_{n+1}` adds a state `n+1`
//! that slides along arrowed copies `>x` / `<x` of the letters of `Aₙ` until
//! it meets the separator `#`, then runs `Aₙ` on each side of it:
//! `w_{n+1} = >wₙ # <wₙ`. The old states treat `>x` and `<x` exactly like `x`.

use crate::automaton::{Move, StateId, Symbol, TwoDfa, Word};
use crate::error::{Error, Result};
use crate::oracle::next_word;
use crate::simulate::{run_segment, SegmentExit};

pub const SEPARATOR: &str = "#";

/// Arrow marker of a token in `Σ_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrow {
    Right,
    Left,
    None,
}

/// A token split into its arrow and the underlying letter of the previous level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowToken<'a> {
    pub base: &'a str,
    pub arrow: Arrow,
}

impl<'a> ArrowToken<'a> {
    pub fn parse(token: &'a str) -> Self {
        if token == SEPARATOR {
            return Self {
                base: "",
                arrow: Arrow::None,
            };
        }
        if let Some(base) = token.strip_prefix('>') {
            Self {
                base,
                arrow: Arrow::Right,
            }
        } else if let Some(base) = token.strip_prefix('<') {
            Self {
                base,
                arrow: Arrow::Left,
            }
        } else {
            Self {
                base: token,
                arrow: Arrow::None,
            }
        }
    }
}

/// `Aₙ` together with `wₙ`.
///
/// The automaton has no end-marker transitions and no accepting states; its
/// initial state is set to `n` only as a placeholder, since segment runs pick
/// their own start.
#[derive(Debug, Clone)]
pub struct CoreAutomaton {
    pub automaton: TwoDfa,
    pub n: u32,
    pub witness: Word,
}

impl CoreAutomaton {
    pub fn witness_tokens(&self) -> String {
        self.automaton.format_word(&self.witness)
    }
}

fn base_core() -> CoreAutomaton {
    let mut a = TwoDfa::new(vec!["a".into(), "b".into()], 2, 2).expect("valid alphabet");
    let (la, lb) = (Symbol::Letter(0), Symbol::Letter(1));
    for (q, sym, mv) in [
        (2, la, Move::right(2)),
        (2, lb, Move::left(1)),
        (1, la, Move::right(1)),
        (1, lb, Move::right(1)),
    ] {
        a.set_transition(q, sym, Some(mv)).expect("in range");
    }
    CoreAutomaton {
        automaton: a,
        n: 2,
        witness: vec![0, 1],
    }
}

fn step(prev: &CoreAutomaton) -> CoreAutomaton {
    let old = &prev.automaton;
    let n = prev.n;
    let s = old.alphabet_size();
    let mut alphabet: Vec<String> = Vec::with_capacity(2 * s + 1);
    alphabet.extend(old.alphabet().iter().map(|x| format!(">{x}")));
    alphabet.extend(old.alphabet().iter().map(|x| format!("<{x}")));
    alphabet.push(SEPARATOR.into());
    let sep = Symbol::Letter(2 * s);

    let mut a = TwoDfa::new(alphabet, n + 1, n + 1).expect("arrowed alphabet is valid");
    let mut set = |q: StateId, sym: Symbol, mv: Move| {
        a.set_transition(q, sym, Some(mv)).expect("in range");
    };
    for x in 0..s {
        let (right, left) = (Symbol::Letter(x), Symbol::Letter(s + x));
        set(n + 1, right, Move::right(n + 1));
        set(n + 1, left, Move::left(n + 1));
        for q in 1..=n {
            if let Some(mv) = old.delta_letter(q, x) {
                set(q, right, mv);
                set(q, left, mv);
            }
        }
    }
    set(n + 1, sep, Move::left(n));
    set(1, sep, Move::right(n));

    let mut witness = Vec::with_capacity(2 * prev.witness.len() + 1);
    witness.extend(prev.witness.iter().copied());
    witness.push(2 * s);
    witness.extend(prev.witness.iter().map(|&x| s + x));
    CoreAutomaton {
        automaton: a,
        n: n + 1,
        witness,
    }
}

/// Builds `Aₙ` and `wₙ` for `n >= 2`.
pub fn build_core(n: u32) -> Result<CoreAutomaton> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "the general family starts at n = 2, got n = {n}"
        )));
    }
    let mut core = base_core();
    while core.n < n {
        core = step(&core);
    }
    Ok(core)
}

/// `A'ₙ`: initial state `n`, accepting `{1}`, plus `δ(n, ⊢) = (n, +1)`.
pub fn wrap(core: &CoreAutomaton) -> TwoDfa {
    let mut a = core.automaton.clone();
    let n = core.n;
    a.set_initial(n).expect("in range");
    a.set_accepting(1, true).expect("in range");
    a.set_transition(n, Symbol::LeftEnd, Some(Move::right(n)))
        .expect("in range");
    a
}

/// The homomorphism removing one level of arrows from each token.
pub fn strip_arrows<'a, I>(tokens: I) -> Result<Vec<String>>
where
    I: IntoIterator<Item = &'a str>,
{
    tokens
        .into_iter()
        .map(|tok| {
            let t = ArrowToken::parse(tok);
            match t.arrow {
                Arrow::Right | Arrow::Left => Ok(t.base.to_string()),
                Arrow::None if tok == SEPARATOR => Err(Error::SeparatorInWord),
                Arrow::None => Err(Error::NoArrow(tok.to_string())),
            }
        })
        .collect()
}

/// Start positions in `wₙ` from which state `n` leaves the witness to the
/// right in state 1.
pub fn witness_exit_positions(core: &CoreAutomaton) -> usize {
    (1..=core.witness.len())
        .filter(|&p| exits_right_in_one(core, &core.witness, p))
        .count()
}

fn exits_right_in_one(core: &CoreAutomaton, u: &[usize], pos: usize) -> bool {
    run_segment(&core.automaton, u, pos, core.n)
        .map(|o| o.exit == SegmentExit::Right(1))
        .unwrap_or(false)
}

/// Counts `(u, position)` pairs with `0 < |u| < |wₙ|` from which state `n`
/// leaves `u` to the right in state 1. Exhaustive, so only for tiny `n`.
pub fn short_exit_violations(core: &CoreAutomaton) -> usize {
    let s = core.automaton.alphabet_size();
    let mut violations = 0;
    for len in 1..core.witness.len() {
        let mut u = vec![0usize; len];
        loop {
            violations += (1..=len)
                .filter(|&p| exits_right_in_one(core, &u, p))
                .count();
            if !next_word(&mut u, s) {
                break;
            }
        }
    }
    violations
}
