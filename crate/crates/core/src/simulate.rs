//! Exact execution on a full tape `⊢ w ⊣` and on end-marker-free segments.

use serde::Serialize;

use crate::automaton::{Direction, StateId, Symbol, TwoDfa};
use crate::error::{Error, Result};

/// Head position 0 is `⊢`, `|w| + 1` is `⊣`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    pub state: StateId,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Accept,
    Reject { at: Configuration },
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub outcome: Outcome,
    pub trace: Option<Vec<Configuration>>,
}

impl RunOutcome {
    pub fn accepted(&self) -> bool {
        self.outcome == Outcome::Accept
    }
}

/// Runs `a` on `⊢ word ⊣` from `(q₀, 0)`.
///
/// Acceptance is decided on arrival at `⊣` in an accepting state, before the
/// transition at `⊣` is consulted. Undefined transitions and moves past an
/// end-marker reject; a repeated configuration is a loop.
pub fn run_full(a: &TwoDfa, word: &[usize], capture_trace: bool) -> Result<RunOutcome> {
    a.check_word(word)?;
    let n = a.state_count() as usize;
    let cells = word.len() + 2;
    let right_end = word.len() + 1;
    let mut visited = vec![false; n * cells];
    let mut trace = capture_trace.then(Vec::new);
    let mut config = Configuration {
        state: a.initial(),
        position: 0,
    };
    let step_bound = n * cells;
    let mut steps = 0usize;

    let outcome = loop {
        if let Some(t) = trace.as_mut() {
            t.push(config);
        }
        let Configuration { state, position } = config;
        if position == right_end && a.is_accepting(state) {
            break Outcome::Accept;
        }
        let slot = (state as usize - 1) * cells + position;
        if visited[slot] || steps >= step_bound {
            break Outcome::Loop;
        }
        visited[slot] = true;
        steps += 1;

        let sym = match position {
            0 => Symbol::LeftEnd,
            p if p == right_end => Symbol::RightEnd,
            p => Symbol::Letter(word[p - 1]),
        };
        let Some(mv) = a.delta(state, sym) else {
            break Outcome::Reject { at: config };
        };
        let next = match (position, mv.dir) {
            (0, Direction::Left) => None,
            (p, Direction::Right) if p == right_end => None,
            (p, Direction::Left) => Some(p - 1),
            (p, Direction::Right) => Some(p + 1),
        };
        match next {
            Some(position) => {
                config = Configuration {
                    state: mv.target,
                    position,
                }
            }
            None => break Outcome::Reject { at: config },
        }
    };
    Ok(RunOutcome { outcome, trace })
}

/// Convenience wrapper over [`run_full`] for a whitespace-separated input.
pub fn run_tokens(a: &TwoDfa, text: &str, capture_trace: bool) -> Result<RunOutcome> {
    let word = a.parse_word(text)?;
    run_full(a, &word, capture_trace)
}

pub fn accepts(a: &TwoDfa, word: &[usize]) -> bool {
    run_full(a, word, false).is_ok_and(|r| r.accepted())
}

/// How a run on a segment ends. Exits report the state after the crossing move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SegmentExit {
    Right(StateId),
    Left(StateId),
    Reject,
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentOutcome {
    pub exit: SegmentExit,
    pub steps: usize,
}

/// Runs `a` on the bare segment `u` (no end-markers), starting at 1-based
/// `start_pos` in `start_state`, until the head leaves the segment.
pub fn run_segment(
    a: &TwoDfa,
    u: &[usize],
    start_pos: usize,
    start_state: StateId,
) -> Result<SegmentOutcome> {
    if u.is_empty() {
        return Err(Error::EmptySegment);
    }
    if start_pos == 0 || start_pos > u.len() {
        return Err(Error::StartOutOfRange {
            pos: start_pos,
            len: u.len(),
        });
    }
    if start_state == 0 || start_state > a.state_count() {
        return Err(Error::StateOutOfRange {
            state: start_state,
            states: a.state_count(),
        });
    }
    a.check_word(u)?;

    let n = a.state_count() as usize;
    let mut visited = vec![false; n * u.len()];
    let mut state = start_state;
    let mut pos = start_pos;
    let mut steps = 0usize;
    let exit = loop {
        let slot = (state as usize - 1) * u.len() + (pos - 1);
        if visited[slot] {
            break SegmentExit::Loop;
        }
        visited[slot] = true;
        let Some(mv) = a.delta_letter(state, u[pos - 1]) else {
            break SegmentExit::Reject;
        };
        steps += 1;
        state = mv.target;
        match mv.dir {
            Direction::Left if pos == 1 => break SegmentExit::Left(state),
            Direction::Right if pos == u.len() => break SegmentExit::Right(state),
            Direction::Left => pos -= 1,
            Direction::Right => pos += 1,
        }
    };
    Ok(SegmentOutcome { exit, steps })
}

/// Renders a trace as a text diagram: a header of tape cells, then one row
/// per configuration with the state written under the head.
pub fn render_trace(tokens: &[&str], trace: &[Configuration]) -> String {
    if trace.is_empty() {
        return String::new();
    }
    let mut header: Vec<String> = Vec::with_capacity(tokens.len() + 2);
    header.push("⊢".into());
    header.extend(tokens.iter().map(|t| t.to_string()));
    header.push("⊣".into());

    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for c in trace {
        let w = c.state.to_string().len();
        if let Some(slot) = widths.get_mut(c.position) {
            *slot = (*slot).max(w);
        }
    }

    let mut out = String::new();
    let line = |cells: Vec<String>| -> String {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join(" ");
        let trimmed = s.trim_end().len();
        s.truncate(trimmed);
        s.push('\n');
        s
    };
    out.push_str(&line(header));
    for c in trace {
        let mut row = vec![String::new(); widths.len()];
        if let Some(slot) = row.get_mut(c.position) {
            *slot = c.state.to_string();
        }
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Move;

    fn base() -> TwoDfa {
        let mut a = TwoDfa::new(vec!["a".into(), "b".into()], 2, 2).unwrap();
        a.set_transition(2, Symbol::Letter(0), Some(Move::right(2)))
            .unwrap();
        a.set_transition(2, Symbol::Letter(1), Some(Move::left(1)))
            .unwrap();
        a.set_transition(1, Symbol::Letter(0), Some(Move::right(1)))
            .unwrap();
        a.set_transition(1, Symbol::Letter(1), Some(Move::right(1)))
            .unwrap();
        a
    }

    fn wrapped() -> TwoDfa {
        let mut a = base();
        a.set_transition(2, Symbol::LeftEnd, Some(Move::right(2)))
            .unwrap();
        a.set_accepting(1, true).unwrap();
        a
    }

    #[test]
    fn accepts_ab_with_zigzag_trace() {
        let a = wrapped();
        let r = run_full(&a, &[0, 1], true).unwrap();
        assert_eq!(r.outcome, Outcome::Accept);
        let visits: Vec<_> = r
            .trace
            .unwrap()
            .iter()
            .map(|c| (c.state, c.position))
            .collect();
        assert_eq!(visits, vec![(2, 0), (2, 1), (2, 2), (1, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn rejects_empty_at_right_end() {
        let r = run_full(&wrapped(), &[], false).unwrap();
        assert_eq!(
            r.outcome,
            Outcome::Reject {
                at: Configuration {
                    state: 2,
                    position: 1
                }
            }
        );
    }

    #[test]
    fn falling_off_the_tape_rejects() {
        let mut a = TwoDfa::new(vec!["a".into()], 1, 1).unwrap();
        a.set_transition(1, Symbol::LeftEnd, Some(Move::left(1)))
            .unwrap();
        assert!(matches!(
            run_full(&a, &[0], false).unwrap().outcome,
            Outcome::Reject { .. }
        ));

        let mut b = TwoDfa::new(vec!["a".into()], 2, 1).unwrap();
        b.set_transition(1, Symbol::LeftEnd, Some(Move::right(1)))
            .unwrap();
        b.set_transition(1, Symbol::RightEnd, Some(Move::right(2)))
            .unwrap();
        b.set_accepting(2, true).unwrap();
        // state 2 is accepting but only "reached" by leaving the tape
        assert!(matches!(
            run_full(&b, &[], false).unwrap().outcome,
            Outcome::Reject { .. }
        ));
    }

    #[test]
    fn acceptance_precedes_right_end_transition() {
        let mut a = TwoDfa::new(vec!["a".into()], 1, 1).unwrap();
        a.set_transition(1, Symbol::LeftEnd, Some(Move::right(1)))
            .unwrap();
        a.set_transition(1, Symbol::RightEnd, Some(Move::left(1)))
            .unwrap();
        a.set_accepting(1, true).unwrap();
        assert!(accepts(&a, &[]));
    }

    #[test]
    fn detects_loops() {
        let mut a = TwoDfa::new(vec!["a".into()], 1, 1).unwrap();
        a.set_transition(1, Symbol::LeftEnd, Some(Move::right(1)))
            .unwrap();
        a.set_transition(1, Symbol::Letter(0), Some(Move::left(1)))
            .unwrap();
        assert_eq!(run_full(&a, &[0], false).unwrap().outcome, Outcome::Loop);
    }

    #[test]
    fn unknown_letter_is_an_error() {
        assert!(matches!(
            run_full(&base(), &[2], false),
            Err(Error::UnknownLetter(2))
        ));
        assert!(matches!(
            run_tokens(&base(), "a c", false),
            Err(Error::UnknownToken(_))
        ));
    }

    #[test]
    fn segments_of_the_base_automaton() {
        let a = base();
        assert_eq!(
            run_segment(&a, &[0], 1, 2).unwrap().exit,
            SegmentExit::Right(2)
        );
        assert_eq!(
            run_segment(&a, &[1], 1, 2).unwrap().exit,
            SegmentExit::Left(1)
        );
        for p in 1..=2 {
            assert_eq!(
                run_segment(&a, &[0, 1], p, 2).unwrap().exit,
                SegmentExit::Right(1)
            );
        }
    }

    #[test]
    fn segment_argument_errors() {
        let a = base();
        assert!(matches!(
            run_segment(&a, &[], 1, 1),
            Err(Error::EmptySegment)
        ));
        assert!(matches!(
            run_segment(&a, &[0], 0, 1),
            Err(Error::StartOutOfRange { .. })
        ));
        assert!(matches!(
            run_segment(&a, &[0], 2, 1),
            Err(Error::StartOutOfRange { .. })
        ));
        assert!(matches!(
            run_segment(&a, &[0], 1, 3),
            Err(Error::StateOutOfRange { .. })
        ));
    }

    #[test]
    fn renders_the_zigzag() {
        let a = wrapped();
        let r = run_full(&a, &[0, 1], true).unwrap();
        let text = render_trace(&["a", "b"], r.trace.as_deref().unwrap());
        let expected = "⊢ a b ⊣\n2\n  2\n    2\n  1\n    1\n      1\n";
        assert_eq!(text, expected);
        assert_eq!(render_trace(&["a"], &[]), "");
    }
}
