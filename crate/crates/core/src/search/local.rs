use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{decode_move, random_automaton, symbols, verify_length, Evaluator};
use super::{SearchConfig, SearchMode, SearchResult};
use crate::automaton::{StateId, Symbol, TwoDfa};
use crate::error::{Error, Result};

/// Steps without a strict improvement before restarting.
const PATIENCE: u64 = 4_000;

/// Random-restart hill climbing.
///
/// Each step changes one to three table cells, toggles an accepting state or
/// moves the initial state, and keeps the change when the shortest length
/// does not decrease. After [`PATIENCE`] steps without progress the walk
/// restarts from a fresh random table, or from the best automaton so far with
/// a burst of mutations on every other restart. The random stream depends
/// only on the seed, so a run is a prefix of any run with a larger budget.
pub fn local_search(cfg: &SearchConfig, evaluator: &Evaluator) -> Result<SearchResult> {
    cfg.check()?;
    if cfg.mode != SearchMode::Local {
        return Err(Error::InvalidParams("configuration is not local".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cells: Vec<Symbol> = symbols(cfg.alphabet_size).collect();

    let mut current = match &cfg.initial {
        Some(a) => {
            let mut a = a.clone();
            a.pad_alphabet(cfg.alphabet_size - a.alphabet_size());
            a
        }
        None => random_automaton(cfg.n, cfg.alphabet_size, &mut rng),
    };
    let mut score = evaluator.evaluate(&current);
    let mut evaluated = 1u64;
    let mut best = current.clone();
    let mut best_score = score;
    let mut stale = 0u64;
    let mut restarts = 0u64;

    while evaluated < cfg.budget {
        let mut candidate = current.clone();
        let changes = *[1, 1, 1, 2, 3].choose(&mut rng).expect("non-empty");
        for _ in 0..changes {
            mutate(&mut candidate, &cells, &mut rng);
        }
        let cand_score = evaluator.evaluate(&candidate);
        evaluated += 1;

        if cand_score > best_score {
            best = candidate.clone();
            best_score = cand_score;
        }
        if cand_score >= score {
            stale = if cand_score > score { 0 } else { stale + 1 };
            current = candidate;
            score = cand_score;
        } else {
            stale += 1;
        }

        if stale >= PATIENCE && evaluated < cfg.budget {
            restarts += 1;
            current = if restarts.is_multiple_of(2) {
                let mut kicked = best.clone();
                for _ in 0..rng.gen_range(3..8) {
                    mutate(&mut kicked, &cells, &mut rng);
                }
                kicked
            } else {
                let mut fresh = random_automaton(cfg.n, cfg.alphabet_size, &mut rng);
                rename_like(&mut fresh, &best);
                fresh
            };
            score = evaluator.evaluate(&current);
            evaluated += 1;
            if score > best_score {
                best = current.clone();
                best_score = score;
            }
            stale = 0;
        }
    }

    let verified = verify_length(&best, best_score);
    Ok(SearchResult {
        best,
        best_length: best_score,
        evaluated,
        exhausted: false,
        verified,
    })
}

fn mutate<R: Rng>(a: &mut TwoDfa, cells: &[Symbol], rng: &mut R) {
    let n = a.state_count();
    let roll: f64 = rng.gen();
    if roll < 0.85 {
        let q: StateId = rng.gen_range(1..=n);
        let sym = *cells.choose(rng).expect("non-empty");
        let code = if rng.gen_bool(0.15) {
            0
        } else {
            rng.gen_range(1..=2 * n as u16)
        };
        a.set_transition(q, sym, decode_move(code))
            .expect("in range");
    } else if roll < 0.95 {
        let q: StateId = rng.gen_range(1..=n);
        let on = !a.is_accepting(q);
        a.set_accepting(q, on).expect("in range");
    } else {
        let q: StateId = rng.gen_range(1..=n);
        a.set_initial(q).expect("in range");
    }
}

/// Gives a freshly generated table the alphabet spelling of `like`.
fn rename_like(fresh: &mut TwoDfa, like: &TwoDfa) {
    let mut renamed = TwoDfa::new(
        like.alphabet().to_vec(),
        fresh.state_count(),
        fresh.initial(),
    )
    .expect("same shape");
    for (q, sym, mv) in fresh.transitions() {
        renamed
            .set_transition(q, sym, Some(mv))
            .expect("same shape");
    }
    for &q in fresh.accepting() {
        renamed.set_accepting(q, true).expect("same shape");
    }
    *fresh = renamed;
}
