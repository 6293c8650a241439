use rayon::prelude::*;

use super::{decode_move, symbols, verify_length, Canonicalizer, SearchConfig, SearchMode};
use super::{SearchResult, EXHAUSTIVE_CELL_LIMIT};
use crate::automaton::{Symbol, TwoDfa};
use crate::error::{Error, Result};
use crate::oracle::shortest_accepted;

const BLOCK: u64 = 1 << 16;

/// Candidate number `index` in mixed radix: the low `n` bits pick the
/// accepting set, then one base-`(2n+1)` digit per table cell in
/// [`symbols`] order, state by state.
fn candidate(n: u32, s: usize, cells: &[Symbol], mut index: u64) -> TwoDfa {
    let alphabet = (0..s).map(|i| format!("s{i}")).collect();
    let mut a = TwoDfa::new(alphabet, n, 1).expect("generated alphabet is valid");
    for q in 1..=n {
        if index & 1 == 1 {
            a.set_accepting(q, true).expect("in range");
        }
        index >>= 1;
    }
    let radix = 2 * n as u64 + 1;
    for q in 1..=n {
        for &sym in cells {
            let code = (index % radix) as u16;
            index /= radix;
            if code != 0 {
                a.set_transition(q, sym, decode_move(code))
                    .expect("in range");
            }
        }
    }
    a
}

/// Enumerates every partial table with initial state 1 and every accepting
/// set, evaluating one representative per orbit.
///
/// Candidates are scanned in blocks; within a block the canonical ones are
/// evaluated in parallel, and the best is the longest with the smallest
/// index, so the result does not depend on scheduling.
pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.check()?;
    if cfg.mode != SearchMode::Exhaustive {
        return Err(Error::InvalidParams(
            "configuration is not exhaustive".into(),
        ));
    }
    let n = cfg.n;
    let s = cfg.alphabet_size;
    let cell_count = n as u64 * (s as u64 + 2);
    if cell_count > EXHAUSTIVE_CELL_LIMIT as u64 {
        return Err(Error::Infeasible(format!(
            "{cell_count} table cells exceed the limit of {EXHAUSTIVE_CELL_LIMIT}"
        )));
    }
    let total = (2 * n as u64 + 1)
        .checked_pow(cell_count as u32)
        .and_then(|c| c.checked_mul(1u64 << n))
        .ok_or_else(|| Error::Infeasible("candidate count overflows".into()))?;

    let cells: Vec<Symbol> = symbols(s).collect();
    let canon = Canonicalizer::new(n);
    let mut evaluated = 0u64;
    let mut best: Option<(Option<usize>, u64)> = None;
    let mut exhausted = true;

    let mut start = 0u64;
    while start < total {
        let end = (start + BLOCK).min(total);
        let mut reps: Vec<u64> = (start..end)
            .into_par_iter()
            .filter(|&i| canon.is_canonical(&candidate(n, s, &cells, i)))
            .collect();
        let remaining = cfg.budget - evaluated;
        if reps.len() as u64 > remaining {
            reps.truncate(remaining as usize);
            exhausted = false;
        }
        evaluated += reps.len() as u64;
        let block_best = reps
            .par_iter()
            .map(|&i| (shortest_accepted(&candidate(n, s, &cells, i)).length(), i))
            .reduce_with(better);
        if let Some(b) = block_best {
            best = Some(match best {
                Some(cur) => better(cur, b),
                None => b,
            });
        }
        if !exhausted {
            break;
        }
        start = end;
    }

    let (best_length, index) = best.unwrap_or((None, 0));
    let best = candidate(n, s, &cells, index);
    let verified = verify_length(&best, best_length);
    Ok(SearchResult {
        best,
        best_length,
        evaluated,
        exhausted,
        verified,
    })
}

fn better(x: (Option<usize>, u64), y: (Option<usize>, u64)) -> (Option<usize>, u64) {
    match x.0.cmp(&y.0) {
        std::cmp::Ordering::Greater => x,
        std::cmp::Ordering::Less => y,
        std::cmp::Ordering::Equal if x.1 <= y.1 => x,
        std::cmp::Ordering::Equal => y,
    }
}
