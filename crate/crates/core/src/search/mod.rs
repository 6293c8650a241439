//! Searching for `n`-state automata with long shortest accepted strings.

mod canonical;
mod exhaustive;
mod local;

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use dashmap::DashMap;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use canonical::{canonical_form, decode_move, encode_move, CanonKey, Canonicalizer};
pub use exhaustive::exhaustive_search;
pub use local::local_search;

use crate::automaton::{StateId, Symbol, TwoDfa};
use crate::document::AutomatonDoc;
use crate::error::{Error, Result};
use crate::oracle::{brute_force_shortest, shortest_accepted};

/// Tables with more cells than this are refused by the exhaustive search.
pub const EXHAUSTIVE_CELL_LIMIT: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Local,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: u32,
    pub alphabet_size: usize,
    pub mode: SearchMode,
    /// Cap on candidate evaluations.
    pub budget: u64,
    pub seed: u64,
    /// Warm start for local search; padded with unused letters up to
    /// `alphabet_size`.
    pub initial: Option<TwoDfa>,
}

impl SearchConfig {
    pub fn new(n: u32, alphabet_size: usize, mode: SearchMode) -> Self {
        Self {
            n,
            alphabet_size,
            mode,
            budget: 1_000_000,
            seed: 0,
            initial: None,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_warm_start(mut self, a: TwoDfa) -> Self {
        self.initial = Some(a);
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 || self.alphabet_size == 0 || self.budget == 0 {
            return Err(Error::InvalidParams(
                "search needs n >= 1, alphabet >= 1 and budget >= 1".into(),
            ));
        }
        if let Some(a) = &self.initial {
            if a.state_count() != self.n {
                return Err(Error::InvalidParams(format!(
                    "warm start has {} states, search is for {}",
                    a.state_count(),
                    self.n
                )));
            }
            if a.alphabet_size() > self.alphabet_size {
                return Err(Error::InvalidParams(format!(
                    "warm start uses {} letters, search alphabet has {}",
                    a.alphabet_size(),
                    self.alphabet_size
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best: TwoDfa,
    pub best_length: Option<usize>,
    pub evaluated: u64,
    pub exhausted: bool,
    /// Outcome of the brute-force re-check of `best_length`, when it was
    /// small enough to run.
    pub verified: Option<bool>,
}

/// Shortest-length evaluation memoized by orbit key. Safe to share between
/// threads.
#[derive(Debug, Default)]
pub struct Evaluator {
    cache: DashMap<CanonKey, Option<usize>>,
    canon: DashMap<u32, Canonicalizer>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key(&self, a: &TwoDfa) -> CanonKey {
        let n = a.state_count();
        if let Some(c) = self.canon.get(&n) {
            return c.value().key(a);
        }
        let c = Canonicalizer::new(n);
        let key = c.key(a);
        self.canon.insert(n, c);
        key
    }

    /// Length of the shortest accepted string, `None` for the empty language.
    pub fn evaluate(&self, a: &TwoDfa) -> Option<usize> {
        let key = self.key(a);
        if let Some(hit) = self.cache.get(&key) {
            return *hit;
        }
        let len = shortest_accepted(a).length();
        self.cache.insert(key, len);
        len
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }

    /// Loads `key<TAB>length` lines written by [`Evaluator::save`]; a missing
    /// file is an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        let ev = Self::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(ev),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            let Some((key, len)) = line.split_once('\t') else {
                continue;
            };
            let Ok(key) = key.parse::<CanonKey>() else {
                continue;
            };
            let len = match len {
                "-" => None,
                v => match v.parse() {
                    Ok(v) => Some(v),
                    Err(_) => continue,
                },
            };
            ev.cache.insert(key, len);
        }
        Ok(ev)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut entries: Vec<(CanonKey, Option<usize>)> = self
            .cache
            .iter()
            .map(|e| (e.key().clone(), *e.value()))
            .collect();
        entries.sort();
        let mut out = BufWriter::new(File::create(path)?);
        for (key, len) in entries {
            match len {
                Some(l) => writeln!(out, "{key}\t{l}")?,
                None => writeln!(out, "{key}\t-")?,
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Re-checks a reported length by brute force when that is affordable.
pub fn verify_length(a: &TwoDfa, length: Option<usize>) -> Option<bool> {
    let len = length?;
    if len > 10 {
        return None;
    }
    let work = (a.alphabet_size() as f64).powi(len as i32);
    if work > 5e6 {
        return None;
    }
    Some(brute_force_shortest(a, len).length() == Some(len))
}

/// A uniformly random table with roughly three quarters of the cells defined
/// and at least one accepting state.
pub fn random_automaton<R: Rng>(n: u32, alphabet_size: usize, rng: &mut R) -> TwoDfa {
    let alphabet = (0..alphabet_size).map(|i| format!("s{i}")).collect();
    let mut a = TwoDfa::new(alphabet, n, 1).expect("generated alphabet is valid");
    for q in 1..=n {
        for sym in symbols(alphabet_size) {
            if rng.gen_bool(0.75) {
                a.set_transition(q, sym, decode_move(rng.gen_range(1..=2 * n as u16)))
                    .expect("in range");
            }
        }
        if rng.gen_bool(0.3) {
            a.set_accepting(q, true).expect("in range");
        }
    }
    if a.accepting().is_empty() {
        let q: StateId = rng.gen_range(1..=n);
        a.set_accepting(q, true).expect("in range");
    }
    a
}

/// Letters first, then both end-markers.
pub fn symbols(alphabet_size: usize) -> impl Iterator<Item = Symbol> {
    (0..alphabet_size)
        .map(Symbol::Letter)
        .chain([Symbol::LeftEnd, Symbol::RightEnd])
}

/// One line of the search results log.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchRecord {
    pub config: RecordConfig,
    pub best_length: Option<usize>,
    pub evaluated: u64,
    pub exhausted: bool,
    pub automaton: AutomatonDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecordConfig {
    pub n: u32,
    pub alphabet: usize,
    pub mode: SearchMode,
    pub budget: u64,
    pub seed: u64,
}

impl SearchRecord {
    pub fn new(cfg: &SearchConfig, result: &SearchResult) -> Self {
        Self {
            config: RecordConfig {
                n: cfg.n,
                alphabet: cfg.alphabet_size,
                mode: cfg.mode,
                budget: cfg.budget,
                seed: cfg.seed,
            },
            best_length: result.best_length,
            evaluated: result.evaluated,
            exhausted: result.exhausted,
            automaton: result.best.to_document(),
        }
    }
}

pub fn append_log(path: &Path, record: &SearchRecord) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(file, "{}", serde_json::to_string(record)?)?;
    Ok(())
}

/// Best length per state count over all records of a log; unreadable lines
/// are skipped.
pub fn best_lengths(path: &Path) -> Result<BTreeMap<u32, usize>> {
    let mut best = BTreeMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(best),
        Err(e) => return Err(e.into()),
    };
    for line in BufReader::new(file).lines() {
        let line = line?;
        let Ok(rec) = serde_json::from_str::<SearchRecord>(&line) else {
            continue;
        };
        if let Some(len) = rec.best_length {
            let slot = best.entry(rec.config.n).or_insert(len);
            *slot = (*slot).max(len);
        }
    }
    Ok(best)
}
