//! Direction-determinate automata with `k` right-entered and `ℓ` left-entered
//! states whose shortest accepted string has length `C(k+ℓ, ℓ+1) - 1`.
//!
//! Every pair `(P, R)` with `P ⊆ Q⁻`, `R ⊆ Q⁺`, `|R| = |P| + 1` describes one
//! back-and-forth motion between two adjacent letters. The pairs are ordered
//! by their signatures `r₁, -p₁, r₂, …, -pₘ, rₘ₊₁` and letter `aᵢ` links the
//! `i`-th pair to the `(i+1)`-th.

use std::cmp::Ordering;
use std::fmt;

use crate::automaton::{DirectionPartition, Move, StateId, Symbol, TwoDfa, Word};
use crate::bounds::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirDetParams {
    k: u32,
    l: u32,
}

impl DirDetParams {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "the construction needs k >= 2, got k = {k}"
            )));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// Number of pairs, `C(k+ℓ, ℓ+1)`.
    pub fn pair_count(&self) -> usize {
        binomial((self.k + self.l) as u64, (self.l + 1) as u64).expect("binomial overflow") as usize
    }

    /// State id of the primed state `p'`.
    pub fn minus_state(&self, p: u32) -> StateId {
        self.k + p
    }
}

/// A pair `(P, R)`; `p` holds primed indices `1..=ℓ`, `r` holds `1..=k`,
/// both strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairPR {
    pub p: Vec<u32>,
    pub r: Vec<u32>,
}

impl PairPR {
    /// The interleaved sequence `r₁, -p₁, r₂, …, -pₘ, rₘ₊₁`.
    pub fn signature(&self) -> Vec<i64> {
        let mut sig = Vec::with_capacity(self.p.len() + self.r.len());
        for (i, &r) in self.r.iter().enumerate() {
            sig.push(r as i64);
            if let Some(&p) = self.p.get(i) {
                sig.push(-(p as i64));
            }
        }
        sig
    }

    /// `{2'}, {1, 2}` style rendering; the empty set is `∅`.
    pub fn sets_label(&self) -> String {
        let set = |items: Vec<String>| {
            if items.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", items.join(", "))
            }
        };
        let p = set(self.p.iter().map(|p| format!("{p}'")).collect());
        let r = set(self.r.iter().map(u32::to_string).collect());
        format!("{p}, {r}")
    }

    /// `(1,-2',2)` style rendering of the signature.
    pub fn signature_label(&self) -> String {
        let parts: Vec<String> = self
            .signature()
            .iter()
            .map(|&v| {
                if v < 0 {
                    format!("-{}'", -v)
                } else {
                    v.to_string()
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for PairPR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  {}", self.sets_label(), self.signature_label())
    }
}

/// Lexicographic order on signatures; a proper prefix comes first.
pub fn compare_pairs(x: &PairPR, y: &PairPR) -> Ordering {
    x.signature().cmp(&y.signature())
}

impl PartialOrd for PairPR {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairPR {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_pairs(self, other)
    }
}

/// All strictly increasing `size`-subsets of `1..=n`, in lexicographic order.
fn subsets(n: u32, size: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, size: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

/// Every pair for the given sizes, sorted increasingly.
pub fn enumerate_pairs(params: DirDetParams) -> Vec<PairPR> {
    let max_m = (params.k - 1).min(params.l) as usize;
    let mut pairs = Vec::with_capacity(params.pair_count());
    for m in 0..=max_m {
        let ps = subsets(params.l, m);
        for r in subsets(params.k, m + 1) {
            pairs.extend(ps.iter().map(|p| PairPR {
                p: p.clone(),
                r: r.clone(),
            }));
        }
    }
    pairs.sort();
    pairs
}

/// One `sets<TAB>signature` line per pair, in the given order.
pub fn render_pairs(pairs: &[PairPR]) -> String {
    pairs
        .iter()
        .map(|p| format!("{}\t{}\n", p.sets_label(), p.signature_label()))
        .collect()
}

/// A constructed automaton with the string it is built around.
#[derive(Debug, Clone)]
pub struct FamilyWitness {
    pub automaton: TwoDfa,
    pub witness: Word,
    pub expected_length: usize,
    pub partition: DirectionPartition,
}

impl FamilyWitness {
    pub fn witness_tokens(&self) -> String {
        self.automaton.format_word(&self.witness)
    }
}

/// Builds the `(k, ℓ)` automaton over `a1 … a{N-1}`.
///
/// States `1..=k` form `Q⁺`, states `k+1..=k+ℓ` form `Q⁻` and carry the
/// aliases `1'..ℓ'`. The initial state is 1 and the only accepting state is
/// `k`, the sole element of the greatest pair.
pub fn build_dirdet_automaton(params: DirDetParams) -> FamilyWitness {
    let pairs = enumerate_pairs(params);
    let n_pairs = pairs.len();
    let alphabet: Vec<String> = (1..n_pairs).map(|i| format!("a{i}")).collect();
    let k = params.k;
    let mut a = TwoDfa::new(alphabet, k + params.l, 1).expect("generated alphabet is valid");
    for p in 1..=params.l {
        a.set_alias(params.minus_state(p), format!("{p}'"))
            .expect("state in range");
    }
    let minus = |p: u32| params.minus_state(p);
    let mut set = |q: StateId, sym: Symbol, mv: Move| {
        debug_assert!(a.delta(q, sym).is_none(), "cell defined twice");
        a.set_transition(q, sym, Some(mv)).expect("state in range");
    };

    set(1, Symbol::LeftEnd, Move::right(pairs[0].r[0]));
    // letter a_i sits between pair i and pair i+1 (1-based)
    for (letter, window) in pairs.windows(2).enumerate() {
        let (cur, next) = (&window[0], &window[1]);
        let sym = Symbol::Letter(letter);
        for (j, &p) in cur.p.iter().enumerate() {
            set(cur.r[j], sym, Move::left(minus(p)));
        }
        set(
            *cur.r.last().expect("R is non-empty"),
            sym,
            Move::right(next.r[0]),
        );
        for (j, &p) in next.p.iter().enumerate() {
            set(minus(p), sym, Move::right(next.r[j + 1]));
        }
    }
    a.set_accepting(k, true).expect("state in range");

    let partition = DirectionPartition {
        q_plus: (1..=k).collect(),
        q_minus: (1..=params.l).map(minus).collect(),
        unconstrained: Default::default(),
    };
    FamilyWitness {
        automaton: a,
        witness: (0..n_pairs - 1).collect(),
        expected_length: n_pairs - 1,
        partition,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::DirectionClass;

    fn pair(p: &[u32], r: &[u32]) -> PairPR {
        PairPR {
            p: p.to_vec(),
            r: r.to_vec(),
        }
    }

    #[test]
    fn params_need_two_plus_states() {
        assert!(DirDetParams::new(1, 3).is_err());
        assert!(DirDetParams::new(2, 0).is_ok());
    }

    #[test]
    fn signature_and_labels() {
        let x = pair(&[1, 2], &[1, 3, 4]);
        assert_eq!(x.signature(), vec![1, -1, 3, -2, 4]);
        assert_eq!(x.sets_label(), "{1', 2'}, {1, 3, 4}");
        assert_eq!(x.signature_label(), "(1,-1',3,-2',4)");
        assert_eq!(pair(&[], &[2]).sets_label(), "∅, {2}");
    }

    #[test]
    fn pair_comparisons() {
        assert_eq!(
            compare_pairs(&pair(&[], &[1]), &pair(&[2], &[1, 2])),
            Ordering::Less
        );
        assert_eq!(
            compare_pairs(&pair(&[2], &[1, 4]), &pair(&[1], &[1, 2])),
            Ordering::Less
        );
        let x = pair(&[1], &[2, 3]);
        assert_eq!(compare_pairs(&x, &x), Ordering::Equal);
    }

    #[test]
    fn small_enumerations() {
        let two = enumerate_pairs(DirDetParams::new(2, 0).unwrap());
        assert_eq!(two, vec![pair(&[], &[1]), pair(&[], &[2])]);

        let three = enumerate_pairs(DirDetParams::new(2, 1).unwrap());
        assert_eq!(
            three,
            vec![pair(&[], &[1]), pair(&[1], &[1, 2]), pair(&[], &[2])]
        );
    }

    #[test]
    fn k4_l2_landmarks() {
        let pairs = enumerate_pairs(DirDetParams::new(4, 2).unwrap());
        assert_eq!(pairs.len(), 20);
        assert_eq!(pairs[1], pair(&[2], &[1, 2]));
        assert_eq!(pairs[10], pair(&[], &[2]));
        assert_eq!(pairs[19], pair(&[], &[4]));
    }

    #[test]
    fn smallest_construction() {
        let fw = build_dirdet_automaton(DirDetParams::new(2, 0).unwrap());
        assert_eq!(fw.automaton.state_count(), 2);
        assert_eq!(fw.witness, vec![0]);
        assert_eq!(fw.expected_length, 1);
        assert_eq!(
            fw.automaton.delta(1, Symbol::Letter(0)),
            Some(Move::right(2))
        );
        assert!(fw.automaton.is_accepting(2));
    }

    #[test]
    fn construction_is_direction_determinate() {
        let fw = build_dirdet_automaton(DirDetParams::new(4, 2).unwrap());
        assert_eq!(fw.expected_length, 19);
        assert!(fw
            .automaton
            .transitions()
            .all(|(_, s, _)| s != Symbol::RightEnd));
        match fw.automaton.classify_direction() {
            DirectionClass::Determinate(p) => assert_eq!(p, fw.partition),
            other => panic!("expected a partition, got {other:?}"),
        }
        assert_eq!(fw.automaton.state_name(5), "1'");
        assert_eq!(fw.automaton.state_name(6), "2'");
    }
}
