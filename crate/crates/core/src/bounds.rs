//! Closed-form length bounds.

/// Exact binomial coefficient; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

fn binomial_minus_one(n: u64, k: u64) -> u128 {
    binomial(n, k).expect("binomial overflow") - 1
}

/// Upper bound on the shortest accepted string of any `n`-state automaton.
pub fn general_upper_bound(n: u64) -> u128 {
    binomial_minus_one(2 * n, n)
}

/// Upper bound for direction-determinate automata; attained for `n >= 2`.
pub fn dirdet_bound(n: u64) -> u128 {
    binomial_minus_one(n, n / 2)
}

/// Length reached by the `(k, ℓ)` direction-determinate construction.
pub fn dirdet_length(k: u64, l: u64) -> u128 {
    binomial_minus_one(k + l, l + 1)
}

/// Length reached by the inductive general construction, `n >= 2`.
pub fn general_lower_bound(n: u32) -> u128 {
    3 * (1u128 << (n - 2)) - 1
}

/// The NFA-size bound column: `C(2n, n+1) - 1`.
pub fn nfa_upper_bound(n: u64) -> u128 {
    binomial_minus_one(2 * n, n + 1)
}

/// Checks a found shortest length against the applicable bound.
pub fn within_bounds(n: u64, length: usize, direction_determinate: bool) -> bool {
    let len = length as u128;
    len <= general_upper_bound(n) && (!direction_determinate || len <= dirdet_bound(n))
}
