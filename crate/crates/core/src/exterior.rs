//! Subsets as bitmasks, ordered by (size, lex), and exterior-algebra signs.

use std::collections::HashMap;

/// Size-`k` subsets of `0..r` in lexicographic order of their sorted elements.
pub fn subsets(r: usize, k: usize) -> Vec<u64> {
    assert!(r <= 64, "at most 64 generators");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(r: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<u64>) {
        if current.len() == k {
            out.push(current.iter().fold(0u64, |m, &i| m | (1 << i)));
            return;
        }
        for i in start..r {
            if r - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(r, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(r, k, 0, &mut current, &mut out);
    out
}

/// Position of each mask in its list.
pub fn index_of(masks: &[u64]) -> HashMap<u64, usize> {
    masks.iter().enumerate().map(|(k, m)| (*m, k)).collect()
}

pub fn elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of `e_S ∧ e_T` relative to `e_{S∪T}`; zero when they meet.
pub fn wedge_sign(s: u64, t: u64) -> i64 {
    if s & t != 0 {
        return 0;
    }
    // count pairs (a in S, b in T) with a > b
    let mut inversions = 0;
    for b in elements(t) {
        inversions += (s >> (b + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^p` where `p` is the 0-based position of `j` in `S`.
pub fn removal_sign(s: u64, j: usize) -> i64 {
    let below = (s & ((1u64 << j) - 1)).count_ones();
    if below.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `{1,3}`-style label with 1-based indices.
pub fn label(mask: u64) -> String {
    let parts: Vec<String> = elements(mask).iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
