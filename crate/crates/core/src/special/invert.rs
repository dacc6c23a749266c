//! Right and left inverse search against a rewriting system.
//!
//! Suppose `x` is irreducible and `x·v` reduces to ε with `v` irreducible.
//! Reducing left to right, the first rule to fire must straddle the junction,
//! so its left side is `p·s` with `p` a nonempty suffix of `x` and `s` a
//! nonempty prefix of `v`. The word `reduce(x·s)` is then right-inverted by
//! the rest of `v`. Consequently every right inverse is a path in the graph
//! whose moves append such completions `s`, and with a complete system a
//! fully explored graph that never reaches ε refutes right-invertibility.
//! Left inverses are the mirror image.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::oracle::{reduce_with, RewriteSystem};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Looking for `v` with `x·v = 1`.
    Right,
    /// Looking for `v` with `v·x = 1`.
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseSearch {
    Found(Word),
    /// The whole move graph was explored without reaching ε.
    Closed {
        states: usize,
    },
    /// Some branch was cut by the length cap or the state budget.
    Truncated {
        states: usize,
    },
}

/// Necessary condition for `x` (irreducible) to be right-invertible: `x`
/// splits into pieces that are each a proper nonempty prefix of some left
/// side. On the left, proper nonempty suffixes.
pub fn piece_decomposable(system: &RewriteSystem, x: &[Letter], side: Side) -> bool {
    let n = x.len();
    // ok[i]: x[..i] decomposes (right side) or x[n-i..] decomposes (left side)
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for i in 0..n {
        if !ok[i] {
            continue;
        }
        for rule in system.rules() {
            let l = &rule.lhs;
            for k in 1..l.len() {
                if i + k > n {
                    break;
                }
                let fits = match side {
                    Side::Right => x[i..i + k] == l[..k],
                    Side::Left => x[n - i - k..n - i] == l[l.len() - k..],
                };
                if fits {
                    ok[i + k] = true;
                }
            }
        }
    }
    ok[n]
}

fn moves(system: &RewriteSystem, x: &Word, side: Side) -> Vec<Word> {
    let mut out = Vec::new();
    for rule in system.rules() {
        let l = &rule.lhs;
        for k in 1..l.len().min(x.len() + 1) {
            let s = match side {
                Side::Right if x.ends_with(&l[..k]) => l.suffix_from(k),
                Side::Left if x.starts_with(&l[l.len() - k..]) => l.prefix(l.len() - k),
                _ => continue,
            };
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Shortest-first search over the move graph from `reduce(x)`. The returned
/// witness `v` satisfies `reduce(x·v) = ε` (or `reduce(v·x) = ε`).
pub fn search_inverse(
    system: &RewriteSystem,
    x: &Word,
    side: Side,
    max_len: usize,
    max_states: usize,
) -> InverseSearch {
    let start = reduce_with(system, x);
    if start.is_empty() {
        return InverseSearch::Found(Word::empty());
    }
    // state -> (appended length, parent state, appended word)
    let mut seen: HashMap<Word, (usize, Option<(Word, Word)>)> = HashMap::new();
    seen.insert(start.clone(), (0, None));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0usize, start.clone())));
    let mut truncated = false;
    while let Some(Reverse((dist, state))) = heap.pop() {
        if seen.get(&state).map(|e| e.0) != Some(dist) {
            continue;
        }
        if state.is_empty() {
            return InverseSearch::Found(witness(&seen, &state, side));
        }
        for s in moves(system, &state, side) {
            let d = dist + s.len();
            if d > max_len {
                truncated = true;
                continue;
            }
            let next = match side {
                Side::Right => reduce_with(system, &state.concat(&s)),
                Side::Left => reduce_with(system, &s.concat(&state)),
            };
            let better = seen.get(&next).is_none_or(|e| d < e.0);
            if better {
                if !seen.contains_key(&next) && seen.len() >= max_states {
                    truncated = true;
                    continue;
                }
                seen.insert(next.clone(), (d, Some((state.clone(), s))));
                heap.push(Reverse((d, next)));
            }
        }
    }
    if truncated {
        InverseSearch::Truncated { states: seen.len() }
    } else {
        InverseSearch::Closed { states: seen.len() }
    }
}

/// Every irreducible `v` with `|v| ≤ max_len` and `reduce(x·v) = ε`, for a
/// complete system. Each such `v` spells a path in the move graph, so walking
/// all paths of total length at most `max_len` finds them all.
pub fn right_inverses_up_to(system: &RewriteSystem, x: &Word, max_len: usize) -> Vec<Word> {
    let start = reduce_with(system, x);
    let mut found = std::collections::BTreeSet::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![(start, Word::empty())];
    while let Some((state, v)) = stack.pop() {
        if state.is_empty() {
            if system.is_irreducible(&v) {
                found.insert(v);
            }
            continue;
        }
        for s in moves(system, &state, Side::Right) {
            if v.len() + s.len() > max_len {
                continue;
            }
            let next = reduce_with(system, &state.concat(&s));
            let w = v.concat(&s);
            if seen.insert((next.clone(), w.clone())) {
                stack.push((next, w));
            }
        }
    }
    found.into_iter().collect()
}

fn witness(seen: &HashMap<Word, (usize, Option<(Word, Word)>)>, end: &Word, side: Side) -> Word {
    // appended words from the last move back to the first
    let mut pieces = Vec::new();
    let mut cur = end.clone();
    while let Some((_, Some((parent, s)))) = seen.get(&cur) {
        pieces.push(s.clone());
        cur = parent.clone();
    }
    let mut out = Vec::new();
    match side {
        // x·s1·s2…: pieces come back as [sn, …, s1]
        Side::Right => pieces.iter().rev().for_each(|s| out.extend_from_slice(s)),
        // …s2·s1·x: already in the right order
        Side::Left => pieces.iter().for_each(|s| out.extend_from_slice(s)),
    }
    Word::from_letters(out)
}
