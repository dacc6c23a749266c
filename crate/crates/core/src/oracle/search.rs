use std::collections::HashMap;

use crate::words::Word;

/// A chain of words, each obtained from the previous one by replacing a
/// single occurrence of one side of an equation with the other side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub words: Vec<Word>,
}

impl Derivation {
    pub fn trivial(w: Word) -> Self {
        Derivation { words: vec![w] }
    }

    pub fn steps(&self) -> usize {
        self.words.len().saturating_sub(1)
    }

    pub fn start(&self) -> &Word {
        &self.words[0]
    }

    pub fn end(&self) -> &Word {
        self.words.last().expect("derivations are nonempty")
    }

    /// Checks every step against `equations`, read in both directions.
    pub fn replays(&self, equations: &[(Word, Word)]) -> bool {
        !self.words.is_empty()
            && self
                .words
                .windows(2)
                .all(|p| one_step(equations, &p[0], &p[1]))
    }
}

fn one_step(equations: &[(Word, Word)], x: &Word, y: &Word) -> bool {
    equations.iter().any(|(l, r)| {
        x.occurrences(l)
            .into_iter()
            .any(|at| x.replaced(at, l.len(), r) == *y)
            || x.occurrences(r)
                .into_iter()
                .any(|at| x.replaced(at, r.len(), l) == *y)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub radius: usize,
    pub max_word_len: usize,
    pub max_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Met(Derivation),
    Exhausted { states: usize },
}

/// All words one elementary step away from `x` whose length stays within `cap`.
pub fn neighbours(equations: &[(Word, Word)], x: &Word, cap: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for (l, r) in equations {
        for (from, to) in [(l, r), (r, l)] {
            if x.len() + to.len() < from.len() || x.len() + to.len() - from.len() > cap {
                continue;
            }
            for at in x.occurrences(from) {
                out.push(x.replaced(at, from.len(), to));
            }
        }
    }
    out
}

/// Breadth-first search from both ends, always growing the smaller frontier,
/// until the two explored sets meet or the step radius is used up.
pub fn bidirectional(
    equations: &[(Word, Word)],
    u: &Word,
    v: &Word,
    limits: SearchLimits,
) -> SearchResult {
    let mut parents: [HashMap<Word, Option<Word>>; 2] = [HashMap::new(), HashMap::new()];
    parents[0].insert(u.clone(), None);
    parents[1].insert(v.clone(), None);
    if u == v {
        return SearchResult::Met(Derivation::trivial(u.clone()));
    }
    let mut frontiers = [vec![u.clone()], vec![v.clone()]];
    let mut depth = 0;
    while depth < limits.radius {
        let side = if frontiers[0].len() <= frontiers[1].len() {
            0
        } else {
            1
        };
        if frontiers[side].is_empty() {
            break;
        }
        let mut next = Vec::new();
        for x in std::mem::take(&mut frontiers[side]) {
            for y in neighbours(equations, &x, limits.max_word_len) {
                if parents[side].contains_key(&y) {
                    continue;
                }
                parents[side].insert(y.clone(), Some(x.clone()));
                if parents[1 - side].contains_key(&y) {
                    return SearchResult::Met(join(&parents, &y));
                }
                next.push(y);
                if parents[0].len() + parents[1].len() > limits.max_states {
                    return SearchResult::Exhausted {
                        states: parents[0].len() + parents[1].len(),
                    };
                }
            }
        }
        frontiers[side] = next;
        depth += 1;
    }
    SearchResult::Exhausted {
        states: parents[0].len() + parents[1].len(),
    }
}

fn join(parents: &[HashMap<Word, Option<Word>>; 2], meet: &Word) -> Derivation {
    let walk = |map: &HashMap<Word, Option<Word>>| {
        let mut chain = vec![meet.clone()];
        while let Some(Some(p)) = map.get(chain.last().unwrap()) {
            chain.push(p.clone());
        }
        chain
    };
    let mut words = walk(&parents[0]);
    words.reverse();
    words.extend(walk(&parents[1]).into_iter().skip(1));
    Derivation { words }
}
