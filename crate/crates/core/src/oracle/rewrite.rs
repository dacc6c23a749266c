use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::words::{shortlex_cmp, Alphabet, Letter, Word};

use super::OracleError;

/// A rule `lhs → rhs` with `rhs` strictly short-lex below `lhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    /// Orients the equation `u = v` by short-lex. `None` when `u ≡ v`.
    pub fn oriented(u: Word, v: Word) -> Option<Rule> {
        match shortlex_cmp(&u, &v) {
            Ordering::Greater => Some(Rule { lhs: u, rhs: v }),
            Ordering::Less => Some(Rule { lhs: v, rhs: u }),
            Ordering::Equal => None,
        }
    }
}

/// An ordered list of short-lex decreasing rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<Rule>) -> Result<Self, OracleError> {
        for r in &rules {
            if shortlex_cmp(&r.rhs, &r.lhs) != Ordering::Less {
                return Err(OracleError::NotDecreasing(format!(
                    "{:?} -> {:?}",
                    r.lhs, r.rhs
                )));
            }
        }
        Ok(RewriteSystem { rules })
    }

    pub fn empty() -> Self {
        RewriteSystem { rules: Vec::new() }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn max_lhs_len(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.rules
            .iter()
            .all(|r| r.lhs.is_empty() || !w.windows(r.lhs.len()).any(|s| s == &r.lhs[..]))
    }

    pub fn reduce(&self, w: &Word) -> Word {
        reduce_with(self, w)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        SystemDisplay {
            system: self,
            alphabet,
        }
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Vec<RuleJson> {
        self.rules
            .iter()
            .map(|r| RuleJson {
                lhs: alphabet.render(&r.lhs),
                rhs: alphabet.render(&r.rhs),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleJson {
    pub lhs: String,
    pub rhs: String,
}

struct SystemDisplay<'a> {
    system: &'a RewriteSystem,
    alphabet: &'a Alphabet,
}

impl fmt::Display for SystemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.system.rules.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{} → {}",
                self.alphabet.render(&r.lhs),
                self.alphabet.render(&r.rhs)
            )?;
        }
        write!(f, "}}")
    }
}

/// One rewrite step: rule `rule` applied at offset `at` of `before`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub at: usize,
    pub before: Word,
    pub after: Word,
}

/// Rewrites to an irreducible word. Letters are shifted onto an output stack;
/// whenever some left-hand side becomes a suffix of the stack, the first such
/// rule fires and its right-hand side is pushed back onto the input. This
/// always rewrites the redex that ends leftmost.
pub fn reduce_with(system: &RewriteSystem, w: &Word) -> Word {
    run(system.rules(), w, None)
}

/// As [`reduce_with`], also returning every step taken.
pub fn reduce_traced(system: &RewriteSystem, w: &Word) -> (Word, Vec<Step>) {
    let mut steps = Vec::new();
    let out = run(system.rules(), w, Some(&mut steps));
    (out, steps)
}

pub(crate) fn reduce_rules(rules: &[Rule], w: &[Letter]) -> Word {
    run(rules, &Word::from_letters(w.to_vec()), None)
}

fn run(rules: &[Rule], w: &Word, mut trace: Option<&mut Vec<Step>>) -> Word {
    if rules.is_empty() {
        return w.clone();
    }
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
    while let Some(l) = pending.pop() {
        out.push(l);
        let fired = rules
            .iter()
            .enumerate()
            .find(|(_, r)| !r.lhs.is_empty() && out.ends_with(&r.lhs));
        if let Some((idx, rule)) = fired {
            let at = out.len() - rule.lhs.len();
            if let Some(t) = trace.as_deref_mut() {
                let before: Word = out.iter().chain(pending.iter().rev()).copied().collect();
                let after = before.replaced(at, rule.lhs.len(), &rule.rhs);
                t.push(Step {
                    rule: idx,
                    at,
                    before,
                    after,
                });
            }
            out.truncate(at);
            pending.extend(rule.rhs.iter().rev());
        }
    }
    Word::from_letters(out)
}

/// All critical pairs: for each ordered pair of rules, every proper overlap
/// of a suffix of the first left side with a prefix of the second, and every
/// occurrence of the second left side inside the first.
pub fn critical_pairs(system: &RewriteSystem) -> Vec<(Word, Word)> {
    let rules = system.rules();
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            pairs_between(r1, r2, i == j, &mut out);
        }
    }
    out
}

pub(crate) fn pairs_between(r1: &Rule, r2: &Rule, same: bool, out: &mut Vec<(Word, Word)>) {
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    // overlaps: l1 = x·o, l2 = o·y with o nonempty and x, y nonempty
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let left = r1.rhs.concat(&l2.suffix_from(k));
            let right = l1.prefix(l1.len() - k).concat(&r2.rhs);
            out.push((left, right));
        }
    }
    // containments: l2 occurs inside l1
    if !same && l2.len() <= l1.len() {
        for at in l1.occurrences(l2) {
            let right = l1.replaced(at, l2.len(), &r2.rhs);
            out.push((r1.rhs.clone(), right));
        }
    }
}
