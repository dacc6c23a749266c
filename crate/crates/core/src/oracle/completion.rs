use std::collections::VecDeque;

use serde::Serialize;

use crate::words::Word;

use super::rewrite::{pairs_between, reduce_rules, RewriteSystem, Rule};
use super::SpecialPresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub max_rule_len: usize,
    pub max_iterations: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 400,
            max_rule_len: 40,
            max_iterations: 20_000,
        }
    }
}

impl CompletionLimits {
    pub fn zero() -> Self {
        CompletionLimits {
            max_rules: 0,
            max_rule_len: 0,
            max_iterations: 0,
        }
    }

    pub fn scaled(self, factor: f64) -> Self {
        let s = |n: usize| ((n as f64) * factor).round().max(0.0) as usize;
        CompletionLimits {
            max_rules: s(self.max_rules),
            max_rule_len: s(self.max_rule_len),
            max_iterations: s(self.max_iterations),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CompletionStatus {
    Completed,
    TimedOut,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CompletionStats {
    pub rules: usize,
    pub critical_pairs: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionOutcome {
    pub status: CompletionStatus,
    pub system: RewriteSystem,
    pub stats: CompletionStats,
}

impl CompletionOutcome {
    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Completed
    }
}

/// Knuth–Bendix completion under short-lex, starting from `w_i → ε`.
///
/// The rule set is kept interreduced. Each processed equation counts as one
/// iteration; once the queue drains, every critical pair of the final system
/// is checked once more before `Completed` is reported.
pub fn knuth_bendix(pres: &SpecialPresentation, limits: CompletionLimits) -> CompletionOutcome {
    let mut rules: Vec<Rule> = Vec::new();
    let mut queue: VecDeque<(Word, Word)> = pres
        .relators()
        .iter()
        .map(|r| (r.clone(), Word::empty()))
        .collect();
    let mut stats = CompletionStats::default();
    let timed_out = |rules: Vec<Rule>, mut stats: CompletionStats| {
        stats.rules = rules.len();
        CompletionOutcome {
            status: CompletionStatus::TimedOut,
            system: RewriteSystem::new(rules).expect("rules are oriented"),
            stats,
        }
    };

    loop {
        while let Some((u, v)) = queue.pop_front() {
            if stats.iterations >= limits.max_iterations {
                return timed_out(rules, stats);
            }
            stats.iterations += 1;
            let u = reduce_rules(&rules, &u);
            let v = reduce_rules(&rules, &v);
            let Some(new) = Rule::oriented(u, v) else {
                continue;
            };
            if new.lhs.len() > limits.max_rule_len || rules.len() >= limits.max_rules {
                return timed_out(rules, stats);
            }
            add_rule(&mut rules, new, &mut queue, &mut stats);
        }
        // final confluence check on the interreduced system
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let system = RewriteSystem::new(rules.clone()).expect("rules are oriented");
        let mut unresolved = false;
        for (p, q) in super::rewrite::critical_pairs(&system) {
            stats.critical_pairs += 1;
            if reduce_rules(&rules, &p) != reduce_rules(&rules, &q) {
                queue.push_back((p, q));
                unresolved = true;
            }
        }
        if !unresolved {
            stats.rules = rules.len();
            return CompletionOutcome {
                status: CompletionStatus::Completed,
                system,
                stats,
            };
        }
    }
}

fn add_rule(
    rules: &mut Vec<Rule>,
    new: Rule,
    queue: &mut VecDeque<(Word, Word)>,
    stats: &mut CompletionStats,
) {
    // rules whose left side contains the new one are retired and re-queued
    let mut kept = Vec::with_capacity(rules.len() + 1);
    for r in rules.drain(..) {
        if !r.lhs.occurrences(&new.lhs).is_empty() {
            queue.push_back((r.lhs, r.rhs));
        } else {
            kept.push(r);
        }
    }
    kept.push(new);
    for i in 0..kept.len() {
        let rhs = reduce_rules(&kept, &kept[i].rhs);
        kept[i].rhs = rhs;
    }
    *rules = kept;
    let new = rules.last().expect("just pushed").clone();
    let mut pairs = Vec::new();
    for r in rules.iter() {
        let same = r.lhs == new.lhs;
        pairs_between(&new, r, same, &mut pairs);
        if !same {
            pairs_between(r, &new, false, &mut pairs);
        }
    }
    stats.critical_pairs += pairs.len();
    queue.extend(pairs);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rewrite::critical_pairs;
    use crate::words::Alphabet;

    fn complete(alpha: &str, rels: &[&str]) -> (Alphabet, CompletionOutcome) {
        let a = Alphabet::from_chars(alpha).unwrap();
        let pres = SpecialPresentation::new(
            a.clone(),
            rels.iter().map(|r| a.parse_word(r).unwrap()).collect(),
        )
        .unwrap();
        let out = knuth_bendix(&pres, CompletionLimits::default());
        (a, out)
    }

    fn rendered(a: &Alphabet, out: &CompletionOutcome) -> Vec<(String, String)> {
        let mut v: Vec<_> = out
            .system
            .rules()
            .iter()
            .map(|r| (a.render(&r.lhs), a.render(&r.rhs)))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn bicyclic() {
        let (a, out) = complete("ab", &["ab"]);
        assert!(out.is_complete());
        assert_eq!(rendered(&a, &out), vec![("ab".into(), "ε".into())]);
    }

    #[test]
    fn cyclic_of_order_two() {
        let (a, out) = complete("a", &["aa"]);
        assert!(out.is_complete());
        assert_eq!(rendered(&a, &out), vec![("aa".into(), "ε".into())]);
    }

    #[test]
    fn zero_iterations_times_out() {
        let a = Alphabet::from_chars("ab").unwrap();
        let pres = SpecialPresentation::new(a.clone(), vec![a.parse_word("ab").unwrap()]).unwrap();
        let out = knuth_bendix(&pres, CompletionLimits::zero());
        assert_eq!(out.status, CompletionStatus::TimedOut);
        assert!(out.system.is_empty());
    }

    // Systems computed independently by a throwaway completion script.
    #[test]
    fn frozen_completions() {
        let cases: &[(&str, &str, &[(&str, &str)])] = &[
            (
                "abcd",
                "abcdbcabcd",
                &[("abcdabcdbc", "ε"), ("bcabcd", "abcdbc")],
            ),
            ("abcd", "abcdab", &[("ababcd", "ε"), ("cdab", "abcd")]),
            ("ab", "abab", &[("abab", "ε")]),
            ("ab", "aba", &[("aab", "ε"), ("ba", "ab")]),
        ];
        for (alpha, rel, expect) in cases {
            let (a, out) = complete(alpha, &[rel]);
            assert!(out.is_complete(), "{rel}");
            let want: Vec<(String, String)> = expect
                .iter()
                .map(|(l, r)| (l.to_string(), r.to_string()))
                .collect();
            assert_eq!(rendered(&a, &out), want, "{rel}");
        }
    }

    #[test]
    fn completed_systems_are_locally_confluent() {
        for (alpha, rels) in [
            ("abcd", vec!["abcdbcabcd"]),
            ("abc", vec!["abc", "bca"]),
            ("ab", vec!["aab", "abb"]),
        ] {
            let (_, out) = complete(alpha, &rels);
            assert!(out.is_complete());
            for (p, q) in critical_pairs(&out.system) {
                assert_eq!(out.system.reduce(&p), out.system.reduce(&q));
            }
        }
    }
}
