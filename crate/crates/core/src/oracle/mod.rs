//! Equality in a special monoid: rewriting, completion, bounded search and
//! refutation invariants, bundled into a cached [`Oracle`] session.

mod abelian;
mod completion;
mod rewrite;
mod search;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::words::{Alphabet, Word};

pub use abelian::{count_vector, AbelianInvariant};
pub use completion::{
    knuth_bendix, CompletionLimits, CompletionOutcome, CompletionStats, CompletionStatus,
};
pub use rewrite::{
    critical_pairs, reduce_traced, reduce_with, RewriteSystem, Rule, RuleJson, Step,
};
pub use search::{bidirectional, neighbours, Derivation, SearchLimits, SearchResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("relator {0} is empty")]
    EmptyRelator(usize),
    #[error("relator {0} uses a letter outside the alphabet")]
    ForeignRelator(usize),
    #[error("rule {0} is not short-lex decreasing")]
    NotDecreasing(String),
}

/// `⟨A | w_1 = 1, …, w_k = 1⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPresentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl SpecialPresentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, OracleError> {
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(OracleError::EmptyRelator(i));
            }
            if !alphabet.contains(r) {
                return Err(OracleError::ForeignRelator(i));
            }
        }
        Ok(SpecialPresentation { alphabet, relators })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn k(&self) -> usize {
        self.relators.len()
    }

    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| format!("{} = 1", self.alphabet.render(r)))
            .collect();
        format!(
            "⟨{} | {}⟩",
            self.alphabet.symbols().join(", "),
            rels.join(", ")
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub completion: CompletionLimits,
    /// Total rewrite steps the bidirectional search may take.
    pub search_radius: usize,
    /// Cap on intermediate word length; `None` means 4 × the longest relator.
    pub max_word_len: Option<usize>,
    pub max_states: usize,
    pub keep_traces: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            completion: CompletionLimits::default(),
            search_radius: 10,
            max_word_len: None,
            max_states: 200_000,
            keep_traces: false,
        }
    }
}

impl OracleConfig {
    /// Every budget set to zero.
    pub fn zeroed() -> Self {
        OracleConfig {
            completion: CompletionLimits::zero(),
            search_radius: 0,
            max_word_len: Some(0),
            max_states: 0,
            keep_traces: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// Distinct irreducible words of a complete system.
    DistinctNormalForms { left: Word, right: Word },
    /// Distinct reduced letter-count vectors.
    Abelian { left: Vec<i64>, right: Vec<i64> },
    /// `word` has no right (or left) inverse: it admits no piece
    /// decomposition, or its inverse-search graph closed without reaching 1.
    NoInverse { word: Word, right: bool },
    /// An invertible word with an invertible proper prefix.
    InvertiblePrefix { prefix: Word },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub completion: CompletionStatus,
    pub radius: usize,
    pub max_word_len: usize,
    pub states_explored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Option<Derivation>),
    NotEqual(Refutation),
    Unknown(BudgetReport),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn is_not_equal(&self) -> bool {
        matches!(self, Verdict::NotEqual(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
}

/// An analysis session bound to one presentation. Queries are pure given the
/// presentation and configuration; results are memoised behind a mutex.
#[derive(Debug)]
pub struct Oracle {
    pres: SpecialPresentation,
    config: OracleConfig,
    completion: CompletionOutcome,
    abelian: AbelianInvariant,
    cache: Mutex<HashMap<(Word, Word), Verdict>>,
}

impl Oracle {
    pub fn new(pres: SpecialPresentation, config: OracleConfig) -> Self {
        let completion = knuth_bendix(&pres, config.completion);
        let abelian = AbelianInvariant::new(pres.alphabet().len(), pres.relators());
        Oracle {
            pres,
            config,
            completion,
            abelian,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &SpecialPresentation {
        &self.pres
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.pres.alphabet()
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn completion(&self) -> &CompletionOutcome {
        &self.completion
    }

    pub fn is_complete(&self) -> bool {
        self.completion.is_complete()
    }

    /// The complete system if completion succeeded, else the partial one.
    pub fn system(&self) -> &RewriteSystem {
        &self.completion.system
    }

    /// Replaces the configuration. Completion is rerun when its limits change;
    /// otherwise only `Unknown` verdicts are forgotten, since every other
    /// verdict stays valid under any budget.
    pub fn set_config(&mut self, config: OracleConfig) {
        if config.completion != self.config.completion {
            let rerun = knuth_bendix(&self.pres, config.completion);
            if rerun != self.completion {
                self.completion = rerun;
                // traces may cite rules that no longer exist
                self.cache.lock().expect("cache poisoned").clear();
            }
        }
        self.config = config;
        self.cache
            .lock()
            .expect("cache poisoned")
            .retain(|_, v| !v.is_unknown());
    }

    pub fn max_word_len(&self) -> usize {
        self.config
            .max_word_len
            .unwrap_or(4 * self.pres.max_relator_len())
    }

    /// Irreducible form under the session's system, complete or not.
    pub fn reduce(&self, w: &Word) -> Word {
        reduce_with(&self.completion.system, w)
    }

    /// The canonical form, available only with a complete system.
    pub fn normal_form(&self, w: &Word) -> Option<Word> {
        self.is_complete().then(|| self.reduce(w))
    }

    pub fn abelian(&self) -> &AbelianInvariant {
        &self.abelian
    }

    pub fn abelianization_vector(&self, w: &Word) -> Vec<i64> {
        self.abelian.vector(w)
    }

    /// The equations a derivation may use: relators and the session's rules.
    pub fn equations(&self) -> Vec<(Word, Word)> {
        self.pres
            .relators()
            .iter()
            .map(|r| (r.clone(), Word::empty()))
            .chain(
                self.completion
                    .system
                    .rules()
                    .iter()
                    .map(|r| (r.lhs.clone(), r.rhs.clone())),
            )
            .collect()
    }

    pub fn decide_equal(&self, u: &Word, v: &Word) -> Verdict {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let verdict = self.decide_uncached(u, v);
        self.cache
            .lock()
            .expect("cache poisoned")
            .entry(key)
            .or_insert(verdict)
            .clone()
    }

    fn decide_uncached(&self, u: &Word, v: &Word) -> Verdict {
        let traces = self.config.keep_traces;
        if u == v {
            return Verdict::Equal(traces.then(|| Derivation::trivial(u.clone())));
        }
        let ru = self.reduce(u);
        let rv = self.reduce(v);
        if ru == rv {
            return Verdict::Equal(traces.then(|| self.meet_trace(u, v)));
        }
        if self.is_complete() {
            return Verdict::NotEqual(Refutation::DistinctNormalForms {
                left: ru,
                right: rv,
            });
        }
        let (au, av) = (self.abelian.vector(u), self.abelian.vector(v));
        if au != av {
            return Verdict::NotEqual(Refutation::Abelian {
                left: au,
                right: av,
            });
        }
        let limits = SearchLimits {
            radius: self.config.search_radius,
            max_word_len: self.max_word_len().max(u.len()).max(v.len()),
            max_states: self.config.max_states,
        };
        match bidirectional(&self.equations(), &ru, &rv, limits) {
            SearchResult::Met(mid) => Verdict::Equal(traces.then(|| {
                let mut words = self.reduce_chain(u);
                words.extend(mid.words.into_iter().skip(1));
                let mut back = self.reduce_chain(v);
                back.pop();
                back.reverse();
                words.extend(back);
                Derivation { words }
            })),
            SearchResult::Exhausted { states } => Verdict::Unknown(BudgetReport {
                completion: self.completion.status,
                radius: limits.radius,
                max_word_len: limits.max_word_len,
                states_explored: states,
            }),
        }
    }

    fn reduce_chain(&self, w: &Word) -> Vec<Word> {
        let (_, steps) = reduce_traced(&self.completion.system, w);
        let mut words = vec![w.clone()];
        words.extend(steps.into_iter().map(|s| s.after));
        words
    }

    fn meet_trace(&self, u: &Word, v: &Word) -> Derivation {
        let mut words = self.reduce_chain(u);
        let mut back = self.reduce_chain(v);
        back.pop();
        back.reverse();
        words.extend(back);
        Derivation { words }
    }

    /// Re-checks an equality verdict for `(u, v)`: derivations are replayed,
    /// normal forms and invariant values are recomputed. `Unknown` and
    /// refutations that are not about equality never verify here.
    pub fn verify(&self, u: &Word, v: &Word, verdict: &Verdict) -> bool {
        match verdict {
            Verdict::Equal(None) => self.decide_equal(u, v).is_equal(),
            Verdict::Equal(Some(d)) => {
                d.start() == u && d.end() == v && d.replays(&self.equations())
            }
            Verdict::NotEqual(Refutation::DistinctNormalForms { left, right }) => {
                self.is_complete()
                    && left != right
                    && self.reduce(u) == *left
                    && self.reduce(v) == *right
            }
            Verdict::NotEqual(Refutation::Abelian { left, right }) => {
                left != right && self.abelian.vector(u) == *left && self.abelian.vector(v) == *right
            }
            Verdict::NotEqual(_) | Verdict::Unknown(_) => false,
        }
    }
}
