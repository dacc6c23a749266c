//! Invertible pieces of a special monoid: invertibility, the set Δ of
//! minimal invertible words, the units presentation, Otto–Zhang forms and
//! cutting-word lattices.

mod delta;
mod invert;
mod structure;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::oracle::{BudgetReport, Oracle, OracleConfig, SpecialPresentation, Verdict};
use crate::words::{Alphabet, Span, Word};

pub(crate) use delta::class_by_inverse_rewriting;
pub use delta::{
    compute_delta, units_presentation, DeltaTable, GroupKind, RelatorPieces, UnitsPresentation,
};
pub use invert::{piece_decomposable, right_inverses_up_to, search_inverse, InverseSearch, Side};
pub use structure::{parses_over, CutLattice, OttoZhangForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecialError {
    #[error("word {0} is not invertible")]
    NonInvertibleInput(String),
    #[error("oracle inconclusive: {0}")]
    OracleInconclusive(String),
    #[error("delta table inconclusive: {detail}")]
    Inconclusive {
        detail: String,
        table: Box<DeltaTable>,
    },
    #[error("delta table is partial")]
    PartialDelta,
    #[error("no invertible word cuts across the pair")]
    NoCuttingWord,
    #[error("no invertible subword contains the anchor")]
    NoContainingInvertible,
    #[error("span {start}..{end} does not fit a word of length {len}")]
    BadSpan {
        start: usize,
        end: usize,
        len: usize,
    },
}

/// Budgets for invertibility and enumeration on top of the oracle's own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialLimits {
    /// Witness length cap per input letter, as a multiple of the
    /// longest relator.
    pub witness_factor: usize,
    pub max_states: usize,
    /// Elements of G enumerated before giving up on finiteness.
    pub max_group_order: usize,
}

impl Default for SpecialLimits {
    fn default() -> Self {
        SpecialLimits {
            witness_factor: 2,
            max_states: 20_000,
            max_group_order: 2_000,
        }
    }
}

impl SpecialLimits {
    pub fn scaled(self, factor: f64) -> Self {
        let s = |n: usize| ((n as f64) * factor).round().max(0.0) as usize;
        SpecialLimits {
            witness_factor: s(self.witness_factor),
            max_states: s(self.max_states),
            max_group_order: s(self.max_group_order),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertibilityVerdict {
    pub right: Verdict,
    pub left: Verdict,
    pub invertible: Verdict,
    pub witness_right: Option<Word>,
    pub witness_left: Option<Word>,
}

impl InvertibilityVerdict {
    pub fn is_invertible(&self) -> bool {
        self.invertible.is_equal()
    }

    pub fn is_unknown(&self) -> bool {
        self.invertible.is_unknown()
    }
}

/// An analysis session: the equality oracle plus invertibility caches and
/// the lazily computed Δ table.
#[derive(Debug)]
pub struct Session {
    oracle: Oracle,
    limits: SpecialLimits,
    inv_cache: Mutex<HashMap<Word, InvertibilityVerdict>>,
    delta: OnceLock<Result<DeltaTable, SpecialError>>,
}

impl Session {
    pub fn new(pres: SpecialPresentation, config: OracleConfig, limits: SpecialLimits) -> Self {
        Session {
            oracle: Oracle::new(pres, config),
            limits,
            inv_cache: Mutex::new(HashMap::new()),
            delta: OnceLock::new(),
        }
    }

    pub fn with_defaults(pres: SpecialPresentation) -> Self {
        Self::new(pres, OracleConfig::default(), SpecialLimits::default())
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn presentation(&self) -> &SpecialPresentation {
        self.oracle.presentation()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.oracle.alphabet()
    }

    pub fn limits(&self) -> &SpecialLimits {
        &self.limits
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet().render(w)
    }

    /// Canonical form; needs a complete system.
    pub fn nf(&self, w: &Word) -> Result<Word, SpecialError> {
        self.oracle.normal_form(w).ok_or_else(|| {
            SpecialError::OracleInconclusive("completion did not finish within budget".into())
        })
    }

    pub fn is_one(&self, w: &Word) -> Result<bool, SpecialError> {
        match self.oracle.decide_equal(w, &Word::empty()) {
            Verdict::Equal(_) => Ok(true),
            Verdict::NotEqual(_) => Ok(false),
            Verdict::Unknown(_) => Err(SpecialError::OracleInconclusive(format!(
                "cannot decide whether {} = 1",
                self.render(w)
            ))),
        }
    }

    fn witness_cap(&self, w: &Word) -> usize {
        let l = self.presentation().max_relator_len().max(1);
        self.limits.witness_factor * l * w.len().max(1)
    }

    fn budget(&self) -> BudgetReport {
        BudgetReport {
            completion: self.oracle.completion().status,
            radius: self.witness_cap(&Word::empty()),
            max_word_len: self.oracle.max_word_len(),
            states_explored: self.limits.max_states,
        }
    }

    fn one_side(&self, x: &Word, side: Side) -> (Verdict, Option<Word>) {
        let system = self.oracle.system();
        let complete = self.oracle.is_complete();
        let refuted = Verdict::NotEqual(crate::oracle::Refutation::NoInverse {
            word: x.clone(),
            right: side == Side::Right,
        });
        if complete && !piece_decomposable(system, x, side) {
            return (refuted, None);
        }
        match search_inverse(system, x, side, self.witness_cap(x), self.limits.max_states) {
            InverseSearch::Found(v) => (Verdict::Equal(None), Some(v)),
            InverseSearch::Closed { .. } if complete => (refuted, None),
            _ => (Verdict::Unknown(self.budget()), None),
        }
    }

    /// Decides whether `w` is right-, left- and two-sided invertible.
    pub fn invertibility(&self, w: &Word) -> InvertibilityVerdict {
        let x = self.oracle.reduce(w);
        if let Some(hit) = self.inv_cache.lock().expect("cache poisoned").get(&x) {
            return hit.clone();
        }
        let (right, witness_right) = self.one_side(&x, Side::Right);
        let (left, witness_left) = self.one_side(&x, Side::Left);
        let invertible = match (&right, &left) {
            (Verdict::Equal(_), Verdict::Equal(_)) => Verdict::Equal(None),
            (Verdict::NotEqual(r), _) | (_, Verdict::NotEqual(r)) => Verdict::NotEqual(r.clone()),
            (Verdict::Unknown(b), _) | (_, Verdict::Unknown(b)) => Verdict::Unknown(b.clone()),
        };
        let verdict = InvertibilityVerdict {
            right,
            left,
            invertible,
            witness_right,
            witness_left,
        };
        self.inv_cache
            .lock()
            .expect("cache poisoned")
            .entry(x)
            .or_insert(verdict)
            .clone()
    }

    /// `Ok(true)` / `Ok(false)` for a decided two-sided invertibility question.
    pub fn is_invertible(&self, w: &Word) -> Result<bool, SpecialError> {
        match self.invertibility(w).invertible {
            Verdict::Equal(_) => Ok(true),
            Verdict::NotEqual(_) => Ok(false),
            Verdict::Unknown(_) => Err(SpecialError::OracleInconclusive(format!(
                "invertibility of {} undecided",
                self.render(w)
            ))),
        }
    }

    pub fn is_right_invertible(&self, w: &Word) -> Result<bool, SpecialError> {
        self.side_decided(w, true)
    }

    pub fn is_left_invertible(&self, w: &Word) -> Result<bool, SpecialError> {
        self.side_decided(w, false)
    }

    fn side_decided(&self, w: &Word, right: bool) -> Result<bool, SpecialError> {
        let v = self.invertibility(w);
        match if right { v.right } else { v.left } {
            Verdict::Equal(_) => Ok(true),
            Verdict::NotEqual(_) => Ok(false),
            Verdict::Unknown(_) => Err(SpecialError::OracleInconclusive(format!(
                "one-sided invertibility of {} undecided",
                self.render(w)
            ))),
        }
    }

    /// Equal iff no proper nonempty prefix of the invertible word `w` is invertible.
    pub fn is_indecomposable(&self, w: &Word) -> Result<Verdict, SpecialError> {
        if !self.is_invertible(w)? {
            return Err(SpecialError::NonInvertibleInput(self.render(w)));
        }
        for i in 1..w.len() {
            if self.is_invertible(&w.prefix(i))? {
                return Ok(Verdict::NotEqual(
                    crate::oracle::Refutation::InvertiblePrefix {
                        prefix: w.prefix(i),
                    },
                ));
            }
        }
        Ok(Verdict::Equal(None))
    }

    /// The reduced two-sided inverse of an invertible word.
    pub fn inverse_of(&self, w: &Word) -> Result<Word, SpecialError> {
        let v = self.invertibility(w);
        match (&v.invertible, v.witness_right) {
            (Verdict::Equal(_), Some(r)) => {
                let inv = self.nf(&r)?;
                debug_assert!(self.is_one(&w.concat(&inv)).unwrap_or(true));
                debug_assert!(self.is_one(&inv.concat(w)).unwrap_or(true));
                Ok(inv)
            }
            (Verdict::Unknown(_), _) => Err(SpecialError::OracleInconclusive(format!(
                "invertibility of {} undecided",
                self.render(w)
            ))),
            _ => Err(SpecialError::NonInvertibleInput(self.render(w))),
        }
    }

    /// Whether some nonempty suffix of `w` is invertible.
    pub fn has_invertible_suffix(&self, w: &Word) -> Result<bool, SpecialError> {
        for i in 0..w.len() {
            if self.is_invertible(&w.suffix_from(i))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Whether some nonempty prefix of `w` is invertible.
    pub fn has_invertible_prefix(&self, w: &Word) -> Result<bool, SpecialError> {
        for i in 1..=w.len() {
            if self.is_invertible(&w.prefix(i))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The Δ table, computed on first use.
    pub fn delta(&self) -> Result<&DeltaTable, SpecialError> {
        self.delta
            .get_or_init(|| compute_delta(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Δ table or, when inconclusive, the partial table with its reason.
    pub fn delta_or_partial(&self) -> (&DeltaTable, Option<String>) {
        match self.delta.get_or_init(|| compute_delta(self)) {
            Ok(t) => (t, None),
            Err(SpecialError::Inconclusive { detail, table }) => (table, Some(detail.clone())),
            Err(e) => panic!("compute_delta returned unexpected error {e}"),
        }
    }

    pub fn otto_zhang(&self, w: &Word) -> Result<OttoZhangForm, SpecialError> {
        structure::otto_zhang(self, w)
    }

    pub fn zhang_reduce(&self, w: &Word) -> Result<Word, SpecialError> {
        structure::zhang_reduce(self, w)
    }

    pub fn cutting_lattice(&self, u: &Word, v: &Word) -> Result<CutLattice, SpecialError> {
        structure::cutting_lattice(self, u, v)
    }

    pub fn min_invertible_containing(&self, w: &Word, anchor: Span) -> Result<Span, SpecialError> {
        structure::min_invertible_containing(self, w, anchor)
    }

    /// Invertible spans of `w`, nonempty, ordered by start then end.
    pub fn invertible_spans(&self, w: &Word) -> Result<Vec<Span>, SpecialError> {
        let mut out = Vec::new();
        for start in 0..w.len() {
            for end in start + 1..=w.len() {
                let span = Span { start, end };
                if self.is_invertible(&w.slice(span))? {
                    out.push(span);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn session(alpha: &str, rels: &[&str]) -> Session {
        let a = Alphabet::from_chars(alpha).unwrap();
        let rels = rels.iter().map(|r| a.parse_word(r).unwrap()).collect();
        Session::with_defaults(SpecialPresentation::new(a, rels).unwrap())
    }

    pub(crate) fn w(s: &Session, t: &str) -> Word {
        s.alphabet().parse_word(t).unwrap()
    }

    #[test]
    fn invertibility_examples() {
        let s = session("ab", &["ab"]);
        let v = s.invertibility(&w(&s, "a"));
        assert!(v.right.is_equal());
        assert_eq!(v.witness_right, Some(w(&s, "b")));
        assert!(v.left.is_not_equal());
        assert!(v.invertible.is_not_equal());

        let e = s.invertibility(&Word::empty());
        assert!(e.is_invertible());
        assert_eq!(e.witness_right, Some(Word::empty()));
        assert_eq!(e.witness_left, Some(Word::empty()));

        let r = session("abcd", &["abcdbcabcd"]);
        assert!(r.invertibility(&w(&r, "bc")).is_invertible());
    }

    #[test]
    fn witnesses_reverify() {
        let s = session("abcd", &["abcdbcabcd"]);
        for word in s.alphabet().words_up_to(4) {
            let v = s.invertibility(&word);
            assert!(!v.is_unknown());
            if let Some(r) = &v.witness_right {
                assert!(s.is_one(&word.concat(r)).unwrap());
            }
            if let Some(l) = &v.witness_left {
                assert!(s.is_one(&l.concat(&word)).unwrap());
            }
        }
    }

    #[test]
    fn indecomposable_examples() {
        let s = session("ab", &["ab"]);
        assert!(s.is_indecomposable(&w(&s, "ab")).unwrap().is_equal());
        assert!(matches!(
            s.is_indecomposable(&w(&s, "a")),
            Err(SpecialError::NonInvertibleInput(_))
        ));
        let z = session("a", &["aa"]);
        assert!(z.is_indecomposable(&w(&z, "aa")).unwrap().is_not_equal());
        assert!(z.is_indecomposable(&w(&z, "a")).unwrap().is_equal());
    }

    #[test]
    fn inverse_examples() {
        let s = session("abcd", &["abcdab"]);
        assert_eq!(s.inverse_of(&w(&s, "ab")).unwrap(), w(&s, "abcd"));
        let b = session("ab", &["ab"]);
        assert_eq!(b.inverse_of(&w(&b, "ab")).unwrap(), Word::empty());
        assert!(b.inverse_of(&w(&b, "a")).is_err());
        let z = session("a", &["aa"]);
        assert_eq!(z.inverse_of(&w(&z, "a")).unwrap(), w(&z, "a"));
    }

    #[test]
    fn invertible_suffix_examples() {
        let s = session("ab", &["ab"]);
        assert!(s.has_invertible_suffix(&w(&s, "aab")).unwrap());
        assert!(!s.has_invertible_suffix(&w(&s, "a")).unwrap());
        assert!(!s.has_invertible_suffix(&Word::empty()).unwrap());
        assert!(s.has_invertible_prefix(&w(&s, "abb")).unwrap());
        assert!(!s.has_invertible_prefix(&w(&s, "ba")).unwrap());
    }

    #[test]
    fn brute_force_agrees_on_small_words() {
        // independent check: u is right-invertible iff some short v has uv = 1
        let s = session("ab", &["aab"]);
        let words = s.alphabet().words_up_to(6);
        for u in s.alphabet().words_up_to(3) {
            let v = s.invertibility(&u);
            let brute_right = words.iter().any(|x| s.nf(&u.concat(x)).unwrap().is_empty());
            let brute_left = words
                .iter()
                .any(|x| s.nf(&x.concat(&u)).unwrap().is_empty());
            assert_eq!(v.right.is_equal(), brute_right, "{u:?}");
            assert_eq!(v.left.is_equal(), brute_left, "{u:?}");
        }
    }
}
