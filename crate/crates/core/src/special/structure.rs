use serde::Serialize;

use crate::words::{Alphabet, Letter, Span, Word};

use super::{Session, SpecialError};

/// `w ≡ u_0 a_1 u_1 … a_m u_m` with each `u_i` a maximal invertible subword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OttoZhangForm {
    pub parts: Vec<Word>,
    pub part_spans: Vec<Span>,
    pub letters: Vec<Letter>,
    pub letter_positions: Vec<usize>,
}

impl OttoZhangForm {
    pub fn m(&self) -> usize {
        self.letters.len()
    }

    pub fn concat(&self) -> Word {
        let mut out = self.parts[0].to_vec();
        for (a, u) in self.letters.iter().zip(&self.parts[1..]) {
            out.push(*a);
            out.extend_from_slice(u);
        }
        Word::from_letters(out)
    }

    /// The separator letters `a_1 … a_m` as a word.
    pub fn skeleton(&self) -> Word {
        Word::from_letters(self.letters.clone())
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("[{}]", alphabet.render(&self.parts[0]));
        for (a, u) in self.letters.iter().zip(&self.parts[1..]) {
            out.push_str(&format!(
                " {} [{}]",
                alphabet.symbol(*a),
                alphabet.render(u)
            ));
        }
        out
    }
}

pub(super) fn otto_zhang(s: &Session, w: &Word) -> Result<OttoZhangForm, SpecialError> {
    let mut covered = vec![false; w.len()];
    for span in s.invertible_spans(w)? {
        covered[span.start..span.end]
            .iter_mut()
            .for_each(|c| *c = true);
    }
    // overlapping or adjacent invertible spans have an invertible union, so
    // the maximal invertible subwords are exactly the covered runs
    let mut form = OttoZhangForm {
        parts: Vec::new(),
        part_spans: Vec::new(),
        letters: Vec::new(),
        letter_positions: Vec::new(),
    };
    let mut start = 0;
    for (i, c) in covered.iter().enumerate() {
        if !c {
            let span = Span { start, end: i };
            form.parts.push(w.slice(span));
            form.part_spans.push(span);
            form.letters.push(w[i]);
            form.letter_positions.push(i);
            start = i + 1;
        }
    }
    let last = Span {
        start,
        end: w.len(),
    };
    form.parts.push(w.slice(last));
    form.part_spans.push(last);
    Ok(form)
}

/// The reduced form: each maximal invertible part replaced by its least
/// representative, separators kept.
pub(super) fn zhang_reduce(s: &Session, w: &Word) -> Result<Word, SpecialError> {
    let form = otto_zhang(s, w)?;
    let mut out = s.nf(&form.parts[0])?.to_vec();
    for (a, u) in form.letters.iter().zip(&form.parts[1..]) {
        out.push(*a);
        out.extend_from_slice(&s.nf(u)?);
    }
    Ok(Word::from_letters(out))
}

/// Whether `w` is a concatenation of words from `pieces`.
pub fn parses_over(w: &[Letter], pieces: &[Word]) -> bool {
    let mut ok = vec![false; w.len() + 1];
    ok[0] = true;
    for i in 0..w.len() {
        if ok[i] {
            for p in pieces {
                if !p.is_empty() && w[i..].starts_with(p) {
                    ok[i + p.len()] = true;
                }
            }
        }
    }
    ok[w.len()]
}

/// Invertible subwords of `u·v` straddling the junction, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutLattice {
    pub elements: Vec<Span>,
    pub bottom: Span,
    pub top: Span,
    pub height: usize,
    /// Meets and joins of all pairs were found among the elements.
    pub closed: bool,
}

pub(super) fn cutting_lattice(s: &Session, u: &Word, v: &Word) -> Result<CutLattice, SpecialError> {
    if u.is_empty() || v.is_empty() {
        return Err(SpecialError::NoCuttingWord);
    }
    let uv = u.concat(v);
    let cut = u.len();
    let mut elements = Vec::new();
    for start in 0..cut {
        for end in cut + 1..=uv.len() {
            let span = Span { start, end };
            if s.is_invertible(&uv.slice(span))? {
                elements.push(span);
            }
        }
    }
    if elements.is_empty() {
        return Err(SpecialError::NoCuttingWord);
    }
    let mut closed = true;
    for x in &elements {
        for y in &elements {
            let meet = Span {
                start: x.start.max(y.start),
                end: x.end.min(y.end),
            };
            let join = Span {
                start: x.start.min(y.start),
                end: x.end.max(y.end),
            };
            closed &= elements.contains(&meet) && elements.contains(&join);
        }
    }
    let bottom = elements
        .iter()
        .copied()
        .reduce(|a, b| Span {
            start: a.start.max(b.start),
            end: a.end.min(b.end),
        })
        .expect("nonempty");
    let top = elements
        .iter()
        .copied()
        .reduce(|a, b| Span {
            start: a.start.min(b.start),
            end: a.end.max(b.end),
        })
        .expect("nonempty");
    Ok(CutLattice {
        height: longest_chain(&elements),
        elements,
        bottom,
        top,
        closed,
    })
}

fn longest_chain(elements: &[Span]) -> usize {
    let mut order: Vec<Span> = elements.to_vec();
    order.sort_by_key(|s| s.len());
    let mut best = vec![0usize; order.len()];
    for i in 0..order.len() {
        for j in 0..i {
            if order[j] != order[i] && order[i].contains(order[j]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

pub(super) fn min_invertible_containing(
    s: &Session,
    w: &Word,
    anchor: Span,
) -> Result<Span, SpecialError> {
    if anchor.start > anchor.end || anchor.end > w.len() {
        return Err(SpecialError::BadSpan {
            start: anchor.start,
            end: anchor.end,
            len: w.len(),
        });
    }
    let mut containing = Vec::new();
    for start in 0..=anchor.start {
        for end in anchor.end.max(start + 1)..=w.len() {
            let span = Span { start, end };
            if s.is_invertible(&w.slice(span))? {
                containing.push(span);
            }
        }
    }
    let min = containing
        .iter()
        .copied()
        .min_by_key(|s| (s.len(), s.start))
        .ok_or(SpecialError::NoContainingInvertible)?;
    debug_assert!(containing.iter().all(|c| c.contains(min)));
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{session, w};
    use super::*;

    fn sp(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    #[test]
    fn otto_zhang_examples() {
        let s = session("ab", &["ab"]);
        let f = s.otto_zhang(&w(&s, "aab")).unwrap();
        assert_eq!(f.m(), 1);
        assert_eq!(f.parts, vec![Word::empty(), w(&s, "ab")]);
        assert_eq!(f.letters, vec![w(&s, "a")[0]]);

        let f = s.otto_zhang(&w(&s, "aa")).unwrap();
        assert_eq!(f.m(), 2);
        assert!(f.parts.iter().all(|p| p.is_empty()));

        let f = s.otto_zhang(&Word::empty()).unwrap();
        assert_eq!(f.m(), 0);
        assert_eq!(f.parts, vec![Word::empty()]);
    }

    #[test]
    fn zhang_reduce_examples() {
        let s = session("ab", &["ab"]);
        assert_eq!(s.zhang_reduce(&w(&s, "aabb")).unwrap(), Word::empty());
        assert_eq!(s.zhang_reduce(&w(&s, "aab")).unwrap(), w(&s, "a"));
        assert_eq!(s.zhang_reduce(&Word::empty()).unwrap(), Word::empty());
    }

    #[test]
    fn zhang_reduce_matches_normal_forms() {
        for (alpha, rel) in [
            ("ab", "ab"),
            ("abcd", "abcdbcabcd"),
            ("abcd", "abcdab"),
            ("ab", "abab"),
        ] {
            let s = session(alpha, &[rel]);
            for word in s.alphabet().words_up_to(5) {
                assert_eq!(
                    s.zhang_reduce(&word).unwrap(),
                    s.nf(&word).unwrap(),
                    "{word:?}"
                );
            }
        }
    }

    #[test]
    fn cutting_lattice_examples() {
        let s = session("abcd", &["abcdbcabcd"]);
        let lat = s.cutting_lattice(&w(&s, "ab"), &w(&s, "cd")).unwrap();
        assert_eq!(lat.elements, vec![sp(0, 4), sp(1, 3)]);
        assert_eq!(lat.height, 1);
        assert!(lat.closed);
        assert_eq!(lat.bottom, sp(1, 3));
        assert_eq!(lat.top, sp(0, 4));

        let lat = s.cutting_lattice(&w(&s, "b"), &w(&s, "c")).unwrap();
        assert_eq!(lat.elements, vec![sp(0, 2)]);
        assert_eq!(lat.height, 0);

        let b = session("ab", &["ab"]);
        assert_eq!(
            b.cutting_lattice(&w(&b, "a"), &w(&b, "a")),
            Err(SpecialError::NoCuttingWord)
        );
    }

    #[test]
    fn min_invertible_examples() {
        let s = session("abcd", &["abcdbcabcd"]);
        let abcd = w(&s, "abcd");
        assert_eq!(
            s.min_invertible_containing(&abcd, Span::letter(0)).unwrap(),
            sp(0, 4)
        );
        assert_eq!(
            s.min_invertible_containing(&abcd, Span::letter(1)).unwrap(),
            sp(1, 3)
        );
        let b = session("ab", &["ab"]);
        assert_eq!(
            b.min_invertible_containing(&w(&b, "aabb"), sp(1, 3))
                .unwrap(),
            sp(1, 3)
        );
        assert_eq!(
            b.min_invertible_containing(&w(&b, "aa"), Span::letter(0)),
            Err(SpecialError::NoContainingInvertible)
        );
    }
}
