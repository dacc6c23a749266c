use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::oracle::{RewriteSystem, Verdict};
use crate::words::{Alphabet, Span, Word};

use super::{Session, SpecialError};

/// The factorization `w_i ≡ w_{i,1} … w_{i,n_i}` of one relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorPieces {
    pub relator: Word,
    pub spans: Vec<Span>,
}

impl RelatorPieces {
    pub fn words(&self) -> Vec<Word> {
        self.spans.iter().map(|s| self.relator.slice(*s)).collect()
    }
}

/// The minimal invertible words Δ with their reduced inverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTable {
    /// Ordered by first appearance of the piece class in the relators, each
    /// class in short-lex order.
    pub delta: Vec<Word>,
    pub inverse: HashMap<Word, Word>,
    pub pieces: Vec<RelatorPieces>,
    pub partial: bool,
}

impl DeltaTable {
    pub fn contains(&self, w: &Word) -> bool {
        self.delta.contains(w)
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.delta.iter().position(|d| d == w)
    }

    pub fn inverse(&self, w: &Word) -> Option<&Word> {
        self.inverse.get(w)
    }

    pub fn max_len(&self) -> usize {
        self.delta.iter().map(|d| d.len()).max().unwrap_or(0)
    }

    pub fn require_complete(&self) -> Result<&Self, SpecialError> {
        if self.partial {
            Err(SpecialError::PartialDelta)
        } else {
            Ok(self)
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DeltaDisplay {
            table: self,
            alphabet,
        }
    }
}

struct DeltaDisplay<'a> {
    table: &'a DeltaTable,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DeltaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .table
            .delta
            .iter()
            .map(|d| self.alphabet.render(d))
            .collect();
        write!(f, "Δ = {{{}}}", names.join(", "))?;
        for d in &self.table.delta {
            if let Some(inv) = self.table.inverse.get(d) {
                write!(
                    f,
                    "; ({})^{{-1}} = {}",
                    self.alphabet.render(d),
                    self.alphabet.render(inv)
                )?;
            }
        }
        Ok(())
    }
}

fn inconclusive(detail: String, table: DeltaTable) -> SpecialError {
    SpecialError::Inconclusive {
        detail,
        table: Box::new(DeltaTable {
            partial: true,
            ..table
        }),
    }
}

pub fn compute_delta(s: &Session) -> Result<DeltaTable, SpecialError> {
    let mut table = DeltaTable {
        delta: Vec::new(),
        inverse: HashMap::new(),
        pieces: Vec::new(),
        partial: false,
    };
    for r in s.presentation().relators() {
        match factor_relator(s, r) {
            Ok(spans) => table.pieces.push(RelatorPieces {
                relator: r.clone(),
                spans,
            }),
            Err(e) => return Err(inconclusive(e.to_string(), table)),
        }
    }
    let bound = s.presentation().max_relator_len();
    let mut seen_classes = HashSet::new();
    for piece in table
        .pieces
        .iter()
        .flat_map(|p| p.words())
        .collect::<Vec<_>>()
    {
        let class = match class_members(s, &piece, bound) {
            Ok(c) => c,
            Err(e) => return Err(inconclusive(e.to_string(), table)),
        };
        let key = class.first().cloned();
        if !seen_classes.insert(key) {
            continue;
        }
        for c in class {
            if c.is_empty() || table.delta.contains(&c) {
                continue;
            }
            match s.is_indecomposable(&c) {
                Ok(Verdict::Equal(_)) => table.delta.push(c),
                Ok(_) => {}
                Err(e) => return Err(inconclusive(e.to_string(), table)),
            }
        }
    }
    for d in table.delta.clone() {
        match s.inverse_of(&d) {
            Ok(inv) => {
                table.inverse.insert(d, inv);
            }
            Err(e) => return Err(inconclusive(e.to_string(), table)),
        }
    }
    Ok(table)
}

/// Greedy split into shortest invertible prefixes.
fn factor_relator(s: &Session, r: &Word) -> Result<Vec<Span>, SpecialError> {
    let mut spans = Vec::new();
    let mut start = 0;
    while start < r.len() {
        let mut found = None;
        for end in start + 1..=r.len() {
            if s.is_invertible(&r.slice(Span { start, end }))? {
                found = Some(end);
                break;
            }
        }
        let end = found
            .ok_or_else(|| SpecialError::NonInvertibleInput(s.render(&r.suffix_from(start))))?;
        spans.push(Span { start, end });
        start = end;
    }
    Ok(spans)
}

/// All words of length at most `bound` equal in M to `w`, short-lex ordered.
fn class_members(s: &Session, w: &Word, bound: usize) -> Result<Vec<Word>, SpecialError> {
    match s.oracle().normal_form(w) {
        Some(nf) => Ok(class_by_inverse_rewriting(s.oracle().system(), &nf, bound)),
        None => {
            let mut out = Vec::new();
            for c in s.alphabet().words_up_to(bound) {
                match s.oracle().decide_equal(&c, w) {
                    Verdict::Equal(_) => out.push(c),
                    Verdict::NotEqual(_) => {}
                    Verdict::Unknown(_) => {
                        return Err(SpecialError::OracleInconclusive(format!(
                            "cannot compare {} with {}",
                            s.render(&c),
                            s.render(w)
                        )))
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Every word of length at most `bound` whose normal form is `nf`. Short-lex
/// rules never lengthen a word, so each such word reaches `nf` through words
/// no longer than itself; running the rules backwards from `nf` under the same
/// bound therefore finds all of them.
pub(crate) fn class_by_inverse_rewriting(
    system: &RewriteSystem,
    nf: &Word,
    bound: usize,
) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    if nf.len() > bound {
        return Vec::new();
    }
    seen.insert(nf.clone());
    let mut queue = VecDeque::from([nf.clone()]);
    while let Some(x) = queue.pop_front() {
        for rule in system.rules() {
            if x.len() + rule.lhs.len() - rule.rhs.len() > bound {
                continue;
            }
            for at in x.occurrences(&rule.rhs) {
                let y = x.replaced(at, rule.rhs.len(), &rule.lhs);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// What could be determined about the group of units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Cyclic(usize),
    Finite(usize),
    Free(usize),
    Unknown,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "trivial"),
            GroupKind::Cyclic(n) => write!(f, "Z/{n}"),
            GroupKind::Finite(n) => write!(f, "finite of order {n}"),
            GroupKind::Free(0) => write!(f, "trivial"),
            GroupKind::Free(1) => write!(f, "Z"),
            GroupKind::Free(r) => write!(f, "free of rank {r}"),
            GroupKind::Unknown => write!(f, "unknown"),
        }
    }
}

/// `⟨Δ | w_{i,1} … w_{i,n_i} = 1⟩` with Δ-symbols equal in M listed apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitsPresentation {
    pub generators: Vec<Word>,
    pub relations: Vec<Vec<usize>>,
    pub identifications: Vec<(usize, usize)>,
    pub kind: GroupKind,
}

impl UnitsPresentation {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| alphabet.render(g)).collect();
        let sym = |i: &usize| format!("[{}]", gens[*i]);
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{}=1", r.iter().map(sym).collect::<String>()))
            .collect();
        format!("⟨{{{}}} | {}⟩", gens.join(", "), rels.join(", "))
    }
}

pub fn units_presentation(s: &Session, dt: &DeltaTable) -> Result<UnitsPresentation, SpecialError> {
    dt.require_complete()?;
    let relations = dt
        .pieces
        .iter()
        .map(|p| {
            p.words()
                .iter()
                .map(|w| dt.index_of(w).expect("every piece lies in Δ"))
                .collect()
        })
        .collect::<Vec<Vec<usize>>>();
    let nfs = dt
        .delta
        .iter()
        .map(|d| s.nf(d))
        .collect::<Result<Vec<_>, _>>()?;
    let mut identifications = Vec::new();
    for i in 0..nfs.len() {
        for j in i + 1..nfs.len() {
            if nfs[i] == nfs[j] {
                identifications.push((i, j));
            }
        }
    }
    let kind = group_kind(s, dt, &relations, &identifications)?;
    Ok(UnitsPresentation {
        generators: dt.delta.clone(),
        relations,
        identifications,
        kind,
    })
}

fn group_kind(
    s: &Session,
    dt: &DeltaTable,
    relations: &[Vec<usize>],
    identifications: &[(usize, usize)],
) -> Result<GroupKind, SpecialError> {
    // the submonoid generated by Δ is all of G when G is finite
    let gens: Vec<Word> = dt.delta.iter().map(|d| s.nf(d)).collect::<Result<_, _>>()?;
    let mut elements: HashSet<Word> = HashSet::from([Word::empty()]);
    let mut queue = VecDeque::from([Word::empty()]);
    let mut finite = true;
    'outer: while let Some(g) = queue.pop_front() {
        for d in &gens {
            let h = s.nf(&g.concat(d))?;
            if elements.insert(h.clone()) {
                if elements.len() > s.limits().max_group_order {
                    finite = false;
                    break 'outer;
                }
                queue.push_back(h);
            }
        }
    }
    if finite {
        let n = elements.len();
        if n == 1 {
            return Ok(GroupKind::Trivial);
        }
        for d in &gens {
            let mut x = d.clone();
            let mut order = 1;
            while !x.is_empty() && order <= n {
                x = s.nf(&x.concat(d))?;
                order += 1;
            }
            if order == n {
                return Ok(GroupKind::Cyclic(n));
            }
        }
        return Ok(GroupKind::Finite(n));
    }
    // one relation in which some generator occurs once: eliminate it
    if relations.len() == 1 && identifications.is_empty() {
        let rel = &relations[0];
        let once = (0..dt.delta.len()).any(|g| rel.iter().filter(|x| **x == g).count() == 1);
        if once {
            return Ok(GroupKind::Free(dt.delta.len() - 1));
        }
    }
    Ok(GroupKind::Unknown)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{session, w};
    use super::*;

    fn names(s: &Session, dt: &DeltaTable) -> Vec<String> {
        dt.delta.iter().map(|d| s.render(d)).collect()
    }

    #[test]
    fn delta_examples() {
        let b = session("ab", &["ab"]);
        let dt = b.delta().unwrap();
        assert_eq!(names(&b, dt), vec!["ab"]);
        assert_eq!(dt.inverse(&w(&b, "ab")), Some(&Word::empty()));
        assert_eq!(
            dt.display(b.alphabet()).to_string(),
            "Δ = {ab}; (ab)^{-1} = ε"
        );

        let r = session("abcd", &["abcdbcabcd"]);
        let dt = r.delta().unwrap();
        assert_eq!(names(&r, dt), vec!["abcd", "bc"]);
        assert_eq!(dt.inverse(&w(&r, "abcd")), Some(&w(&r, "abcdbc")));
        assert_eq!(dt.inverse(&w(&r, "bc")), Some(&w(&r, "abcdabcd")));

        let z = session("a", &["aa"]);
        let dt = z.delta().unwrap();
        assert_eq!(names(&z, dt), vec!["a"]);
        assert_eq!(dt.inverse(&w(&z, "a")), Some(&w(&z, "a")));
    }

    #[test]
    fn delta_invariants() {
        for (alpha, rels) in [
            ("abcd", vec!["abcdbcabcd"]),
            ("abcd", vec!["abcdab"]),
            ("ab", vec!["abab"]),
            ("abc", vec!["abcab", "cc"]),
        ] {
            let s = session(alpha, &rels);
            let dt = s.delta().unwrap();
            let bound = s.presentation().max_relator_len();
            for d in &dt.delta {
                assert!(!d.is_empty() && d.len() <= bound);
                assert!(s.is_indecomposable(d).unwrap().is_equal());
                let inv = dt.inverse(d).unwrap();
                assert!(s.is_one(&d.concat(inv)).unwrap());
                assert!(s.is_one(&inv.concat(d)).unwrap());
            }
            for p in &dt.pieces {
                let joined: Vec<_> = p.words().iter().flat_map(|x| x.to_vec()).collect();
                assert_eq!(joined, p.relator.to_vec());
                assert!(p.words().iter().all(|x| dt.contains(x)));
            }
        }
    }

    // Independent check of the class enumeration: brute force over A^{≤L}.
    #[test]
    fn inverse_rewriting_finds_whole_classes() {
        let s = session("ab", &["aab", "abb"]);
        let system = s.oracle().system();
        let all = s.alphabet().words_up_to(6);
        for target in s.alphabet().words_up_to(3) {
            let nf = s.nf(&target).unwrap();
            let brute: Vec<Word> = all
                .iter()
                .filter(|x| s.nf(x).unwrap() == nf)
                .cloned()
                .collect();
            assert_eq!(class_by_inverse_rewriting(system, &nf, 6), brute);
        }
    }

    #[test]
    fn units_examples() {
        let b = session("ab", &["ab"]);
        let u = units_presentation(&b, b.delta().unwrap()).unwrap();
        assert_eq!(u.render(b.alphabet()), "⟨{ab} | [ab]=1⟩");
        assert_eq!(u.kind, GroupKind::Trivial);

        let z = session("a", &["aa"]);
        let u = units_presentation(&z, z.delta().unwrap()).unwrap();
        assert_eq!(u.render(z.alphabet()), "⟨{a} | [a][a]=1⟩");
        assert_eq!(u.kind, GroupKind::Cyclic(2));

        let r = session("abcd", &["abcdbcabcd"]);
        let u = units_presentation(&r, r.delta().unwrap()).unwrap();
        assert_eq!(u.render(r.alphabet()), "⟨{abcd, bc} | [abcd][bc][abcd]=1⟩");
        assert_eq!(u.kind, GroupKind::Free(1));
        assert!(u.identifications.is_empty());
    }

    #[test]
    fn partial_tables_are_refused() {
        let s = session("ab", &["ab"]);
        let mut dt = s.delta().unwrap().clone();
        dt.partial = true;
        assert_eq!(units_presentation(&s, &dt), Err(SpecialError::PartialDelta));
    }
}
