//! Homological finiteness reports: the ingredients of the two-sided
//! resolution, rank checks on quotient forests, and the conclusions that
//! follow from what is known about the group of units.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::bicayley::{compute_c, BiCayleyError, EdgeBasisElement, QuotientForest};
use crate::biset::{generator_sets, NElement};
use crate::oracle::SpecialPresentation;
use crate::special::{units_presentation, GroupKind, Session, SpecialError, UnitsPresentation};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    BiCayley(#[from] BiCayleyError),
    #[error("presentation has {0} relators, expected exactly one")]
    NotOneRelator(usize),
    #[error("quotient graph is not a forest")]
    NotAForest,
    #[error("pair must consist of two distinct nonempty words")]
    InvalidPair,
}

/// A finiteness level or dimension, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim {
    Finite(u32),
    Infinite,
}

impl Dim {
    /// `"infinity"` or the decimal value.
    pub fn json(self) -> String {
        match self {
            Dim::Finite(n) => n.to_string(),
            Dim::Infinite => "infinity".into(),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "∞"),
        }
    }
}

/// What is known or assumed about the group of units G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitsAssumption {
    Finite { order: usize },
    Free { rank: usize },
    OneRelator { torsion: bool },
    Asserted { fp: Option<Dim>, cd: Option<Dim> },
    Unknown,
}

impl fmt::Display for UnitsAssumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitsAssumption::Finite { order: 1 } => write!(f, "G trivial"),
            UnitsAssumption::Finite { order } => write!(f, "G finite of order {order}"),
            UnitsAssumption::Free { rank } => write!(f, "G free of rank {rank}"),
            UnitsAssumption::OneRelator { torsion: false } => {
                write!(f, "G torsion-free one-relator")
            }
            UnitsAssumption::OneRelator { torsion: true } => {
                write!(f, "G one-relator with torsion")
            }
            UnitsAssumption::Asserted { fp, cd } => {
                write!(f, "G asserted")?;
                if let Some(n) = fp {
                    write!(f, " FP_{n}")?;
                }
                if let Some(c) = cd {
                    write!(f, " cd={c}")?;
                }
                Ok(())
            }
            UnitsAssumption::Unknown => write!(f, "G unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    pub assumption: UnitsAssumption,
    pub bi_fp: Option<Dim>,
    pub hochschild_lower: Option<Dim>,
    pub hochschild_upper: Option<Dim>,
    pub caveats: Vec<String>,
}

impl FinitenessReport {
    pub fn classification_json(&self) -> Value {
        let s = |d: Option<Dim>| d.map(Dim::json);
        json!({
            "bi_fp": s(self.bi_fp),
            "hochschild": {"lower": s(self.hochschild_lower), "upper": s(self.hochschild_upper)},
        })
    }

    pub fn render(&self) -> String {
        let mut parts = vec![self.assumption.to_string()];
        match self.bi_fp {
            Some(n) => parts.push(format!("bi-FP_{n}")),
            None => parts.push("bi-FP unknown".into()),
        }
        parts.push(hochschild_phrase(
            self.hochschild_lower,
            self.hochschild_upper,
        ));
        let mut out = parts.join("; ");
        for c in &self.caveats {
            out.push_str(&format!("\n  note: {c}"));
        }
        out
    }
}

fn hochschild_phrase(lower: Option<Dim>, upper: Option<Dim>) -> String {
    match (lower, upper) {
        (Some(Dim::Infinite), _) => "Hochschild = ∞".into(),
        (Some(l), Some(u)) if l == u => format!("Hochschild = {u}"),
        (Some(Dim::Finite(0)) | None, Some(u)) => format!("Hochschild ≤ {u}"),
        (Some(l), Some(u)) => format!("{l} ≤ Hochschild ≤ {u}"),
        (Some(l), None) => format!("Hochschild ≥ {l}"),
        (None, None) => "Hochschild unknown".into(),
    }
}

/// Conclusions about M from an assumption about G: FP_n for G gives
/// bi-FP_n for M, and the Hochschild dimension lies in
/// `[cd(G), max(2, cd(G))]`.
pub fn finiteness_report(assumption: &UnitsAssumption) -> FinitenessReport {
    let mut caveats = Vec::new();
    let (fp, cd) = match assumption {
        UnitsAssumption::Finite { order: 1 } => (Some(Dim::Infinite), Some(Dim::Finite(0))),
        UnitsAssumption::Finite { .. } => (Some(Dim::Infinite), Some(Dim::Infinite)),
        UnitsAssumption::Free { rank: 0 } => (Some(Dim::Infinite), Some(Dim::Finite(0))),
        UnitsAssumption::Free { .. } => (Some(Dim::Infinite), Some(Dim::Finite(1))),
        UnitsAssumption::OneRelator { torsion: true } => (Some(Dim::Infinite), Some(Dim::Infinite)),
        UnitsAssumption::OneRelator { torsion: false } => {
            caveats.push("cd(G) ≤ 2 for torsion-free one-relator G; lower bound shown as 0".into());
            (Some(Dim::Infinite), None)
        }
        UnitsAssumption::Asserted { fp, cd } => (*fp, *cd),
        UnitsAssumption::Unknown => {
            caveats.push("nothing is known about G; assert its type to get conclusions".into());
            (None, None)
        }
    };
    let (lower, upper) = match (assumption, cd) {
        (UnitsAssumption::OneRelator { torsion: false }, _) => {
            (Some(Dim::Finite(0)), Some(Dim::Finite(2)))
        }
        (_, Some(c)) => (Some(c), Some(c.max(Dim::Finite(2)))),
        (_, None) => (None, None),
    };
    if matches!(assumption, UnitsAssumption::Asserted { cd: None, .. }) {
        caveats.push("no cd(G) asserted; Hochschild dimension not bounded".into());
    }
    FinitenessReport {
        assumption: assumption.clone(),
        bi_fp: fp,
        hochschild_lower: lower,
        hochschild_upper: upper,
        caveats,
    }
}

/// `Some((p, j))` when `w ≡ p^j` with `j ≥ 2` and `p` primitive.
pub fn proper_power(w: &[Letter]) -> Option<(Word, usize)> {
    let n = w.len();
    if n < 2 {
        return None;
    }
    let fail = failure_function(w);
    let period = n - fail[n];
    (period < n && n.is_multiple_of(period))
        .then(|| (Word::from_letters(w[..period].to_vec()), n / period))
}

/// `fail[i]` is the length of the longest proper border of `w[..i]`.
fn failure_function(w: &[Letter]) -> Vec<usize> {
    let mut fail = vec![0; w.len() + 1];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = fail[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// Every nonempty border of `w`, `w` itself included, longest first.
fn borders(w: &[Letter]) -> Vec<usize> {
    let fail = failure_function(w);
    let mut out = Vec::new();
    let mut k = w.len();
    while k > 0 {
        out.push(k);
        k = fail[k];
    }
    out
}

/// Assumption on G derived from the computed units presentation, falling
/// back on the one-relator torsion criterion.
pub fn derived_assumption(
    pres: &SpecialPresentation,
    units: Option<&UnitsPresentation>,
) -> UnitsAssumption {
    let kind = units.map(|u| &u.kind).unwrap_or(&GroupKind::Unknown);
    match kind {
        GroupKind::Trivial => UnitsAssumption::Finite { order: 1 },
        GroupKind::Cyclic(n) | GroupKind::Finite(n) => UnitsAssumption::Finite { order: *n },
        GroupKind::Free(r) => UnitsAssumption::Free { rank: *r },
        GroupKind::Unknown if pres.k() == 1 => UnitsAssumption::OneRelator {
            torsion: proper_power(&pres.relators()[0]).is_some(),
        },
        GroupKind::Unknown => UnitsAssumption::Unknown,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneRelatorReport {
    pub relator: Word,
    pub proper_power: Option<(Word, usize)>,
    pub finiteness: FinitenessReport,
}

impl OneRelatorReport {
    pub fn render(&self, pres: &SpecialPresentation) -> String {
        let a = pres.alphabet();
        let power = match &self.proper_power {
            Some((p, j)) => format!("proper power ({})^{j}", a.render(p)),
            None => "not a proper power".into(),
        };
        let f = &self.finiteness;
        format!(
            "one-relator special; {power}; bi-FP_{}; {}",
            f.bi_fp.unwrap_or(Dim::Infinite),
            hochschild_phrase(f.hochschild_lower, f.hochschild_upper)
        )
    }

    pub fn to_json(&self, pres: &SpecialPresentation) -> Value {
        let a = pres.alphabet();
        json!({
            "relator": a.render_plain(&self.relator),
            "proper_power": self.proper_power.as_ref().map(|(p, j)| json!({"root": a.render_plain(p), "exponent": j})),
            "classification": self.finiteness.classification_json(),
            "summary": self.render(pres),
        })
    }
}

/// One-relator special monoids are bi-FP_∞; the Hochschild dimension is at
/// most 2 unless the relator is a proper power, when it is infinite.
pub fn one_relator_classify(pres: &SpecialPresentation) -> Result<OneRelatorReport, HomError> {
    if pres.k() != 1 {
        return Err(HomError::NotOneRelator(pres.k()));
    }
    let relator = pres.relators()[0].clone();
    let power = proper_power(&relator);
    let (lower, upper) = if power.is_some() {
        (Dim::Infinite, Dim::Infinite)
    } else {
        (Dim::Finite(0), Dim::Finite(2))
    };
    Ok(OneRelatorReport {
        relator,
        proper_power: power,
        finiteness: FinitenessReport {
            assumption: UnitsAssumption::OneRelator {
                torsion: lower == Dim::Infinite,
            },
            bi_fp: Some(Dim::Infinite),
            hochschild_lower: Some(lower),
            hochschild_upper: Some(upper),
            caveats: Vec::new(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compressibility {
    /// `r` is the longest nonempty word with `u, v ∈ A*r ∩ rA*`.
    Compressible {
        r: Word,
    },
    Incompressible,
}

pub fn compressibility(u: &Word, v: &Word) -> Result<Compressibility, HomError> {
    if u.is_empty() || v.is_empty() || u == v {
        return Err(HomError::InvalidPair);
    }
    let (short, long) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    for k in borders(short) {
        let r = &short[..k];
        if long.starts_with(r) && long.ends_with(r) {
            return Ok(Compressibility::Compressible {
                r: Word::from_letters(r.to_vec()),
            });
        }
    }
    Ok(Compressibility::Incompressible)
}

/// Report for a non-special one-relator monoid `⟨A | u = v⟩`. Only the
/// incompressible case carries conclusions.
pub fn compressibility_report(
    u: &Word,
    v: &Word,
) -> Result<(Compressibility, Option<FinitenessReport>), HomError> {
    let c = compressibility(u, v)?;
    let report = (c == Compressibility::Incompressible).then(|| FinitenessReport {
        assumption: UnitsAssumption::Unknown,
        bi_fp: Some(Dim::Infinite),
        hochschild_lower: Some(Dim::Finite(0)),
        hochschild_upper: Some(Dim::Finite(2)),
        caveats: Vec::new(),
    });
    Ok((c, report))
}

/// Ingredients of `0 → C₁(F) → C₀(F) → ZM → 0` and of the free
/// presentation `0 → ZE → Z[M×A×M] → C₁(F) → 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionSummary {
    pub delta: Vec<Word>,
    pub edge_basis: Vec<EdgeBasisElement>,
    pub letter_basis_size: usize,
    pub x_generators: Vec<NElement>,
    pub units: UnitsPresentation,
}

impl ResolutionSummary {
    pub fn edge_basis_size(&self) -> usize {
        self.edge_basis.len()
    }

    pub fn render(&self, s: &Session) -> String {
        let a = s.alphabet();
        let delta: Vec<String> = self.delta.iter().map(|d| a.render(d)).collect();
        let c: Vec<String> = self.edge_basis.iter().map(|e| e.render(s)).collect();
        let x: Vec<String> = self.x_generators.iter().map(|n| n.render(a)).collect();
        [
            format!("Δ = {{{}}}", delta.join(", ")),
            format!("G = {} ({})", self.units.render(a), self.units.kind),
            format!("N ≅ G ∗ X*, |X| = {}: {}", x.len(), x.join(" ")),
            format!(
                "C₁: ZE → Z[M×A×M], |𝓒| = {}, |A| = {}: {}",
                c.len(),
                self.letter_basis_size,
                c.join(" ")
            ),
            "C₀: Z[(M×M)/N], one basis element per weak N-orbit".to_string(),
        ]
        .join("\n")
    }

    /// `{delta, x_size, c_size, classification}`.
    pub fn to_json(&self, s: &Session, finiteness: &FinitenessReport) -> Value {
        let a = s.alphabet();
        json!({
            "delta": self.delta.iter().map(|d| a.render_plain(d)).collect::<Vec<_>>(),
            "x_size": self.x_generators.len(),
            "c_size": self.edge_basis.len(),
            "a_size": self.letter_basis_size,
            "units": {"presentation": self.units.render(a), "kind": self.units.kind.to_string()},
            "classification": finiteness.classification_json(),
        })
    }
}

pub fn resolution_summary(s: &Session) -> Result<ResolutionSummary, HomError> {
    let dt = s.delta()?.require_complete()?;
    let gens = generator_sets(s)?;
    Ok(ResolutionSummary {
        delta: dt.delta.clone(),
        edge_basis: compute_c(s)?,
        letter_basis_size: s.alphabet().len(),
        x_generators: gens.x.iter().map(|x| x.element.clone()).collect(),
        units: units_presentation(s, dt)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub boundary_rank: usize,
    /// The boundary map on edges has no kernel.
    pub injective: bool,
    /// The boundary image is the kernel of the augmentation.
    pub exact: bool,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.injective && self.exact
    }
}

/// Rank checks on the chain complex of a quotient forest: `∂ : Z^E → Z^V`
/// has rank `|E|`, and `|E| = |V| − #components`.
pub fn exactness_spotcheck(f: &QuotientForest) -> Result<CheckReport, HomError> {
    if !f.is_forest {
        return Err(HomError::NotAForest);
    }
    let v = f.classes.len();
    let mut columns: Vec<Vec<i128>> = f
        .edges
        .iter()
        .map(|&(p, _, q)| {
            let mut col = vec![0; v];
            col[p] -= 1;
            col[q] += 1;
            col
        })
        .collect();
    let rank = integer_rank(&mut columns);
    let e = f.edges.len();
    let c = f.components.len();
    Ok(CheckReport {
        vertices: v,
        edges: e,
        components: c,
        boundary_rank: rank,
        injective: rank == e,
        exact: rank + c == v,
    })
}

/// Rank over Q of a set of integer vectors, by fraction-free elimination.
pub fn integer_rank(vectors: &mut [Vec<i128>]) -> usize {
    let width = vectors.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..vectors.len()).find(|&i| vectors[i][col] != 0) else {
            continue;
        };
        vectors.swap(rank, pivot);
        let p = vectors[rank][col];
        for i in rank + 1..vectors.len() {
            let q = vectors[i][col];
            if q == 0 {
                continue;
            }
            let (head, tail) = vectors.split_at_mut(i);
            let row = &mut tail[0];
            for (x, y) in row.iter_mut().zip(&head[rank]) {
                *x = *x * p - y * q;
            }
            let g = row.iter().fold(0, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::bicayley::{build_ball, quotient_forest};
    use crate::testutil::{session, w};
    use crate::words::Alphabet;

    fn pres(alpha: &str, r: &str) -> SpecialPresentation {
        let a = Alphabet::from_chars(alpha).unwrap();
        let r = a.parse_word(r).unwrap();
        SpecialPresentation::new(a, vec![r]).unwrap()
    }

    fn word(t: &str) -> Word {
        Alphabet::from_chars("abcd").unwrap().parse_word(t).unwrap()
    }

    #[test]
    fn summary_examples() {
        let b = session("ab", &["ab"]);
        let r = resolution_summary(&b).unwrap();
        assert_eq!(
            (
                r.edge_basis_size(),
                r.letter_basis_size,
                r.x_generators.len()
            ),
            (2, 2, 1)
        );
        assert_eq!(r.units.kind, GroupKind::Trivial);

        let z = session("a", &["aa"]);
        let r = resolution_summary(&z).unwrap();
        assert_eq!((r.edge_basis_size(), r.x_generators.len()), (1, 0));
        assert_eq!(r.units.kind, GroupKind::Cyclic(2));

        let s = session("abcd", &["abcdbcabcd"]);
        let r = resolution_summary(&s).unwrap();
        assert_eq!(r.edge_basis_size(), 4);
        assert_eq!(r.delta, vec![w(&s, "abcd"), w(&s, "bc")]);
        let j = r.to_json(
            &s,
            &finiteness_report(&derived_assumption(s.presentation(), Some(&r.units))),
        );
        assert_eq!(j["delta"], json!(["abcd", "bc"]));
        assert_eq!(j["c_size"], json!(4));
        assert_eq!(j["x_size"], json!(2));
    }

    #[test]
    fn finiteness_examples() {
        let t = finiteness_report(&UnitsAssumption::Finite { order: 1 });
        assert_eq!(t.bi_fp, Some(Dim::Infinite));
        assert_eq!(
            (t.hochschild_lower, t.hochschild_upper),
            (Some(Dim::Finite(0)), Some(Dim::Finite(2)))
        );

        let t = finiteness_report(&UnitsAssumption::Finite { order: 2 });
        assert_eq!(t.bi_fp, Some(Dim::Infinite));
        assert_eq!(
            (t.hochschild_lower, t.hochschild_upper),
            (Some(Dim::Infinite), Some(Dim::Infinite))
        );

        let t = finiteness_report(&UnitsAssumption::Asserted {
            fp: Some(Dim::Finite(3)),
            cd: None,
        });
        assert_eq!(t.bi_fp, Some(Dim::Finite(3)));
        assert_eq!(t.hochschild_upper, None);
        assert!(!t.caveats.is_empty());

        let t = finiteness_report(&UnitsAssumption::Asserted {
            fp: Some(Dim::Infinite),
            cd: Some(Dim::Finite(3)),
        });
        assert_eq!(
            (t.hochschild_lower, t.hochschild_upper),
            (Some(Dim::Finite(3)), Some(Dim::Finite(3)))
        );

        let t = finiteness_report(&UnitsAssumption::Unknown);
        assert_eq!(t.bi_fp, None);
    }

    #[test]
    fn one_relator_examples() {
        let r = one_relator_classify(&pres("ab", "abab")).unwrap();
        assert_eq!(r.proper_power, Some((word("ab"), 2)));
        assert_eq!(r.finiteness.hochschild_upper, Some(Dim::Infinite));

        let p = pres("abcd", "abcdbcabcd");
        let r = one_relator_classify(&p).unwrap();
        assert_eq!(r.proper_power, None);
        assert_eq!(
            r.render(&p),
            "one-relator special; not a proper power; bi-FP_∞; Hochschild ≤ 2"
        );
        assert_eq!(
            r.to_json(&p)["classification"],
            json!({"bi_fp": "infinity", "hochschild": {"lower": "0", "upper": "2"}})
        );

        let r = one_relator_classify(&pres("a", "aa")).unwrap();
        assert_eq!(r.proper_power.map(|p| p.1), Some(2));
        assert_eq!(r.finiteness.hochschild_lower, Some(Dim::Infinite));

        let a = Alphabet::from_chars("ab").unwrap();
        let two = SpecialPresentation::new(
            a.clone(),
            vec![a.parse_word("ab").unwrap(), a.parse_word("ba").unwrap()],
        )
        .unwrap();
        assert_eq!(one_relator_classify(&two), Err(HomError::NotOneRelator(2)));
    }

    #[test]
    fn classifiers_agree_on_fixtures() {
        for (alpha, r) in [
            ("ab", "ab"),
            ("a", "aa"),
            ("abcd", "abcdab"),
            ("ab", "abab"),
            ("abcd", "abcdbcabcd"),
        ] {
            let s = session(alpha, &[r]);
            let b = one_relator_classify(s.presentation()).unwrap();
            let units = units_presentation(&s, s.delta().unwrap()).unwrap();
            let a = finiteness_report(&derived_assumption(s.presentation(), Some(&units)));
            assert_eq!(a.bi_fp, b.finiteness.bi_fp, "{r}");
            assert_eq!(
                a.hochschild_lower == Some(Dim::Infinite),
                b.proper_power.is_some(),
                "{r}"
            );
            if b.proper_power.is_none() {
                assert!(a.hochschild_upper <= Some(Dim::Finite(2)), "{r}");
            }
        }
    }

    #[test]
    fn compressibility_examples() {
        assert_eq!(
            compressibility(&word("aba"), &word("a")),
            Ok(Compressibility::Compressible { r: word("a") })
        );
        assert_eq!(
            compressibility(&word("ab"), &word("ba")),
            Ok(Compressibility::Incompressible)
        );
        assert_eq!(
            compressibility(&word("abcab"), &word("abab")),
            Ok(Compressibility::Compressible { r: word("ab") })
        );
        assert_eq!(
            compressibility(&word("ab"), &word("ab")),
            Err(HomError::InvalidPair)
        );
        let (_, report) = compressibility_report(&word("ab"), &word("ba")).unwrap();
        assert_eq!(
            report.unwrap().classification_json(),
            json!({"bi_fp": "infinity", "hochschild": {"lower": "0", "upper": "2"}})
        );
    }

    #[test]
    fn spotcheck_examples() {
        let b = session("ab", &["ab"]);
        let f = quotient_forest(&b, &build_ball(&b, &w(&b, "aa"), 4).unwrap()).unwrap();
        let r = exactness_spotcheck(&f).unwrap();
        assert_eq!(
            (r.vertices, r.edges, r.components, r.boundary_rank),
            (3, 2, 1, 2)
        );
        assert!(r.passed());

        let f = quotient_forest(&b, &build_ball(&b, &Word::empty(), 2).unwrap()).unwrap();
        let r = exactness_spotcheck(&f).unwrap();
        assert_eq!((r.vertices, r.edges, r.boundary_rank), (1, 0, 0));
        assert!(r.passed());

        let mut cyclic = f.clone();
        cyclic.is_forest = false;
        assert_eq!(exactness_spotcheck(&cyclic), Err(HomError::NotAForest));
    }

    #[test]
    fn rank_of_a_triangle() {
        // the three edges of a triangle span a rank-2 lattice
        let mut m = vec![vec![-1, 1, 0], vec![0, -1, 1], vec![1, 0, -1]];
        assert_eq!(integer_rank(&mut m), 2);
    }

    fn naive_proper_power(w: &Word) -> bool {
        (1..w.len()).any(|p| w.len().is_multiple_of(p) && (p..w.len()).all(|i| w[i] == w[i - p]))
    }

    fn naive_incompressible(u: &Word, v: &Word) -> bool {
        (1..=u.len().min(v.len())).all(|k| {
            let r = &u[..k];
            !(u.ends_with(r) && v.starts_with(r) && v.ends_with(r))
        })
    }

    proptest! {
        #[test]
        fn power_matches_naive(letters in proptest::collection::vec(0usize..2, 0..12)) {
            let w = Word::from_letters(letters.into_iter().map(Letter::new).collect());
            let p = proper_power(&w);
            prop_assert_eq!(p.is_some(), naive_proper_power(&w));
            if let Some((root, j)) = p {
                prop_assert_eq!(root.power(j), w);
            }
        }

        #[test]
        fn borders_match_naive(
            u in proptest::collection::vec(0usize..2, 1..8),
            v in proptest::collection::vec(0usize..2, 1..8),
        ) {
            let u = Word::from_letters(u.into_iter().map(Letter::new).collect());
            let v = Word::from_letters(v.into_iter().map(Letter::new).collect());
            prop_assume!(u != v);
            let c = compressibility(&u, &v).unwrap();
            prop_assert_eq!(c == Compressibility::Incompressible, naive_incompressible(&u, &v));
        }

        #[test]
        fn tree_rank(n in 1usize..30, seed in any::<u64>()) {
            // random trees: rank of the boundary equals the edge count
            let mut cols = Vec::new();
            for i in 1..n {
                let parent = (seed as usize).wrapping_mul(i + 7) % i;
                let mut col = vec![0i128; n];
                col[parent] = -1;
                col[i] = 1;
                cols.push(col);
            }
            prop_assert_eq!(integer_rank(&mut cols), n - 1);
        }
    }
}
