//! The monoid N of pairs `(u, v)` with `u·v = 1`, its generators X ∪ Y,
//! normal forms over G ∗ X*, and a finite-ball ping-pong audit.

mod audit;

use crate::special::{DeltaTable, Session, SpecialError};
use crate::words::{Alphabet, Span, Word};

pub use audit::{g_sample, n_ball, ping_pong_audit, AuditCheck, AuditReport};

/// `(right_part, left_part)`, both irreducible, with product 1 in M.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NElement {
    pub right_part: Word,
    pub left_part: Word,
}

impl NElement {
    pub fn identity() -> Self {
        NElement {
            right_part: Word::empty(),
            left_part: Word::empty(),
        }
    }

    pub fn new(right_part: Word, left_part: Word) -> Self {
        NElement {
            right_part,
            left_part,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.right_part.is_empty() && self.left_part.is_empty()
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!(
            "({}, {})",
            alphabet.render(&self.right_part),
            alphabet.render(&self.left_part)
        )
    }
}

/// `(a, b)·(x, y) = (ax, yb)`, reduced. With a complete short-lex system the
/// reduced form of a word is its normal form.
pub fn n_mul(s: &Session, p: &NElement, q: &NElement) -> Result<NElement, SpecialError> {
    let r = NElement {
        right_part: s.nf(&p.right_part.concat(&q.right_part))?,
        left_part: s.nf(&q.left_part.concat(&p.left_part))?,
    };
    debug_assert!(s.is_one(&r.right_part.concat(&r.left_part)).unwrap_or(true));
    Ok(r)
}

pub fn n_pow(s: &Session, p: &NElement, k: usize) -> Result<NElement, SpecialError> {
    let mut acc = NElement::identity();
    for _ in 0..k {
        acc = n_mul(s, &acc, p)?;
    }
    Ok(acc)
}

/// Checks the defining conditions of N for a pair of words.
pub fn is_n_element(s: &Session, p: &NElement) -> Result<bool, SpecialError> {
    let irreducible = s.oracle().system().is_irreducible(&p.right_part)
        && s.oracle().system().is_irreducible(&p.left_part);
    Ok(irreducible && s.is_one(&p.right_part.concat(&p.left_part))?)
}

/// `(δ, δ⁻¹)` for δ ∈ Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YGenerator {
    pub delta: Word,
    pub inverse: Word,
    pub element: NElement,
    /// δ = 1 in M, so the element is the identity of N.
    pub is_identity: bool,
}

/// `(δ₁, δ₂δ⁻¹)` for a height-zero split δ ≡ δ₁δ₂ with no invertible suffix in δ₁.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XGenerator {
    pub delta1: Word,
    pub delta2: Word,
    pub delta: Word,
    pub element: NElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSets {
    pub x: Vec<XGenerator>,
    pub y: Vec<YGenerator>,
}

impl GeneratorSets {
    pub fn x_index(&self, e: &NElement) -> Option<usize> {
        self.x.iter().position(|g| g.element == *e)
    }
}

pub fn gen_y(s: &Session, dt: &DeltaTable) -> Result<Vec<YGenerator>, SpecialError> {
    dt.require_complete()?;
    dt.delta
        .iter()
        .map(|d| {
            let inverse = dt.inverse(d).cloned().ok_or(SpecialError::PartialDelta)?;
            let element = NElement::new(s.nf(d)?, inverse.clone());
            Ok(YGenerator {
                delta: d.clone(),
                inverse,
                is_identity: element.is_identity(),
                element,
            })
        })
        .collect()
}

pub fn gen_x(s: &Session, dt: &DeltaTable) -> Result<Vec<XGenerator>, SpecialError> {
    dt.require_complete()?;
    let system = s.oracle().system();
    let mut out: Vec<XGenerator> = Vec::new();
    for d in &dt.delta {
        let inv = dt.inverse(d).ok_or(SpecialError::PartialDelta)?;
        for i in 1..d.len() {
            let (d1, d2) = (d.prefix(i), d.suffix_from(i));
            if !system.is_irreducible(&d1) || !system.is_irreducible(&d2) {
                continue;
            }
            if s.cutting_lattice(&d1, &d2)?.height != 0 || s.has_invertible_suffix(&d1)? {
                continue;
            }
            let element = NElement::new(d1.clone(), s.nf(&d2.concat(inv))?);
            if out.iter().any(|x| x.element == element) {
                continue;
            }
            out.push(XGenerator {
                delta1: d1,
                delta2: d2,
                delta: d.clone(),
                element,
            });
        }
    }
    Ok(out)
}

pub fn generator_sets(s: &Session) -> Result<GeneratorSets, SpecialError> {
    let dt = s.delta()?;
    Ok(GeneratorSets {
        x: gen_x(s, dt)?,
        y: gen_y(s, dt)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syllable {
    /// A nontrivial unit, as its reduced word.
    G(Word),
    /// A positive power of an X generator, by index.
    X { generator: usize, power: usize },
}

/// A reduced word in G ∗ X*.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FpNormalForm {
    pub syllables: Vec<Syllable>,
}

impl FpNormalForm {
    pub fn render(&self, alphabet: &Alphabet, gens: &GeneratorSets) -> String {
        if self.syllables.is_empty() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|syl| match syl {
                Syllable::G(g) => format!("[{}]", alphabet.render(g)),
                Syllable::X { generator, power } => {
                    let x = gens.x[*generator].element.render(alphabet);
                    if *power == 1 {
                        x
                    } else {
                        format!("{x}^{power}")
                    }
                }
            })
            .collect::<Vec<_>>()
            .join(" · ")
    }

    /// No two adjacent syllables of one type and no trivial G syllable.
    pub fn is_alternating(&self) -> bool {
        let kinds_alternate = self.syllables.windows(2).all(|p| {
            matches!(
                (&p[0], &p[1]),
                (Syllable::G(_), Syllable::X { .. }) | (Syllable::X { .. }, Syllable::G(_))
            ) || matches!((&p[0], &p[1]), (Syllable::X { generator: a, .. }, Syllable::X { generator: b, .. }) if a != b)
        });
        let nontrivial = self.syllables.iter().all(|syl| match syl {
            Syllable::G(g) => !g.is_empty(),
            Syllable::X { power, .. } => *power > 0,
        });
        kinds_alternate && nontrivial
    }
}

/// One peeling step: `p = rest · factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Peel {
    X { generator: NElement, rest: NElement },
    G { unit: Word, rest: NElement },
}

/// Splits off the rightmost factor of `p` using the minimal word cutting
/// across `(right_part, left_part)`. `None` for the identity.
pub fn peel(s: &Session, p: &NElement) -> Result<Option<Peel>, SpecialError> {
    let (u, v) = (&p.right_part, &p.left_part);
    if u.is_empty() {
        if !v.is_empty() {
            return Err(SpecialError::OracleInconclusive(format!(
                "{} is not an element of N",
                p.render(s.alphabet())
            )));
        }
        return Ok(None);
    }
    let lattice = s.cutting_lattice(u, v)?;
    let Span { start, end } = lattice.bottom;
    let d1 = u.suffix_from(start);
    let d2 = v.prefix(end - u.len());
    let u_rest = u.prefix(start);
    let v_rest = v.suffix_from(end - u.len());
    let delta = d1.concat(&d2);
    if !s.has_invertible_suffix(&d1)? {
        let inv = s.inverse_of(&delta)?;
        let generator = NElement::new(d1, s.nf(&d2.concat(&inv))?);
        let rest = NElement::new(u_rest, s.nf(&delta.concat(&v_rest))?);
        return Ok(Some(Peel::X { generator, rest }));
    }
    // longest invertible suffix of δ₁
    let mut gamma_start = start;
    while !s.is_invertible(&u.suffix_from(gamma_start))? {
        gamma_start += 1;
    }
    let gamma = u.suffix_from(gamma_start);
    let rest = NElement::new(u.prefix(gamma_start), s.nf(&gamma.concat(v))?);
    Ok(Some(Peel::G { unit: gamma, rest }))
}

/// Free-product normal form of `p` by repeated peeling and fusion.
pub fn n_normal_form(
    s: &Session,
    gens: &GeneratorSets,
    p: &NElement,
) -> Result<FpNormalForm, SpecialError> {
    let mut factors = Vec::new();
    let mut cur = p.clone();
    while let Some(step) = peel(s, &cur)? {
        match step {
            Peel::X { generator, rest } => {
                let idx = gens.x_index(&generator).ok_or_else(|| {
                    SpecialError::OracleInconclusive(format!(
                        "peeled {} which is not an X generator",
                        generator.render(s.alphabet())
                    ))
                })?;
                factors.push(Syllable::X {
                    generator: idx,
                    power: 1,
                });
                cur = rest;
            }
            Peel::G { unit, rest } => {
                factors.push(Syllable::G(s.nf(&unit)?));
                cur = rest;
            }
        }
    }
    factors.reverse();
    let mut out: Vec<Syllable> = Vec::new();
    for f in factors {
        match (out.pop(), f) {
            (Some(Syllable::G(g)), Syllable::G(h)) => {
                let gh = s.nf(&g.concat(&h))?;
                if !gh.is_empty() {
                    out.push(Syllable::G(gh));
                }
            }
            (
                Some(Syllable::X { generator, power }),
                Syllable::X {
                    generator: other,
                    power: more,
                },
            ) if generator == other => out.push(Syllable::X {
                generator,
                power: power + more,
            }),
            (last, f) => {
                out.extend(last);
                if f != Syllable::G(Word::empty()) {
                    out.push(f);
                }
            }
        }
    }
    Ok(FpNormalForm { syllables: out })
}

/// Multiplies the syllables back out.
pub fn evaluate(
    s: &Session,
    gens: &GeneratorSets,
    form: &FpNormalForm,
) -> Result<NElement, SpecialError> {
    let mut acc = NElement::identity();
    for syl in &form.syllables {
        let factor = match syl {
            Syllable::G(g) => NElement::new(s.nf(g)?, s.inverse_of(g)?),
            Syllable::X { generator, power } => n_pow(s, &gens.x[*generator].element, *power)?,
        };
        acc = n_mul(s, &acc, &factor)?;
    }
    Ok(acc)
}
