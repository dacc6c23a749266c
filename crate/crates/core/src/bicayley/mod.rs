//! Finite pieces of the two-sided Cayley graph of M: vertices `M × M`,
//! edges `(l, a, r)` from `(l, ar)` to `(la, r)`.
//!
//! Vertices are grouped by weak N-orbit through [`orbit_basis_element`];
//! edges inside one orbit are collapsed, and what remains should be a forest
//! whose components are paths spelling the separator letters of the
//! Otto–Zhang form.

mod emit;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::biset::NElement;
use crate::special::{class_by_inverse_rewriting, Session, SpecialError};
use crate::words::{Letter, Span, Word};

pub use emit::{ball_dot, ball_json};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BiCayleyError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("{0} edges could not be classified")]
    UnclassifiedEdges(usize),
    #[error("edge is not collapsed")]
    NotCollapsedEdge,
}

/// A pair of irreducible words standing for `(m₁, m₂) ∈ M × M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiVertex {
    pub left: Word,
    pub right: Word,
}

impl BiVertex {
    pub fn new(left: Word, right: Word) -> Self {
        BiVertex { left, right }
    }

    pub fn reduced(s: &Session, left: &Word, right: &Word) -> Result<Self, SpecialError> {
        Ok(BiVertex::new(s.nf(left)?, s.nf(right)?))
    }

    pub fn render(&self, s: &Session) -> String {
        format!("({}, {})", s.render(&self.left), s.render(&self.right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    SameOrbit,
    Crossing,
    Unknown,
}

impl EdgeClass {
    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::SameOrbit => "same-orbit",
            EdgeClass::Crossing => "crossing",
            EdgeClass::Unknown => "unknown",
        }
    }
}

/// The edge `(left, letter, right)` from `(left, letter·right)` to
/// `(left·letter, right)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiEdge {
    pub left: Word,
    pub letter: Letter,
    pub right: Word,
    pub class: EdgeClass,
}

impl BiEdge {
    pub fn initial(&self, s: &Session) -> Result<BiVertex, SpecialError> {
        Ok(BiVertex::new(
            self.left.clone(),
            s.nf(&Word::from_letters(vec![self.letter]).concat(&self.right))?,
        ))
    }

    pub fn terminal(&self, s: &Session) -> Result<BiVertex, SpecialError> {
        Ok(BiVertex::new(
            s.nf(&self.left.pushed(self.letter))?,
            self.right.clone(),
        ))
    }

    /// `left · letter · right` as an unreduced word.
    pub fn word(&self) -> Word {
        self.left.pushed(self.letter).concat(&self.right)
    }

    pub fn render(&self, s: &Session) -> String {
        format!(
            "({}, {}, {})",
            s.render(&self.left),
            s.alphabet().symbol(self.letter),
            s.render(&self.right)
        )
    }
}

/// Canonical representative of a weak N-orbit of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitBasisElement {
    pub left: Word,
    pub right: Word,
    /// Index of the Otto–Zhang part that the vertex splits.
    pub split: usize,
}

impl OrbitBasisElement {
    pub fn vertex(&self) -> BiVertex {
        BiVertex::new(self.left.clone(), self.right.clone())
    }

    pub fn render(&self, s: &Session) -> String {
        self.vertex().render(s)
    }
}

/// `(δ₁, a, δ₂)` with `δ₁aδ₂ ∈ Δ` and no smaller invertible subword
/// containing the middle letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeBasisElement {
    pub pre: Word,
    pub letter: Letter,
    pub post: Word,
}

impl EdgeBasisElement {
    pub fn word(&self) -> Word {
        self.pre.pushed(self.letter).concat(&self.post)
    }

    pub fn render(&self, s: &Session) -> String {
        format!(
            "({}, {}, {})",
            s.render(&self.pre),
            s.alphabet().symbol(self.letter),
            s.render(&self.post)
        )
    }
}

struct OrbitSplit {
    basis: OrbitBasisElement,
    word: Word,
    part: Span,
}

fn orbit_split(s: &Session, v: &BiVertex) -> Result<OrbitSplit, SpecialError> {
    let word = v.left.concat(&v.right);
    let form = s.otto_zhang(&word)?;
    let cut = v.left.len();
    let split = form.letter_positions.iter().filter(|&&p| p < cut).count();
    let part = form.part_spans[split];
    let basis = OrbitBasisElement {
        left: word.prefix(part.start),
        right: s.nf(&word.suffix_from(part.start))?,
        split,
    };
    Ok(OrbitSplit { basis, word, part })
}

/// Writing `left·right ≡ w₀a₁…a_m w_m` with the cut inside `w_j`, returns
/// `(w₀a₁…a_j, reduce(w_j a_{j+1}…w_m))`. Two vertices share a weak N-orbit
/// exactly when their images agree.
pub fn orbit_basis_element(s: &Session, v: &BiVertex) -> Result<OrbitBasisElement, SpecialError> {
    Ok(orbit_split(s, v)?.basis)
}

/// `(x, y)·(n₁, n₂) = (x·n₁, n₂·y)`, reduced.
pub fn act(s: &Session, v: &BiVertex, n: &NElement) -> Result<BiVertex, SpecialError> {
    BiVertex::reduced(
        s,
        &v.left.concat(&n.right_part),
        &n.left_part.concat(&v.right),
    )
}

/// The unique `(b, n)` with `v = b·n`.
pub fn n_factorize_vertex(
    s: &Session,
    v: &BiVertex,
) -> Result<(OrbitBasisElement, NElement), SpecialError> {
    let OrbitSplit { basis, word, part } = orbit_split(s, v)?;
    let cut = v.left.len();
    let unit = word.slice(part);
    let head = word.slice(Span {
        start: part.start,
        end: cut,
    });
    let tail = word.slice(Span {
        start: cut,
        end: part.end,
    });
    let inverse = s.inverse_of(&unit)?;
    let n = NElement::new(head, s.nf(&tail.concat(&inverse))?);
    Ok((basis, n))
}

/// Whether the letter of `e` is covered by a maximal invertible subword of
/// `left·letter·right`. This holds exactly for collapsed edges.
pub fn letter_is_covered(s: &Session, e: &BiEdge) -> Result<bool, SpecialError> {
    let form = s.otto_zhang(&e.word())?;
    Ok(!form.letter_positions.contains(&e.left.len()))
}

/// Classifies `(left, letter, right)` by comparing the orbits of its ends.
pub fn classify_edge(
    s: &Session,
    left: &Word,
    letter: Letter,
    right: &Word,
) -> Result<EdgeClass, SpecialError> {
    let e = BiEdge {
        left: left.clone(),
        letter,
        right: right.clone(),
        class: EdgeClass::Unknown,
    };
    let from = orbit_basis_element(s, &e.initial(s)?)?;
    let to = orbit_basis_element(s, &e.terminal(s)?)?;
    Ok(if from == to {
        EdgeClass::SameOrbit
    } else {
        EdgeClass::Crossing
    })
}

/// All vertices `(x, y)` with `xy = center` and `|x| + |y| ≤ |center| + radius`,
/// and every edge between two of them.
#[derive(Debug, Clone)]
pub struct BiCayleyBall {
    pub center: Word,
    pub radius: usize,
    /// Short-lex on `(left, right)`.
    pub vertices: Vec<BiVertex>,
    /// Orbit of each vertex, `None` where the oracle gave up.
    pub orbits: Vec<Option<OrbitBasisElement>>,
    pub edges: Vec<BiEdge>,
    pub inconclusive: Vec<String>,
}

impl BiCayleyBall {
    pub fn index_of(&self, v: &BiVertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn unknown_edges(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.class == EdgeClass::Unknown)
            .count()
    }
}

pub fn build_ball(s: &Session, center: &Word, radius: usize) -> Result<BiCayleyBall, SpecialError> {
    if !s.oracle().is_complete() {
        return Err(SpecialError::OracleInconclusive(
            "enumerating a ball needs a complete rewriting system".into(),
        ));
    }
    let system = s.oracle().system();
    let m = s.nf(center)?;
    let bound = m.len() + radius;
    let mut vertices = BTreeSet::new();
    for c in class_by_inverse_rewriting(system, &m, bound) {
        for i in 0..=c.len() {
            let (x, y) = (c.prefix(i), c.suffix_from(i));
            if system.is_irreducible(&x) && system.is_irreducible(&y) {
                vertices.insert(BiVertex::new(x, y));
            }
        }
    }
    let vertices: Vec<BiVertex> = vertices.into_iter().collect();

    let mut inconclusive = Vec::new();
    let mut orbits = Vec::with_capacity(vertices.len());
    for v in &vertices {
        match orbit_basis_element(s, v) {
            Ok(b) => orbits.push(Some(b)),
            Err(e) => {
                inconclusive.push(format!("orbit of {}: {e}", v.render(s)));
                orbits.push(None);
            }
        }
    }

    let mut by_left: BTreeMap<&Word, Vec<usize>> = BTreeMap::new();
    for (i, v) in vertices.iter().enumerate() {
        by_left.entry(&v.left).or_default().push(i);
    }
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for a in s.alphabet().letters() {
            let target_left = s.nf(&v.left.pushed(a))?;
            let Some(targets) = by_left.get(&target_left) else {
                continue;
            };
            for &j in targets {
                let r = &vertices[j].right;
                let ar = Word::from_letters(vec![a]).concat(r);
                if s.nf(&ar)? != v.right {
                    continue;
                }
                let class = match (&orbits[i], &orbits[j]) {
                    (Some(p), Some(q)) if p == q => EdgeClass::SameOrbit,
                    (Some(_), Some(_)) => EdgeClass::Crossing,
                    _ => EdgeClass::Unknown,
                };
                edges.push(BiEdge {
                    left: v.left.clone(),
                    letter: a,
                    right: r.clone(),
                    class,
                });
            }
        }
    }
    edges.sort();
    Ok(BiCayleyBall {
        center: m,
        radius,
        vertices,
        orbits,
        edges,
        inconclusive,
    })
}

/// A connected component of the quotient graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComponent {
    /// Edge labels read along the component when it is a directed path.
    pub skeleton_word: Word,
    /// Orbit classes, in path order when the component is a path.
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, Letter, usize)>,
    pub is_path: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientForest {
    pub classes: Vec<OrbitBasisElement>,
    /// Crossing edges, identified when they join the same classes with the
    /// same label.
    pub edges: Vec<(usize, Letter, usize)>,
    pub components: Vec<QuotientComponent>,
    pub is_forest: bool,
    /// Separator letters of the Otto–Zhang form of the center.
    pub expected_skeleton: Word,
}

impl QuotientForest {
    /// Forest whose components are all paths spelling the center's skeleton.
    pub fn is_linear(&self) -> bool {
        self.is_forest
            && self
                .components
                .iter()
                .all(|c| c.is_path && c.skeleton_word == self.expected_skeleton)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn quotient_forest(s: &Session, ball: &BiCayleyBall) -> Result<QuotientForest, BiCayleyError> {
    let unknown = ball.unknown_edges() + ball.orbits.iter().filter(|o| o.is_none()).count();
    if unknown > 0 {
        return Err(BiCayleyError::UnclassifiedEdges(unknown));
    }
    let classes: Vec<OrbitBasisElement> = ball
        .orbits
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let class_of = |v: &BiVertex| -> usize {
        let i = ball.index_of(v).expect("edge endpoint in ball");
        let b = ball.orbits[i].as_ref().expect("classified");
        classes.binary_search(b).expect("known class")
    };
    let mut edges = BTreeSet::new();
    for e in ball.edges.iter().filter(|e| e.class == EdgeClass::Crossing) {
        edges.insert((
            class_of(&e.initial(s)?),
            e.letter,
            class_of(&e.terminal(s)?),
        ));
    }
    let edges: Vec<(usize, Letter, usize)> = edges.into_iter().collect();

    let mut parent: Vec<usize> = (0..classes.len()).collect();
    let mut is_forest = true;
    for &(p, _, q) in &edges {
        let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
        if rp == rq {
            is_forest = false;
        } else {
            parent[rp] = rq;
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..classes.len() {
        let root = find(&mut parent, c);
        groups.entry(root).or_default().push(c);
    }
    let mut components = Vec::new();
    for (_, members) in groups {
        let mine: Vec<(usize, Letter, usize)> = edges
            .iter()
            .copied()
            .filter(|e| members.binary_search(&e.0).is_ok())
            .collect();
        components.push(component(members, mine));
    }
    let expected_skeleton = s.otto_zhang(&ball.center)?.skeleton();
    Ok(QuotientForest {
        classes,
        edges,
        components,
        is_forest,
        expected_skeleton,
    })
}

fn component(members: Vec<usize>, edges: Vec<(usize, Letter, usize)>) -> QuotientComponent {
    let out_edges = |v: usize| edges.iter().filter(move |e| e.0 == v);
    let in_degree = |v: usize| edges.iter().filter(|e| e.2 == v).count();
    let sources: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&v| in_degree(v) == 0)
        .collect();
    let degrees_ok = members
        .iter()
        .all(|&v| in_degree(v) <= 1 && out_edges(v).count() <= 1);
    let mut fallback = QuotientComponent {
        skeleton_word: Word::empty(),
        vertices: members.clone(),
        edges: edges.clone(),
        is_path: false,
    };
    if !degrees_ok || sources.len() != 1 || edges.len() + 1 != members.len() {
        return fallback;
    }
    let mut order = vec![sources[0]];
    let mut labels = Vec::new();
    let mut cur = sources[0];
    while let Some(&(_, a, next)) = out_edges(cur).next() {
        if order.contains(&next) {
            return fallback;
        }
        labels.push(a);
        order.push(next);
        cur = next;
    }
    if order.len() != members.len() {
        return fallback;
    }
    fallback.vertices = order;
    fallback.skeleton_word = Word::from_letters(labels);
    fallback.is_path = true;
    fallback
}

/// The finite basis of collapsed edges: for each `δ ∈ Δ` and each position
/// whose letter no proper invertible subword of `δ` covers.
pub fn compute_c(s: &Session) -> Result<Vec<EdgeBasisElement>, SpecialError> {
    let dt = s.delta()?.require_complete()?;
    let mut out = Vec::new();
    for d in &dt.delta {
        for p in 0..d.len() {
            if s.min_invertible_containing(d, Span::letter(p))? == d.full_span() {
                out.push(EdgeBasisElement {
                    pre: d.prefix(p),
                    letter: d[p],
                    post: d.suffix_from(p + 1),
                });
            }
        }
    }
    Ok(out)
}

/// Writes a collapsed edge `(u, a, v)` as `(u', v')·(δ₁, a, δ₂)` with
/// `u ≡ u'δ₁`, `v ≡ δ₂v'` and `δ₁aδ₂` the least invertible subword of `uav`
/// covering the letter.
pub fn edge_c_factorize(
    s: &Session,
    e: &BiEdge,
) -> Result<(BiVertex, EdgeBasisElement), BiCayleyError> {
    if e.class != EdgeClass::SameOrbit {
        return Err(BiCayleyError::NotCollapsedEdge);
    }
    let word = e.word();
    let at = e.left.len();
    let span = s.min_invertible_containing(&word, Span::letter(at))?;
    let actor = BiVertex::new(word.prefix(span.start), word.suffix_from(span.end));
    let basis = EdgeBasisElement {
        pre: word.slice(Span {
            start: span.start,
            end: at,
        }),
        letter: e.letter,
        post: word.slice(Span {
            start: at + 1,
            end: span.end,
        }),
    };
    Ok((actor, basis))
}

/// `(u', v')·(δ₁, a, δ₂) = (u'δ₁, a, δ₂v')`.
pub fn edge_act(actor: &BiVertex, b: &EdgeBasisElement) -> (Word, Letter, Word) {
    (
        actor.left.concat(&b.pre),
        b.letter,
        b.post.concat(&actor.right),
    )
}
