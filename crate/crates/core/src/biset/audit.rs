use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::special::{right_inverses_up_to, Session, SpecialError};
use crate::words::Word;

use super::{n_mul, peel, GeneratorSets, NElement, Peel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub violations: Vec<String>,
}

/// Results of the ping-pong checks on a finite ball of N. Every statement is
/// about elements whose parts have length at most `radius`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub radius: usize,
    pub ball_size: usize,
    pub x_count: usize,
    pub g_sample_size: usize,
    pub checks: Vec<AuditCheck>,
    pub inconclusive: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.inconclusive.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

/// All `(u, v) ∈ N` with `|u| ≤ right_len` and `|v| ≤ left_len`.
pub fn n_ball(
    s: &Session,
    right_len: usize,
    left_len: usize,
) -> Result<Vec<NElement>, SpecialError> {
    if !s.oracle().is_complete() {
        return Err(SpecialError::OracleInconclusive(
            "enumerating N needs a complete rewriting system".into(),
        ));
    }
    let system = s.oracle().system();
    let mut out = Vec::new();
    for u in s.alphabet().words_up_to(right_len) {
        if !system.is_irreducible(&u) {
            continue;
        }
        for v in right_inverses_up_to(system, &u, left_len) {
            out.push(NElement::new(u.clone(), v));
        }
    }
    Ok(out)
}

/// Reduced units given by Δ-words of Δ-length one or two, identity excluded.
pub fn g_sample(s: &Session) -> Result<Vec<Word>, SpecialError> {
    let dt = s.delta()?;
    let mut out = BTreeSet::new();
    for a in &dt.delta {
        out.insert(s.nf(a)?);
        for b in &dt.delta {
            out.insert(s.nf(&a.concat(b))?);
        }
    }
    out.remove(&Word::empty());
    Ok(out.into_iter().collect())
}

/// Checks, within the ball of radius `radius`:
/// the sets N·x are pairwise disjoint; translates N·x·g by sampled units
/// g ≠ 1 avoid every N·x'; the identity lies in no N·x; and peeling an
/// element of N·x recovers both x and the cofactor.
pub fn ping_pong_audit(
    s: &Session,
    gens: &GeneratorSets,
    radius: usize,
) -> Result<AuditReport, SpecialError> {
    let left_radius = radius + 2 * s.presentation().max_relator_len();
    let ball: BTreeSet<NElement> = n_ball(s, radius, left_radius)?.into_iter().collect();
    let slack = s.delta()?.max_len();
    // any n with n·x in the ball has |n.right| < radius and |n.left| ≤ radius + |δ|
    let cofactors = n_ball(s, radius, left_radius + slack)?;
    let sample = g_sample(s)?;
    let mut inconclusive = Vec::new();
    let alphabet = s.alphabet();

    // orbit membership: ball element -> (generator index, cofactor)
    let mut members: BTreeMap<NElement, Vec<(usize, NElement)>> = BTreeMap::new();
    let mut products = 0;
    for (i, x) in gens.x.iter().enumerate() {
        for n in &cofactors {
            products += 1;
            match n_mul(s, n, &x.element) {
                Ok(q) if ball.contains(&q) => members.entry(q).or_default().push((i, n.clone())),
                Ok(_) => {}
                Err(e) => inconclusive.push(format!("{}·x{}: {e}", n.render(alphabet), i)),
            }
        }
    }

    let mut disjoint = AuditCheck {
        name: "orbits N·x pairwise disjoint",
        passed: true,
        checked: products,
        violations: Vec::new(),
    };
    for (q, hits) in &members {
        let distinct: BTreeSet<usize> = hits.iter().map(|h| h.0).collect();
        if distinct.len() > 1 {
            disjoint.violations.push(format!(
                "{} lies in N·x for x in {:?}",
                q.render(alphabet),
                distinct
            ));
        }
    }

    let mut translates = AuditCheck {
        name: "translates N·x·g avoid every N·x'",
        passed: true,
        checked: 0,
        violations: Vec::new(),
    };
    for q in members.keys() {
        for g in &sample {
            let g_elt = match s.inverse_of(g) {
                Ok(inv) => NElement::new(g.clone(), inv),
                Err(e) => {
                    inconclusive.push(format!("inverse of {}: {e}", alphabet.render(g)));
                    continue;
                }
            };
            match n_mul(s, q, &g_elt) {
                Ok(t) if ball.contains(&t) => {
                    translates.checked += 1;
                    if members.contains_key(&t) {
                        translates.violations.push(format!(
                            "{}·[{}] = {} is again in some N·x",
                            q.render(alphabet),
                            alphabet.render(g),
                            t.render(alphabet)
                        ));
                    }
                }
                Ok(_) => {}
                Err(e) => inconclusive.push(format!("{}·g: {e}", q.render(alphabet))),
            }
        }
    }

    let mut proper = AuditCheck {
        name: "identity outside every N·x",
        passed: true,
        checked: 1,
        violations: Vec::new(),
    };
    if members.contains_key(&NElement::identity()) {
        proper.violations.push("(ε, ε) lies in some N·x".into());
    }

    let mut recovery = AuditCheck {
        name: "minimal cut recovers x and cofactor",
        passed: true,
        checked: 0,
        violations: Vec::new(),
    };
    for (q, hits) in &members {
        for (i, n) in hits {
            recovery.checked += 1;
            match peel(s, q) {
                Ok(Some(Peel::X { generator, rest }))
                    if generator == gens.x[*i].element && rest == *n => {}
                Ok(other) => recovery.violations.push(format!(
                    "{} = {}·x{}, peeled as {:?}",
                    q.render(alphabet),
                    n.render(alphabet),
                    i,
                    other
                )),
                Err(e) => inconclusive.push(format!("peeling {}: {e}", q.render(alphabet))),
            }
        }
    }

    let mut checks = vec![disjoint, translates, proper, recovery];
    for c in &mut checks {
        c.passed = c.violations.is_empty();
    }
    Ok(AuditReport {
        radius,
        ball_size: ball.len(),
        x_count: gens.x.len(),
        g_sample_size: sample.len(),
        checks,
        inconclusive,
    })
}

#[cfg(test)]
mod tests {
    use super::super::generator_sets;
    use super::super::tests::session;
    use super::*;

    #[test]
    fn bicyclic_ball_and_audit() {
        let b = session("ab", &["ab"]);
        let ball = n_ball(&b, 4, 4).unwrap();
        // (a^k, b^k) for k = 0..4
        assert_eq!(ball.len(), 5);
        let gens = generator_sets(&b).unwrap();
        let report = ping_pong_audit(&b, &gens, 4).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks[3].checked, 4);
    }

    #[test]
    fn cyclic_audit_is_vacuous() {
        let z = session("a", &["aa"]);
        let gens = generator_sets(&z).unwrap();
        let report = ping_pong_audit(&z, &gens, 4).unwrap();
        assert_eq!(report.x_count, 0);
        assert!(report.passed());
    }

    #[test]
    fn ball_matches_brute_force() {
        let s = session("abcd", &["abcdab"]);
        let ball: BTreeSet<NElement> = n_ball(&s, 3, 4).unwrap().into_iter().collect();
        let system = s.oracle().system();
        let words: Vec<Word> = s
            .alphabet()
            .words_up_to(4)
            .into_iter()
            .filter(|w| system.is_irreducible(w))
            .collect();
        let mut brute = BTreeSet::new();
        for u in words.iter().filter(|u| u.len() <= 3) {
            for v in &words {
                if s.nf(&u.concat(v)).unwrap().is_empty() {
                    brute.insert(NElement::new(u.clone(), v.clone()));
                }
            }
        }
        assert_eq!(ball, brute);
    }

    #[test]
    fn two_piece_audit_passes() {
        let s = session("abcd", &["abcdbcabcd"]);
        let gens = generator_sets(&s).unwrap();
        let report = ping_pong_audit(&s, &gens, 6).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.x_count, 2);
        assert!(report.checks[3].checked > 0);
    }
}
