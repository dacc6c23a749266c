//! End-to-end acceptance checks. Runs without the libtest harness so that
//! each criterion prints exactly one PASS/FAIL line.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use smtk::parse_presentation;
use smtk_core::bicayley::{
    act, build_ball, compute_c, edge_act, edge_c_factorize, n_factorize_vertex,
    orbit_basis_element, quotient_forest, BiVertex, EdgeClass,
};
use smtk_core::biset::{generator_sets, n_mul, ping_pong_audit, NElement};
use smtk_core::special::{parses_over, Session};
use smtk_core::words::Word;

const SPECIAL: [&str; 5] = ["bicyclic", "z2", "abcdab", "abab", "twopieces"];

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.pres"))
}

fn session(name: &str) -> Session {
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    Session::with_defaults(parse_presentation(&text).expect("fixture parses"))
}

fn word(s: &Session, text: &str) -> Word {
    s.alphabet().parse_word(text).expect("word parses")
}

/// Collects failure descriptions; the first few are reported.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn fail(&mut self, what: impl std::fmt::Display) {
        self.0.push(what.to_string());
    }

    fn summary(&self) -> String {
        let shown: Vec<&str> = self.0.iter().take(3).map(String::as_str).collect();
        format!("{} failure(s): {}", self.0.len(), shown.join("; "))
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(f: Failures, ok_detail: String) -> Outcome {
    if f.0.is_empty() {
        Outcome {
            passed: true,
            detail: ok_detail,
        }
    } else {
        Outcome {
            passed: false,
            detail: f.summary(),
        }
    }
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let mut f = Failures::default();
    let s = session("twopieces");
    let dt = s.delta().expect("delta");
    let delta: Vec<String> = dt.delta.iter().map(|d| s.render(d)).collect();
    f.check(delta == ["abcd", "bc"], || format!("Δ = {delta:?}"));

    let gens = generator_sets(&s).expect("generators");
    let splits: Vec<(String, String)> = gens
        .x
        .iter()
        .map(|g| (s.render(&g.delta1), s.render(&g.delta2)))
        .collect();
    let has = |l: &str, r: &str| splits.iter().any(|(a, b)| a == l && b == r);
    f.check(has("a", "bcd") && has("b", "c"), || {
        format!("X splits {splits:?}")
    });
    f.check(!has("ab", "cd"), || "split (ab, cd) present".into());

    let x_of = |l: &str| gens.x.iter().find(|g| s.render(&g.delta1) == l);
    match (x_of("a"), x_of("b")) {
        (Some(p), Some(q)) => {
            let product = n_mul(&s, &p.element, &q.element).expect("product");
            let inv = dt.inverse(&word(&s, "abcd")).expect("inverse").clone();
            let expected = NElement::new(
                word(&s, "ab"),
                s.nf(&word(&s, "cd").concat(&inv)).expect("nf"),
            );
            f.check(product == expected, || {
                format!(
                    "product {} ≠ {}",
                    product.render(s.alphabet()),
                    expected.render(s.alphabet())
                )
            });
        }
        _ => f.fail("height-zero generators missing"),
    }
    let elapsed = start.elapsed();
    f.check(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    });
    outcome(
        f,
        format!("Δ = {{abcd, bc}}, product identity holds, {elapsed:.2?}"),
    )
}

/// Applies one relation: inserts a relator, or deletes an occurrence of one.
fn relation_step(s: &Session, rng: &mut ChaCha8Rng, w: &Word) -> Word {
    let relators = s.presentation().relators();
    let mut deletions = Vec::new();
    for r in relators {
        for at in w.occurrences(r) {
            deletions.push((at, r.len()));
        }
    }
    if !deletions.is_empty() && rng.gen_bool(0.5) {
        let (at, len) = deletions[rng.gen_range(0..deletions.len())];
        w.replaced(at, len, &[])
    } else {
        let r = &relators[rng.gen_range(0..relators.len())];
        w.replaced(rng.gen_range(0..=w.len()), 0, r)
    }
}

fn random_word(s: &Session, rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let letters: Vec<_> = s.alphabet().letters().collect();
    let len = rng.gen_range(0..=max_len);
    Word::from_letters(
        (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect(),
    )
}

fn normal_form_suite() -> Outcome {
    let mut f = Failures::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut pairs = 0;
    for name in SPECIAL {
        let s = session(name);
        let dt = s.delta().expect("delta").clone();
        for _ in 0..500 {
            let u = random_word(&s, &mut rng, 8);
            let mut v = u.clone();
            for _ in 0..rng.gen_range(0..=3) {
                v = relation_step(&s, &mut rng, &v);
            }
            pairs += 1;
            let (fu, fv) = match (s.otto_zhang(&u), s.otto_zhang(&v)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    f.fail(format!("{name}: {e}"));
                    continue;
                }
            };
            let pair = || format!("{name}: {} ~ {}", s.render(&u), s.render(&v));
            f.check(fu.m() == fv.m() && fu.letters == fv.letters, || {
                format!("{}: skeletons differ", pair())
            });
            if fu.letters == fv.letters {
                for (p, q) in fu.parts.iter().zip(&fv.parts) {
                    let same = s.nf(p).ok() == s.nf(q).ok();
                    f.check(same, || format!("{}: parts differ", pair()));
                }
            }
            for w in [&u, &v] {
                let reduced = match s.zhang_reduce(w) {
                    Ok(r) => r,
                    Err(e) => {
                        f.fail(format!("{name}: {e}"));
                        continue;
                    }
                };
                let form = s.otto_zhang(&reduced).expect("form of reduced word");
                let original = s.otto_zhang(w).expect("form");
                f.check(form.letters == original.letters, || {
                    format!("{name}: reducing {} moved separators", s.render(w))
                });
                for part in &form.parts {
                    f.check(parses_over(part, &dt.delta), || {
                        format!("{name}: part {} not over Δ", s.render(part))
                    });
                }
            }
        }
    }
    outcome(f, format!("{pairs} related pairs"))
}

fn reduced_vertices(s: &Session, total: usize) -> Vec<BiVertex> {
    let system = s.oracle().system();
    let irreducible: Vec<Word> = s
        .alphabet()
        .words_up_to(total)
        .into_iter()
        .filter(|w| system.is_irreducible(w))
        .collect();
    let mut out = Vec::new();
    for x in &irreducible {
        for y in &irreducible {
            if x.len() + y.len() <= total {
                out.push(BiVertex::new(x.clone(), y.clone()));
            }
        }
    }
    out
}

fn vertex_factorization() -> Outcome {
    let start = Instant::now();
    let mut f = Failures::default();
    let mut count = 0;
    for name in ["bicyclic", "z2"] {
        let s = session(name);
        let mut seen: HashMap<(BiVertex, NElement), BiVertex> = HashMap::new();
        for v in reduced_vertices(&s, 6) {
            count += 1;
            let (b, n) = match n_factorize_vertex(&s, &v) {
                Ok(x) => x,
                Err(e) => {
                    f.fail(format!("{name}: {e}"));
                    continue;
                }
            };
            let back = act(&s, &b.vertex(), &n).expect("action");
            f.check(back == v, || {
                format!("{name}: {} re-evaluates wrongly", v.render(&s))
            });
            let same_orbit = orbit_basis_element(&s, &v).ok() == Some(b.clone());
            f.check(same_orbit, || {
                format!("{name}: basis of {} differs", v.render(&s))
            });
            if let Some(other) = seen.insert((b.vertex(), n), v.clone()) {
                f.fail(format!(
                    "{name}: {} and {} share a factorization",
                    other.render(&s),
                    v.render(&s)
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    f.check(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    });
    outcome(f, format!("{count} vertices, {elapsed:.2?}"))
}

const FOREST_RADIUS: usize = 4;

fn forest_suite() -> Outcome {
    let mut f = Failures::default();
    let mut count = 0;
    for name in SPECIAL {
        let s = session(name);
        for center in s.alphabet().words_up_to(4) {
            count += 1;
            let label = || format!("{name}: center {}", s.render(&center));
            let ball = match build_ball(&s, &center, FOREST_RADIUS) {
                Ok(b) => b,
                Err(e) => {
                    f.fail(format!("{}: {e}", label()));
                    continue;
                }
            };
            match quotient_forest(&s, &ball) {
                Ok(q) => f.check(q.is_forest && q.is_linear(), || {
                    format!("{}: not a linear forest", label())
                }),
                Err(e) => f.fail(format!("{}: {e}", label())),
            }
        }
    }
    outcome(f, format!("{count} centers at radius {FOREST_RADIUS}"))
}

fn rendered_c(s: &Session) -> BTreeSet<String> {
    compute_c(s)
        .expect("edge basis")
        .iter()
        .map(|e| e.render(s))
        .collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|x| x.to_string()).collect()
}

fn edge_basis_suite() -> Outcome {
    let mut f = Failures::default();
    let b = session("bicyclic");
    let got = rendered_c(&b);
    f.check(got == set(&["(ε, a, b)", "(a, b, ε)"]), || {
        format!("bicyclic C = {got:?}")
    });
    let r = session("twopieces");
    let got = rendered_c(&r);
    let expected = set(&["(ε, a, bcd)", "(abc, d, ε)", "(ε, b, c)", "(b, c, ε)"]);
    f.check(got == expected, || format!("two-piece C = {got:?}"));
    let dt = r.delta().expect("delta");
    for e in compute_c(&r).expect("edge basis") {
        f.check(dt.contains(&e.word()), || {
            format!("{} not in Δ", r.render(&e.word()))
        });
    }

    let mut edges = 0;
    for name in SPECIAL {
        let s = session(name);
        for center in s.alphabet().words_up_to(2) {
            let ball = match build_ball(&s, &center, 5) {
                Ok(b) => b,
                Err(e) => {
                    f.fail(format!("{name}: {e}"));
                    continue;
                }
            };
            let mut seen = HashSet::new();
            for e in ball
                .edges
                .iter()
                .filter(|e| e.class == EdgeClass::SameOrbit)
            {
                edges += 1;
                let (actor, basis) = match edge_c_factorize(&s, e) {
                    Ok(x) => x,
                    Err(err) => {
                        f.fail(format!("{name}: {err}"));
                        continue;
                    }
                };
                let (l, a, rr) = edge_act(&actor, &basis);
                f.check(l == e.left && a == e.letter && rr == e.right, || {
                    format!("{name}: {} does not re-evaluate", e.render(&s))
                });
                f.check(seen.insert((actor, basis)), || {
                    format!("{name}: {} shares a factorization", e.render(&s))
                });
            }
        }
    }
    outcome(
        f,
        format!("C sets match, {edges} collapsed edges factor injectively"),
    )
}

const AUDIT_RADIUS: usize = 6;

fn ping_pong_suite() -> Outcome {
    let mut f = Failures::default();
    let mut translates = 0;
    for name in SPECIAL {
        let s = session(name);
        let gens = generator_sets(&s).expect("generators");
        match ping_pong_audit(&s, &gens, AUDIT_RADIUS) {
            Ok(report) => {
                for c in &report.checks {
                    f.check(c.passed, || format!("{name}: {} violated", c.name));
                }
                translates += report.checks.get(1).map_or(0, |c| c.checked);
                for note in &report.inconclusive {
                    f.fail(format!("{name}: {note}"));
                }
            }
            Err(e) => f.fail(format!("{name}: {e}")),
        }
    }
    outcome(
        f,
        format!("radius {AUDIT_RADIUS}, {translates} translate comparisons"),
    )
}

fn json_of(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["smtk".to_string()];
    full.extend(args.iter().map(|a| a.to_string()));
    let run = smtk::execute(full);
    if run.code != 0 {
        return Err(format!("exit {}: {}", run.code, run.stderr));
    }
    serde_json::from_str(&run.stdout).map_err(|e| e.to_string())
}

fn classifier_suite() -> Outcome {
    let mut f = Failures::default();
    let path = |n: &str| fixture(n).to_string_lossy().into_owned();
    let cases = [
        (
            vec!["classify".to_string(), path("abab")],
            "infinity",
            "infinity",
            "one-relator special; proper power (ab)^2; bi-FP_∞; Hochschild = ∞",
        ),
        (
            vec!["classify".to_string(), path("twopieces")],
            "0",
            "2",
            "one-relator special; not a proper power; bi-FP_∞; Hochschild ≤ 2",
        ),
        (
            vec![
                "compress".to_string(),
                path("incompressible"),
                "ab".into(),
                "ba".into(),
            ],
            "0",
            "2",
            "incompressible; bi-FP_∞; Hochschild ≤ 2",
        ),
    ];
    for (args, lower, upper, summary) in cases {
        let mut argv: Vec<&str> = args.iter().map(String::as_str).collect();
        argv.extend(["--format", "json"]);
        match json_of(&argv) {
            Ok(v) => {
                let c = &v["classification"];
                f.check(c["bi_fp"] == "infinity", || {
                    format!("{}: bi_fp {}", args[0], c["bi_fp"])
                });
                f.check(c["hochschild"]["lower"] == lower, || {
                    format!("{}: lower {}", args[1], c["hochschild"]["lower"])
                });
                f.check(c["hochschild"]["upper"] == upper, || {
                    format!("{}: upper {}", args[1], c["hochschild"]["upper"])
                });
                f.check(v["summary"] == summary, || {
                    format!("summary {}", v["summary"])
                });
            }
            Err(e) => f.fail(e),
        }
    }
    outcome(f, "abab ∞, abcdbcabcd ≤ 2, (ab, ba) incompressible".into())
}

fn oracle_suite() -> Outcome {
    let mut f = Failures::default();
    let mut pairs = 0;
    for name in ["bicyclic", "z2"] {
        let s = session(name);
        let o = s.oracle();
        f.check(o.is_complete(), || {
            format!("{name}: completion did not finish")
        });
        let words = s.alphabet().words_up_to(6);
        let nfs: Vec<Word> = words.iter().map(|w| o.reduce(w)).collect();
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                pairs += 1;
                let verdict = o.decide_equal(u, v);
                let expected = nfs[i] == nfs[j];
                let agrees = if expected {
                    verdict.is_equal()
                } else {
                    verdict.is_not_equal()
                };
                f.check(agrees, || {
                    format!("{name}: {} vs {}: {verdict:?}", s.render(u), s.render(v))
                });
            }
        }
    }
    outcome(f, format!("{pairs} pairs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("worked example", worked_example),
        ("normal form suite", normal_form_suite),
        ("vertex factorization", vertex_factorization),
        ("quotient forests", forest_suite),
        ("collapsed edge basis", edge_basis_suite),
        ("ping-pong audit", ping_pong_suite),
        ("classifier conformance", classifier_suite),
        ("oracle soundness", oracle_suite),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        all &= o.passed;
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {tag} - {}", i + 1, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
