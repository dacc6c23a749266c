use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};
use smtk_core::bicayley::{
    ball_dot, ball_json, build_ball, compute_c, quotient_forest, BiCayleyError, EdgeClass,
};
use smtk_core::biset::{
    generator_sets, is_n_element, n_normal_form, ping_pong_audit, NElement, Syllable,
};
use smtk_core::homreport::{
    compressibility_report, derived_assumption, exactness_spotcheck, finiteness_report,
    one_relator_classify, resolution_summary, Compressibility, HomError,
};
use smtk_core::oracle::{SpecialPresentation, Verdict};
use smtk_core::special::{units_presentation, DeltaTable, Session, SpecialError};
use smtk_core::words::{Alphabet, Word, WordError};
use thiserror::Error;

use crate::config::{ConfigError, Format, SessionConfig};
use crate::parse::{parse_presentation, parse_relaxed, ParseError, Relations};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Delta,
    Units,
    Reduce {
        word: String,
    },
    Ozf {
        word: String,
    },
    Invert {
        word: String,
    },
    Ngens,
    Nnf {
        u: String,
        v: String,
    },
    Pingpong,
    Ball {
        center: String,
        dot: Option<PathBuf>,
    },
    Forest {
        center: String,
    },
    Cbasis,
    Summary,
    Classify,
    Compress {
        u: String,
        v: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Delta => "delta",
            Command::Units => "units",
            Command::Reduce { .. } => "reduce",
            Command::Ozf { .. } => "ozf",
            Command::Invert { .. } => "invert",
            Command::Ngens => "ngens",
            Command::Nnf { .. } => "nnf",
            Command::Pingpong => "pingpong",
            Command::Ball { .. } => "ball",
            Command::Forest { .. } => "forest",
            Command::Cbasis => "cbasis",
            Command::Summary => "summary",
            Command::Classify => "classify",
            Command::Compress { .. } => "compress",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
    Inconclusive,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
            Status::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: Status,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        Output {
            text: text.into(),
            status: Status::Success,
        }
    }

    fn json(v: Value) -> Self {
        Output::ok(serde_json::to_string_pretty(&v).expect("json values serialize"))
    }

    fn with(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    BiCayley(#[from] BiCayleyError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn is_inconclusive(&self) -> bool {
        match self {
            CliError::Special(e) | CliError::Hom(HomError::Special(e)) => special_inconclusive(e),
            CliError::BiCayley(e) | CliError::Hom(HomError::BiCayley(e)) => match e {
                BiCayleyError::UnclassifiedEdges(_) => true,
                BiCayleyError::Special(e) => special_inconclusive(e),
                BiCayleyError::NotCollapsedEdge => false,
            },
            _ => false,
        }
    }

    pub fn status(&self) -> Status {
        if self.is_inconclusive() {
            Status::Inconclusive
        } else {
            Status::Failure
        }
    }
}

fn special_inconclusive(e: &SpecialError) -> bool {
    matches!(
        e,
        SpecialError::OracleInconclusive(_)
            | SpecialError::Inconclusive { .. }
            | SpecialError::PartialDelta
    )
}

struct Ctx<'a> {
    cfg: &'a SessionConfig,
    scale: f64,
}

impl Ctx<'_> {
    fn text(&self) -> Result<String, CliError> {
        fs::read_to_string(&self.cfg.presentation).map_err(|source| CliError::Io {
            path: self.cfg.presentation.clone(),
            source,
        })
    }

    fn session(&self) -> Result<Session, CliError> {
        let pres = parse_presentation(&self.text()?)?;
        Ok(self.session_for(pres))
    }

    fn session_for(&self, pres: SpecialPresentation) -> Session {
        let (oracle, limits) = self.cfg.limits(self.scale);
        Session::new(pres, oracle, limits)
    }
}

fn word(a: &Alphabet, text: &str) -> Result<Word, CliError> {
    Ok(a.parse_word(text)?)
}

fn plain(a: &Alphabet, w: &Word) -> String {
    a.render_plain(w)
}

/// Runs one subcommand. The returned text is what goes to stdout.
pub fn run(cmd: &Command, cfg: &SessionConfig, scale: f64) -> Result<Output, CliError> {
    cfg.validate()?;
    let dot_ok = matches!(cmd, Command::Ball { .. } | Command::Forest { .. });
    if cfg.format == Format::Dot && !dot_ok {
        return Err(CliError::Input(format!(
            "`{}` has no dot output",
            cmd.name()
        )));
    }
    let ctx = Ctx { cfg, scale };
    let json = cfg.format == Format::Json;
    match cmd {
        Command::Delta => delta(&ctx.session()?, json),
        Command::Units => units(&ctx.session()?, json),
        Command::Reduce { word: w } => reduce(&ctx.session()?, w, json),
        Command::Ozf { word: w } => ozf(&ctx.session()?, w, json),
        Command::Invert { word: w } => invert(&ctx.session()?, w, json),
        Command::Ngens => ngens(&ctx.session()?, json),
        Command::Nnf { u, v } => nnf(&ctx.session()?, u, v, json),
        Command::Pingpong => pingpong(&ctx.session()?, cfg.radius, json),
        Command::Ball { center, dot } => ball(&ctx.session()?, center, cfg, dot.as_ref()),
        Command::Forest { center } => forest(&ctx.session()?, center, cfg),
        Command::Cbasis => cbasis(&ctx.session()?, json),
        Command::Summary => summary(&ctx.session()?, cfg, json),
        Command::Classify => classify(&ctx, json),
        Command::Compress { u, v } => {
            let r = parse_relaxed(&ctx.text()?)?;
            compress(&r.alphabet, u, v, json)
        }
    }
}

fn delta_table(s: &Session) -> Result<(&DeltaTable, Option<String>), CliError> {
    match s.delta() {
        Ok(t) => Ok((t, None)),
        Err(SpecialError::Inconclusive { detail, .. }) => {
            let (t, _) = s.delta_or_partial();
            Ok((t, Some(detail)))
        }
        Err(e) => Err(e.into()),
    }
}

fn delta(s: &Session, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let (dt, partial) = delta_table(s)?;
    let out = if json {
        let inverses: serde_json::Map<String, Value> = dt
            .delta
            .iter()
            .filter_map(|d| dt.inverse(d).map(|i| (plain(a, d), json!(plain(a, i)))))
            .collect();
        Output::json(json!({
            "delta": dt.delta.iter().map(|d| plain(a, d)).collect::<Vec<_>>(),
            "inverses": inverses,
            "complete": partial.is_none(),
            "detail": partial,
        }))
    } else {
        let mut text = dt.display(a).to_string();
        if let Some(d) = &partial {
            text.push_str(&format!("\ninconclusive: {d}"));
        }
        Output::ok(text)
    };
    Ok(if partial.is_some() {
        out.with(Status::Inconclusive)
    } else {
        out
    })
}

fn units(s: &Session, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let u = units_presentation(s, s.delta()?)?;
    if json {
        return Ok(Output::json(json!({
            "generators": u.generators.iter().map(|g| plain(a, g)).collect::<Vec<_>>(),
            "relations": u.relations,
            "identifications": u.identifications,
            "kind": u.kind.to_string(),
            "presentation": u.render(a),
        })));
    }
    let mut text = format!("G = {}; {}", u.render(a), u.kind);
    for (i, j) in &u.identifications {
        text.push_str(&format!(
            "\nidentified: [{}] = [{}]",
            a.render(&u.generators[*i]),
            a.render(&u.generators[*j])
        ));
    }
    Ok(Output::ok(text))
}

fn reduce(s: &Session, w: &str, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let w = word(a, w)?;
    let reduced = s.oracle().reduce(&w);
    let complete = s.oracle().is_complete();
    let out = if json {
        Output::json(
            json!({"word": plain(a, &w), "reduced": plain(a, &reduced), "normal_form": complete}),
        )
    } else if complete {
        Output::ok(a.render(&reduced))
    } else {
        Output::ok(format!(
            "{} (rewriting system incomplete; not necessarily canonical)",
            a.render(&reduced)
        ))
    };
    Ok(if complete {
        out
    } else {
        out.with(Status::Inconclusive)
    })
}

fn ozf(s: &Session, w: &str, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let form = s.otto_zhang(&word(a, w)?)?;
    if json {
        return Ok(Output::json(json!({
            "parts": form.parts.iter().map(|p| plain(a, p)).collect::<Vec<_>>(),
            "letters": form.letters.iter().map(|l| a.symbol(*l)).collect::<Vec<_>>(),
            "m": form.m(),
            "reduced": plain(a, &s.zhang_reduce(&form.concat())?),
        })));
    }
    Ok(Output::ok(format!(
        "{}\nm = {}; skeleton = {}",
        form.render(a),
        form.m(),
        a.render(&form.skeleton())
    )))
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Equal(_) => "yes",
        Verdict::NotEqual(_) => "no",
        Verdict::Unknown(_) => "unknown",
    }
}

fn invert(s: &Session, w: &str, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let w = word(a, w)?;
    let v = s.invertibility(&w);
    let inverse = if v.is_invertible() {
        Some(s.inverse_of(&w)?)
    } else {
        None
    };
    let status = if v.is_unknown() {
        Status::Inconclusive
    } else {
        Status::Success
    };
    let witness = |x: &Option<Word>| x.as_ref().map(|x| plain(a, x));
    let out = if json {
        Output::json(json!({
            "word": plain(a, &w),
            "right_invertible": verdict_name(&v.right),
            "left_invertible": verdict_name(&v.left),
            "invertible": verdict_name(&v.invertible),
            "right_witness": witness(&v.witness_right),
            "left_witness": witness(&v.witness_left),
            "inverse": inverse.as_ref().map(|i| plain(a, i)),
        }))
    } else if let Some(i) = inverse {
        Output::ok(format!("invertible; inverse = {}", a.render(&i)))
    } else {
        let side = |verdict: &Verdict, wit: &Option<Word>| match (verdict, wit) {
            (Verdict::Equal(_), Some(x)) => format!("yes ({})", a.render(x)),
            (other, _) => verdict_name(other).to_string(),
        };
        Output::ok(format!(
            "not invertible; right inverse: {}; left inverse: {}",
            side(&v.right, &v.witness_right),
            side(&v.left, &v.witness_left)
        ))
    };
    Ok(out.with(status))
}

fn ngens(s: &Session, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let gens = generator_sets(s)?;
    let pair = |n: &NElement| json!([plain(a, &n.right_part), plain(a, &n.left_part)]);
    if json {
        let x: Vec<Value> = gens
            .x
            .iter()
            .map(|g| json!({"element": pair(&g.element), "split": [plain(a, &g.delta1), plain(a, &g.delta2)], "delta": plain(a, &g.delta)}))
            .collect();
        let y: Vec<Value> = gens
            .y
            .iter()
            .map(|g| json!({"element": pair(&g.element), "delta": plain(a, &g.delta), "identity": g.is_identity}))
            .collect();
        return Ok(Output::json(json!({"x": x, "y": y})));
    }
    let mut lines = Vec::new();
    for (i, g) in gens.x.iter().enumerate() {
        lines.push(format!(
            "X{i} = {} from split ({}, {})",
            g.element.render(a),
            a.render(&g.delta1),
            a.render(&g.delta2)
        ));
    }
    for (i, g) in gens.y.iter().enumerate() {
        let flag = if g.is_identity { " (identity)" } else { "" };
        lines.push(format!("Y{i} = {}{flag}", g.element.render(a)));
    }
    Ok(Output::ok(lines.join("\n")))
}

fn nnf(s: &Session, u: &str, v: &str, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let p = NElement::new(s.nf(&word(a, u)?)?, s.nf(&word(a, v)?)?);
    if !is_n_element(s, &p)? {
        return Err(CliError::Input(format!(
            "{} is not in N: the product is not 1",
            p.render(a)
        )));
    }
    let gens = generator_sets(s)?;
    let form = n_normal_form(s, &gens, &p)?;
    if json {
        let syllables: Vec<Value> = form
            .syllables
            .iter()
            .map(|syl| match syl {
                Syllable::G(g) => json!({"g": plain(a, g)}),
                Syllable::X { generator, power } => json!({"x": generator, "power": power}),
            })
            .collect();
        return Ok(Output::json(json!({
            "element": [plain(a, &p.right_part), plain(a, &p.left_part)],
            "syllables": syllables,
            "normal_form": form.render(a, &gens),
        })));
    }
    Ok(Output::ok(format!(
        "{} = {}",
        p.render(a),
        form.render(a, &gens)
    )))
}

fn pingpong(s: &Session, radius: usize, json: bool) -> Result<Output, CliError> {
    let gens = generator_sets(s)?;
    let report = ping_pong_audit(s, &gens, radius)?;
    let status = if !report.inconclusive.is_empty() {
        Status::Inconclusive
    } else if report.passed() {
        Status::Success
    } else {
        Status::Failure
    };
    if json {
        let v = serde_json::to_value(&report).expect("report serializes");
        return Ok(Output::json(v).with(status));
    }
    let mut lines = vec![format!(
        "ping-pong audit, radius {}: {} elements of N, {} X generators, {} sampled units",
        report.radius, report.ball_size, report.x_count, report.g_sample_size
    )];
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        lines.push(format!("{mark} {} ({} checked)", c.name, c.checked));
        lines.extend(c.violations.iter().map(|v| format!("  {v}")));
    }
    lines.extend(
        report
            .inconclusive
            .iter()
            .map(|i| format!("inconclusive: {i}")),
    );
    Ok(Output::ok(lines.join("\n")).with(status))
}

fn ball(
    s: &Session,
    center: &str,
    cfg: &SessionConfig,
    dot: Option<&PathBuf>,
) -> Result<Output, CliError> {
    let a = s.alphabet();
    let b = build_ball(s, &word(a, center)?, cfg.radius)?;
    if let Some(path) = dot {
        fs::write(path, ball_dot(s, &b)).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let status = if b.unknown_edges() > 0 || !b.inconclusive.is_empty() {
        Status::Inconclusive
    } else {
        Status::Success
    };
    let out = match cfg.format {
        Format::Json => Output::json(ball_json(s, &b)),
        Format::Dot => Output::ok(ball_dot(s, &b)),
        Format::Text => {
            let count = |c: EdgeClass| b.edges.iter().filter(|e| e.class == c).count();
            let classes: std::collections::BTreeSet<_> = b.orbits.iter().flatten().collect();
            let mut lines = vec![format!(
                "center {}, radius {}: {} vertices, {} orbit classes, {} edges ({} same-orbit, {} crossing, {} unknown)",
                a.render(&b.center),
                b.radius,
                b.vertices.len(),
                classes.len(),
                b.edges.len(),
                count(EdgeClass::SameOrbit),
                count(EdgeClass::Crossing),
                count(EdgeClass::Unknown)
            )];
            for (v, o) in b.vertices.iter().zip(&b.orbits) {
                let orbit = o.as_ref().map_or("?".to_string(), |o| o.render(s));
                lines.push(format!("  {} in orbit {orbit}", v.render(s)));
            }
            for e in &b.edges {
                lines.push(format!("  {} {}", e.render(s), e.class.name()));
            }
            Output::ok(lines.join("\n"))
        }
    };
    Ok(out.with(status))
}

fn forest(s: &Session, center: &str, cfg: &SessionConfig) -> Result<Output, CliError> {
    let a = s.alphabet();
    let b = build_ball(s, &word(a, center)?, cfg.radius)?;
    let f = quotient_forest(s, &b)?;
    let status = if f.is_linear() {
        Status::Success
    } else {
        Status::Failure
    };
    let skeletons: Vec<String> = f
        .components
        .iter()
        .map(|c| {
            if c.is_path {
                a.render(&c.skeleton_word)
            } else {
                "not a path".to_string()
            }
        })
        .collect();
    let check = if f.is_forest {
        Some(exactness_spotcheck(&f)?)
    } else {
        None
    };
    let out = match cfg.format {
        Format::Json => Output::json(json!({
            "forest": f.is_forest,
            "linear": f.is_linear(),
            "expected_skeleton": plain(a, &f.expected_skeleton),
            "components": f.components.iter().map(|c| json!({
                "skeleton": plain(a, &c.skeleton_word),
                "path": c.is_path,
                "orbits": c.vertices.iter().map(|&i| f.classes[i].render(s)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "exactness": check.as_ref().map(|c| json!({
                "vertices": c.vertices,
                "edges": c.edges,
                "components": c.components,
                "boundary_rank": c.boundary_rank,
                "passed": c.passed(),
            })),
        })),
        Format::Dot => Output::ok(ball_dot(s, &b)),
        Format::Text => {
            let label = if skeletons.len() == 1 {
                "component skeleton"
            } else {
                "component skeletons"
            };
            let mut text = format!(
                "Forest: {}; {label}: {}",
                if f.is_forest { "yes" } else { "no" },
                skeletons.join(", ")
            );
            if f.is_forest && !f.is_linear() {
                text.push_str(&format!(
                    "\nexpected a single path spelling {}",
                    a.render(&f.expected_skeleton)
                ));
            }
            Output::ok(text)
        }
    };
    Ok(out.with(status))
}

fn cbasis(s: &Session, json: bool) -> Result<Output, CliError> {
    let a = s.alphabet();
    let c = compute_c(s)?;
    if json {
        let items: Vec<Value> = c
            .iter()
            .map(|e| json!([plain(a, &e.pre), a.symbol(e.letter), plain(a, &e.post)]))
            .collect();
        return Ok(Output::json(json!({"c": items, "c_size": c.len()})));
    }
    let items: Vec<String> = c.iter().map(|e| e.render(s)).collect();
    Ok(Output::ok(format!("𝓒 = {{{}}}", items.join(", "))))
}

fn summary(s: &Session, cfg: &SessionConfig, json: bool) -> Result<Output, CliError> {
    let r = resolution_summary(s)?;
    let assumption = cfg
        .assume_units
        .clone()
        .unwrap_or_else(|| derived_assumption(s.presentation(), Some(&r.units)));
    let report = finiteness_report(&assumption);
    if json {
        return Ok(Output::json(r.to_json(s, &report)));
    }
    Ok(Output::ok(format!("{}\n{}", r.render(s), report.render())))
}

fn classify(ctx: &Ctx<'_>, json: bool) -> Result<Output, CliError> {
    let text = ctx.text()?;
    let relations = parse_relaxed(&text)?;
    if relations.is_special() {
        let pres = parse_presentation(&text)?;
        if pres.k() == 1 {
            let r = one_relator_classify(&pres)?;
            return Ok(if json {
                Output::json(r.to_json(&pres))
            } else {
                Output::ok(r.render(&pres))
            });
        }
        let s = ctx.session_for(pres);
        let units = units_presentation(&s, s.delta()?)?;
        let assumption = ctx
            .cfg
            .assume_units
            .clone()
            .unwrap_or_else(|| derived_assumption(s.presentation(), Some(&units)));
        let report = finiteness_report(&assumption);
        return Ok(if json {
            Output::json(
                json!({"relators": s.presentation().k(), "classification": report.classification_json(), "summary": report.render()}),
            )
        } else {
            Output::ok(format!(
                "special, {} relators; {}",
                s.presentation().k(),
                report.render()
            ))
        });
    }
    let Relations { alphabet, pairs } = relations;
    if pairs.len() != 1 {
        return Err(CliError::Input(format!(
            "classify handles one non-special relation, found {}",
            pairs.len()
        )));
    }
    let (u, v) = &pairs[0];
    let mut out = compress_words(&alphabet, u, v, json)?;
    if !json {
        out.text = format!(
            "one-relator {} = {}; {}",
            alphabet.render(u),
            alphabet.render(v),
            out.text
        );
    }
    Ok(out)
}

fn compress(a: &Alphabet, u: &str, v: &str, json: bool) -> Result<Output, CliError> {
    compress_words(a, &word(a, u)?, &word(a, v)?, json)
}

fn compress_words(a: &Alphabet, u: &Word, v: &Word, json: bool) -> Result<Output, CliError> {
    let (c, report) = compressibility_report(u, v)?;
    let r = match &c {
        Compressibility::Compressible { r } => Some(r),
        Compressibility::Incompressible => None,
    };
    let summary = match (&c, &report) {
        (Compressibility::Incompressible, Some(rep)) => format!(
            "incompressible; bi-FP_{}; Hochschild ≤ {}",
            rep.bi_fp.expect("set for incompressible pairs"),
            rep.hochschild_upper.expect("set for incompressible pairs")
        ),
        _ => format!(
            "compressible with r = {}; no conclusion",
            a.render(r.expect("compressible"))
        ),
    };
    if json {
        return Ok(Output::json(json!({
            "u": plain(a, u),
            "v": plain(a, v),
            "compressible": r.is_some(),
            "r": r.map(|r| plain(a, r)),
            "classification": report.map(|rep| rep.classification_json()),
            "summary": summary,
        })));
    }
    Ok(Output::ok(summary))
}
