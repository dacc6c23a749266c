use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use crate::special::Session;

use super::{BiCayleyBall, EdgeClass, OrbitBasisElement};

fn classes(ball: &BiCayleyBall) -> Vec<&OrbitBasisElement> {
    let set: BTreeSet<&OrbitBasisElement> = ball.orbits.iter().flatten().collect();
    set.into_iter().collect()
}

/// `{vertices: [{l, r, orbit}], edges: [{l, a, r, class}], orbits: [{l, r}]}`.
/// `orbit` indexes `orbits`; words are plain strings with `""` for ε.
pub fn ball_json(s: &Session, ball: &BiCayleyBall) -> Value {
    let a = s.alphabet();
    let classes = classes(ball);
    let vertices: Vec<Value> = ball
        .vertices
        .iter()
        .zip(&ball.orbits)
        .map(|(v, o)| {
            let orbit = o.as_ref().map(|b| classes.binary_search(&b).unwrap());
            json!({"l": a.render_plain(&v.left), "r": a.render_plain(&v.right), "orbit": orbit})
        })
        .collect();
    let edges: Vec<Value> = ball
        .edges
        .iter()
        .map(|e| {
            json!({
                "l": a.render_plain(&e.left),
                "a": a.symbol(e.letter),
                "r": a.render_plain(&e.right),
                "class": e.class.name(),
            })
        })
        .collect();
    let orbits: Vec<Value> = classes
        .iter()
        .map(|b| json!({"l": a.render_plain(&b.left), "r": a.render_plain(&b.right)}))
        .collect();
    json!({
        "center": a.render_plain(&ball.center),
        "radius": ball.radius,
        "vertices": vertices,
        "edges": edges,
        "orbits": orbits,
    })
}

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz source. Orbit classes become clusters; collapsed edges are
/// dashed, crossing edges solid, unclassified edges dotted.
pub fn ball_dot(s: &Session, ball: &BiCayleyBall) -> String {
    let classes = classes(ball);
    let mut out = String::from("digraph ball {\n  rankdir=LR;\n");
    for (k, b) in classes.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{k} {{").unwrap();
        writeln!(out, "    label={};", quote(&b.render(s))).unwrap();
        for (i, o) in ball.orbits.iter().enumerate() {
            if o.as_ref() == Some(*b) {
                writeln!(out, "    v{i};").unwrap();
            }
        }
        out.push_str("  }\n");
    }
    for (i, v) in ball.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label={}];", quote(&v.render(s))).unwrap();
    }
    for e in &ball.edges {
        let (Ok(p), Ok(q)) = (e.initial(s), e.terminal(s)) else {
            continue;
        };
        let (Some(i), Some(j)) = (ball.index_of(&p), ball.index_of(&q)) else {
            continue;
        };
        let style = match e.class {
            EdgeClass::SameOrbit => "dashed",
            EdgeClass::Crossing => "solid",
            EdgeClass::Unknown => "dotted",
        };
        writeln!(
            out,
            "  v{i} -> v{j} [label={}, style={style}];",
            quote(s.alphabet().symbol(e.letter))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
