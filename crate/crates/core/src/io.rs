//! JSON graph files and Graphviz export.
//!
//! ```json
//! {"vertices": 6, "edges": [{"u": 1, "v": 2, "cu": 1, "cv": 1, "w": "1"},
//!                           {"u": 3, "v": 5, "cu": 1, "cv": 0, "w": "i"}]}
//! ```
//!
//! `w` is either one of the strings `"1"`, `"-1"`, `"i"`, `"-i"` (any
//! rational form such as `"1/2-3i"` is accepted too) or an object
//! `{"re": [num, den], "im": [num, den]}`. A missing `w` means 1.
//!
//! Vertex ids may be 0- or 1-based. An explicit `"index_base"` wins;
//! otherwise a file is read as 1-based when no endpoint is 0 and some
//! endpoint equals `vertices`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::graph::{ExperimentGraph, HalfColoredEdge};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: usize,
    #[serde(default)]
    index_base: Option<usize>,
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    u: usize,
    v: usize,
    cu: usize,
    cv: usize,
    #[serde(default)]
    w: Option<Value>,
}

fn infer_base(doc: &GraphDoc) -> Result<usize> {
    let base = match doc.index_base {
        Some(b @ (0 | 1)) => b,
        Some(b) => return Err(Error::Parse(format!("index_base must be 0 or 1, got {b}"))),
        None => {
            let ends = doc.edges.iter().flat_map(|e| [e.u, e.v]);
            let (min, max) = ends.fold((usize::MAX, 0), |(lo, hi), x| (lo.min(x), hi.max(x)));
            usize::from(!doc.edges.is_empty() && min >= 1 && max == doc.vertices)
        }
    };
    Ok(base)
}

fn unbase(x: usize, base: usize, n: usize) -> Result<usize> {
    if x < base || x - base >= n {
        return Err(Error::Input(format!("vertex id {x} out of range for {n} vertices with index base {base}")));
    }
    Ok(x - base)
}

fn parse_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer `{n}` in rational (floats need float mode)"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("malformed integer `{s}`"))),
        other => Err(Error::Parse(format!("expected integer, got `{other}`"))),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let num = parse_bigint(&parts[0])?;
            let den = parse_bigint(&parts[1])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator in rational".into()));
            }
            Ok(BigRational::new(num, den))
        }
        Value::String(s) => match s.parse::<GaussianRational>()? {
            g if g.im().is_zero() => Ok(g.re().clone()),
            _ => Err(Error::Parse(format!("expected a real rational, got `{s}`"))),
        },
        Value::Number(_) => Ok(BigRational::from_integer(parse_bigint(v)?)),
        other => Err(Error::Parse(format!("malformed rational `{other}`"))),
    }
}

/// Parses an exact weight value.
pub fn weight_from_json(v: &Value) -> Result<GaussianRational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(_) => Ok(GaussianRational::real(parse_rational(v)?)),
        Value::Object(map) => {
            if let Some(k) = map.keys().find(|k| *k != "re" && *k != "im") {
                return Err(Error::Parse(format!("unknown weight field `{k}`")));
            }
            let part = |k: &str| map.get(k).map(parse_rational).transpose().map(Option::unwrap_or_default);
            Ok(GaussianRational::new(part("re")?, part("im")?))
        }
        other => Err(Error::Parse(format!("malformed weight `{other}`"))),
    }
}

fn big_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(k) => json!(k),
        None => json!(x.to_string()),
    }
}

/// The unit weights are written as strings, everything else as exact
/// `{"re": [num, den], "im": [num, den]}`.
pub fn weight_to_json(w: &GaussianRational) -> Value {
    if w.is_fourth_root_of_unity() {
        return json!(w.to_string());
    }
    let (rn, rd) = w.re_parts();
    let (im_n, im_d) = w.im_parts();
    json!({
        "re": [big_to_json(&rn), big_to_json(&rd)],
        "im": [big_to_json(&im_n), big_to_json(&im_d)],
    })
}

fn doc_from_str(text: &str) -> Result<GraphDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads a graph in exact mode.
pub fn parse_graph(text: &str) -> Result<ExperimentGraph> {
    let doc = doc_from_str(text)?;
    let base = infer_base(&doc)?;
    let n = doc.vertices;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let weight = match &e.w {
            Some(v) => weight_from_json(v)?,
            None => GaussianRational::from(1),
        };
        edges.push(HalfColoredEdge::new(unbase(e.u, base, n)?, unbase(e.v, base, n)?, e.cu, e.cv, weight));
    }
    Ok(ExperimentGraph::new(n, edges)?.with_index_base(base))
}

fn float_part(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number `{n}`"))),
        Value::Array(parts) if parts.len() == 2 => Ok(float_part(&parts[0])? / float_part(&parts[1])?),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad number `{s}`"))),
        other => Err(Error::Parse(format!("bad number `{other}`"))),
    }
}

fn float_weight(v: &Value) -> Result<Complex64> {
    let f = float_part;
    match v {
        Value::Object(map) => {
            let part = |k: &str| map.get(k).map(f).transpose().map(|x| x.unwrap_or(0.0));
            Ok(Complex64::new(part("re")?, part("im")?))
        }
        Value::Number(_) => Ok(Complex64::new(f(v)?, 0.0)),
        Value::String(_) => Ok(weight_from_json(v)?.to_complex64()),
        other => Err(Error::Parse(format!("malformed weight `{other}`"))),
    }
}

/// Reads a graph whose weights may be arbitrary floating-point complex
/// numbers. The returned graph carries weight 1 on every edge; the real
/// weights are returned alongside, indexed like `graph.edges()`.
pub fn parse_graph_approx(text: &str) -> Result<(ExperimentGraph, Vec<Complex64>)> {
    let doc = doc_from_str(text)?;
    let base = infer_base(&doc)?;
    let n = doc.vertices;
    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut weights = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let w = match &e.w {
            Some(v) => float_weight(v)?,
            None => Complex64::new(1.0, 0.0),
        };
        let (u, v) = (unbase(e.u, base, n)?, unbase(e.v, base, n)?);
        if w == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroWeight(u.min(v), u.max(v)));
        }
        edges.push(HalfColoredEdge::new(u, v, e.cu, e.cv, GaussianRational::from(1)));
        weights.push(((u.min(v), u.max(v)), w));
    }
    let g = ExperimentGraph::new(n, edges)?.with_index_base(base);
    weights.sort_by_key(|(pair, _)| *pair);
    Ok((g, weights.into_iter().map(|(_, w)| w).collect()))
}

pub fn graph_to_json(g: &ExperimentGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            json!({
                "u": g.vertex_label(e.u),
                "v": g.vertex_label(e.v),
                "cu": g.color_label(e.color_at_u),
                "cv": g.color_label(e.color_at_v),
                "w": weight_to_json(&e.weight),
            })
        })
        .collect();
    json!({
        "vertices": g.vertex_count(),
        "index_base": g.index_base(),
        "edges": edges,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn serialize_graph(g: &ExperimentGraph) -> String {
    let mut s = serde_json::to_string_pretty(&graph_to_json(g)).expect("json values serialize");
    s.push('\n');
    s
}

pub fn read_graph(path: &std::path::Path) -> Result<ExperimentGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

const PALETTE: [&str; 10] = ["red", "green", "blue", "orange", "purple", "brown", "cyan", "magenta", "gold", "gray"];

fn dot_color(label: usize) -> String {
    PALETTE.get(label).map(|s| s.to_string()).unwrap_or_else(|| format!("/set312/{}", label % 12 + 1))
}

/// Graphviz rendering. A bi-chromatic edge is drawn as two half segments,
/// the first half being the one at the lower-numbered endpoint.
pub fn export_dot(g: &ExperimentGraph) -> String {
    let mut out = String::from("graph experiment {\n  node [shape=circle];\n");
    for v in 0..g.vertex_count() {
        out.push_str(&format!("  {};\n", g.vertex_label(v)));
    }
    for e in g.edges() {
        let (cu, cv) = (dot_color(g.color_label(e.color_at_u)), dot_color(g.color_label(e.color_at_v)));
        let color = if e.is_monochromatic() { cu } else { format!("{cu};0.5:{cv}") };
        let mut attrs = format!("color=\"{color}\"");
        if !e.weight.is_one() {
            attrs.push_str(&format!(", label=\"{}\"", e.weight));
        }
        out.push_str(&format!("  {} -- {} [{attrs}];\n", g.vertex_label(e.u), g.vertex_label(e.v)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    const FIG1: &str = include_str!("../fixtures/ghz62_fig1.json");

    #[test]
    fn reads_fig1_fixture() {
        let g = parse_graph(FIG1).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.index_base(), 1);
        assert_eq!(g, fixtures::fig1());
    }

    #[test]
    fn empty_edge_list() {
        let g = parse_graph(r#"{"vertices": 2, "edges": []}"#).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert!(crate::matching::enumerate_perfect_matchings(&g).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_documents() {
        let zero = r#"{"vertices": 2, "edges": [{"u":0,"v":1,"cu":0,"cv":0,"w":{"re":[0,1],"im":[0,1]}}]}"#;
        let err = parse_graph(zero).unwrap_err();
        assert!(err.to_string().contains("weight must be nonzero"), "{err}");

        let dup = r#"{"vertices": 2, "edges": [{"u":0,"v":1,"cu":0,"cv":0},{"u":1,"v":0,"cu":1,"cv":1}]}"#;
        assert!(parse_graph(dup).unwrap_err().to_string().contains("multigraph rejected"));

        let bad = r#"{"vertices": 2, "edges": [{"u":0,"v":1,"cu":0,"cv":0,"w":{"re":[1,0]}}]}"#;
        assert!(matches!(parse_graph(bad), Err(Error::Parse(_))));
        let bad = r#"{"vertices": 2, "edges": [{"u":0,"v":1,"cu":0,"cv":0,"w":"1/x"}]}"#;
        assert!(matches!(parse_graph(bad), Err(Error::Parse(_))));
        let float = r#"{"vertices": 2, "edges": [{"u":0,"v":1,"cu":0,"cv":0,"w":{"re":[0.5,1]}}]}"#;
        assert!(matches!(parse_graph(float), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn weight_forms() {
        let w = weight_from_json(&json!({"re": [3, 6], "im": ["-1", 3]})).unwrap();
        assert_eq!(w, GaussianRational::from_fractions((1, 2), (-1, 3)).unwrap());
        assert_eq!(weight_from_json(&json!("-i")).unwrap(), -GaussianRational::i());
        assert_eq!(weight_to_json(&GaussianRational::i()), json!("i"));
        assert_eq!(weight_to_json(&w), json!({"re": [1, 2], "im": [-1, 3]}));
    }

    #[test]
    fn approx_reader_keeps_edge_order() {
        let text = r#"{"vertices": 4, "edges": [
            {"u":2,"v":3,"cu":0,"cv":0,"w":{"re":0.62500001,"im":0}},
            {"u":0,"v":1,"cu":0,"cv":0,"w":"i"}]}"#;
        let (g, w) = parse_graph_approx(text).unwrap();
        assert_eq!(g.edges()[0].pair(), (0, 1));
        assert_eq!(w[0], Complex64::new(0.0, 1.0));
        assert!((w[1].re - 0.62500001).abs() < 1e-12);
    }

    #[test]
    fn dot_export() {
        let g = fixtures::fig1();
        let dot = export_dot(&g);
        assert!(dot.contains("1 -- 2 [color=\"green\"];"));
        // {3,5}: green half at 3, red half at 5
        assert!(dot.contains("3 -- 5 [color=\"green;0.5:red\", label=\"i\"];"), "{dot}");
        assert_eq!(dot.matches(" -- ").count(), 9);

        let mono = export_dot(&fixtures::single_edge());
        assert!(mono.contains("0 -- 1 [color=\"red\"];"));

        let empty = ExperimentGraph::new(0, []).unwrap();
        assert_eq!(export_dot(&empty), "graph experiment {\n  node [shape=circle];\n}\n");
    }

    fn arb_graph() -> impl Strategy<Value = ExperimentGraph> {
        let weights = prop_oneof![
            Just(GaussianRational::from(1)),
            Just(GaussianRational::from(-1)),
            Just(GaussianRational::i()),
            (-9i64..9, 1i64..9, -9i64..9, 1i64..9)
                .prop_map(|(a, b, c, d)| GaussianRational::from_fractions((a, b), (c, d)).unwrap()),
        ];
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect();
        (proptest::collection::vec(proptest::option::of((0usize..5, 0usize..5, weights)), pairs.len()), 0usize..2)
            .prop_map(move |(slots, base)| {
                let edges = pairs.iter().zip(slots).filter_map(|(&(a, b), s)| {
                    let (cu, cv, w) = s?;
                    (!w.is_zero()).then(|| HalfColoredEdge::new(a, b, cu * 3, cv * 3, w))
                });
                ExperimentGraph::new(6, edges.collect::<Vec<_>>()).unwrap().with_index_base(base)
            })
    }

    proptest! {
        #[test]
        fn serialize_roundtrip(g in arb_graph()) {
            let text = serialize_graph(&g);
            prop_assert_eq!(parse_graph(&text).unwrap(), g);
        }
    }
}
