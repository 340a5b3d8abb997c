//! JSON file formats.
//!
//! Graphs:
//!
//! ```json
//! {"vertices": [{"id": "a", "m": "1/1"}], "edges": [{"u": "a", "v": "b", "b": "1/2"}]}
//! ```
//!
//! Chains: `{"m": [...], "b": [...]}` with `b[r] = b̄(r, r+1)`.
//!
//! Rationals are read from `"p/q"` strings or JSON integers and always
//! written as `"p/q"`. Vertex ids may be strings or nonnegative integers.

use serde::{Deserialize, Serialize};

use crate::chains::BirthDeathChain;
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, VertexId, VertexRecord, WeightedGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Graph(WeightedGraph),
    Chain(BirthDeathChain),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawId {
    Text(String),
    Number(u64),
}

impl From<RawId> for VertexId {
    fn from(raw: RawId) -> Self {
        match raw {
            RawId::Text(s) => VertexId::new(s),
            RawId::Number(n) => VertexId::new(n.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: RawId,
    #[serde(with = "rational::serde_str")]
    m: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    u: RawId,
    v: RawId,
    #[serde(with = "rational::serde_str")]
    b: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<RawVertex>,
    #[serde(default)]
    edges: Vec<RawEdge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChain {
    #[serde(with = "rational::serde_str::vec")]
    m: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    b: Vec<Rational>,
}

#[derive(Serialize)]
struct OutVertex<'a> {
    id: &'a VertexId,
    #[serde(with = "rational::serde_str")]
    m: &'a Rational,
}

#[derive(Serialize)]
struct OutEdge<'a> {
    u: &'a VertexId,
    v: &'a VertexId,
    #[serde(with = "rational::serde_str")]
    b: &'a Rational,
}

#[derive(Serialize)]
struct OutGraph<'a> {
    vertices: Vec<OutVertex<'a>>,
    edges: Vec<OutEdge<'a>>,
}

fn located(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

/// Reads a graph or a chain, told apart by their top-level keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(located)?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Parse("line 1 column 1: expected a JSON object".into()))?;
    if object.contains_key("vertices") {
        parse_graph(text).map(Document::Graph)
    } else if object.contains_key("m") {
        parse_chain(text).map(Document::Chain)
    } else {
        Err(Error::Parse("line 1 column 1: expected a graph (\"vertices\") or a chain (\"m\")".into()))
    }
}

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(located)?;
    let vertices = raw.vertices.into_iter().map(|v| VertexRecord { id: v.id.into(), measure: v.m }).collect();
    let edges = raw.edges.into_iter().map(|e| EdgeRecord { u: e.u.into(), v: e.v.into(), weight: e.b }).collect();
    WeightedGraph::from_records(vertices, edges)
}

pub fn parse_chain(text: &str) -> Result<BirthDeathChain> {
    let raw: RawChain = serde_json::from_str(text).map_err(located)?;
    BirthDeathChain::new(raw.m, raw.b)
}

/// Canonical form: sorted vertices, edges once per pair with `u < v`.
pub fn graph_to_json(g: &WeightedGraph) -> String {
    let out = OutGraph {
        vertices: g.labels().iter().enumerate().map(|(i, id)| OutVertex { id, m: g.measure_at(i) }).collect(),
        edges: g.edges().map(|(i, j, b)| OutEdge { u: g.label(i), v: g.label(j), b }).collect(),
    };
    serde_json::to_string_pretty(&out).expect("graph serializes")
}

pub fn chain_to_json(chain: &BirthDeathChain) -> String {
    let out = RawChain { m: chain.measures().to_vec(), b: chain.weights().to_vec() };
    serde_json::to_string_pretty(&out).expect("chain serializes")
}

pub fn document_to_json(doc: &Document) -> String {
    match doc {
        Document::Graph(g) => graph_to_json(g),
        Document::Chain(c) => chain_to_json(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{make_figure1, make_unweighted_chain};
    use crate::rational::{int, q};

    #[test]
    fn graph_round_trip() {
        let g = make_figure1();
        let text = graph_to_json(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert_eq!(graph_to_json(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn integer_shorthand() {
        let g = parse_graph(r#"{"vertices":[{"id":0,"m":2},{"id":"1","m":"3/6"}],"edges":[{"u":0,"v":1,"b":"4"}]}"#)
            .unwrap();
        assert_eq!(g.measure("0").unwrap(), &int(2));
        assert_eq!(g.measure("1").unwrap(), &q(1, 2));
        assert!(graph_to_json(&g).contains("\"b\": \"4/1\""));
    }

    #[test]
    fn detects_format() {
        let chain = make_unweighted_chain(3);
        assert_eq!(parse_document(&chain_to_json(&chain)).unwrap(), Document::Chain(chain));
        let g = make_figure1();
        assert_eq!(parse_document(&graph_to_json(&g)).unwrap(), Document::Graph(g));
        assert_eq!(parse_document("{\"x\": 1}").unwrap_err().kind(), "Parse");
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_graph("{\n  \"vertices\": [\n    {\"id\": \"a\", \"m\": \"1/0\"}\n  ]\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_document("{\"vertices\": [").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        let err = parse_graph(r#"{"vertices":[{"id":"a","m":1,"extra":0}]}"#).unwrap_err();
        assert_eq!(err.kind(), "Parse");
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse_graph(r#"{"vertices":[{"id":"a","m":1},{"id":"b","m":1}],"edges":[]}"#).unwrap_err();
        assert_eq!(err.kind(), "DisconnectedGraph");
        let err = parse_chain(r#"{"m":[1,1],"b":[]}"#).unwrap_err();
        assert_eq!(err.kind(), "InvalidChain");
    }
}
