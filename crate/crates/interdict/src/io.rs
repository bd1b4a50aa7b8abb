//! Line-oriented text format and its JSON mirror.
//!
//! ```text
//! # comment
//! p graph <n> <m>
//! bipartite X=<id,...>
//! e <u> <v> <weight> <cost>
//! ```
//!
//! Flow networks use `p flow <n> <m> s=<id> t=<id>` headers and
//! `a <i> <j> <capacity> <cost>` arc lines. The writer emits edges sorted
//! ascending by endpoints, so `parse(write(g)) == g` bit-exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{FlowNetwork, GraphError, VertexId, WeightedGraph};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GraphError },
    #[error("missing `p` header line")]
    MissingHeader,
    #[error("{source}")]
    Graph {
        #[from]
        source: GraphError,
    },
    #[error("invalid JSON instance: {0}")]
    Json(#[from] serde_json::Error),
}

/// A parsed instance file: either an undirected graph or a flow network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Graph(WeightedGraph),
    Network(FlowNetwork),
}

impl Parsed {
    pub fn graph(self) -> Option<WeightedGraph> {
        match self {
            Parsed::Graph(g) => Some(g),
            Parsed::Network(_) => None,
        }
    }

    pub fn network(self) -> Option<FlowNetwork> {
        match self {
            Parsed::Network(n) => Some(n),
            Parsed::Graph(_) => None,
        }
    }
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, message: message.into() }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("cannot parse {what} from {tok:?}")))
}

/// Parses the text format. Comments (`#`) and blank lines are skipped.
pub fn parse_text(input: &str) -> Result<Parsed, ParseError> {
    enum Header {
        Graph { n: usize, m: usize },
        Flow { n: usize, m: usize, s: VertexId, t: VertexId },
    }
    let mut header: Option<Header> = None;
    let mut left: Option<BTreeSet<VertexId>> = None;
    let mut edges: Vec<(VertexId, VertexId, u64, u64)> = Vec::new();
    let mut arcs: Vec<(VertexId, VertexId, u64, u64)> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(malformed(line_no, "duplicate `p` header"));
                }
                match toks.get(1) {
                    Some(&"graph") => {
                        if toks.len() != 4 {
                            return Err(malformed(line_no, "expected `p graph <n> <m>`"));
                        }
                        let n = parse_num(toks[2], line_no, "vertex count")?;
                        let m = parse_num(toks[3], line_no, "edge count")?;
                        header = Some(Header::Graph { n, m });
                    }
                    Some(&"flow") => {
                        if toks.len() != 6 {
                            return Err(malformed(
                                line_no,
                                "expected `p flow <n> <m> s=<id> t=<id>`",
                            ));
                        }
                        let n = parse_num(toks[2], line_no, "vertex count")?;
                        let m = parse_num(toks[3], line_no, "arc count")?;
                        let s = toks[4]
                            .strip_prefix("s=")
                            .ok_or_else(|| malformed(line_no, "expected s=<id>"))?;
                        let t = toks[5]
                            .strip_prefix("t=")
                            .ok_or_else(|| malformed(line_no, "expected t=<id>"))?;
                        header = Some(Header::Flow {
                            n,
                            m,
                            s: parse_num(s, line_no, "source id")?,
                            t: parse_num(t, line_no, "sink id")?,
                        });
                    }
                    _ => return Err(malformed(line_no, "header must be `p graph` or `p flow`")),
                }
            }
            "bipartite" => {
                if toks.len() != 2 {
                    return Err(malformed(line_no, "expected `bipartite X=<id,...>`"));
                }
                let spec = toks[1]
                    .strip_prefix("X=")
                    .ok_or_else(|| malformed(line_no, "expected X=<id,...>"))?;
                let mut side = BTreeSet::new();
                if !spec.is_empty() {
                    for part in spec.split(',') {
                        side.insert(parse_num(part, line_no, "vertex id")?);
                    }
                }
                left = Some(side);
            }
            "e" => {
                if toks.len() != 5 {
                    return Err(malformed(line_no, "expected `e <u> <v> <weight> <cost>`"));
                }
                let u = parse_num(toks[1], line_no, "endpoint")?;
                let v = parse_num(toks[2], line_no, "endpoint")?;
                let w = parse_num(toks[3], line_no, "weight")?;
                let c = parse_num(toks[4], line_no, "cost")?;
                // Surface invariant violations with the offending line.
                if u == v {
                    return Err(ParseError::Invalid { line: line_no, source: GraphError::SelfLoop(u) });
                }
                if c == 0 {
                    return Err(ParseError::Invalid {
                        line: line_no,
                        source: GraphError::ZeroCost(u.min(v), u.max(v)),
                    });
                }
                edges.push((u, v, w, c));
            }
            "a" => {
                if toks.len() != 5 {
                    return Err(malformed(line_no, "expected `a <i> <j> <capacity> <cost>`"));
                }
                let i = parse_num(toks[1], line_no, "tail")?;
                let j = parse_num(toks[2], line_no, "head")?;
                let cap = parse_num(toks[3], line_no, "capacity")?;
                let c = parse_num(toks[4], line_no, "cost")?;
                if i == j {
                    return Err(ParseError::Invalid { line: line_no, source: GraphError::SelfLoop(i) });
                }
                arcs.push((i, j, cap, c));
            }
            other => return Err(malformed(line_no, format!("unknown record {other:?}"))),
        }
    }

    match header.ok_or(ParseError::MissingHeader)? {
        Header::Graph { n, m } => {
            if !arcs.is_empty() {
                return Err(malformed(0, "arc lines in a `p graph` file"));
            }
            if edges.len() != m {
                return Err(malformed(
                    0,
                    format!("header declares {m} edges but {} were given", edges.len()),
                ));
            }
            Ok(Parsed::Graph(WeightedGraph::new(n, edges, left)?))
        }
        Header::Flow { n, m, s, t } => {
            if !edges.is_empty() || left.is_some() {
                return Err(malformed(0, "edge or bipartite lines in a `p flow` file"));
            }
            if arcs.len() != m {
                return Err(malformed(
                    0,
                    format!("header declares {m} arcs but {} were given", arcs.len()),
                ));
            }
            Ok(Parsed::Network(FlowNetwork::new(n, arcs, s, t)?))
        }
    }
}

/// Canonical text form of a graph.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p graph {} {}", g.vertex_count(), g.edge_count()).unwrap();
    if let Some(b) = g.bipartition() {
        let ids: Vec<String> = b.left.iter().map(|v| v.to_string()).collect();
        writeln!(out, "bipartite X={}", ids.join(",")).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "e {} {} {} {}", e.u, e.v, e.weight, e.cost).unwrap();
    }
    out
}

/// Canonical text form of a flow network.
pub fn write_network(net: &FlowNetwork) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "p flow {} {} s={} t={}",
        net.vertex_count(),
        net.arc_count(),
        net.source(),
        net.sink()
    )
    .unwrap();
    for a in net.arcs() {
        writeln!(out, "a {} {} {} {}", a.from, a.to, a.capacity, a.cost).unwrap();
    }
    out
}

pub fn write_parsed(p: &Parsed) -> String {
    match p {
        Parsed::Graph(g) => write_graph(g),
        Parsed::Network(n) => write_network(n),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    u: VertexId,
    v: VertexId,
    weight: u64,
    cost: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonArc {
    from: VertexId,
    to: VertexId,
    capacity: u64,
    cost: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum JsonInstance {
    Graph {
        n: usize,
        edges: Vec<JsonEdge>,
        #[serde(rename = "bipartiteX", skip_serializing_if = "Option::is_none")]
        bipartite_x: Option<Vec<VertexId>>,
    },
    Flow {
        n: usize,
        arcs: Vec<JsonArc>,
        s: VertexId,
        t: VertexId,
    },
}

/// JSON mirror of the text schema.
pub fn write_json(p: &Parsed) -> String {
    let j = match p {
        Parsed::Graph(g) => JsonInstance::Graph {
            n: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| JsonEdge { u: e.u, v: e.v, weight: e.weight, cost: e.cost })
                .collect(),
            bipartite_x: g.bipartition().map(|b| b.left.iter().copied().collect()),
        },
        Parsed::Network(net) => JsonInstance::Flow {
            n: net.vertex_count(),
            arcs: net
                .arcs()
                .iter()
                .map(|a| JsonArc { from: a.from, to: a.to, capacity: a.capacity, cost: a.cost })
                .collect(),
            s: net.source(),
            t: net.sink(),
        },
    };
    let mut s = serde_json::to_string_pretty(&j).expect("instance serializes");
    s.push('\n');
    s
}

pub fn parse_json(input: &str) -> Result<Parsed, ParseError> {
    let j: JsonInstance = serde_json::from_str(input)?;
    match j {
        JsonInstance::Graph { n, edges, bipartite_x } => Ok(Parsed::Graph(WeightedGraph::new(
            n,
            edges.into_iter().map(|e| (e.u, e.v, e.weight, e.cost)).collect(),
            bipartite_x.map(|v| v.into_iter().collect()),
        )?)),
        JsonInstance::Flow { n, arcs, s, t } => Ok(Parsed::Network(FlowNetwork::new(
            n,
            arcs.into_iter().map(|a| (a.from, a.to, a.capacity, a.cost)).collect(),
            s,
            t,
        )?)),
    }
}

/// Parses either format: JSON when the first non-space byte is `{`.
pub fn parse_any(input: &str) -> Result<Parsed, ParseError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_unit_path() {
        let p = parse_text("p graph 3 2\ne 1 2 1 1\ne 2 3 1 1\n").unwrap();
        let g = p.graph().unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_unit_weights() && g.has_unit_costs());
    }

    #[test]
    fn parses_two_arc_path_network() {
        let p = parse_text("p flow 3 2 s=1 t=3\na 1 2 1 0\na 2 3 1 0\n").unwrap();
        let net = p.network().unwrap();
        assert_eq!(net.arc_count(), 2);
        assert_eq!((net.source(), net.sink()), (1, 3));
    }

    #[test]
    fn self_loop_is_rejected_with_line() {
        let err = parse_text("p graph 2 1\ne 1 1 0 1\n").unwrap_err();
        match err {
            ParseError::Invalid { line, source } => {
                assert_eq!(line, 2);
                assert_eq!(source, GraphError::SelfLoop(1));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn malformed_line_reports_position() {
        let err = parse_text("p graph 2 1\ne 1 2 1\n").unwrap_err();
        match err {
            ParseError::Malformed { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let err = parse_text("p graph 2 2\ne 1 2 1 1\ne 2 1 1 1\n").unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn zero_cost_edge_is_rejected() {
        assert!(parse_text("p graph 2 1\ne 1 2 1 0\n").is_err());
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let p = parse_text("# a path\n\np graph 2 1\n# edge below\ne 1 2 0 1\n").unwrap();
        assert!(p.graph().is_some());
    }

    #[test]
    fn text_round_trip_is_exact() {
        let g = WeightedGraph::new(
            4,
            vec![(2, 4, 3, 2), (1, 2, 0, 1), (3, 4, 1, 5)],
            Some([1, 4].into_iter().collect()),
        )
        .unwrap();
        let text = write_graph(&g);
        assert_eq!(parse_text(&text).unwrap(), Parsed::Graph(g));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p = parse_text("p flow 3 2 s=1 t=3\na 1 2 4 0\na 2 3 2 7\n").unwrap();
        assert_eq!(parse_json(&write_json(&p)).unwrap(), p);
    }
}
