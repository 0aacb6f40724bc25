//! Graph files and command-line value parsing.
//!
//! Vertices are 1-based in every input format.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use mskkt::graph::{Graph, VertexSet};
use mskkt::rational::{parse_rational, Rational};
use mskkt::simplex::{SimplexPoint, VertexFamily};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// Guess from the first meaningful line.
    Auto,
    Dimacs,
    Edgelist,
    Json,
}

impl GraphFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphFormat::Auto => "auto",
            GraphFormat::Dimacs => "dimacs",
            GraphFormat::Edgelist => "edgelist",
            GraphFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn detect_format(text: &str) -> GraphFormat {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('{') => GraphFormat::Json,
        Some(l) if l.starts_with("p ") || l.starts_with("c ") || l == "c" || l.starts_with("e ") => {
            GraphFormat::Dimacs
        }
        _ => GraphFormat::Edgelist,
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> std::result::Result<Graph, ParseError> {
    match format {
        GraphFormat::Auto => parse_graph(text, detect_format(text)),
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::Edgelist => parse_edgelist(text),
        GraphFormat::Json => parse_json(text),
    }
}

/// Reads a graph file, returning the graph and the raw bytes.
pub fn read_graph(path: &Path, format: GraphFormat) -> Result<(Graph, Vec<u8>, GraphFormat)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))?;
    let resolved = match format {
        GraphFormat::Auto => detect_format(text),
        f => f,
    };
    let g = parse_graph(text, resolved).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((g, bytes, resolved))
}

fn vertex(token: &str, line: usize) -> std::result::Result<usize, ParseError> {
    match token.parse::<usize>() {
        Ok(0) => Err(ParseError::at(line, "vertex labels start at 1")),
        Ok(v) => Ok(v),
        Err(_) => Err(ParseError::at(line, format!("expected a vertex label, found {token:?}"))),
    }
}

fn add_edge(
    edges: &mut BTreeSet<(usize, usize)>,
    a: usize,
    b: usize,
    line: usize,
) -> std::result::Result<(), ParseError> {
    if a == b {
        return Err(ParseError::at(line, format!("self-loop at vertex {a}: loops not allowed")));
    }
    edges.insert((a.min(b), a.max(b)));
    Ok(())
}

fn build(n: usize, edges: &BTreeSet<(usize, usize)>) -> std::result::Result<Graph, ParseError> {
    Graph::from_labeled_edges(n, &edges.iter().copied().collect::<Vec<_>>())
        .map_err(|e| ParseError::whole(e.to_string()))
}

fn parse_dimacs(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = BTreeSet::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(ParseError::at(line, "duplicate problem line"));
                }
                if tokens.len() != 4 || !matches!(tokens[1], "edge" | "col") {
                    return Err(ParseError::at(line, "expected \"p edge <n> <m>\""));
                }
                let count = tokens[2]
                    .parse::<usize>()
                    .map_err(|_| ParseError::at(line, format!("bad vertex count {:?}", tokens[2])))?;
                tokens[3]
                    .parse::<usize>()
                    .map_err(|_| ParseError::at(line, format!("bad edge count {:?}", tokens[3])))?;
                n = Some(count);
            }
            Some("e") => {
                let Some(count) = n else {
                    return Err(ParseError::at(line, "edge before the problem line"));
                };
                if tokens.len() != 3 {
                    return Err(ParseError::at(line, "expected \"e <i> <j>\""));
                }
                let (a, b) = (vertex(tokens[1], line)?, vertex(tokens[2], line)?);
                if a > count || b > count {
                    return Err(ParseError::at(line, format!("vertex out of range 1..={count}")));
                }
                add_edge(&mut edges, a, b, line)?;
            }
            Some(other) => return Err(ParseError::at(line, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| ParseError::whole("missing \"p edge <n> <m>\" line"))?;
    build(n, &edges)
}

fn parse_edgelist(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut declared = None;
    let mut edges = BTreeSet::new();
    let mut seen_edge = false;
    let mut max_label = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "n" {
            if seen_edge || declared.is_some() || tokens.len() != 2 {
                return Err(ParseError::at(line, "\"n <count>\" must be the first line"));
            }
            let count = tokens[1]
                .parse::<usize>()
                .map_err(|_| ParseError::at(line, format!("bad vertex count {:?}", tokens[1])))?;
            declared = Some(count);
            continue;
        }
        if tokens.len() != 2 {
            return Err(ParseError::at(line, "expected \"<i> <j>\""));
        }
        let (a, b) = (vertex(tokens[0], line)?, vertex(tokens[1], line)?);
        if let Some(count) = declared {
            if a > count || b > count {
                return Err(ParseError::at(line, format!("vertex out of range 1..={count}")));
            }
        }
        add_edge(&mut edges, a, b, line)?;
        seen_edge = true;
        max_label = max_label.max(a).max(b);
    }
    let n = declared.unwrap_or(max_label);
    if n == 0 {
        return Err(ParseError::whole("empty graph: no vertices"));
    }
    build(n, &edges)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

fn parse_json(text: &str) -> std::result::Result<Graph, ParseError> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| ParseError::at(e.line(), e.to_string()))?;
    if raw.n == 0 {
        return Err(ParseError::whole("empty graph: no vertices"));
    }
    let mut edges = BTreeSet::new();
    for (k, [a, b]) in raw.edges.iter().copied().enumerate() {
        if a == 0 || b == 0 || a > raw.n || b > raw.n {
            return Err(ParseError::whole(format!("edge {}: vertex out of range 1..={}", k + 1, raw.n)));
        }
        if a == b {
            return Err(ParseError::whole(format!("edge {}: self-loop at vertex {a}: loops not allowed", k + 1)));
        }
        edges.insert((a.min(b), a.max(b)));
    }
    build(raw.n, &edges)
}

/// A rational given as `a/b` or an integer.
pub fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("expected a rational \"a/b\" or an integer, found {s:?}"))
}

pub fn parse_point(text: &str, n: usize) -> Result<SimplexPoint> {
    let coords = text
        .split(',')
        .map(|t| rational_arg(t).map_err(CliError::Input))
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != n {
        return Err(CliError::Input(format!(
            "point has {} coordinates, graph has {n} vertices",
            coords.len()
        )));
    }
    Ok(SimplexPoint::new(coords)?)
}

/// Parses `"1,2|3"` into classes `{1,2}` and `{3}`.
pub fn parse_family(text: &str, n: usize) -> Result<VertexFamily> {
    let bad = |msg: String| CliError::Input(format!("family {text:?}: {msg}"));
    let mut classes = Vec::new();
    for part in text.split('|') {
        let mut labels = Vec::new();
        for t in part.split(',') {
            let t = t.trim();
            let v: usize = t.parse().map_err(|_| bad(format!("bad vertex {t:?}")))?;
            if v == 0 || v > n {
                return Err(bad(format!("vertex {v} out of range 1..={n}")));
            }
            labels.push(v);
        }
        classes.push(VertexSet::from_labels(&labels));
    }
    VertexFamily::new(classes).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cherry() -> Graph {
        Graph::from_labeled_edges(3, &[(1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn edgelist_cherry() {
        assert_eq!(parse_graph("1 3\n2 3\n", GraphFormat::Edgelist).unwrap(), cherry());
        assert_eq!(parse_graph("n 3\n1 3\n2 3\n3 1\n", GraphFormat::Edgelist).unwrap(), cherry());
        let g = parse_graph("n 5\n1 2\n", GraphFormat::Edgelist).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 1));
    }

    #[test]
    fn dimacs_cherry() {
        let text = "c cherry\np edge 3 2\ne 1 3\ne 2 3\n";
        assert_eq!(parse_graph(text, GraphFormat::Dimacs).unwrap(), cherry());
        assert_eq!(parse_graph(text, GraphFormat::Auto).unwrap(), cherry());
    }

    #[test]
    fn json_cherry() {
        let text = r#"{"n": 3, "edges": [[1, 3], [2, 3], [3, 2]]}"#;
        assert_eq!(detect_format(text), GraphFormat::Json);
        assert_eq!(parse_graph(text, GraphFormat::Json).unwrap(), cherry());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_graph("p edge 3 1\ne 1 1\n", GraphFormat::Dimacs).unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(e.to_string().contains("loops not allowed"));
        let e = parse_graph("1 2\n2 x\n", GraphFormat::Edgelist).unwrap_err();
        assert_eq!(e.line, Some(2));
        let e = parse_graph("e 1 2\n", GraphFormat::Dimacs).unwrap_err();
        assert_eq!(e.line, Some(1));
        let e = parse_graph("p edge 2 1\ne 1 3\n", GraphFormat::Dimacs).unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(parse_graph("c only\n", GraphFormat::Dimacs).is_err());
        assert!(parse_graph(r#"{"n": 2, "edges": [[1, 1]]}"#, GraphFormat::Json)
            .unwrap_err()
            .to_string()
            .contains("loops not allowed"));
        assert!(parse_graph("1 2\nn 4\n", GraphFormat::Edgelist).is_err());
    }

    #[test]
    fn points_and_families() {
        let x = parse_point("1/4, 1/4 ,1/2", 3).unwrap();
        assert_eq!(x, SimplexPoint::new(vec![Rational::new(1.into(), 4.into()), Rational::new(1.into(), 4.into()), Rational::new(1.into(), 2.into())]).unwrap());
        assert!(parse_point("1/2,1/2,1/2", 3).is_err());
        assert!(parse_point("0.5,0.5,0", 3).is_err());
        assert!(parse_point("1/2,1/2", 3).is_err());

        let f = parse_family("1,2|3", 3).unwrap();
        assert_eq!(f.k(), 2);
        assert_eq!(f.classes()[0], VertexSet::from_labels(&[1, 2]));
        assert!(parse_family("1,2|2", 3).is_err());
        assert!(parse_family("1,|3", 3).is_err());
        assert!(parse_family("1,4", 3).is_err());
    }
}
