//! Graph file formats.
//!
//! Edge lists are plain text: a header line `n m` followed by `m` lines
//! `u v` with 0-based vertex indices. Vertex `i` becomes `VertexId(i)` and
//! the `j`-th edge `EdgeId(j)`. Blank lines and `#` comments are skipped.
//!
//! The JSON format lists ids explicitly:
//! `{"vertices": [0, 1], "edges": [[0, 0, 1]]}` where each edge is
//! `[id, u, v]`.

use thiserror::Error;

use crate::graph::{GraphError, MultiGraph};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
}

fn at(line: usize, msg: impl Into<String>) -> IoError {
    IoError::EdgeList {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u32>, IoError> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| at(line, format!("`{t}` is not a non-negative integer"))))
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<MultiGraph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| at(1, "missing `n m` header"))?;
    let (n, m) = match numbers(hl, header)?[..] {
        [n, m] => (n, m as usize),
        _ => return Err(at(hl, "header must be `n m`")),
    };
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let (u, v) = match numbers(line, l)?[..] {
            [u, v] => (u, v),
            _ => return Err(at(line, "edge line must be `u v`")),
        };
        if u >= n || v >= n {
            return Err(at(line, format!("vertex {} out of range 0..{n}", u.max(v))));
        }
        if u == v {
            return Err(at(line, format!("loop at vertex {u}")));
        }
        if edges.len() == m {
            return Err(at(line, format!("more than {m} edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(at(0, format!("header promises {m} edges, found {}", edges.len())));
    }
    MultiGraph::from_edges(n, &edges).map_err(|e: GraphError| at(0, e.to_string()))
}

/// Writes an edge list. Ids are renumbered densely in increasing order.
pub fn write_edge_list(g: &MultiGraph) -> String {
    let index: std::collections::BTreeMap<_, _> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (_, u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", index[&u], index[&v]));
    }
    out
}

pub fn parse_json(text: &str) -> Result<MultiGraph, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_json(g: &MultiGraph) -> String {
    serde_json::to_string_pretty(g).expect("graphs always serialize")
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_graph(text: &str) -> Result<MultiGraph, IoError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generators, EdgeId, VertexId};

    #[test]
    fn edge_list_round_trip() {
        let g = generators::petersen();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        let k = parse_edge_list("# K3\n3 3\n0 1\n1 2 # last two\n2 0\n").unwrap();
        assert_eq!(k.edge_count(), 3);
        assert_eq!(k.endpoints(EdgeId(2)), Some((VertexId(2), VertexId(0))));
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        let err = |t: &str| parse_edge_list(t).unwrap_err().to_string();
        assert_eq!(err("2 1\n0 0\n"), "line 2: loop at vertex 0");
        assert_eq!(err("2 1\n0 5\n"), "line 2: vertex 5 out of range 0..2");
        assert_eq!(err("2 1\n0 x\n"), "line 2: `x` is not a non-negative integer");
        assert!(err("3 2\n0 1\n").contains("promises 2 edges"));
        assert!(err("").contains("header"));
    }

    #[test]
    fn json_keeps_ids() {
        let mut g = MultiGraph::new();
        for v in [3, 7] {
            g.add_vertex(VertexId(v)).unwrap();
        }
        g.add_edge(EdgeId(9), VertexId(3), VertexId(7)).unwrap();
        g.add_edge(EdgeId(2), VertexId(7), VertexId(3)).unwrap();
        let text = write_json(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(parse_json(r#"{"vertices":[0],"edges":[[0,0,0]]}"#).is_err());
    }
}
