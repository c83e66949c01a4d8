use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GraphError, SimpleGraph};

/// JSON form: `{"vertex_count": n, "labels": [..] | null, "edges": [[u,v],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertex_count: usize,
    pub labels: Option<Vec<String>>,
    pub edges: Vec<[u32; 2]>,
}

impl SimpleGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertex_count: self.vertex_count(),
            labels: self.labels.clone(),
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<SimpleGraph, GraphError> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0] as usize, e[1] as usize)).collect();
        let g = SimpleGraph::from_edges(json.vertex_count, &edges)?;
        match &json.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    /// Graphviz `graph` block; vertices listed in index order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
        for v in 0..self.vertex_count() {
            match &self.labels {
                Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\"")).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One `u v` line per edge, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses `u v` lines; blank lines and `#` comments are skipped. Without
    /// an explicit vertex count the largest endpoint decides it.
    pub fn from_edge_list(text: &str, vertex_count: Option<usize>) -> Result<SimpleGraph, GraphError> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| GraphError::Parse(format!("line {}: {line:?}", lineno + 1)))?;
            match nums.as_slice() {
                [u, v] => edges.push((*u, *v)),
                _ => return Err(GraphError::Parse(format!("line {}: expected two vertices", lineno + 1))),
            }
        }
        let n = vertex_count.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        SimpleGraph::from_edges(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use crate::graphcore::{build_named, NamedGraph};

    use super::*;

    #[test]
    fn formats() {
        let c4 = build_named(&NamedGraph::Cycle(4)).unwrap();
        assert_eq!(c4.to_edge_list(), "0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(SimpleGraph::from_edge_list(&c4.to_edge_list(), None).unwrap(), c4);
        assert_eq!(
            serde_json::to_string(&c4.to_json()).unwrap(),
            r#"{"vertex_count":4,"labels":null,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#
        );
        let dot = c4.to_dot("C4");
        assert!(dot.starts_with("graph \"C4\" {\n  0;\n"));
        assert!(dot.contains("  2 -- 3;\n"));
        let q = build_named(&NamedGraph::Hypercube(2)).unwrap();
        assert_eq!(SimpleGraph::from_json(&q.to_json()).unwrap(), q);
        assert!(SimpleGraph::from_edge_list("0 1 2\n", None).is_err());
        assert_eq!(
            SimpleGraph::from_edge_list("# c\n0 1\n", Some(3))
                .unwrap()
                .vertex_count(),
            3
        );
    }
}
