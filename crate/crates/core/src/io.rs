//! Text formats shared by the library and the CLI.
//!
//! Graphs use a DIMACS-like format: a header `p edge <n> <m>`, then one
//! `e <u> <v>` line per edge with 1-indexed endpoints. Lines starting with `c`
//! are comments. The writer emits edges in canonical sorted order.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    match tok.map(str::parse::<usize>) {
        Some(Ok(x)) => Ok(x),
        _ => parse_err(line, format!("expected {what}")),
    }
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return parse_err(line, "duplicate header");
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    _ => return parse_err(line, "expected `p edge <n> <m>`"),
                }
                let n = parse_num(toks.next(), line, "vertex count")?;
                let m = parse_num(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, _)) = header else {
                    return parse_err(line, "edge before header");
                };
                let u = parse_num(toks.next(), line, "endpoint")?;
                let v = parse_num(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return parse_err(line, format!("endpoint out of range 1..={n}"));
                }
                if u == v {
                    return parse_err(line, "self-loop");
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return parse_err(line, format!("unknown line type `{tok}`")),
        }
    }
    let Some((n, m)) = header else {
        return parse_err(0, "missing `p edge` header");
    };
    if edges.len() != m {
        return parse_err(0, format!("header declares {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses a whitespace/comma separated list of 1-indexed vertex ids into 0-indexed ids.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            match tok.parse::<usize>() {
                Ok(v) if v >= 1 => out.push(v - 1),
                _ => return parse_err(idx + 1, format!("bad vertex id `{tok}`")),
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_header() {
        let g = parse_graph("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(write_graph(&g), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("p edge 2 1\nx\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_vertex_list("3 1, 2\n# note\n2").unwrap(), vec![0, 1, 2]);
        assert!(parse_vertex_list("0").is_err());
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
            let g = Graph::from_edges(n, edges).unwrap();
            let back = parse_graph(&write_graph(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
