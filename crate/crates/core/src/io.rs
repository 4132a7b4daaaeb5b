//! Plain-text graph format and DOT export.
//!
//! The format is a header line `n m` followed by `m` lines `u v` with
//! 0-based vertices. Anything after `#` on a line is ignored, as are blank
//! lines. Edge ids follow file order.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, MultiGraph};

pub fn parse_graph(input: &str) -> Result<MultiGraph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let (n, m) = pair(hline, header)?;
    let mut g = MultiGraph::new(n);
    let mut count = 0;
    for (line, body) in lines {
        let (u, v) = pair(line, body)?;
        if count == m {
            return Err(Error::Parse { line, msg: format!("more than the {m} edges declared") });
        }
        g.add_edge(u, v).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: input.lines().count().max(1),
            msg: format!("header declares {m} edges, found {count}"),
        });
    }
    Ok(g)
}

fn pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
        tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad {what} {tok:?}") })
    };
    let a = next("first number")?;
    let b = next("second number")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse { line, msg: format!("unexpected token {extra:?}") });
    }
    Ok((a, b))
}

/// Writes `g` in the text format, edges in id order.
pub fn write_graph(g: &MultiGraph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.u, e.v);
    }
    s
}

/// Hex SHA-256 of the text form.
pub fn fingerprint(g: &MultiGraph) -> String {
    Sha256::digest(write_graph(g).as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// DOT source; edges in `highlight` are drawn bold, the rest dashed grey.
pub fn to_dot(g: &MultiGraph, name: &str, highlight: Option<&EdgeSubset>) -> String {
    let mut s = format!("graph \"{}\" {{\n  node [shape=circle];\n", name.replace('"', "'"));
    for v in 0..g.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for e in g.edges() {
        let style = match highlight {
            Some(h) if h.contains(e.id) => " [penwidth=2.5]",
            Some(_) => " [style=dashed, color=grey]",
            None => "",
        };
        let _ = writeln!(s, "  {} -- {}{style}; // e{}", e.u, e.v, e.id);
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_c4() {
        let g = parse_graph("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(write_graph(&g), "4 4\n0 1\n1 2\n2 3\n3 0\n");
    }

    #[test]
    fn header_mismatch_is_an_error() {
        assert!(matches!(parse_graph("3 3\n0 1\n1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2 1\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn duplicate_lines_are_parallel_edges() {
        let g = parse_graph("# two copies\n2 2\n0 1\n0 1 # again\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simple());
    }
}
