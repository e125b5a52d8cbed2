//! Text formats: the decimal edge list and graph6.
//!
//! Edge list: a header line `N M`, then `M` lines `u v` with `0 <= u < v < N`.
//! graph6: optional `>>graph6<<` header, the order as `N(n)`, then the upper
//! triangle column by column (`x01 x02 x12 x03 ...`) packed six bits per byte,
//! each byte offset by 63.

use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};
use crate::graph::Graph;
use crate::tree::Tree;

pub const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges: Vec<_> = g.edges().collect();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_usize(tok: &str, line: usize, column: usize, what: &str) -> Result<usize, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::new(
            line,
            column,
            format!("expected {what}, found {tok:?}"),
        ));
    }
    tok.parse()
        .map_err(|_| ParseError::new(line, column, format!("{what} out of range")))
}

/// Splits a line into `(column, token)` pairs (1-based columns).
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_ascii_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn two_numbers(line: &str, lineno: usize, what: [&str; 2]) -> Result<(usize, usize), ParseError> {
    let toks = tokens(line);
    if toks.len() != 2 {
        return Err(ParseError::new(
            lineno,
            1,
            format!("expected 2 fields, found {}", toks.len()),
        ));
    }
    let a = parse_usize(toks[0].1, lineno, toks[0].0, what[0])?;
    let b = parse_usize(toks[1].1, lineno, toks[1].0, what[1])?;
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let (n, m) = two_numbers(header, 1, ["vertex count", "edge count"])?;
    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if seen == m {
            return Err(ParseError::new(
                lineno,
                1,
                format!("more than the declared {m} edges"),
            ));
        }
        let (u, v) = two_numbers(line, lineno, ["vertex", "vertex"])?;
        if u == v {
            return Err(ParseError::new(
                lineno,
                1,
                GraphError::SelfLoop(u).to_string(),
            ));
        }
        if u > v {
            return Err(ParseError::new(
                lineno,
                1,
                format!("endpoints must be ascending, found {u} {v}"),
            ));
        }
        if v >= n {
            return Err(ParseError::new(
                lineno,
                1,
                GraphError::VertexOutOfRange {
                    vertex: v,
                    order: n,
                }
                .to_string(),
            ));
        }
        if !g.add_edge(u, v) {
            return Err(ParseError::new(
                lineno,
                1,
                GraphError::DuplicateEdge(u, v).to_string(),
            ));
        }
        seen += 1;
    }
    if seen != m {
        return Err(ParseError::new(
            text.lines().count().max(1),
            1,
            format!("declared {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let body = text.trim_end_matches(['\n', '\r']);
    let (body, offset) = match body.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (rest, GRAPH6_HEADER.len()),
        None => (body, 0),
    };
    let bytes = body.as_bytes();
    let err = |pos: usize, msg: &str| ParseError::new(1, offset + pos + 1, msg);
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(pos, &format!("byte {b} outside graph6 range 63..=126")));
        }
    }
    let sextet = |pos: usize| -> Result<usize, ParseError> {
        bytes
            .get(pos)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| err(pos, "truncated order field"))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(err(0, "empty graph6 string")),
        Some(&b) if b < 126 => ((b - 63) as usize, 1),
        Some(_) if bytes.get(1) == Some(&126) => {
            let mut n = 0;
            for k in 2..8 {
                n = n << 6 | sextet(k)?;
            }
            (n, 8)
        }
        Some(_) => {
            let mut n = 0;
            for k in 1..4 {
                n = n << 6 | sextet(k)?;
            }
            (n, 4)
        }
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(err(
            pos,
            &format!(
                "expected {need} adjacency bytes for order {n}, found {}",
                bytes.len() - pos
            ),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = (bytes[pos + k / 6] - 63) as usize;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    pos += need;
    if bits % 6 != 0 {
        let last = (bytes[pos - 1] - 63) as usize;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(pos - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

/// Edge list if the first non-blank character is a decimal digit, graph6
/// otherwise.
pub fn detect_format(text: &str) -> GraphFormat {
    match text.trim_start().chars().next() {
        Some(c) if c.is_ascii_digit() => GraphFormat::EdgeList,
        _ => GraphFormat::Graph6,
    }
}

pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph, ParseError> {
    match format.unwrap_or_else(|| detect_format(text)) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text.trim()),
    }
}

/// Trees are stored as edge lists; connectivity and acyclicity are checked.
pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let g = parse_edge_list(text)?;
    Tree::from_graph(g).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn tree_to_edge_list(t: &Tree) -> String {
    to_edge_list(t.graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(5);
        let text = to_edge_list(&g);
        assert_eq!(text, "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_positions() {
        let e = parse_edge_list("3 2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("duplicate"));
        assert!(parse_edge_list("3 1\n1 1\n")
            .unwrap_err()
            .message
            .contains("self-loop"));
        assert!(parse_edge_list("3 1\n2 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        let e = parse_edge_list("3 1\n0 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // Matches the petgraph / nauty reference for this 5-vertex graph.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete_bipartite(2, 2)), "C]");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(2)), "A_");
        assert_eq!(parse_graph6(">>graph6<<DQc\n").unwrap(), g);
    }

    #[test]
    fn graph6_large_order_escape() {
        let mut g = Graph::empty(100);
        g.add_edge(3, 99);
        g.add_edge(0, 1);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 99]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D").is_err());
        assert!(parse_graph6("D  ").is_err());
        // "A" (order 2) needs one data byte; 'A' + '`' sets a padding bit.
        assert!(parse_graph6("A`").is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("  4 0\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("C]"), GraphFormat::Graph6);
        assert_eq!(detect_format(">>graph6<<C]"), GraphFormat::Graph6);
        assert_eq!(
            parse_graph("C]\n", None).unwrap(),
            Graph::complete_bipartite(2, 2)
        );
    }

    #[test]
    fn tree_files_must_be_trees() {
        assert!(parse_tree("3 2\n0 1\n1 2\n").is_ok());
        assert!(parse_tree("4 2\n0 1\n2 3\n").is_err());
    }
}
