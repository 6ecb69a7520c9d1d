//! Text format for rotation systems.
//!
//! ```text
//! # comments start with '#'
//! 0: 0 2 4        vertex 0 with darts 0, 2, 4 in cyclic order
//! 1: 1            vertex 1 with a single dart
//! 2:              an isolated vertex
//! e 0: 0 1        edge 0 joins darts 0 and 1
//! e 1: 2 3 -      a trailing '-' marks a twisted edge ('+' is accepted too)
//! ```
//!
//! Vertex ids must be `0..n` and edge ids `0..m`, each declared exactly
//! once; dart ids must be `0..2m`. Lines may appear in any order.

use std::fmt::Write as _;

use super::map::CombinatorialMap;
use crate::error::{Error, Result};

fn parse_id(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::at_line(line, format!("expected {what} id, found '{tok}'")))
}

pub fn parse_map(text: &str) -> Result<CombinatorialMap> {
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges: Vec<Option<(usize, usize, bool)>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) =
            line.split_once(':').ok_or_else(|| Error::at_line(lineno, "missing ':' separator"))?;
        let head = head.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if let Some(eid) = head.strip_prefix('e') {
            let e = parse_id(eid.trim(), lineno, "edge")?;
            let (darts, twisted) = match toks.as_slice() {
                [a, b] => ((*a, *b), false),
                [a, b, "-"] => ((*a, *b), true),
                [a, b, "+"] => ((*a, *b), false),
                _ => return Err(Error::at_line(lineno, "edge line needs two darts and an optional sign")),
            };
            let a = parse_id(darts.0, lineno, "dart")?;
            let b = parse_id(darts.1, lineno, "dart")?;
            if edges.len() <= e {
                edges.resize(e + 1, None);
            }
            if edges[e].replace((a, b, twisted)).is_some() {
                return Err(Error::at_line(lineno, format!("edge {e} declared twice")));
            }
        } else {
            let v = parse_id(head, lineno, "vertex")?;
            let darts = toks.iter().map(|t| parse_id(t, lineno, "dart")).collect::<Result<Vec<_>>>()?;
            if rotations.len() <= v {
                rotations.resize(v + 1, None);
            }
            if rotations[v].replace(darts).is_some() {
                return Err(Error::at_line(lineno, format!("vertex {v} declared twice")));
            }
        }
    }
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| Error::malformed(format!("vertex {v} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(e, r)| r.ok_or_else(|| Error::malformed(format!("edge {e} is missing"))))
        .collect::<Result<Vec<_>>>()?;
    CombinatorialMap::new(rotations, &edges)
}

pub fn write_map(map: &CombinatorialMap) -> String {
    let mut out = String::new();
    for v in 0..map.num_vertices() {
        let _ = write!(out, "{v}:");
        for d in map.rotation(v) {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    for (e, (a, b, t)) in map.edge_table().into_iter().enumerate() {
        let _ = writeln!(out, "e {e}: {a} {b}{}", if t { " -" } else { "" });
    }
    out
}

/// Graphviz dump of the underlying graph.
pub fn write_dot(map: &CombinatorialMap) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..map.num_vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for e in 0..map.num_edges() {
        let (u, w) = map.edge_ends(e);
        let style = if map.is_twisted(e) { " [style=dashed]" } else { "" };
        let _ = writeln!(out, "  {u} -- {w}{style};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_line_numbers() {
        let err = parse_map("0: 0\n1: 1\ne 0 0 1\n").unwrap_err();
        assert_eq!(err, Error::Malformed { line: Some(3), msg: "missing ':' separator".into() });
        let err = parse_map("0: 0 x\n").unwrap_err();
        assert!(matches!(err, Error::Malformed { line: Some(1), .. }));
    }

    #[test]
    fn rejects_duplicates_and_dangling_darts() {
        assert!(parse_map("0: 0 0\n1: 1\ne 0: 0 1\n").is_err());
        assert!(parse_map("0: 0\n1:\ne 0: 0 1\n").is_err());
        assert!(parse_map("0: 0\n0: 1\ne 0: 0 1\n").is_err());
    }

    #[test]
    fn parses_twisted_loop() {
        let m = parse_map("0: 0 1\ne 0: 0 1 -\n").unwrap();
        assert_eq!(m.num_faces(), 1);
        assert_eq!(m.euler_genus(), 1);
        assert!(!m.is_orientable());
        assert_eq!(parse_map(&write_map(&m)).unwrap(), m);
    }
}
