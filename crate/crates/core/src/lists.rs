//! List assignments and colorings.
//!
//! Text format: one `v: c1 c2 c3` line per vertex; `#` starts a comment.
//! Vertices without a line get the default list `{1, 2, 3}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::embedding::{CombinatorialMap, VertexId};
use crate::error::{Error, Result};

pub type Color = u32;

/// A coloring assigns one color to every vertex.
pub type Coloring = Vec<Color>;

pub const DEFAULT_LIST: [Color; 3] = [1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// Lists are sorted and deduplicated; empty lists are rejected.
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self> {
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(Error::Precondition(format!("vertex {v} has an empty list")));
            }
        }
        Ok(ListAssignment { lists })
    }

    pub fn uniform(n: usize, colors: &[Color]) -> Self {
        ListAssignment::new(vec![colors.to_vec(); n]).expect("nonempty uniform list")
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: VertexId) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn set(&mut self, v: VertexId, mut list: Vec<Color>) {
        list.sort_unstable();
        list.dedup();
        assert!(!list.is_empty(), "empty list");
        self.lists[v] = list;
    }

    pub fn precolor(&mut self, v: VertexId, c: Color) {
        self.lists[v] = vec![c];
    }

    pub fn is_precolored(&self, v: VertexId) -> bool {
        self.lists[v].len() == 1
    }

    /// Vertices with singleton lists, in increasing order.
    pub fn precolored(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.is_precolored(v)).collect()
    }

    pub fn allows(&self, v: VertexId, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// Lists pulled back along a vertex projection (`origin[i]` is the
    /// parent vertex of `i`).
    pub fn pull_back(&self, origin: &[VertexId]) -> Self {
        ListAssignment { lists: origin.iter().map(|&v| self.lists[v].clone()).collect() }
    }

    /// Checks the solver pattern: exactly one color on `s`, three elsewhere.
    pub fn check_solver_sizes(&self, n: usize, s: &[VertexId]) -> Result<()> {
        if self.len() != n {
            return Err(Error::Precondition(format!("list assignment covers {} vertices, map has {n}", self.len())));
        }
        let mut in_s = vec![false; n];
        for &v in s {
            in_s[v] = true;
        }
        for v in 0..n {
            let want = if in_s[v] { 1 } else { 3 };
            if self.lists[v].len() != want {
                return Err(Error::Precondition(format!(
                    "vertex {v} has a list of size {}, expected {want}",
                    self.lists[v].len()
                )));
            }
        }
        Ok(())
    }

    /// Every color appearing in some list, sorted.
    pub fn palette(&self) -> Vec<Color> {
        let mut all: Vec<Color> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Parses a list file for a map with `n` vertices.
pub fn parse_lists(text: &str, n: usize) -> Result<ListAssignment> {
    let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(':').ok_or_else(|| Error::at_line(i + 1, "missing ':' separator"))?;
        let v: usize =
            head.trim().parse().map_err(|_| Error::at_line(i + 1, format!("bad vertex id '{}'", head.trim())))?;
        if v >= n {
            return Err(Error::at_line(i + 1, format!("vertex {v} out of range (map has {n})")));
        }
        let colors = rest
            .split_whitespace()
            .map(|t| t.parse::<Color>().map_err(|_| Error::at_line(i + 1, format!("bad color '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        if colors.is_empty() {
            return Err(Error::at_line(i + 1, "empty list"));
        }
        if lists[v].replace(colors).is_some() {
            return Err(Error::at_line(i + 1, format!("vertex {v} listed twice")));
        }
    }
    ListAssignment::new(lists.into_iter().map(|l| l.unwrap_or_else(|| DEFAULT_LIST.to_vec())).collect())
}

pub fn write_lists(lists: &ListAssignment) -> String {
    let mut out = String::new();
    for (v, l) in lists.lists().iter().enumerate() {
        let _ = write!(out, "{v}:");
        for c in l {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

/// Whether `coloring` is a proper coloring of the map respecting `lists`.
pub fn is_proper_coloring(map: &CombinatorialMap, lists: &ListAssignment, coloring: &[Color]) -> bool {
    coloring.len() == map.num_vertices()
        && (0..map.num_vertices()).all(|v| lists.allows(v, coloring[v]))
        && (0..map.num_edges()).all(|e| {
            let (u, w) = map.edge_ends(e);
            coloring[u] != coloring[w]
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_errors() {
        let l = parse_lists("# lists\n1: 4 5 6\n2: 7\n", 3).unwrap();
        assert_eq!(l.list(0), &[1, 2, 3]);
        assert_eq!(l.list(1), &[4, 5, 6]);
        assert_eq!(l.precolored(), vec![2]);
        assert!(l.check_solver_sizes(3, &[2]).is_ok());
        assert!(l.check_solver_sizes(3, &[]).is_err());
        assert!(matches!(parse_lists("5: 1 2 3\n", 3), Err(Error::Malformed { line: Some(1), .. })));
        assert!(parse_lists("0: 1\n0: 2\n", 3).is_err());
        assert_eq!(parse_lists(&write_lists(&l), 3).unwrap(), l);
    }
}
