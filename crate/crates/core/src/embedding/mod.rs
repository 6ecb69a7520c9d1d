//! Combinatorial maps: graphs 2-cell embedded on closed surfaces.

mod derived;
mod format;
mod map;
mod submap;

use std::collections::VecDeque;

pub use derived::{DualMap, RadialCorrespondence, RadialVertex};
pub use format::{parse_map, write_dot, write_map};
pub use map::{CombinatorialMap, Component, DartId, EdgeId, Face, FaceId, Step, VertexId};
pub use submap::SubMap;

/// Girth of an acyclic graph.
pub const INFINITE_GIRTH: usize = usize::MAX;

impl CombinatorialMap {
    /// Length of a shortest cycle of the underlying graph, counting loops as
    /// 1-cycles and parallel edges as 2-cycles; [`INFINITE_GIRTH`] for forests.
    pub fn girth(&self) -> usize {
        self.girth_below(usize::MAX)
    }

    /// Like [`girth`](Self::girth) but stops searching once cycles of length
    /// `limit` or more are the only ones left; returns `INFINITE_GIRTH` if
    /// no cycle shorter than `limit` exists.
    pub fn girth_below(&self, limit: usize) -> usize {
        let mut best = INFINITE_GIRTH;
        for e in 0..self.num_edges() {
            let (u, w) = self.edge_ends(e);
            if u == w {
                return 1;
            }
        }
        let n = self.num_vertices();
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        let mut touched = Vec::new();
        for root in 0..n {
            dist[root] = 0;
            touched.push(root);
            let mut queue = VecDeque::from([root]);
            'bfs: while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best.min(limit) {
                    break;
                }
                for &d in self.rotation(u) {
                    let e = self.edge_of(d);
                    if e == via[u] {
                        continue;
                    }
                    let w = self.head(d);
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = e;
                        touched.push(w);
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                        if best <= 2 {
                            break 'bfs;
                        }
                    }
                }
            }
            for v in touched.drain(..) {
                dist[v] = usize::MAX;
                via[v] = usize::MAX;
            }
        }
        if best >= limit {
            INFINITE_GIRTH
        } else {
            best
        }
    }

    /// Whether the graph has girth at least `k`; linear in the size of the
    /// graph times a factor depending on degrees for small `k`.
    pub fn has_girth_at_least(&self, k: usize) -> bool {
        self.girth_below(k) == INFINITE_GIRTH
    }

    /// Multi-source BFS distances in the underlying graph.
    pub fn distances_from(&self, sources: &[VertexId]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest finite BFS distance from `root` (the eccentricity).
    pub fn eccentricity(&self, root: VertexId) -> usize {
        self.distances_from(&[root]).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0)
    }

    /// Whether consecutive vertices of `walk` are adjacent and the walk is a
    /// simple closed cycle; returns the edges used.
    pub fn cycle_edges(&self, walk: &[VertexId]) -> Option<Vec<EdgeId>> {
        let k = walk.len();
        if k == 0 {
            return None;
        }
        let mut sorted = walk.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != k || walk.iter().any(|&v| v >= self.num_vertices()) {
            return None;
        }
        let mut used = Vec::with_capacity(k);
        for i in 0..k {
            let (u, w) = (walk[i], walk[(i + 1) % k]);
            let e = self
                .rotation(u)
                .iter()
                .map(|&d| (self.head(d), self.edge_of(d)))
                .filter(|&(x, e)| x == w && !used.contains(&e))
                .map(|(_, e)| e)
                .min()?;
            used.push(e);
        }
        if k <= 2 && self.is_simple() {
            return None;
        }
        Some(used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_map, dodecahedron, grid_map, path_map, petersen_projective};

    fn brute_girth(m: &CombinatorialMap) -> usize {
        // Shortest closed trail with no immediate edge reversal, found by
        // exhaustive DFS over simple paths.
        let n = m.num_vertices();
        let mut best = INFINITE_GIRTH;
        fn dfs(m: &CombinatorialMap, start: VertexId, u: VertexId, used: &mut Vec<EdgeId>, on: &mut Vec<bool>, best: &mut usize) {
            for &d in m.rotation(u) {
                let e = m.edge_of(d);
                if used.contains(&e) {
                    continue;
                }
                let w = m.head(d);
                if w == start {
                    *best = (*best).min(used.len() + 1);
                } else if !on[w] && used.len() + 1 < *best {
                    on[w] = true;
                    used.push(e);
                    dfs(m, start, w, used, on, best);
                    used.pop();
                    on[w] = false;
                }
            }
        }
        for s in 0..n {
            let mut on = vec![false; n];
            on[s] = true;
            dfs(m, s, s, &mut Vec::new(), &mut on, &mut best);
        }
        best
    }

    #[test]
    fn c5_basics() {
        let m = cycle_map(5);
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (5, 5, 2));
        assert_eq!(m.euler_genus(), 0);
        assert_eq!(m.girth(), 5);
        let total: usize = m.faces().iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * m.num_edges());
    }

    #[test]
    fn isolated_vertex_has_one_face() {
        let m = CombinatorialMap::new(vec![vec![]], &[]).unwrap();
        assert_eq!(m.num_faces(), 1);
        assert_eq!(m.euler_genus(), 0);
        assert_eq!(m.girth(), INFINITE_GIRTH);
    }

    #[test]
    fn petersen_on_projective_plane() {
        let m = petersen_projective();
        assert_eq!((m.num_vertices(), m.num_edges(), m.num_faces()), (10, 15, 6));
        assert_eq!(m.euler_genus(), 1);
        assert!(!m.is_orientable());
        assert!(m.faces().iter().all(|f| f.len() == 5));
        assert_eq!(m.girth(), 5);
        assert_eq!(brute_girth(&m), 5);
    }

    #[test]
    fn trees_have_infinite_girth() {
        assert_eq!(path_map(6).girth(), INFINITE_GIRTH);
    }

    #[test]
    fn girth_matches_brute_force() {
        for m in [dodecahedron(), grid_map(3, 4), cycle_map(2), cycle_map(9)] {
            if m.num_vertices() <= 20 {
                assert_eq!(m.girth(), brute_girth(&m));
            }
        }
        assert!(dodecahedron().has_girth_at_least(5));
        assert!(!grid_map(3, 3).has_girth_at_least(5));
    }

    #[test]
    fn untwisting_keeps_faces() {
        // Flip the local orientation at vertex 0 of C5 by hand.
        let m = cycle_map(5);
        let mut rot = m.rotations().to_vec();
        rot[0].reverse();
        let mut edges = m.edge_table();
        for e in edges.iter_mut() {
            let (u, w) = (m.owner(e.0), m.owner(e.1));
            if (u == 0) != (w == 0) {
                e.2 = true;
            }
        }
        let twisted = CombinatorialMap::new(rot, &edges).unwrap();
        assert!(twisted.is_orientable());
        assert_eq!(twisted.num_faces(), 2);
        let plain = twisted.untwisted().unwrap();
        assert_eq!(plain.euler_genus(), 0);
        assert!((0..plain.num_edges()).all(|e| !plain.is_twisted(e)));
    }

    #[test]
    fn cycle_edges_checks_simplicity() {
        let m = cycle_map(5);
        assert!(m.cycle_edges(&[0, 1, 2, 3, 4]).is_some());
        assert!(m.cycle_edges(&[0, 1, 2, 3]).is_none());
        assert!(m.cycle_edges(&[0, 1, 0, 1]).is_none());
    }
}
