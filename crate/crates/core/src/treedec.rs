//! Tree decompositions of embedded graphs.
//!
//! The main builder is the tree-cotree construction: a BFS tree T from a
//! root, a spanning tree of the dual of a virtual triangulation avoiding T,
//! and the `g` leftover edges X. The bag of a triangle is the union of the
//! root paths of its corners and of the ends of X, giving width below
//! `3(g+1)(r+1)` for BFS radius `r`. A min-degree elimination ordering is
//! also tried and the narrower decomposition kept.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::embedding::{CombinatorialMap, EdgeId, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionMethod {
    TreeCotree,
    MinDegree,
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeDecomposition {
    /// Sorted vertex sets.
    pub bags: Vec<Vec<VertexId>>,
    pub parent: Vec<Option<usize>>,
    pub root: usize,
    pub method: DecompositionMethod,
    /// Width budget `3(g+1)(r+1)` of the tree-cotree construction.
    pub budget: Option<usize>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.bags.len()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(t);
            }
        }
        ch
    }

    /// Bags in an order where every child precedes its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let ch = self.children();
        let mut order = Vec::with_capacity(self.bags.len());
        let mut stack = vec![(self.root, false)];
        while let Some((t, done)) = stack.pop() {
            if done {
                order.push(t);
            } else {
                stack.push((t, true));
                stack.extend(ch[t].iter().map(|&c| (c, false)));
            }
        }
        order
    }

    /// Adds `extra` to every bag.
    pub fn with_everywhere(&self, extra: &[VertexId]) -> Self {
        let mut td = self.clone();
        for bag in td.bags.iter_mut() {
            bag.extend_from_slice(extra);
            bag.sort_unstable();
            bag.dedup();
        }
        td
    }

    /// Checks the three axioms: vertex coverage, edge coverage and
    /// connectivity of every vertex's bags; also that `parent` is a tree.
    pub fn validate(&self, map: &CombinatorialMap) -> Result<()> {
        let n = map.num_vertices();
        let nb = self.bags.len();
        if nb == 0 || self.parent.len() != nb || self.parent[self.root].is_some() {
            return Err(Error::Precondition("malformed decomposition tree".into()));
        }
        if self.post_order().len() != nb {
            return Err(Error::Precondition("decomposition tree is not connected".into()));
        }
        let mut tops = vec![0usize; n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(Error::Precondition(format!("bag {t} holds unknown vertex {v}")));
                }
                let parent_has = self.parent[t].is_some_and(|p| self.bags[p].binary_search(&v).is_ok());
                if !parent_has {
                    tops[v] += 1;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| tops[v] != 1) {
            let why = if tops[v] == 0 { "is in no bag" } else { "has disconnected bags" };
            return Err(Error::Precondition(format!("vertex {v} {why}")));
        }
        let mut covered = vec![false; map.num_edges()];
        let mut by_pair = std::collections::HashMap::new();
        for e in 0..map.num_edges() {
            let (u, w) = map.edge_ends(e);
            by_pair.entry((u.min(w), u.max(w))).or_insert_with(Vec::new).push(e);
        }
        for bag in &self.bags {
            for (i, &u) in bag.iter().enumerate() {
                for &w in &bag[i..] {
                    if let Some(es) = by_pair.get(&(u, w)) {
                        for &e in es {
                            covered[e] = true;
                        }
                    }
                }
            }
        }
        if let Some(e) = covered.iter().position(|c| !c) {
            return Err(Error::Precondition(format!("edge {e} is in no bag")));
        }
        Ok(())
    }
}

/// Decomposition of the component containing `root`, which must be the
/// whole (connected) map.
pub fn tree_decomposition(map: &CombinatorialMap, root: VertexId) -> Result<TreeDecomposition> {
    if !map.is_connected() {
        return Err(Error::Precondition("tree_decomposition needs a connected map".into()));
    }
    let td = component_decomposition(map, root);
    td.validate(map)?;
    Ok(td)
}

/// Decomposition of an arbitrary map: one per component, hung below the
/// first component's root bag.
pub fn decompose(map: &CombinatorialMap) -> Result<TreeDecomposition> {
    if map.num_vertices() == 0 {
        return Ok(TreeDecomposition {
            bags: vec![Vec::new()],
            parent: vec![None],
            root: 0,
            method: DecompositionMethod::Trivial,
            budget: None,
        });
    }
    let mut whole: Option<TreeDecomposition> = None;
    for comp in map.components() {
        let td = component_decomposition(map, comp.vertices[0]);
        match whole.as_mut() {
            None => whole = Some(td),
            Some(w) => {
                let offset = w.bags.len();
                w.bags.extend(td.bags);
                w.parent.extend(td.parent.iter().map(|p| Some(p.map_or(w.root, |p| p + offset))));
                w.budget = match (w.budget, td.budget) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
            }
        }
    }
    let td = whole.expect("at least one component");
    td.validate(map)?;
    Ok(td)
}

fn component_decomposition(map: &CombinatorialMap, root: VertexId) -> TreeDecomposition {
    let comp = &map.components()[map.component_of(root)];
    if comp.edges == 0 {
        return TreeDecomposition {
            bags: vec![vec![root]],
            parent: vec![None],
            root: 0,
            method: DecompositionMethod::Trivial,
            budget: Some(0),
        };
    }
    let tc = tree_cotree(map, root);
    if comp.vertices.len() <= 4000 {
        let md = min_degree(map, &comp.vertices);
        if md.width() < tc.width() {
            return TreeDecomposition { budget: tc.budget, ..md };
        }
    }
    tc
}

fn tree_cotree(map: &CombinatorialMap, root: VertexId) -> TreeDecomposition {
    let comp = &map.components()[map.component_of(root)];
    let n = map.num_vertices();
    let mut depth = vec![usize::MAX; n];
    let mut up: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
    let mut in_tree = vec![false; map.num_edges()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &d in map.rotation(u) {
            let w = map.head(d);
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                up[w] = Some((u, map.edge_of(d)));
                in_tree[map.edge_of(d)] = true;
                queue.push_back(w);
            }
        }
    }
    let radius = comp.vertices.iter().map(|&v| depth[v]).max().unwrap_or(0);
    // Fan-triangulate every face: triangle i of a face with corners
    // w_0..w_{k-1} is (w_0, w_i, w_{i+1}).
    let mut triangles: Vec<[VertexId; 3]> = Vec::new();
    let mut step_triangle: Vec<Vec<usize>> = vec![Vec::new(); map.num_edges()];
    let mut dual_edges: Vec<(usize, usize, Option<EdgeId>)> = Vec::new();
    for &f in &comp.faces {
        let walk = &map.face(f).walk;
        let k = walk.len();
        let w: Vec<VertexId> = walk.iter().map(|s| map.owner(s.dart)).collect();
        let base = triangles.len();
        if k <= 3 {
            let t = [w[0], w[k.min(2) - 1], w[k - 1]];
            triangles.push(t);
            for s in walk {
                step_triangle[map.edge_of(s.dart)].push(base);
            }
            continue;
        }
        for i in 1..k - 1 {
            triangles.push([w[0], w[i], w[i + 1]]);
            if i > 1 {
                dual_edges.push((base + i - 2, base + i - 1, None));
            }
        }
        for (i, s) in walk.iter().enumerate() {
            let t = if i == 0 { 0 } else if i == k - 1 { k - 3 } else { i - 1 };
            step_triangle[map.edge_of(s.dart)].push(base + t);
        }
    }
    for e in 0..map.num_edges() {
        if !in_tree[e] && step_triangle[e].len() == 2 {
            dual_edges.push((step_triangle[e][0], step_triangle[e][1], Some(e)));
        }
    }
    // Dual spanning tree: chords first (they are acyclic), then non-tree
    // edges, by union-find; the tree is then oriented from triangle 0.
    let nt = triangles.len();
    let mut uf: Vec<usize> = (0..nt).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let nx = uf[y];
            uf[y] = r;
            y = nx;
        }
        r
    }
    let mut dual_adj: Vec<Vec<usize>> = vec![Vec::new(); nt];
    let mut used = vec![false; map.num_edges()];
    for &(a, b, e) in &dual_edges {
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
            dual_adj[a].push(b);
            dual_adj[b].push(a);
            if let Some(e) = e {
                used[e] = true;
            }
        }
    }
    let mut parent = vec![None; nt];
    let mut seen = vec![false; nt];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(t) = queue.pop_front() {
        for &s in &dual_adj[t] {
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some(t);
                queue.push_back(s);
            }
        }
    }
    let root_path = |v: VertexId, out: &mut BTreeSet<VertexId>| {
        let mut x = v;
        while out.insert(x) {
            match up[x] {
                Some((p, _)) => x = p,
                None => break,
            }
        }
    };
    let mut common = BTreeSet::new();
    let mut leftover = 0;
    for e in 0..map.num_edges() {
        if !in_tree[e] && !used[e] && map.component_of(map.edge_ends(e).0) == map.component_of(root) {
            leftover += 1;
            let (u, w) = map.edge_ends(e);
            root_path(u, &mut common);
            root_path(w, &mut common);
        }
    }
    let bags = triangles
        .iter()
        .map(|t| {
            let mut bag = common.clone();
            for &v in t {
                root_path(v, &mut bag);
            }
            bag.into_iter().collect()
        })
        .collect();
    let g = comp.euler_genus.max(leftover);
    TreeDecomposition {
        bags,
        parent,
        root: 0,
        method: DecompositionMethod::TreeCotree,
        budget: Some(3 * (g + 1) * (radius + 1)),
    }
}

fn min_degree(map: &CombinatorialMap, vertices: &[VertexId]) -> TreeDecomposition {
    let n = map.num_vertices();
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for &v in vertices {
        for w in map.neighbors(v) {
            if w != v {
                adj[v].insert(w);
            }
        }
    }
    let mut alive = vec![false; n];
    for &v in vertices {
        alive[v] = true;
    }
    let mut order = Vec::with_capacity(vertices.len());
    let mut bags = Vec::with_capacity(vertices.len());
    let mut heap: BTreeSet<(usize, VertexId)> = vertices.iter().map(|&v| (adj[v].len(), v)).collect();
    while let Some((_, v)) = heap.pop_first() {
        alive[v] = false;
        let nb: Vec<VertexId> = adj[v].iter().copied().collect();
        for &a in &nb {
            heap.remove(&(adj[a].len(), a));
            adj[a].remove(&v);
        }
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            heap.insert((adj[a].len(), a));
        }
        let mut bag = nb;
        bag.push(v);
        bag.sort_unstable();
        order.push(v);
        bags.push(bag);
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // Bag i hangs below the bag of its earliest-eliminated later neighbour.
    let last = order.len() - 1;
    let parent: Vec<Option<usize>> = (0..order.len())
        .map(|i| {
            let v = order[i];
            let p = bags[i].iter().filter(|&&w| w != v).map(|&w| rank[w]).min();
            match p {
                Some(p) => Some(p),
                None if i == last => None,
                None => Some(last),
            }
        })
        .collect();
    TreeDecomposition { bags, parent, root: last, method: DecompositionMethod::MinDegree, budget: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_map, dodecahedron, grid_map, hex_torus, petersen_projective};

    #[test]
    fn single_vertex() {
        let m = CombinatorialMap::new(vec![vec![]], &[]).unwrap();
        let td = tree_decomposition(&m, 0).unwrap();
        assert_eq!(td.bags.len(), 1);
        assert_eq!(td.width(), 0);
    }

    #[test]
    fn c5_width_two() {
        let td = tree_decomposition(&cycle_map(5), 0).unwrap();
        assert!(td.width() <= 2);
    }

    #[test]
    fn grid_within_budget() {
        let m = grid_map(8, 8);
        let td = tree_decomposition(&m, 0).unwrap();
        assert_eq!(td.budget, Some(3 * 15));
        assert!(td.width() <= 3 * 15);
        let tc = tree_cotree(&m, 0);
        tc.validate(&m).unwrap();
        assert!(tc.width() < tc.budget.unwrap());
    }

    #[test]
    fn tree_cotree_is_valid_on_surfaces() {
        for m in [dodecahedron(), petersen_projective(), hex_torus(2, 3), hex_torus(3, 4)] {
            let tc = tree_cotree(&m, 0);
            tc.validate(&m).unwrap();
            assert!(tc.width() < tc.budget.unwrap());
            min_degree(&m, &(0..m.num_vertices()).collect::<Vec<_>>()).validate(&m).unwrap();
        }
    }

    #[test]
    fn disconnected_maps() {
        let m = CombinatorialMap::from_neighbor_rotations(&[vec![1], vec![0], vec![], vec![4], vec![3]]).unwrap();
        assert!(tree_decomposition(&m, 0).is_err());
        decompose(&m).unwrap().validate(&m).unwrap();
    }
}
