use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type DartId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// One step of a facial walk: leave `owner(dart)` along `dart`, with the
/// local orientation at that vertex reversed when `reversed` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub dart: DartId,
    pub reversed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Step>,
    pub component: usize,
    /// Set for the single face of an isolated vertex (empty walk).
    pub isolated_vertex: Option<VertexId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edges: usize,
    pub faces: Vec<FaceId>,
    pub euler_genus: usize,
    pub orientable: bool,
}

/// A graph 2-cell embedded on a (possibly disconnected) closed surface,
/// given by a signed rotation system.
///
/// Every edge consists of two darts that are twins of each other. The
/// rotation at a vertex lists its darts in cyclic order with respect to the
/// local orientation at that vertex; a twisted edge flips the local
/// orientation when traversed, which is how non-orientable surfaces are
/// encoded. Faces are traced once at construction and identified by their
/// least walk step, so face ids are reproducible.
#[derive(Clone, Debug)]
pub struct CombinatorialMap {
    rotations: Vec<Vec<DartId>>,
    owner: Vec<VertexId>,
    pos: Vec<usize>,
    twin: Vec<DartId>,
    edge_of: Vec<EdgeId>,
    edges: Vec<[DartId; 2]>,
    twisted: Vec<bool>,
    faces: Vec<Face>,
    corner_face: Vec<FaceId>,
    isolated_face: Vec<Option<FaceId>>,
    components: Vec<Component>,
    component_of: Vec<usize>,
}

impl PartialEq for CombinatorialMap {
    fn eq(&self, other: &Self) -> bool {
        self.rotations == other.rotations && self.edges == other.edges && self.twisted == other.twisted
    }
}

impl Eq for CombinatorialMap {}

impl CombinatorialMap {
    /// Builds a map from per-vertex cyclic dart lists and an edge table
    /// `(dart, twin, twisted)`. Dart ids must be exactly `0..2 * edges.len()`.
    pub fn new(rotations: Vec<Vec<DartId>>, edges: &[(DartId, DartId, bool)]) -> Result<Self> {
        let n_darts = 2 * edges.len();
        let mut owner = vec![usize::MAX; n_darts];
        let mut pos = vec![0; n_darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= n_darts {
                    return Err(Error::malformed(format!("dart {d} at vertex {v} has no edge")));
                }
                if owner[d] != usize::MAX {
                    return Err(Error::malformed(format!("dart {d} appears twice in the rotations")));
                }
                owner[d] = v;
                pos[d] = i;
            }
        }
        let mut twin = vec![usize::MAX; n_darts];
        let mut edge_of = vec![usize::MAX; n_darts];
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut twisted = Vec::with_capacity(edges.len());
        for (e, &(a, b, tw)) in edges.iter().enumerate() {
            if a >= n_darts || b >= n_darts || a == b {
                return Err(Error::malformed(format!("edge {e} has invalid darts {a} {b}")));
            }
            if twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::malformed(format!("edge {e} reuses a dart")));
            }
            twin[a] = b;
            twin[b] = a;
            edge_of[a] = e;
            edge_of[b] = e;
            edge_list.push([a, b]);
            twisted.push(tw);
        }
        if let Some(d) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::malformed(format!("dart {d} is dangling (not in any rotation)")));
        }
        let mut map = CombinatorialMap {
            rotations,
            owner,
            pos,
            twin,
            edge_of,
            edges: edge_list,
            twisted,
            faces: Vec::new(),
            corner_face: vec![usize::MAX; n_darts],
            isolated_face: Vec::new(),
            components: Vec::new(),
            component_of: Vec::new(),
        };
        map.trace();
        Ok(map)
    }

    /// Convenience constructor for untwisted maps from neighbour lists given
    /// in cyclic order. Each undirected edge `{u, w}` must appear in both
    /// lists; parallel edges are matched in order of appearance.
    pub fn from_neighbor_rotations(adj: &[Vec<VertexId>]) -> Result<Self> {
        use std::collections::HashMap;
        let mut pending: HashMap<(VertexId, VertexId), VecDeque<DartId>> = HashMap::new();
        let mut rotations = vec![Vec::new(); adj.len()];
        let mut edges = Vec::new();
        let mut next_dart = 0;
        let mut dart_ids: Vec<Vec<DartId>> = adj.iter().map(|l| vec![usize::MAX; l.len()]).collect();
        for (u, list) in adj.iter().enumerate() {
            for (i, &w) in list.iter().enumerate() {
                if w >= adj.len() {
                    return Err(Error::malformed(format!("vertex {u} lists unknown neighbour {w}")));
                }
                if w == u {
                    return Err(Error::malformed("loops are not supported by neighbour rotations"));
                }
                if let Some(q) = pending.get_mut(&(w, u)) {
                    if let Some(other) = q.pop_front() {
                        let d = next_dart;
                        next_dart += 1;
                        dart_ids[u][i] = d;
                        edges.push((other, d, false));
                        continue;
                    }
                }
                let d = next_dart;
                next_dart += 1;
                dart_ids[u][i] = d;
                pending.entry((u, w)).or_default().push_back(d);
            }
        }
        if pending.values().any(|q| !q.is_empty()) {
            return Err(Error::malformed("neighbour lists are not symmetric"));
        }
        for (u, ids) in dart_ids.into_iter().enumerate() {
            rotations[u] = ids;
        }
        // Renumber so that edge e owns darts 2e and 2e+1.
        let mut renum = vec![0; next_dart];
        for (e, &(a, b, _)) in edges.iter().enumerate() {
            renum[a] = 2 * e;
            renum[b] = 2 * e + 1;
        }
        let rotations = rotations.into_iter().map(|r| r.into_iter().map(|d| renum[d]).collect()).collect();
        let edges: Vec<_> = (0..edges.len()).map(|e| (2 * e, 2 * e + 1, false)).collect();
        CombinatorialMap::new(rotations, &edges)
    }

    fn trace(&mut self) {
        let n = self.num_darts();
        let mut seen = vec![false; 2 * n];
        let idx = |s: Step| 2 * s.dart + s.reversed as usize;
        let mut faces = Vec::new();
        for d in 0..n {
            for reversed in [false, true] {
                let start = Step { dart: d, reversed };
                if seen[idx(start)] {
                    continue;
                }
                let walk = self.orbit(start);
                for &s in &walk {
                    seen[idx(s)] = true;
                }
                let mirror = self.mirror(start);
                debug_assert!(!walk.contains(&mirror), "face orbit equals its own mirror");
                for s in self.orbit(mirror) {
                    seen[idx(s)] = true;
                }
                faces.push(Face { walk, component: 0, isolated_vertex: None });
            }
        }
        let mut isolated_face = vec![None; self.num_vertices()];
        for v in 0..self.num_vertices() {
            if self.rotations[v].is_empty() {
                isolated_face[v] = Some(faces.len());
                faces.push(Face { walk: Vec::new(), component: 0, isolated_vertex: Some(v) });
            }
        }
        for (f, face) in faces.iter().enumerate() {
            for &s in &face.walk {
                let c = self.corner_of(s);
                self.corner_face[c] = f;
            }
        }
        self.faces = faces;
        self.isolated_face = isolated_face;
        self.compute_components();
    }

    fn orbit(&self, start: Step) -> Vec<Step> {
        let mut walk = vec![start];
        let mut s = self.step(start);
        while s != start {
            walk.push(s);
            s = self.step(s);
        }
        walk
    }

    fn compute_components(&mut self) {
        let nv = self.num_vertices();
        let mut comp = vec![usize::MAX; nv];
        let mut flip = vec![false; nv];
        let mut comps = Vec::new();
        for root in 0..nv {
            if comp[root] != usize::MAX {
                continue;
            }
            let c = comps.len();
            let mut vertices = vec![root];
            let mut orientable = true;
            let mut darts = 0;
            comp[root] = c;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &d in &self.rotations[u] {
                    darts += 1;
                    let w = self.owner[self.twin[d]];
                    let want = flip[u] ^ self.twisted[self.edge_of[d]];
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        flip[w] = want;
                        vertices.push(w);
                        queue.push_back(w);
                    } else if flip[w] != want {
                        orientable = false;
                    }
                }
            }
            vertices.sort_unstable();
            comps.push(Component { vertices, edges: darts / 2, faces: Vec::new(), euler_genus: 0, orientable });
        }
        for (f, face) in self.faces.iter_mut().enumerate() {
            let v = match face.isolated_vertex {
                Some(v) => v,
                None => self.owner[face.walk[0].dart],
            };
            face.component = comp[v];
            comps[comp[v]].faces.push(f);
        }
        for c in comps.iter_mut() {
            let chi = c.vertices.len() as isize - c.edges as isize + c.faces.len() as isize;
            c.euler_genus = (2 - chi) as usize;
        }
        self.components = comps;
        self.component_of = comp;
    }

    /// Successor of a walk step along the face.
    pub fn step(&self, s: Step) -> Step {
        let t = self.twin[s.dart];
        let reversed = s.reversed ^ self.twisted[self.edge_of[s.dart]];
        let dart = if reversed { self.prev(t) } else { self.next(t) };
        Step { dart, reversed }
    }

    /// The same position of the same face, traversed in the other direction.
    pub fn mirror(&self, s: Step) -> Step {
        Step { dart: self.twin[s.dart], reversed: !(s.reversed ^ self.twisted[self.edge_of[s.dart]]) }
    }

    /// Corner passed by a walk step at the vertex it leaves. Corner `x` is the
    /// angle between dart `x` and its rotation successor.
    pub fn corner_of(&self, s: Step) -> DartId {
        if s.reversed {
            s.dart
        } else {
            self.prev(s.dart)
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_darts(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn owner(&self, d: DartId) -> VertexId {
        self.owner[d]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twin[d]
    }

    /// Vertex at the far end of dart `d`.
    pub fn head(&self, d: DartId) -> VertexId {
        self.owner[self.twin[d]]
    }

    pub fn next(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.owner[d]];
        rot[(self.pos[d] + 1) % rot.len()]
    }

    pub fn prev(&self, d: DartId) -> DartId {
        let rot = &self.rotations[self.owner[d]];
        rot[(self.pos[d] + rot.len() - 1) % rot.len()]
    }

    pub fn rotation(&self, v: VertexId) -> &[DartId] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<DartId>] {
        &self.rotations
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations[v].len()
    }

    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.edge_of[d]
    }

    pub fn edge_darts(&self, e: EdgeId) -> [DartId; 2] {
        self.edges[e]
    }

    pub fn edge_ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.edges[e];
        (self.owner[a], self.owner[b])
    }

    pub fn is_twisted(&self, e: EdgeId) -> bool {
        self.twisted[e]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotations[v].iter().map(move |&d| self.head(d))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn corner_face(&self, corner: DartId) -> FaceId {
        self.corner_face[corner]
    }

    /// The face of an isolated vertex.
    pub fn isolated_face(&self, v: VertexId) -> Option<FaceId> {
        self.isolated_face[v]
    }

    /// Vertices on the boundary walk of `f`, with repetitions.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        let face = &self.faces[f];
        match face.isolated_vertex {
            Some(v) => vec![v],
            None => face.walk.iter().map(|s| self.owner[s.dart]).collect(),
        }
    }

    /// Faces incident with `v`, one entry per corner.
    pub fn vertex_faces(&self, v: VertexId) -> Vec<FaceId> {
        match self.isolated_face[v] {
            Some(f) => vec![f],
            None => self.rotations[v].iter().map(|&x| self.corner_face[x]).collect(),
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component_of[v]
    }

    /// Sum of the Euler genera of the components.
    pub fn euler_genus(&self) -> usize {
        self.components.iter().map(|c| c.euler_genus).sum()
    }

    pub fn is_orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// An equivalent map without twisted edges, obtained by reversing the
    /// rotation at a set of vertices. `None` when some component is
    /// non-orientable. Dart, edge and vertex ids are unchanged.
    pub fn untwisted(&self) -> Option<CombinatorialMap> {
        if !self.is_orientable() {
            return None;
        }
        if !self.twisted.iter().any(|&t| t) {
            return Some(self.clone());
        }
        let nv = self.num_vertices();
        let mut flip = vec![None; nv];
        for root in 0..nv {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let fu = flip[u].unwrap();
                for &d in &self.rotations[u] {
                    let w = self.head(d);
                    if flip[w].is_none() {
                        flip[w] = Some(fu ^ self.twisted[self.edge_of[d]]);
                        queue.push_back(w);
                    }
                }
            }
        }
        let rotations = self
            .rotations
            .iter()
            .enumerate()
            .map(|(v, r)| {
                let mut r = r.clone();
                if flip[v] == Some(true) {
                    r.reverse();
                }
                r
            })
            .collect();
        let edges: Vec<_> = self.edges.iter().map(|&[a, b]| (a, b, false)).collect();
        CombinatorialMap::new(rotations, &edges).ok()
    }

    /// Edge table in the form accepted by [`CombinatorialMap::new`].
    pub fn edge_table(&self) -> Vec<(DartId, DartId, bool)> {
        self.edges.iter().zip(&self.twisted).map(|(&[a, b], &t)| (a, b, t)).collect()
    }

    /// Whether the underlying graph has no loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut mark = vec![usize::MAX; self.num_vertices()];
        for v in 0..self.num_vertices() {
            for w in self.neighbors(v) {
                if w == v || mark[w] == v {
                    return false;
                }
                mark[w] = v;
            }
        }
        true
    }

    /// Plain adjacency lists (with multiplicity, loops listed twice).
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        (0..self.num_vertices()).map(|v| self.neighbors(v).collect()).collect()
    }
}
