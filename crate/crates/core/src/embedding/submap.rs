use super::map::{CombinatorialMap, DartId, EdgeId, FaceId, VertexId};

/// A subgraph of a map with the inherited rotation system, together with the
/// correspondences back to the parent map.
///
/// Removing edges merges faces of the parent; `face_absorbs[f]` lists the
/// parent faces whose corners ended up inside face `f` of the submap. When a
/// removed edge was the only connection between two sides of a face the
/// inherited embedding lives on a simpler surface; this is the capping
/// normalization used throughout the solver.
#[derive(Clone, Debug)]
pub struct SubMap {
    pub map: CombinatorialMap,
    pub vertex_origin: Vec<VertexId>,
    pub vertex_index: Vec<Option<VertexId>>,
    pub dart_origin: Vec<DartId>,
    pub edge_origin: Vec<EdgeId>,
    pub face_absorbs: Vec<Vec<FaceId>>,
}

impl SubMap {
    /// Submap faces that absorbed at least one of the given parent faces.
    pub fn faces_absorbing(&self, parent_faces: &[FaceId]) -> Vec<FaceId> {
        (0..self.map.num_faces())
            .filter(|&f| self.face_absorbs[f].iter().any(|g| parent_faces.contains(g)))
            .collect()
    }

    pub fn lift_vertices(&self, vs: &[VertexId]) -> Vec<VertexId> {
        vs.iter().filter_map(|&v| self.vertex_index[v]).collect()
    }
}

impl CombinatorialMap {
    /// Keeps the flagged vertices and the flagged edges whose endpoints are
    /// both kept.
    pub fn submap(&self, keep_vertex: &[bool], keep_edge: &[bool]) -> SubMap {
        let mut vertex_index = vec![None; self.num_vertices()];
        let mut vertex_origin = Vec::new();
        for v in 0..self.num_vertices() {
            if keep_vertex[v] {
                vertex_index[v] = Some(vertex_origin.len());
                vertex_origin.push(v);
            }
        }
        let mut edge_origin = Vec::new();
        let mut dart_index = vec![usize::MAX; self.num_darts()];
        let mut dart_origin = Vec::new();
        let mut edges = Vec::new();
        for e in 0..self.num_edges() {
            let (u, w) = self.edge_ends(e);
            if !keep_edge[e] || !keep_vertex[u] || !keep_vertex[w] {
                continue;
            }
            let [a, b] = self.edge_darts(e);
            let na = dart_origin.len();
            dart_index[a] = na;
            dart_index[b] = na + 1;
            dart_origin.push(a);
            dart_origin.push(b);
            edges.push((na, na + 1, self.is_twisted(e)));
            edge_origin.push(e);
        }
        let rotations: Vec<Vec<DartId>> = vertex_origin
            .iter()
            .map(|&v| {
                self.rotation(v)
                    .iter()
                    .filter(|&&d| dart_index[d] != usize::MAX)
                    .map(|&d| dart_index[d])
                    .collect()
            })
            .collect();
        let map = CombinatorialMap::new(rotations, &edges).expect("submap of a valid map is valid");
        let mut face_absorbs = vec![Vec::new(); map.num_faces()];
        for nd in 0..map.num_darts() {
            // The submap corner at `nd` spans parent corners from the
            // parent dart up to (excluding) the parent of its successor.
            let f = map.corner_face(nd);
            let target = dart_origin[map.next(nd)];
            let mut x = dart_origin[nd];
            loop {
                face_absorbs[f].push(self.corner_face(x));
                x = self.next(x);
                if x == target {
                    break;
                }
            }
        }
        for (nv, &v) in vertex_origin.iter().enumerate() {
            if let Some(f) = map.isolated_face(nv) {
                face_absorbs[f].extend(self.vertex_faces(v));
            }
        }
        for list in face_absorbs.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        SubMap { map, vertex_origin, vertex_index, dart_origin, edge_origin, face_absorbs }
    }

    /// Subgraph induced by a vertex set.
    pub fn induced_submap(&self, keep_vertex: &[bool]) -> SubMap {
        self.submap(keep_vertex, &vec![true; self.num_edges()])
    }

    /// Deletes the flagged edges, keeping every vertex.
    pub fn without_edges(&self, drop_edge: &[bool]) -> SubMap {
        let keep: Vec<bool> = drop_edge.iter().map(|&d| !d).collect();
        self.submap(&vec![true; self.num_vertices()], &keep)
    }

    /// One submap per connected component, in component order.
    pub fn split_components(&self) -> Vec<SubMap> {
        (0..self.components().len())
            .map(|c| {
                let keep: Vec<bool> = (0..self.num_vertices()).map(|v| self.component_of(v) == c).collect();
                self.induced_submap(&keep)
            })
            .collect()
    }
}
