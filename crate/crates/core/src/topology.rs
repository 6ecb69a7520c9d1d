//! Surface surgery: cutting along a subgraph, classifying cycles relative
//! to a set of faces, and finding short non-contractible cycles.

use serde::Serialize;

use crate::embedding::{CombinatorialMap, DartId, EdgeId, FaceId, SubMap, VertexId};
use crate::error::{Error, Result};
use crate::lists::ListAssignment;

/// A subgraph of a map given by vertex and edge flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<bool>,
    pub edges: Vec<bool>,
}

impl Subgraph {
    pub fn empty(map: &CombinatorialMap) -> Self {
        Subgraph { vertices: vec![false; map.num_vertices()], edges: vec![false; map.num_edges()] }
    }

    /// The subgraph formed by the given edges and their ends.
    pub fn from_edges(map: &CombinatorialMap, edges: &[EdgeId]) -> Self {
        let mut q = Subgraph::empty(map);
        for &e in edges {
            let (u, w) = map.edge_ends(e);
            q.edges[e] = true;
            q.vertices[u] = true;
            q.vertices[w] = true;
        }
        q
    }

    /// The subgraph induced on `vertices` by the map's edges.
    pub fn induced(map: &CombinatorialMap, vertices: &[VertexId]) -> Self {
        let mut q = Subgraph::empty(map);
        for &v in vertices {
            q.vertices[v] = true;
        }
        for e in 0..map.num_edges() {
            let (u, w) = map.edge_ends(e);
            q.edges[e] = q.vertices[u] && q.vertices[w];
        }
        q
    }

    pub fn vertex_list(&self) -> Vec<VertexId> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v]).collect()
    }

    pub fn edge_list(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| self.edges[e]).collect()
    }
}

/// The map G_Q obtained by cutting along Q and capping every hole with a
/// disk, together with the projection θ back to G.
#[derive(Clone, Debug)]
pub struct CutResult {
    pub map: CombinatorialMap,
    pub vertex_origin: Vec<VertexId>,
    pub dart_origin: Vec<DartId>,
    pub edge_origin: Vec<EdgeId>,
    /// Copies of each original vertex (one for vertices outside Q).
    pub copies: Vec<Vec<VertexId>>,
    /// Cut vertices projecting into Q, sorted.
    pub boundary: Vec<VertexId>,
    /// Original face of each cut face; `None` for the caps.
    pub face_origin: Vec<Option<FaceId>>,
    pub caps: Vec<FaceId>,
    /// Connected components of the cut map.
    pub pieces: Vec<SubMap>,
}

impl CutResult {
    pub fn piece_genus(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.map.euler_genus()).collect()
    }

    /// Cut faces whose origin lies in `faces`.
    pub fn lift_faces(&self, faces: &[FaceId]) -> Vec<FaceId> {
        (0..self.map.num_faces())
            .filter(|&f| self.face_origin[f].is_some_and(|g| faces.contains(&g)))
            .collect()
    }

    /// All copies of the given original vertices, sorted.
    pub fn lift_vertices(&self, vs: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = vs.iter().flat_map(|&v| self.copies[v].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    /// The inherited lists L_Q(v) = L(θ(v)).
    pub fn pull_lists(&self, lists: &ListAssignment) -> ListAssignment {
        lists.pull_back(&self.vertex_origin)
    }

    /// Caps of the given piece, as face ids of the piece map.
    pub fn piece_caps(&self, piece: usize) -> Vec<FaceId> {
        self.pieces[piece].faces_absorbing(&self.caps)
    }

    /// Faces of the given piece that originate from `faces`.
    pub fn piece_faces(&self, piece: usize, faces: &[FaceId]) -> Vec<FaceId> {
        self.pieces[piece].faces_absorbing(&self.lift_faces(faces))
    }
}

/// Cuts the surface along Q. Every edge of Q becomes two edges and every
/// vertex of Q with `k ≥ 1` incident Q-edges becomes `k` vertices; an
/// isolated vertex of Q keeps a single copy. Each hole is capped by a face.
pub fn cut_along(map: &CombinatorialMap, q: &Subgraph) -> Result<CutResult> {
    if q.vertices.len() != map.num_vertices() || q.edges.len() != map.num_edges() {
        return Err(Error::Incompatible("subgraph flags do not match the map".into()));
    }
    for e in q.edge_list() {
        let (u, w) = map.edge_ends(e);
        if !q.vertices[u] || !q.vertices[w] {
            return Err(Error::Incompatible(format!("edge {e} of Q has an endpoint outside Q")));
        }
        if u == w {
            return Err(Error::Incompatible(format!("edge {e} of Q is a loop")));
        }
    }
    let is_q_dart = |d: DartId| q.edges[map.edge_of(d)];
    // New dart ids: non-Q darts keep one copy; Q darts get a plus and a
    // minus copy.
    let mut plain = vec![usize::MAX; map.num_darts()];
    let mut plus = vec![usize::MAX; map.num_darts()];
    let mut minus = vec![usize::MAX; map.num_darts()];
    let mut dart_origin = Vec::new();
    for d in 0..map.num_darts() {
        if is_q_dart(d) {
            plus[d] = dart_origin.len();
            dart_origin.push(d);
            minus[d] = dart_origin.len();
            dart_origin.push(d);
        } else {
            plain[d] = dart_origin.len();
            dart_origin.push(d);
        }
    }
    let mut rotations: Vec<Vec<DartId>> = Vec::new();
    let mut vertex_origin = Vec::new();
    let mut copies = vec![Vec::new(); map.num_vertices()];
    let mut hole = vec![false; dart_origin.len()];
    for v in 0..map.num_vertices() {
        let rot = map.rotation(v);
        let qpos: Vec<usize> = (0..rot.len()).filter(|&i| is_q_dart(rot[i])).collect();
        if qpos.is_empty() {
            copies[v].push(rotations.len());
            vertex_origin.push(v);
            rotations.push(rot.iter().map(|&d| plain[d]).collect());
            continue;
        }
        for (k, &start) in qpos.iter().enumerate() {
            let end = qpos[(k + 1) % qpos.len()];
            let mut sector = vec![plus[rot[start]]];
            let mut i = (start + 1) % rot.len();
            while i != end {
                sector.push(plain[rot[i]]);
                i = (i + 1) % rot.len();
            }
            sector.push(minus[rot[end]]);
            hole[minus[rot[end]]] = true;
            copies[v].push(rotations.len());
            vertex_origin.push(v);
            rotations.push(sector);
        }
    }
    let mut edges = Vec::new();
    let mut edge_origin = Vec::new();
    for e in 0..map.num_edges() {
        let [a, b] = map.edge_darts(e);
        let t = map.is_twisted(e);
        if q.edges[e] {
            if t {
                edges.push((minus[a], minus[b], true));
                edges.push((plus[a], plus[b], true));
            } else {
                edges.push((minus[a], plus[b], false));
                edges.push((plus[a], minus[b], false));
            }
            edge_origin.push(e);
            edge_origin.push(e);
        } else {
            edges.push((plain[a], plain[b], t));
            edge_origin.push(e);
        }
    }
    let cut = CombinatorialMap::new(rotations, &edges)?;
    let mut face_origin = vec![None; cut.num_faces()];
    let mut is_cap = vec![false; cut.num_faces()];
    for d in 0..cut.num_darts() {
        let f = cut.corner_face(d);
        if hole[d] {
            is_cap[f] = true;
        } else {
            face_origin[f] = Some(map.corner_face(dart_origin[d]));
        }
    }
    for (nv, &v) in vertex_origin.iter().enumerate() {
        if let Some(f) = cut.isolated_face(nv) {
            face_origin[f] = map.isolated_face(v);
        }
    }
    let caps: Vec<FaceId> = (0..cut.num_faces()).filter(|&f| is_cap[f]).collect();
    debug_assert!(caps.iter().all(|&f| face_origin[f].is_none()));
    let mut boundary: Vec<VertexId> =
        (0..cut.num_vertices()).filter(|&nv| q.vertices[vertex_origin[nv]]).collect();
    boundary.sort_unstable();
    let pieces = cut.split_components();
    Ok(CutResult { map: cut, vertex_origin, dart_origin, edge_origin, copies, boundary, face_origin, caps, pieces })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "face")]
pub enum CycleStatus {
    FContractible,
    /// Contractible once the given drilled face is capped again.
    AlmostContractible(FaceId),
    Essential,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleClass {
    pub cycle: Vec<VertexId>,
    pub status: CycleStatus,
}

/// Classifies a cycle by cutting along it and inspecting the sides.
///
/// The cycle is F-contractible when one side is a disk containing no face
/// of `f_faces`. Otherwise it is almost contractible around `b ∈ drilled`
/// when one side is a disk whose only faces from `f_faces ∪ drilled` are
/// `b`; the smallest such `b` is reported.
pub fn classify_cycle(
    map: &CombinatorialMap,
    cycle: &[VertexId],
    f_faces: &[FaceId],
    drilled: &[FaceId],
) -> Result<CycleClass> {
    let edges = map
        .cycle_edges(cycle)
        .ok_or_else(|| Error::NotACycle(format!("{cycle:?} is not a cycle of the map")))?;
    let status = classify_edges(map, &edges, f_faces, drilled)?;
    Ok(CycleClass { cycle: cycle.to_vec(), status })
}

pub(crate) fn classify_edges(
    map: &CombinatorialMap,
    edges: &[EdgeId],
    f_faces: &[FaceId],
    drilled: &[FaceId],
) -> Result<CycleStatus> {
    let cut = cut_along(map, &Subgraph::from_edges(map, edges))?;
    // Sides are the pieces carrying a cap; other components are untouched.
    let mut best_almost: Option<FaceId> = None;
    for (p, piece) in cut.pieces.iter().enumerate() {
        // A side is a disk bounded by the cycle: a sphere piece whose only
        // cap runs once around the cycle. A one-sided cycle leaves a single
        // cap of twice its length instead.
        let caps = cut.piece_caps(p);
        if caps.len() != 1 || piece.map.euler_genus() != 0 || piece.map.face(caps[0]).len() != edges.len() {
            continue;
        }
        let origins: Vec<FaceId> = (0..piece.map.num_faces())
            .flat_map(|f| piece.face_absorbs[f].iter().filter_map(|&cf| cut.face_origin[cf]))
            .collect();
        let in_f: Vec<FaceId> = origins.iter().copied().filter(|g| f_faces.contains(g)).collect();
        if in_f.is_empty() {
            return Ok(CycleStatus::FContractible);
        }
        let mut marked: Vec<FaceId> =
            origins.iter().copied().filter(|g| f_faces.contains(g) || drilled.contains(g)).collect();
        marked.sort_unstable();
        marked.dedup();
        if marked.len() == 1 && drilled.contains(&marked[0]) {
            best_almost = Some(best_almost.map_or(marked[0], |b: FaceId| b.min(marked[0])));
        }
    }
    Ok(match best_almost {
        Some(b) => CycleStatus::AlmostContractible(b),
        None => CycleStatus::Essential,
    })
}

/// The disk side of an almost contractible cycle around `b`: its vertices
/// (cycle included) and edges, in ids of `map`.
pub(crate) fn disk_side(
    map: &CombinatorialMap,
    edges: &[EdgeId],
    b: FaceId,
    f_faces: &[FaceId],
) -> Result<Option<(Vec<VertexId>, Vec<EdgeId>)>> {
    let cut = cut_along(map, &Subgraph::from_edges(map, edges))?;
    for (p, piece) in cut.pieces.iter().enumerate() {
        let caps = cut.piece_caps(p);
        if caps.len() != 1 || piece.map.euler_genus() != 0 || piece.map.face(caps[0]).len() != edges.len() {
            continue;
        }
        let mut marked: Vec<FaceId> = (0..piece.map.num_faces())
            .flat_map(|f| piece.face_absorbs[f].iter().filter_map(|&cf| cut.face_origin[cf]))
            .filter(|g| f_faces.contains(g) || *g == b)
            .collect();
        marked.sort_unstable();
        marked.dedup();
        if marked == [b] {
            let mut vs: Vec<VertexId> = piece.vertex_origin.iter().map(|&v| cut.vertex_origin[v]).collect();
            vs.sort_unstable();
            vs.dedup();
            let mut es: Vec<EdgeId> = piece.edge_origin.iter().map(|&e| cut.edge_origin[e]).collect();
            es.sort_unstable();
            es.dedup();
            return Ok(Some((vs, es)));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShortCycleMode {
    NonFContractible,
    NonContractibleNotAlmost,
    AlmostContractible,
}

/// Upper limit on the number of cycles `find_short_cycle` classifies.
pub const CYCLE_ENUMERATION_CAP: usize = 2_000_000;

/// Shortest cycle of length at most `bound` qualifying under `mode`, ties
/// broken by the lexicographically least canonical vertex sequence
/// (smallest vertex first, then the smaller of its two neighbours).
pub fn find_short_cycle(
    map: &CombinatorialMap,
    f_faces: &[FaceId],
    bound: usize,
    mode: ShortCycleMode,
) -> Result<Option<CycleClass>> {
    // On the sphere with at most one marked face every cycle is
    // F-contractible.
    let planar = map.components().iter().all(|c| c.euler_genus == 0);
    if planar && f_faces.len() <= 1 {
        return Ok(None);
    }
    let n = map.num_vertices();
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| {
            let mut l: Vec<VertexId> = map.neighbors(v).collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let girth = map.girth();
    let mut budget = CYCLE_ENUMERATION_CAP;
    for len in girth.max(3)..=bound.min(n) {
        let mut found = None;
        for s in 0..n {
            let mut path = vec![s];
            let mut on = vec![false; n];
            on[s] = true;
            let mut visit = |cycle: &[VertexId]| -> Result<bool> {
                if budget == 0 {
                    return Err(Error::Resource("short-cycle enumeration cap reached".into()));
                }
                budget -= 1;
                let edges = map.cycle_edges(cycle).expect("enumerated cycle");
                let status = classify_edges(map, &edges, f_faces, f_faces)?;
                let ok = match mode {
                    ShortCycleMode::NonFContractible => status != CycleStatus::FContractible,
                    ShortCycleMode::NonContractibleNotAlmost => status == CycleStatus::Essential,
                    ShortCycleMode::AlmostContractible => matches!(status, CycleStatus::AlmostContractible(_)),
                };
                if ok {
                    found = Some(CycleClass { cycle: cycle.to_vec(), status });
                }
                Ok(ok)
            };
            if enumerate_cycles(&adj, s, len, &mut path, &mut on, &mut visit)? {
                break;
            }
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Enumerates the cycles of length `len` whose least vertex is `s`, in
/// lexicographic order; stops early when `visit` returns true.
fn enumerate_cycles(
    adj: &[Vec<VertexId>],
    s: VertexId,
    len: usize,
    path: &mut Vec<VertexId>,
    on: &mut [bool],
    visit: &mut dyn FnMut(&[VertexId]) -> Result<bool>,
) -> Result<bool> {
    let u = *path.last().expect("nonempty path");
    if path.len() == len {
        if path[1] < path[len - 1] && adj[u].binary_search(&s).is_ok() {
            return visit(path);
        }
        return Ok(false);
    }
    for &w in &adj[u] {
        if w <= s || on[w] {
            continue;
        }
        on[w] = true;
        path.push(w);
        let stop = enumerate_cycles(adj, s, len, path, on, visit)?;
        path.pop();
        on[w] = false;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}
