//! Deciding L-colorability on arbitrary surfaces by cutting along short
//! essential cycles, peeling collars around the marked faces and solving
//! the rest by truncation.

use serde::Serialize;

use crate::colorer::{check_decision_instance, large_ew_profile};
use crate::cylinder::cylinder_profile;
use crate::embedding::{CombinatorialMap, EdgeId, FaceId, SubMap, VertexId};
use crate::error::{Error, Result};
use crate::lists::{Color, Coloring, ListAssignment};
use crate::oracle::boundary_colorings;
use crate::params::SolverParams;
use crate::profile::ColoringProfile;
use crate::topology::{cut_along, disk_side, find_short_cycle, CycleStatus, ShortCycleMode, Subgraph};

/// A decision instance: S lies on the faces of F and carries singleton
/// lists, every other vertex has a list of size three.
#[derive(Clone, Debug)]
pub struct SolverInstance {
    pub map: CombinatorialMap,
    pub faces: Vec<FaceId>,
    pub s: Vec<VertexId>,
    pub lists: ListAssignment,
    pub params: SolverParams,
}

impl SolverInstance {
    pub fn new(
        map: CombinatorialMap,
        faces: Vec<FaceId>,
        s: Vec<VertexId>,
        lists: ListAssignment,
        params: SolverParams,
    ) -> Result<Self> {
        check_decision_instance(&map, &faces, &s, &lists)?;
        Ok(SolverInstance { map, faces, s, lists, params })
    }

    pub fn genus(&self) -> usize {
        self.map.euler_genus()
    }
}

/// Counters describing one run of [`decide_traced`].
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Trace {
    pub components: usize,
    pub cylinder_calls: usize,
    pub essential_cuts: usize,
    pub branches: usize,
    pub collars: usize,
    pub core_calls: usize,
    pub max_depth: usize,
}

pub fn decide(instance: &SolverInstance) -> Result<bool> {
    decide_traced(instance).map(|(answer, _)| answer)
}

pub fn decide_traced(instance: &SolverInstance) -> Result<(bool, Trace)> {
    let SolverInstance { map, faces, s, lists, params } = instance;
    check_decision_instance(map, faces, s, lists)?;
    if let Some(c) = map.components().iter().find(|c| c.euler_genus > params.max_genus) {
        return Err(Error::Resource(format!(
            "Euler genus {} exceeds the configured maximum {}",
            c.euler_genus, params.max_genus
        )));
    }
    let mut faces = faces.clone();
    faces.sort_unstable();
    faces.dedup();
    if faces.len() > params.max_faces {
        return Err(Error::Resource(format!(
            "{} marked faces exceed the configured maximum {}",
            faces.len(),
            params.max_faces
        )));
    }
    let mut solver = Solver { params, trace: Trace::default() };
    let answer = solver.solve(map, &faces, s, lists, 0)?;
    Ok((answer, solver.trace))
}

struct Solver<'a> {
    params: &'a SolverParams,
    trace: Trace,
}

fn marks(n: usize, vs: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

/// Faces among `faces` with a vertex of S on them.
fn occupied(map: &CombinatorialMap, faces: &[FaceId], in_s: &[bool]) -> Vec<FaceId> {
    let mut out: Vec<FaceId> =
        faces.iter().copied().filter(|&f| map.face_vertices(f).iter().any(|&v| in_s[v])).collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl Solver<'_> {
    /// Removes S–S edges, splits into components and solves each.
    fn solve(
        &mut self,
        map: &CombinatorialMap,
        faces: &[FaceId],
        s: &[VertexId],
        lists: &ListAssignment,
        depth: usize,
    ) -> Result<bool> {
        self.trace.max_depth = self.trace.max_depth.max(depth);
        let in_s = marks(map.num_vertices(), s);
        let mut drop = vec![false; map.num_edges()];
        for e in 0..map.num_edges() {
            let (u, w) = map.edge_ends(e);
            if in_s[u] && in_s[w] {
                if lists.list(u) == lists.list(w) {
                    return Ok(false);
                }
                drop[e] = true;
            }
        }
        let sub = map.without_edges(&drop);
        let sub_faces = sub.faces_absorbing(faces);
        for comp in sub.map.split_components() {
            self.trace.components += 1;
            let origin: Vec<VertexId> = comp.vertex_origin.iter().map(|&v| sub.vertex_origin[v]).collect();
            let in_s_c: Vec<bool> = origin.iter().map(|&v| in_s[v]).collect();
            let s_c: Vec<VertexId> = (0..origin.len()).filter(|&v| in_s_c[v]).collect();
            let faces_c = occupied(&comp.map, &comp.faces_absorbing(&sub_faces), &in_s_c);
            if !self.solve_connected(&comp.map, &faces_c, &s_c, &lists.pull_back(&origin), depth)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn solve_connected(
        &mut self,
        map: &CombinatorialMap,
        faces: &[FaceId],
        s: &[VertexId],
        lists: &ListAssignment,
        depth: usize,
    ) -> Result<bool> {
        let g = map.euler_genus();
        let k = faces.len();
        if g == 0 && k <= 2 {
            self.trace.cylinder_calls += 1;
            let prof = if k == 2 {
                cylinder_profile(map, faces[0], faces[1], s, lists, 4, self.params)?
            } else {
                large_ew_profile(map, faces, s, lists, self.params)?
            };
            return Ok(!prof.is_empty());
        }
        let bound = self.params.short_cycle_bound(g, k);
        if let Some(q) = find_short_cycle(map, faces, bound, ShortCycleMode::NonContractibleNotAlmost)? {
            return self.branch(map, faces, s, lists, &q.cycle, depth);
        }
        let prof = self.peel_collars(map, faces, s, lists, bound, k)?;
        Ok(!prof.is_empty())
    }

    /// Fixes each coloring of the essential cycle `q` in turn and solves
    /// the pieces of the map cut along it.
    fn branch(
        &mut self,
        map: &CombinatorialMap,
        faces: &[FaceId],
        s: &[VertexId],
        lists: &ListAssignment,
        q: &[VertexId],
        depth: usize,
    ) -> Result<bool> {
        self.trace.essential_cuts += 1;
        let measure = (map.euler_genus(), faces.len());
        let edges = map.cycle_edges(q).ok_or_else(|| Error::NotACycle(format!("{q:?}")))?;
        let cut = cut_along(map, &Subgraph::from_edges(map, &edges))?;
        let mut s_and_q = s.to_vec();
        s_and_q.extend_from_slice(q);
        let s_cut = cut.lift_vertices(&s_and_q);
        let in_s_cut = marks(cut.map.num_vertices(), &s_cut);
        let mut f_cut = cut.lift_faces(faces);
        f_cut.extend_from_slice(&cut.caps);
        for psi in boundary_colorings(map, lists, q) {
            self.trace.branches += 1;
            let mut l = cut.pull_lists(lists);
            for (&v, &c) in q.iter().zip(&psi) {
                for &copy in &cut.copies[v] {
                    l.precolor(copy, c);
                }
            }
            let mut all = true;
            for piece in &cut.pieces {
                let in_s_p: Vec<bool> = piece.vertex_origin.iter().map(|&v| in_s_cut[v]).collect();
                let s_p: Vec<VertexId> = (0..in_s_p.len()).filter(|&v| in_s_p[v]).collect();
                let f_p = occupied(&piece.map, &piece.faces_absorbing(&f_cut), &in_s_p);
                if (piece.map.euler_genus(), f_p.len()) >= measure {
                    return Err(Error::Precondition(format!(
                        "cutting along {q:?} did not simplify the instance (measure {measure:?})"
                    )));
                }
                if !self.solve(&piece.map, &f_p, &s_p, &l.pull_back(&piece.vertex_origin), depth + 1)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Profile of `tracked` (vertices on faces of F) once no short cycle is
    /// essential: collars between an almost contractible cycle and the face
    /// it surrounds are cut off and solved as cylinders, the rest by
    /// truncation.
    fn peel_collars(
        &mut self,
        map: &CombinatorialMap,
        faces: &[FaceId],
        tracked: &[VertexId],
        lists: &ListAssignment,
        bound: usize,
        s_count: usize,
    ) -> Result<ColoringProfile> {
        let found = find_short_cycle(map, faces, bound, ShortCycleMode::AlmostContractible)?;
        let Some(q) = found else {
            self.trace.core_calls += 1;
            let g = map.euler_genus();
            let radius = self.params.truncation_radius(g, s_count, tracked.len());
            return core_profile(map, faces, tracked, lists, self.params, radius);
        };
        let CycleStatus::AlmostContractible(b) = q.status else {
            unreachable!("almost contractible search returned {:?}", q.status)
        };
        self.trace.collars += 1;
        let edges = map.cycle_edges(&q.cycle).ok_or_else(|| Error::NotACycle(format!("{:?}", q.cycle)))?;
        let (side_v, side_e) = disk_side(map, &edges, b, faces)?
            .ok_or_else(|| Error::NotACycle(format!("{:?} has no disk side around face {b}", q.cycle)))?;
        let in_q = marks(map.num_vertices(), &q.cycle);
        let in_side = marks(map.num_vertices(), &side_v);
        let mut side_edge = vec![false; map.num_edges()];
        for &e in &side_e {
            side_edge[e] = true;
        }
        let mut with_q = tracked.to_vec();
        with_q.extend_from_slice(&q.cycle);
        with_q.sort_unstable();
        with_q.dedup();

        // The collar: the disk side with the cycle, between b and Q.
        let collar = map.submap(&in_side, &side_edge);
        let inside_faces: Vec<FaceId> = (0..map.num_faces())
            .filter(|&f| map.face(f).walk.iter().all(|st| side_edge[map.edge_of(st.dart)]) && !map.face(f).is_empty())
            .collect();
        let fb = collar.faces_absorbing(&[b]);
        let outer: Vec<FaceId> = (0..collar.map.num_faces())
            .filter(|&f| collar.face_absorbs[f].iter().any(|g| !inside_faces.contains(g)))
            .collect();
        let collar_tracked = local_list(&collar, &with_q);
        self.trace.cylinder_calls += 1;
        let collar_lists = lists.pull_back(&collar.vertex_origin);
        let collar_prof = match (fb.as_slice(), outer.as_slice()) {
            ([f1], [f2]) if f1 != f2 => {
                cylinder_profile(&collar.map, *f1, *f2, &collar_tracked, &collar_lists, 4, self.params)?
            }
            _ => {
                let mut fs = fb.clone();
                fs.extend(&outer);
                fs.sort_unstable();
                fs.dedup();
                large_ew_profile(&collar.map, &fs, &collar_tracked, &collar_lists, self.params)?
            }
        };
        let collar_prof = collar_prof.relabel(|v| collar.vertex_origin[v])?;
        if collar_prof.is_empty() {
            return ColoringProfile::new(tracked.to_vec(), Vec::new());
        }

        // The rest: drop the collar interior and the cycle edges.
        let keep_v: Vec<bool> = (0..map.num_vertices()).map(|v| !in_side[v] || in_q[v]).collect();
        let keep_e: Vec<bool> = side_edge.iter().map(|&x| !x).collect();
        let rest = map.submap(&keep_v, &keep_e);
        let touched: Vec<FaceId> = (0..map.num_faces())
            .filter(|&f| map.face(f).walk.iter().any(|st| side_edge[map.edge_of(st.dart)]))
            .collect();
        let mut rest_faces = rest.faces_absorbing(faces);
        rest_faces.extend(rest.faces_absorbing(&touched));
        rest_faces.sort_unstable();
        rest_faces.dedup();
        let rest_tracked = local_list(&rest, &with_q);
        let rest_prof = self.peel_collars(
            &rest.map,
            &rest_faces,
            &rest_tracked,
            &lists.pull_back(&rest.vertex_origin),
            bound,
            s_count,
        )?;
        let rest_prof = rest_prof.relabel(|v| rest.vertex_origin[v])?;
        collar_prof.join(&rest_prof).project(tracked)
    }
}

fn local_list(sub: &SubMap, vs: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = vs.iter().filter_map(|&v| sub.vertex_index[v]).collect();
    out.sort_unstable();
    out
}

/// Truncation profile for a map without short essential or almost
/// contractible cycles, with the radius fixed by the caller.
fn core_profile(
    map: &CombinatorialMap,
    faces: &[FaceId],
    tracked: &[VertexId],
    lists: &ListAssignment,
    params: &SolverParams,
    radius: usize,
) -> Result<ColoringProfile> {
    let mut p = params.clone();
    p.radius_override = Some(radius);
    large_ew_profile(map, faces, tracked, lists, &p)
}

/// Adds a pendant edge at `u` leading to a new vertex; returns the map and
/// the new edge.
fn with_pendant(map: &CombinatorialMap, u: VertexId) -> (CombinatorialMap, EdgeId) {
    let mut rotations = map.rotations().to_vec();
    let mut edges = map.edge_table();
    let (a, b) = (map.num_darts(), map.num_darts() + 1);
    edges.push((a, b, false));
    rotations[u].push(a);
    rotations.push(vec![b]);
    let m = CombinatorialMap::new(rotations, &edges).expect("pendant insertion keeps the map valid");
    (m, map.num_edges())
}

/// Whether a precolored subgraph extends: Q is reduced to a spanning
/// forest, components with fewer than three edges are padded by pendant
/// precolored paths, and the map is cut along Q so that each component
/// becomes a marked face.
pub fn decide_precolored_subgraph(
    map: &CombinatorialMap,
    q: &Subgraph,
    lists: &ListAssignment,
    params: &SolverParams,
) -> Result<bool> {
    let n = map.num_vertices();
    if lists.len() != n || q.vertices.len() != n || q.edges.len() != map.num_edges() {
        return Err(Error::Precondition("subgraph or lists do not match the map".into()));
    }
    for v in 0..n {
        let want = if q.vertices[v] { 1 } else { 3 };
        if lists.list(v).len() != want {
            return Err(Error::Precondition(format!(
                "vertex {v} has {} colors, expected {want}",
                lists.list(v).len()
            )));
        }
    }
    if !map.has_girth_at_least(5) {
        return Err(Error::Precondition("the graph has a cycle of length at most four".into()));
    }
    for e in q.edge_list() {
        let (u, w) = map.edge_ends(e);
        if !q.vertices[u] || !q.vertices[w] {
            return Err(Error::Precondition(format!("edge {e} of Q has an end outside Q")));
        }
    }
    // Spanning forest of Q.
    let mut parent: Vec<VertexId> = (0..n).collect();
    fn find(p: &mut [VertexId], x: VertexId) -> VertexId {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut forest = Vec::new();
    for e in q.edge_list() {
        let (u, w) = map.edge_ends(e);
        let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
        if ru != rw {
            parent[ru] = rw;
            forest.push(e);
        }
    }
    let mut size = vec![0usize; n];
    for &e in &forest {
        let (u, _) = map.edge_ends(e);
        let r = find(&mut parent, u);
        size[r] += 1;
    }
    let mut map = map.clone();
    let mut lists_v: Vec<Vec<Color>> = lists.lists().to_vec();
    for v in q.vertex_list() {
        if find(&mut parent, v) != v {
            continue;
        }
        let mut tip = v;
        for _ in size[v]..3 {
            let (m, e) = with_pendant(&map, tip);
            let c = lists_v[tip][0] % 3 + 1;
            lists_v.push(vec![c]);
            forest.push(e);
            tip = m.num_vertices() - 1;
            map = m;
        }
    }
    let lists = ListAssignment::new(lists_v)?;
    let cut = cut_along(&map, &Subgraph::from_edges(&map, &forest))?;
    let q_vertices: Vec<VertexId> = (0..map.num_vertices()).filter(|&v| lists.list(v).len() == 1).collect();
    let s = cut.lift_vertices(&q_vertices);
    let instance = SolverInstance {
        map: cut.map.clone(),
        faces: cut.caps.clone(),
        s,
        lists: cut.pull_lists(&lists),
        params: params.clone(),
    };
    decide(&instance)
}

/// An L-coloring extending the precoloring of Q, built one vertex at a
/// time: each uncolored vertex next to Q is fixed to the first color for
/// which the instance stays colorable.
pub fn find_coloring(
    map: &CombinatorialMap,
    q: &Subgraph,
    lists: &ListAssignment,
    params: &SolverParams,
) -> Result<Option<Coloring>> {
    if !decide_precolored_subgraph(map, q, lists, params)? {
        return Ok(None);
    }
    let n = map.num_vertices();
    let mut q = q.clone();
    let mut lists = lists.clone();
    while let Some(v) = next_vertex(map, &q) {
        let link = map.rotation(v).iter().map(|&d| map.edge_of(d)).find(|&e| {
            let (a, b) = map.edge_ends(e);
            q.vertices[if a == v { b } else { a }]
        });
        let mut fixed = false;
        for c in lists.list(v).to_vec() {
            let mut l = lists.clone();
            l.precolor(v, c);
            let mut q2 = q.clone();
            q2.vertices[v] = true;
            if let Some(e) = link {
                q2.edges[e] = true;
            }
            if decide_precolored_subgraph(map, &q2, &l, params)? {
                lists = l;
                q = q2;
                fixed = true;
                break;
            }
        }
        if !fixed {
            return Err(Error::Precondition(format!("no color of vertex {v} extends, though the instance is colorable")));
        }
    }
    Ok(Some((0..n).map(|v| lists.list(v)[0]).collect()))
}

/// The least uncolored vertex adjacent to Q, or the least uncolored vertex.
fn next_vertex(map: &CombinatorialMap, q: &Subgraph) -> Option<VertexId> {
    let n = map.num_vertices();
    (0..n)
        .find(|&v| !q.vertices[v] && map.neighbors(v).any(|w| q.vertices[w]))
        .or_else(|| (0..n).find(|&v| !q.vertices[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_map, dodecahedron, petersen_projective};

    fn instance(map: CombinatorialMap, faces: Vec<FaceId>, s: Vec<VertexId>, lists: ListAssignment) -> SolverInstance {
        SolverInstance::new(map, faces, s, lists, SolverParams::default()).unwrap()
    }

    #[test]
    fn planar_without_precoloring() {
        let m = dodecahedron();
        assert!(decide(&instance(m, vec![], vec![], ListAssignment::uniform(20, &[1, 2, 3]))).unwrap());
    }

    #[test]
    fn adjacent_equal_precolors() {
        let m = cycle_map(5);
        let mut l = ListAssignment::uniform(5, &[1, 2, 3]);
        l.precolor(0, 2);
        l.precolor(1, 2);
        assert!(!decide(&instance(m, vec![0], vec![0, 1], l)).unwrap());
    }

    #[test]
    fn petersen_on_the_projective_plane() {
        let m = petersen_projective();
        let l = ListAssignment::uniform(10, &[1, 2, 3]);
        assert!(decide(&instance(m.clone(), vec![], vec![], l.clone())).unwrap());
        let two = ListAssignment::uniform(10, &[1, 2]);
        let err = SolverInstance::new(m, vec![], vec![], two, SolverParams::default());
        assert!(err.is_err());
    }

    #[test]
    fn subgraph_precoloring() {
        let m = dodecahedron();
        let mut l = ListAssignment::uniform(20, &[1, 2, 3]);
        l.precolor(0, 1);
        let mut q = Subgraph::empty(&m);
        q.vertices[0] = true;
        assert!(decide_precolored_subgraph(&m, &q, &l, &SolverParams::default()).unwrap());
        let w = m.neighbors(0).next().unwrap();
        l.precolor(w, 1);
        q.vertices[w] = true;
        assert!(!decide_precolored_subgraph(&m, &q, &l, &SolverParams::default()).unwrap());
    }

    #[test]
    fn coloring_construction() {
        let m = dodecahedron();
        let l = ListAssignment::uniform(20, &[1, 2, 3]);
        let q = Subgraph::empty(&m);
        let c = find_coloring(&m, &q, &l, &SolverParams::default()).unwrap().unwrap();
        assert!(crate::lists::is_proper_coloring(&m, &l, &c));
    }
}
