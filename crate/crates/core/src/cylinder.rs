//! Plane instances with precolored vertices on at most two faces.
//!
//! The two faces are separated by peeling off the shortest separating
//! cycles nearest to the first face. Each segment between consecutive
//! cycles is solved recursively with the cycle lengths raised by one, and
//! the segment profiles are chained along the cycles.

use crate::colorer::{check_decision_instance, decide_large_ew, large_ew_profile};
use crate::embedding::{CombinatorialMap, DartId, EdgeId, FaceId, SubMap, VertexId};
use crate::error::{Error, Result};
use crate::flow::{cut_cycle, max_flow, reachable_faces, AugmentStrategy, DualFlow, DualView};
use crate::lists::ListAssignment;
use crate::params::{d_max, SolverParams};
use crate::profile::ColoringProfile;

/// A map with its vertices, darts and edges named in a fixed root map.
#[derive(Clone, Debug)]
struct Piece {
    map: CombinatorialMap,
    vertex_origin: Vec<VertexId>,
    dart_origin: Vec<DartId>,
    edge_origin: Vec<EdgeId>,
}

impl Piece {
    fn root(map: CombinatorialMap) -> Self {
        Piece {
            vertex_origin: (0..map.num_vertices()).collect(),
            dart_origin: (0..map.num_darts()).collect(),
            edge_origin: (0..map.num_edges()).collect(),
            map,
        }
    }

    fn sub(&self, s: SubMap) -> Self {
        Piece {
            vertex_origin: s.vertex_origin.iter().map(|&v| self.vertex_origin[v]).collect(),
            dart_origin: s.dart_origin.iter().map(|&d| self.dart_origin[d]).collect(),
            edge_origin: s.edge_origin.iter().map(|&e| self.edge_origin[e]).collect(),
            map: s.map,
        }
    }

    fn view(&self) -> DualView<'_> {
        DualView { map: &self.map, dart_origin: &self.dart_origin, edge_origin: &self.edge_origin }
    }

    fn tracked_here(&self, tracked: &[VertexId]) -> Vec<VertexId> {
        (0..self.map.num_vertices()).filter(|&v| tracked.binary_search(&self.vertex_origin[v]).is_ok()).collect()
    }
}

/// One peeling step: the separating cycle nearest to the source face and
/// the two sides of it, both without the cycle edges.
struct Peel {
    cycle: Vec<VertexId>,
    cycle_edges: Vec<(VertexId, VertexId)>,
    inner: Piece,
    inner_src: Vec<FaceId>,
    inner_dst: Vec<FaceId>,
    outer: Piece,
    outer_src: Vec<FaceId>,
    outer_dst: Vec<FaceId>,
}

/// Max-flow from `f1` to `f2` in a connected plane piece; when it is at
/// most `cap`, also splits the piece along the nearest minimum cut.
fn peel(
    p: &Piece,
    f1: FaceId,
    f2: FaceId,
    flow: &mut DualFlow,
    cap: usize,
    strategy: AugmentStrategy,
) -> Result<(usize, Option<Peel>)> {
    let view = p.view();
    let lambda = max_flow(&view, f1, f2, flow, cap, strategy);
    if lambda > cap {
        return Ok((lambda, None));
    }
    let reach = reachable_faces(&view, f1, flow);
    let (cycle, edges) = cut_cycle(&p.map, &reach)?;
    let m = &p.map;
    let side = |x: DartId| view.side_face(x);
    let split = |want: bool| {
        let kv: Vec<bool> = (0..m.num_vertices()).map(|v| m.vertex_faces(v).iter().any(|&f| reach[f] == want)).collect();
        let ke: Vec<bool> = (0..m.num_edges())
            .map(|e| {
                let [a, b] = m.edge_darts(e);
                reach[side(a)] == want && reach[side(b)] == want
            })
            .collect();
        m.submap(&kv, &ke)
    };
    let r_faces: Vec<FaceId> = (0..m.num_faces()).filter(|&f| reach[f]).collect();
    let n_faces: Vec<FaceId> = (0..m.num_faces()).filter(|&f| !reach[f]).collect();
    let inner = split(true);
    let outer = split(false);
    let peel = Peel {
        cycle: cycle.iter().map(|&v| p.vertex_origin[v]).collect(),
        cycle_edges: edges
            .iter()
            .map(|&e| {
                let (u, w) = m.edge_ends(e);
                (p.vertex_origin[u], p.vertex_origin[w])
            })
            .collect(),
        inner_src: inner.faces_absorbing(&[f1]),
        inner_dst: inner.faces_absorbing(&n_faces),
        outer_src: outer.faces_absorbing(&r_faces),
        outer_dst: outer.faces_absorbing(&[f2]),
        inner: p.sub(inner),
        outer: p.sub(outer),
    };
    Ok((lambda, Some(peel)))
}

struct Solver<'a> {
    lists: &'a ListAssignment,
    params: &'a SolverParams,
    strategy: AugmentStrategy,
    d_max: usize,
}

impl Solver<'_> {
    fn base(&self, p: &Piece, faces: &[FaceId], tracked: &[VertexId]) -> Result<ColoringProfile> {
        let local = p.tracked_here(tracked);
        let mut faces = faces.to_vec();
        faces.sort_unstable();
        faces.dedup();
        let prof = large_ew_profile(&p.map, &faces, &local, &self.lists.pull_back(&p.vertex_origin), self.params)?;
        prof.relabel(|v| p.vertex_origin[v])
    }

    /// Profile of the tracked vertices present in `p`. `src` and `dst`
    /// hold at most one face per component.
    fn solve(
        &self,
        p: &Piece,
        src: &[FaceId],
        dst: &[FaceId],
        tracked: &[VertexId],
        d: usize,
        flow: DualFlow,
    ) -> Result<ColoringProfile> {
        if !p.map.is_connected() {
            let mut acc = ColoringProfile::trivial(true);
            for s in p.map.split_components() {
                let src_c = s.faces_absorbing(src);
                let dst_c = s.faces_absorbing(dst);
                let piece = p.sub(s);
                acc = acc.join(&self.solve(&piece, &src_c, &dst_c, tracked, d, flow.clone())?);
                if acc.is_empty() {
                    break;
                }
            }
            let keep: Vec<VertexId> = p.tracked_here(tracked).iter().map(|&v| p.vertex_origin[v]).collect();
            return if acc.is_empty() { ColoringProfile::new(keep, Vec::new()) } else { acc.project(&keep) };
        }
        let (f1, f2) = match (src.first(), dst.first()) {
            (Some(&a), Some(&b)) if a != b => (a, b),
            _ => return self.base(p, &[src, dst].concat(), tracked),
        };
        if d >= self.d_max {
            return self.base(p, &[f1, f2], tracked);
        }
        let mut flow = flow;
        let (lambda, peeled) = peel(p, f1, f2, &mut flow, self.d_max, self.strategy)?;
        let Some(pl) = peeled else {
            return self.base(p, &[f1, f2], tracked);
        };
        let level = d.max(lambda - 1);
        let mut with_q = tracked.to_vec();
        with_q.extend(&pl.cycle);
        with_q.sort_unstable();
        with_q.dedup();
        let pos = |prof: &ColoringProfile, v: VertexId| prof.boundary().iter().position(|&x| x == v);
        let segment = self.solve(&pl.inner, &pl.inner_src, &pl.inner_dst, &with_q, level + 1, DualFlow::default())?;
        let segment = segment.filter(|c| {
            pl.cycle_edges.iter().all(|&(u, w)| match (pos(&segment, u), pos(&segment, w)) {
                (Some(i), Some(j)) => c[i] != c[j],
                _ => true,
            })
        });
        if segment.is_empty() {
            let keep: Vec<VertexId> = p.tracked_here(tracked).iter().map(|&v| p.vertex_origin[v]).collect();
            return ColoringProfile::new(keep, Vec::new());
        }
        let rest = self.solve(&pl.outer, &pl.outer_src, &pl.outer_dst, &with_q, level, flow)?;
        let keep: Vec<VertexId> = p.tracked_here(tracked).iter().map(|&v| p.vertex_origin[v]).collect();
        segment.join(&rest).project(&keep)
    }
}

fn plane_root(map: &CombinatorialMap) -> Result<CombinatorialMap> {
    if map.components().iter().any(|c| c.euler_genus != 0) {
        return Err(Error::Precondition("the map is not plane".into()));
    }
    map.untwisted().ok_or_else(|| Error::Precondition("the map is not orientable".into()))
}

/// Profile over `boundary` of a plane map where every boundary vertex lies
/// on `f1` or `f2`. `d` is the length below which no cycle separates the
/// two faces; it only bounds the recursion depth.
pub fn cylinder_profile(
    map: &CombinatorialMap,
    f1: FaceId,
    f2: FaceId,
    boundary: &[VertexId],
    lists: &ListAssignment,
    d: usize,
    params: &SolverParams,
) -> Result<ColoringProfile> {
    cylinder_profile_with(map, f1, f2, boundary, lists, d, params, AugmentStrategy::Bfs)
}

#[allow(clippy::too_many_arguments)]
pub fn cylinder_profile_with(
    map: &CombinatorialMap,
    f1: FaceId,
    f2: FaceId,
    boundary: &[VertexId],
    lists: &ListAssignment,
    d: usize,
    params: &SolverParams,
    strategy: AugmentStrategy,
) -> Result<ColoringProfile> {
    let root = Piece::root(plane_root(map)?);
    for &f in &[f1, f2] {
        if f >= map.num_faces() {
            return Err(Error::Precondition(format!("face {f} does not exist")));
        }
    }
    for &v in boundary {
        if !map.vertex_faces(v).iter().any(|&f| f == f1 || f == f2) {
            return Err(Error::Precondition(format!("boundary vertex {v} is not on either face")));
        }
    }
    let mut tracked = boundary.to_vec();
    tracked.sort_unstable();
    tracked.dedup();
    let solver = Solver { lists, params, strategy, d_max: d_max() };
    let prof = solver.solve(&root, &[f1], &[f2], &tracked, d, DualFlow::default())?;
    prof.project(boundary)
}

/// Decides L-colorability of a plane map with S on at most two faces,
/// assuming every cycle of length at most `d` that separates them is
/// absent.
pub fn algorithm_a_d(
    map: &CombinatorialMap,
    faces: &[FaceId],
    s: &[VertexId],
    lists: &ListAssignment,
    d: usize,
    params: &SolverParams,
) -> Result<bool> {
    check_decision_instance(map, faces, s, lists)?;
    plane_root(map)?;
    if !(4..=d_max()).contains(&d) {
        return Err(Error::Precondition(format!("d = {d} is outside 4..={}", d_max())));
    }
    let mut faces = faces.to_vec();
    faces.sort_unstable();
    faces.dedup();
    if faces.len() > 2 {
        return Err(Error::Precondition("at most two faces may carry precolored vertices".into()));
    }
    if faces.len() <= 1 {
        return decide_large_ew(map, &faces, s, lists, params);
    }
    let mut in_s = vec![false; map.num_vertices()];
    for &v in s {
        in_s[v] = true;
    }
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
    let marked = sub.faces_absorbing(&faces);
    for comp in sub.map.split_components() {
        let origin: Vec<VertexId> = comp.vertex_origin.iter().map(|&v| sub.vertex_origin[v]).collect();
        let s_c: Vec<VertexId> = (0..origin.len()).filter(|&v| in_s[origin[v]]).collect();
        let f_c: Vec<FaceId> = comp
            .faces_absorbing(&marked)
            .into_iter()
            .filter(|&f| comp.map.face_vertices(f).iter().any(|&v| in_s[origin[v]]))
            .collect();
        let l_c = lists.pull_back(&origin);
        let prof = match f_c.as_slice() {
            [f1, f2] => cylinder_profile(&comp.map, *f1, *f2, &s_c, &l_c, d, params)?,
            _ => large_ew_profile(&comp.map, &f_c, &s_c, &l_c, params)?,
        };
        if prof.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cycles of length `length` peeled off between `f1` and `f2`, nearest
/// to `f1` first, and the vertex sets of the segments between them.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PeelSequence {
    pub flow: usize,
    pub cycles: Vec<Vec<VertexId>>,
    pub segments: Vec<Vec<VertexId>>,
}

pub fn peel_sequence(map: &CombinatorialMap, f1: FaceId, f2: FaceId, length: usize) -> Result<PeelSequence> {
    let mut cur = Piece::root(plane_root(map)?);
    if f1 == f2 || f1 >= map.num_faces() || f2 >= map.num_faces() {
        return Err(Error::Precondition("need two distinct faces".into()));
    }
    let (mut src, mut dst) = (vec![f1], vec![f2]);
    let mut flow = DualFlow::default();
    let mut out = PeelSequence { flow: 0, cycles: Vec::new(), segments: Vec::new() };
    loop {
        // Components away from the target face sit inside the segment
        // being peeled.
        let mut stray = Vec::new();
        let mut main = None;
        for s in cur.map.split_components() {
            let (a, b) = (s.faces_absorbing(&src), s.faces_absorbing(&dst));
            let piece = cur.sub(s);
            match (a.first(), b.first()) {
                (Some(&x), Some(&y)) if x != y && main.is_none() => main = Some((piece, x, y)),
                _ => stray.extend(piece.vertex_origin),
            }
        }
        let Some((piece, x, y)) = main else {
            stray.sort_unstable();
            out.segments.push(stray);
            return Ok(out);
        };
        let (lambda, peeled) = peel(&piece, x, y, &mut flow, length, AugmentStrategy::Bfs)?;
        if out.cycles.is_empty() {
            out.flow = lambda;
        }
        match peeled {
            Some(pl) if lambda == length => {
                stray.extend(&pl.inner.vertex_origin);
                stray.sort_unstable();
                stray.dedup();
                out.segments.push(stray);
                out.cycles.push(pl.cycle);
                src = pl.outer_src;
                dst = pl.outer_dst;
                cur = pl.outer;
            }
            _ => {
                stray.extend(piece.vertex_origin);
                stray.sort_unstable();
                out.segments.push(stray);
                return Ok(out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{concentric_rings, cycle_map};
    use crate::oracle::brute_profile;

    fn ring_faces(m: &CombinatorialMap, n: usize, rings: usize) -> (FaceId, FaceId) {
        let inner = (0..m.num_faces()).find(|&f| m.face(f).len() == n && m.face_vertices(f).iter().all(|&v| v < n)).unwrap();
        let lo = n * (rings - 1);
        let outer = (0..m.num_faces()).find(|&f| m.face(f).len() == n && m.face_vertices(f).iter().all(|&v| v >= lo)).unwrap();
        (inner, outer)
    }

    #[test]
    fn c5_peels_once() {
        let m = cycle_map(5);
        let seq = peel_sequence(&m, 0, 1, 5).unwrap();
        assert_eq!(seq.cycles, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(seq.segments, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 3, 4]]);
        assert!(peel_sequence(&m, 0, 1, 4).unwrap().cycles.is_empty());
    }

    #[test]
    fn rings_peel_every_ring() {
        let m = concentric_rings(10, 3, 5);
        let (a, b) = ring_faces(&m, 10, 3);
        let seq = peel_sequence(&m, a, b, 10).unwrap();
        assert_eq!(seq.flow, 10);
        assert_eq!(seq.cycles.len(), 3);
        assert_eq!(seq.cycles[0], (0..10).collect::<Vec<_>>());
        assert_eq!(seq.cycles[2], (20..30).collect::<Vec<_>>());
    }

    #[test]
    fn profiles_match_brute_force() {
        let m = concentric_rings(10, 2, 5);
        let (a, b) = ring_faces(&m, 10, 2);
        let l = ListAssignment::uniform(20, &[1, 2, 3]);
        let params = SolverParams::default();
        let boundary = [0, 3, 12, 17];
        let want = brute_profile(&m, &l, &boundary, 40).unwrap();
        for strategy in [AugmentStrategy::Bfs, AugmentStrategy::Dfs] {
            let got = cylinder_profile_with(&m, a, b, &boundary, &l, 4, &params, strategy).unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn decides_two_face_instances() {
        let m = concentric_rings(10, 2, 5);
        let (a, b) = ring_faces(&m, 10, 2);
        let params = SolverParams::default();
        let mut l = ListAssignment::uniform(20, &[1, 2, 3]);
        l.precolor(0, 1);
        l.precolor(10, 2);
        assert!(algorithm_a_d(&m, &[a, b], &[0, 10], &l, 4, &params).unwrap());
        let mut bad = l.clone();
        bad.precolor(1, 1);
        assert!(!algorithm_a_d(&m, &[a, b], &[0, 1, 10], &bad, 4, &params).unwrap());
    }
}
