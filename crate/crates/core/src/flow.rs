//! Unit-capacity max-flow between two faces in the dual of a plane map.
//!
//! Flow is stored per edge as the dart on whose side it enters the edge,
//! both given in the ids of a fixed ancestor map. Submaps keep those ids,
//! so a flow computed on one map can be inherited by its submaps.

use std::collections::{HashMap, VecDeque};

use crate::embedding::{CombinatorialMap, DartId, EdgeId, FaceId, Step, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AugmentStrategy {
    /// Shortest augmenting paths.
    Bfs,
    Dfs,
}

/// A map together with dart and edge ids in an ancestor map.
#[derive(Clone, Copy)]
pub struct DualView<'a> {
    pub map: &'a CombinatorialMap,
    pub dart_origin: &'a [DartId],
    pub edge_origin: &'a [EdgeId],
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualFlow {
    /// Ancestor edge → ancestor dart whose side the flow leaves from.
    dir: HashMap<EdgeId, DartId>,
}

/// One residual arc: crossing edge `e` from the side of dart `side`.
struct Arc {
    to: FaceId,
    edge: EdgeId,
    side: DartId,
    back: DartId,
}

impl DualView<'_> {
    /// Dart of the side of face `s` belongs to.
    fn side_dart(&self, s: Step) -> DartId {
        if s.reversed {
            self.map.twin(s.dart)
        } else {
            s.dart
        }
    }

    /// Face on the side of dart `x`.
    pub fn side_face(&self, x: DartId) -> FaceId {
        self.map.corner_face(self.map.prev(x))
    }

    fn arcs(&self, f: FaceId) -> Vec<Arc> {
        let mut out = Vec::new();
        for &s in &self.map.face(f).walk {
            let x = self.side_dart(s);
            let y = self.map.twin(x);
            let to = self.side_face(y);
            if to == f {
                continue;
            }
            out.push(Arc {
                to,
                edge: self.edge_origin[self.map.edge_of(x)],
                side: self.dart_origin[x],
                back: self.dart_origin[y],
            });
        }
        out
    }
}

impl DualFlow {
    fn can_push(&self, a: &Arc) -> bool {
        self.dir.get(&a.edge) != Some(&a.side)
    }

    fn push(&mut self, a: &Arc) {
        if self.dir.get(&a.edge) == Some(&a.back) {
            self.dir.remove(&a.edge);
        } else {
            self.dir.insert(a.edge, a.side);
        }
    }

    /// Net flow leaving face `f`.
    pub fn outflow(&self, view: &DualView, f: FaceId) -> i64 {
        view.arcs(f)
            .iter()
            .map(|a| match self.dir.get(&a.edge) {
                Some(&d) if d == a.side => 1,
                Some(&d) if d == a.back => -1,
                _ => 0,
            })
            .sum()
    }
}

/// Augments `flow` from `src` to `dst` until it reaches `cap + 1` or is
/// maximum; returns the flow value (at most `cap + 1`).
pub fn max_flow(
    view: &DualView,
    src: FaceId,
    dst: FaceId,
    flow: &mut DualFlow,
    cap: usize,
    strategy: AugmentStrategy,
) -> usize {
    let mut value = flow.outflow(view, src).max(0) as usize;
    let nf = view.map.num_faces();
    let arcs: Vec<Vec<Arc>> = (0..nf).map(|f| view.arcs(f)).collect();
    while value <= cap {
        let mut pred: Vec<Option<(FaceId, usize)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[src] = true;
        let mut frontier = VecDeque::from([src]);
        while let Some(f) = match strategy {
            AugmentStrategy::Bfs => frontier.pop_front(),
            AugmentStrategy::Dfs => frontier.pop_back(),
        } {
            if f == dst {
                break;
            }
            for (k, a) in arcs[f].iter().enumerate() {
                if !seen[a.to] && flow.can_push(a) {
                    seen[a.to] = true;
                    pred[a.to] = Some((f, k));
                    frontier.push_back(a.to);
                }
            }
        }
        if !seen[dst] {
            break;
        }
        let mut x = dst;
        while let Some((f, k)) = pred[x] {
            flow.push(&arcs[f][k]);
            x = f;
        }
        value += 1;
    }
    value
}

/// Faces reachable from `src` in the residual graph.
pub fn reachable_faces(view: &DualView, src: FaceId, flow: &DualFlow) -> Vec<bool> {
    let mut seen = vec![false; view.map.num_faces()];
    seen[src] = true;
    let mut queue = VecDeque::from([src]);
    while let Some(f) = queue.pop_front() {
        for a in view.arcs(f) {
            if !seen[a.to] && flow.can_push(&a) {
                seen[a.to] = true;
                queue.push_back(a.to);
            }
        }
    }
    seen
}

/// The edges between reachable and unreachable faces, checked to form a
/// single simple cycle; returns its vertices (least vertex first, then
/// its smaller cycle neighbour) and edges.
pub fn cut_cycle(map: &CombinatorialMap, reach: &[bool]) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
    let side = |x: DartId| map.corner_face(map.prev(x));
    let cut: Vec<EdgeId> = (0..map.num_edges())
        .filter(|&e| {
            let [a, b] = map.edge_darts(e);
            reach[side(a)] != reach[side(b)]
        })
        .collect();
    let mut inc: HashMap<VertexId, Vec<(VertexId, EdgeId)>> = HashMap::new();
    for &e in &cut {
        let (u, w) = map.edge_ends(e);
        inc.entry(u).or_default().push((w, e));
        inc.entry(w).or_default().push((u, e));
    }
    let bad = || Error::NotACycle(format!("dual cut {cut:?} is not a simple cycle"));
    if cut.is_empty() || inc.values().any(|l| l.len() != 2) {
        return Err(bad());
    }
    let start = *inc.keys().min().expect("nonempty");
    let nb = &inc[&start];
    let first = if nb[0].0 <= nb[1].0 { nb[0] } else { nb[1] };
    let mut cycle = vec![start];
    let mut edges = vec![first.1];
    let (mut prev_e, mut cur) = (first.1, first.0);
    while cur != start {
        cycle.push(cur);
        let &(nx, e) = inc[&cur].iter().find(|&&(_, e)| e != prev_e).ok_or_else(bad)?;
        edges.push(e);
        prev_e = e;
        cur = nx;
    }
    if cycle.len() != cut.len() {
        return Err(bad());
    }
    Ok((cycle, edges))
}

/// Result of [`shortest_separating_cycle`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Separation {
    /// Flow value, capped at `cap + 1`.
    pub flow: usize,
    /// The separating cycle nearest to `f1`, when the flow is at most `cap`.
    pub cycle: Option<Vec<VertexId>>,
}

/// Shortest cycle separating faces `f1` and `f2` of a plane map, found as
/// the minimum dual cut nearest to `f1`.
pub fn shortest_separating_cycle(
    map: &CombinatorialMap,
    f1: FaceId,
    f2: FaceId,
    cap: usize,
) -> Result<Separation> {
    separating_cycle_with(map, f1, f2, cap, AugmentStrategy::Bfs)
}

pub fn separating_cycle_with(
    map: &CombinatorialMap,
    f1: FaceId,
    f2: FaceId,
    cap: usize,
    strategy: AugmentStrategy,
) -> Result<Separation> {
    if map.euler_genus() != 0 {
        return Err(Error::Precondition("separating cycles are computed on the sphere only".into()));
    }
    if f1 == f2 || f1 >= map.num_faces() || f2 >= map.num_faces() {
        return Err(Error::Precondition("need two distinct faces".into()));
    }
    let plain = map.untwisted().ok_or_else(|| Error::Precondition("map is not orientable".into()))?;
    let darts: Vec<DartId> = (0..plain.num_darts()).collect();
    let edges: Vec<EdgeId> = (0..plain.num_edges()).collect();
    let view = DualView { map: &plain, dart_origin: &darts, edge_origin: &edges };
    let mut flow = DualFlow::default();
    let value = max_flow(&view, f1, f2, &mut flow, cap, strategy);
    if value > cap {
        return Ok(Separation { flow: value, cycle: None });
    }
    let reach = reachable_faces(&view, f1, &flow);
    let (cycle, _) = cut_cycle(&plain, &reach)?;
    Ok(Separation { flow: value, cycle: Some(cycle) })
}
