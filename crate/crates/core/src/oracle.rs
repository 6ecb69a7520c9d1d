//! Brute-force ground truth and random test instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{CombinatorialMap, FaceId, VertexId};
use crate::error::{Error, Result};
use crate::generate::{random_girth5_map, random_lists, Surface};
use crate::lists::{Color, Coloring, ListAssignment};
use crate::profile::ColoringProfile;

pub const DEFAULT_ORACLE_CAP: usize = 20;

fn simple_adjacency(map: &CombinatorialMap) -> Vec<Vec<VertexId>> {
    (0..map.num_vertices())
        .map(|v| {
            let mut l: Vec<VertexId> = map.neighbors(v).collect();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect()
}

fn check_cap(map: &CombinatorialMap, cap: usize) -> Result<()> {
    if map.num_vertices() > cap {
        Err(Error::Resource(format!("oracle limited to {cap} vertices, got {}", map.num_vertices())))
    } else {
        Ok(())
    }
}

/// Exhaustive backtracking. The next vertex is the uncolored one with the
/// fewest available colors (least id on ties) and colors are tried in
/// increasing order, so the witness is deterministic.
pub fn brute_colorable(map: &CombinatorialMap, lists: &ListAssignment, cap: usize) -> Result<Option<Coloring>> {
    check_cap(map, cap)?;
    if (0..map.num_edges()).any(|e| {
        let (u, w) = map.edge_ends(e);
        u == w
    }) {
        return Ok(None);
    }
    let adj = simple_adjacency(map);
    let mut coloring: Vec<Option<Color>> = vec![None; map.num_vertices()];
    fn available(adj: &[Vec<VertexId>], lists: &ListAssignment, col: &[Option<Color>], v: VertexId) -> Vec<Color> {
        lists.list(v).iter().copied().filter(|&c| adj[v].iter().all(|&w| col[w] != Some(c))).collect()
    }
    fn go(adj: &[Vec<VertexId>], lists: &ListAssignment, col: &mut Vec<Option<Color>>) -> bool {
        let mut best: Option<(usize, VertexId, Vec<Color>)> = None;
        for v in 0..col.len() {
            if col[v].is_none() {
                let a = available(adj, lists, col, v);
                if best.as_ref().is_none_or(|b| a.len() < b.0) {
                    best = Some((a.len(), v, a));
                }
            }
        }
        let Some((_, v, avail)) = best else { return true };
        for c in avail {
            col[v] = Some(c);
            if go(adj, lists, col) {
                return true;
            }
        }
        col[v] = None;
        false
    }
    if go(&adj, lists, &mut coloring) {
        Ok(Some(coloring.into_iter().map(|c| c.expect("complete")).collect()))
    } else {
        Ok(None)
    }
}

/// Proper list colorings of `vertices` alone (edges among them respected),
/// in lexicographic order.
pub fn boundary_colorings(map: &CombinatorialMap, lists: &ListAssignment, vertices: &[VertexId]) -> Vec<Vec<Color>> {
    let adj = simple_adjacency(map);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(vertices.len());
    fn go(
        adj: &[Vec<VertexId>],
        lists: &ListAssignment,
        vs: &[VertexId],
        cur: &mut Vec<Color>,
        out: &mut Vec<Vec<Color>>,
    ) {
        let i = cur.len();
        if i == vs.len() {
            out.push(cur.clone());
            return;
        }
        for &c in lists.list(vs[i]) {
            if (0..i).all(|j| cur[j] != c || !adj[vs[i]].contains(&vs[j])) {
                cur.push(c);
                go(adj, lists, vs, cur, out);
                cur.pop();
            }
        }
    }
    go(&adj, lists, vertices, &mut cur, &mut out);
    out
}

/// The boundary colorings that extend, each checked by [`brute_colorable`].
pub fn brute_profile(
    map: &CombinatorialMap,
    lists: &ListAssignment,
    boundary: &[VertexId],
    cap: usize,
) -> Result<ColoringProfile> {
    check_cap(map, cap)?;
    let mut keep = Vec::new();
    for psi in boundary_colorings(map, lists, boundary) {
        let mut l = lists.clone();
        for (&v, &c) in boundary.iter().zip(&psi) {
            l.precolor(v, c);
        }
        if brute_colorable(map, &l, cap)?.is_some() {
            keep.push(psi);
        }
    }
    ColoringProfile::new(boundary.to_vec(), keep)
}

/// Whether G is S-critical: every edge outside E(S) matters for which
/// colorings of S extend, and no vertex outside S is isolated.
pub fn is_s_critical(map: &CombinatorialMap, s: &[VertexId], lists: &ListAssignment, cap: usize) -> Result<bool> {
    check_cap(map, cap)?;
    let mut in_s = vec![false; map.num_vertices()];
    for &v in s {
        in_s[v] = true;
    }
    if (0..map.num_vertices()).any(|v| !in_s[v] && map.degree(v) == 0) {
        return Ok(false);
    }
    let base = brute_profile(map, lists, s, cap)?;
    for e in 0..map.num_edges() {
        let (u, w) = map.edge_ends(e);
        if in_s[u] && in_s[w] {
            continue;
        }
        let mut drop = vec![false; map.num_edges()];
        drop[e] = true;
        let sub = map.without_edges(&drop);
        if brute_profile(&sub.map, lists, s, cap)? == base {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops vertices outside `keep` with at most two remaining neighbours
/// until none is left; returns the survivors.
fn low_degree_core(adj: &[Vec<VertexId>], keep: &[VertexId]) -> Vec<bool> {
    let mut present = vec![true; adj.len()];
    loop {
        let drop: Vec<VertexId> = (0..adj.len())
            .filter(|&v| present[v] && !keep.contains(&v) && adj[v].iter().filter(|&&w| present[w]).count() <= 2)
            .collect();
        if drop.is_empty() {
            return present;
        }
        for v in drop {
            present[v] = false;
        }
    }
}

/// Every assignment of 3-lists to `count` vertices drawn from the colors
/// `1..=fixed` and fresh colors above `fixed`, one per renaming of the
/// fresh colors; `visit` sees each.
fn each_assignment(
    count: usize,
    fixed: Color,
    budget: &mut usize,
    visit: &mut dyn FnMut(&[Vec<Color>]) -> Result<()>,
) -> Result<()> {
    fn go(
        count: usize,
        fixed: Color,
        used: Color,
        cur: &mut Vec<Vec<Color>>,
        budget: &mut usize,
        visit: &mut dyn FnMut(&[Vec<Color>]) -> Result<()>,
    ) -> Result<()> {
        if cur.len() == count {
            if *budget == 0 {
                return Err(Error::Resource("too many list assignments for the oracle".into()));
            }
            *budget -= 1;
            return visit(cur);
        }
        let top = fixed + used + 3;
        for a in 1..=top {
            for b in a + 1..=top {
                for c in b + 1..=top {
                    let fresh = [a, b, c].iter().filter(|&&z| z > fixed + used).count() as Color;
                    // Fresh colors appear in order: the new ones are the next few.
                    if [a, b, c].iter().any(|&z| z > fixed + used + fresh) {
                        continue;
                    }
                    cur.push(vec![a, b, c]);
                    go(count, fixed, used + fresh, cur, budget, visit)?;
                    cur.pop();
                }
            }
        }
        Ok(())
    }
    go(count, fixed, 0, &mut Vec::new(), budget, visit)
}

/// Upper limit on the list assignments the choosability oracles try.
pub const CHOOSABILITY_ORACLE_BUDGET: usize = 3_000_000;

/// C(S, G) by double enumeration: every 3-list assignment on S from the
/// colors 1..=3|S| (grouped by canonical form), then every 3-list
/// assignment on the other vertices of degree at least three, each
/// boundary profile computed by [`brute_profile`].
pub fn brute_choosability_profile(
    map: &CombinatorialMap,
    s: &[VertexId],
    cap: usize,
) -> Result<crate::choosability::ChoosabilityProfile> {
    use crate::choosability::canonicalize;
    use std::collections::{BTreeMap, BTreeSet};
    check_cap(map, cap)?;
    let adj = simple_adjacency(map);
    let present = low_degree_core(&adj, s);
    let sub = map.induced_submap(&present);
    let local: Vec<VertexId> = s.iter().map(|&v| sub.vertex_index[v].expect("S kept")).collect();
    let others: Vec<VertexId> = (0..sub.map.num_vertices()).filter(|v| !local.contains(v)).collect();
    let universe = 3 * s.len() as Color;
    let triples: Vec<Vec<Color>> = (1..=universe)
        .flat_map(|a| (a + 1..=universe).flat_map(move |b| (b + 1..=universe).map(move |c| vec![a, b, c])))
        .collect();
    let mut classes = BTreeSet::new();
    let mut idx = vec![0usize; s.len()];
    loop {
        let l0: Vec<Vec<Color>> = idx.iter().map(|&i| triples[i].clone()).collect();
        classes.insert(canonicalize(&l0).0);
        let mut k = 0;
        while k < idx.len() && idx[k] + 1 == triples.len() {
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
        idx[k] += 1;
    }
    let mut entries = BTreeMap::new();
    let mut budget = CHOOSABILITY_ORACLE_BUDGET;
    for l0 in classes {
        let fixed = l0.iter().flatten().copied().max().unwrap_or(0);
        let mut fam = BTreeSet::new();
        each_assignment(others.len(), fixed, &mut budget, &mut |rest| {
            let mut lists = vec![Vec::new(); sub.map.num_vertices()];
            for (&v, l) in local.iter().zip(&l0) {
                lists[v] = l.clone();
            }
            for (&v, l) in others.iter().zip(rest) {
                lists[v] = l.clone();
            }
            let p = brute_profile(&sub.map, &ListAssignment::new(lists)?, &local, cap)?;
            fam.insert(p.colorings().clone());
            Ok(())
        })?;
        entries.insert(l0, fam);
    }
    Ok(crate::choosability::ChoosabilityProfile::new(s.to_vec(), entries))
}

/// Whether every 3-list assignment, drawn from 3|V| colors, admits a
/// coloring; vertices of degree at most two are dropped first.
pub fn brute_choosable(map: &CombinatorialMap, cap: usize) -> Result<bool> {
    check_cap(map, cap)?;
    let adj = simple_adjacency(map);
    let present = low_degree_core(&adj, &[]);
    let sub = map.induced_submap(&present);
    let n = sub.map.num_vertices();
    let mut ok = true;
    let mut budget = CHOOSABILITY_ORACLE_BUDGET;
    each_assignment(n, 0, &mut budget, &mut |lists| {
        if ok && brute_colorable(&sub.map, &ListAssignment::new(lists.to_vec())?, cap)?.is_none() {
            ok = false;
        }
        Ok(())
    })?;
    Ok(ok)
}

/// A random decision instance: map, marked faces F, precolored vertices S
/// incident with F, and lists of size 1 on S and 3 elsewhere.
#[derive(Clone, Debug)]
pub struct Instance {
    pub map: CombinatorialMap,
    pub surface: Surface,
    pub faces: Vec<FaceId>,
    pub s: Vec<VertexId>,
    pub lists: ListAssignment,
}

/// Seeded source of random girth-≥5 instances.
#[derive(Clone, Debug)]
pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    pub surface: Surface,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_faces: usize,
    pub palette: Color,
}

impl InstanceGenerator {
    pub fn new(seed: u64, surface: Surface, min_vertices: usize, max_vertices: usize) -> Self {
        let min_vertices = if surface == Surface::Sphere { min_vertices.max(1) } else { min_vertices.max(7) };
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            surface,
            min_vertices,
            max_vertices: max_vertices.max(min_vertices),
            max_faces: 2,
            palette: 4,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn map(&mut self) -> CombinatorialMap {
        let n = self.rng.gen_range(self.min_vertices..=self.max_vertices);
        random_girth5_map(&mut self.rng, self.surface, n)
    }

    /// A random (F, S, L) configuration on a fresh map.
    pub fn instance(&mut self) -> Instance {
        let map = self.map();
        self.configure(map)
    }

    pub fn configure(&mut self, map: CombinatorialMap) -> Instance {
        let rng = &mut self.rng;
        let k = rng.gen_range(0..=self.max_faces.min(map.num_faces()));
        let mut all: Vec<FaceId> = (0..map.num_faces()).collect();
        all.shuffle(rng);
        let mut faces: Vec<FaceId> = all[..k].to_vec();
        faces.sort_unstable();
        let mut candidates: Vec<VertexId> = faces.iter().flat_map(|&f| map.face_vertices(f)).collect();
        candidates.sort_unstable();
        candidates.dedup();
        let density = rng.gen_range(0.0..=1.0);
        let s: Vec<VertexId> = candidates.into_iter().filter(|_| rng.gen_bool(density)).collect();
        let mut lists = random_lists(rng, map.num_vertices(), self.palette.max(3));
        for &v in &s {
            let c = rng.gen_range(1..=self.palette.max(3));
            lists.precolor(v, c);
        }
        Instance { map, surface: self.surface, faces, s, lists }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::cycle_map;
    use crate::lists::is_proper_coloring;

    #[test]
    fn small_cases() {
        let c5 = cycle_map(5);
        let w = brute_colorable(&c5, &ListAssignment::uniform(5, &[1, 2, 3]), 20).unwrap().unwrap();
        assert!(is_proper_coloring(&c5, &ListAssignment::uniform(5, &[1, 2, 3]), &w));
        assert!(brute_colorable(&c5, &ListAssignment::uniform(5, &[1, 2]), 20).unwrap().is_none());
        let k2 = CombinatorialMap::from_neighbor_rotations(&[vec![1], vec![0]]).unwrap();
        assert!(brute_colorable(&k2, &ListAssignment::uniform(2, &[1]), 20).unwrap().is_none());
        assert!(matches!(brute_colorable(&cycle_map(30), &ListAssignment::uniform(30, &[1, 2, 3]), 20), Err(Error::Resource(_))));
    }

    #[test]
    fn profiles_at_the_extremes() {
        let c5 = cycle_map(5);
        let l = ListAssignment::uniform(5, &[1, 2, 3]);
        assert_eq!(brute_profile(&c5, &l, &[], 20).unwrap(), ColoringProfile::trivial(true));
        let all: Vec<VertexId> = (0..5).collect();
        let p = brute_profile(&c5, &l, &all, 20).unwrap();
        assert_eq!(p.len(), 30);
        assert!(p.colorings().iter().all(|c| is_proper_coloring(&c5, &l, c)));
    }

    #[test]
    fn criticality() {
        // G = S is vacuously critical.
        let c5 = cycle_map(5);
        let l = ListAssignment::uniform(5, &[1, 2, 3]);
        assert!(is_s_critical(&c5, &[0, 1, 2, 3, 4], &l, 20).unwrap());
        // A pendant edge away from S with slack lists changes nothing.
        let p = crate::generate::path_map(3);
        assert!(!is_s_critical(&p, &[0], &ListAssignment::uniform(3, &[1, 2, 3]), 20).unwrap());
    }
}
