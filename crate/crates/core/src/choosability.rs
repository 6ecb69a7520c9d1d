//! 3-choosability at desk scale: canonical list classes on a vertex set,
//! the sets C(S, G) of pairs (L0, Ψ) and their composition.
//!
//! A list assignment on an ordered vertex set is stored up to renaming of
//! colors. Its canonical form records, for every color, the set of
//! positions whose list contains it (a bitmask with position 0 as the most
//! significant bit); colors are renumbered 1, 2, ... in decreasing mask
//! order.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::colorer::profile_of;
use crate::embedding::{CombinatorialMap, VertexId};
use crate::error::{Error, Result};
use crate::lists::{Color, ListAssignment};
use crate::params::SolverParams;
use crate::topology::{find_short_cycle, ShortCycleMode};

/// Lists on an ordered vertex set, each sorted.
pub type ListTuple = Vec<Vec<Color>>;
/// A set Ψ of colorings of the boundary.
pub type ColoringSet = BTreeSet<Vec<Color>>;

/// Upper limit on enumerated off-boundary list assignments per call.
pub const ASSIGNMENT_CAP: usize = 2_000_000;

/// Canonical form of `lists` and the renaming from original to canonical
/// colors.
pub fn canonicalize(lists: &[Vec<Color>]) -> (ListTuple, BTreeMap<Color, Color>) {
    let k = lists.len();
    let mut masks: BTreeMap<Color, u64> = BTreeMap::new();
    for (i, l) in lists.iter().enumerate() {
        for &c in l {
            *masks.entry(c).or_default() |= 1 << (k - 1 - i);
        }
    }
    let mut order: Vec<(u64, Color)> = masks.into_iter().map(|(c, m)| (m, c)).collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let rename: BTreeMap<Color, Color> = order.iter().enumerate().map(|(j, &(_, c))| (c, j as Color + 1)).collect();
    let canon = lists
        .iter()
        .map(|l| {
            let mut v: Vec<Color> = l.iter().map(|c| rename[c]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    (canon, rename)
}

/// One canonical representative of every class of 3-list assignments on
/// `k` ordered vertices.
pub fn enumerate_list_classes(k: usize, params: &SolverParams) -> Result<Vec<ListTuple>> {
    if k > params.list_class_cap {
        return Err(Error::Resource(format!("{k} vertices exceed the list class cap {}", params.list_class_cap)));
    }
    let masks: Vec<u64> = (1..(1u64 << k)).rev().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut count = vec![0usize; k];
    fn go(
        k: usize,
        masks: &[u64],
        from: usize,
        count: &mut [usize],
        chosen: &mut Vec<u64>,
        out: &mut Vec<ListTuple>,
    ) {
        if count.iter().all(|&c| c == 3) {
            let lists = (0..k)
                .map(|i| {
                    let bit = 1 << (k - 1 - i);
                    (0..chosen.len()).filter(|&j| chosen[j] & bit != 0).map(|j| j as Color + 1).collect()
                })
                .collect();
            out.push(lists);
            return;
        }
        // The most significant unfinished position must be covered by one
        // of the remaining masks, which all come later in the order.
        for j in from..masks.len() {
            let m = masks[j];
            if (0..k).any(|i| m & (1 << (k - 1 - i)) != 0 && count[i] == 3) {
                continue;
            }
            let first_open = (0..k).find(|&i| count[i] < 3).expect("some position open");
            if m & (1 << (k - 1 - first_open)) == 0 {
                // Later masks never contain a more significant bit.
                if m < (1 << (k - 1 - first_open)) {
                    break;
                }
                continue;
            }
            for i in 0..k {
                if m & (1 << (k - 1 - i)) != 0 {
                    count[i] += 1;
                }
            }
            chosen.push(m);
            go(k, masks, j, count, chosen, out);
            chosen.pop();
            for i in 0..k {
                if m & (1 << (k - 1 - i)) != 0 {
                    count[i] -= 1;
                }
            }
        }
    }
    go(k, &masks, 0, &mut count, &mut chosen, &mut out);
    Ok(out)
}

/// The set C(S, G): for every canonical list assignment L0 on S, the sets
/// Ψ of L0-colorings of S that arise as the extendable colorings for some
/// choice of 3-lists on the other vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityProfile {
    boundary: Vec<VertexId>,
    entries: BTreeMap<ListTuple, BTreeSet<ColoringSet>>,
}

impl ChoosabilityProfile {
    pub fn new(boundary: Vec<VertexId>, entries: BTreeMap<ListTuple, BTreeSet<ColoringSet>>) -> Self {
        ChoosabilityProfile { boundary, entries }
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn entries(&self) -> &BTreeMap<ListTuple, BTreeSet<ColoringSet>> {
        &self.entries
    }

    /// Whether no pair has an empty Ψ.
    pub fn all_extendable(&self) -> bool {
        self.entries.values().all(|fam| fam.iter().all(|psi| !psi.is_empty()))
    }

    /// Pairs (L0, Ψ) on `keep` such that some pair (L0', Ψ') restricts to
    /// L0 and Ψ is the set of restrictions of Ψ'.
    pub fn project(&self, keep: &[VertexId]) -> Result<Self> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|v| {
                self.boundary
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::BoundaryMismatch(format!("vertex {v} is not on the boundary")))
            })
            .collect::<Result<_>>()?;
        let mut entries: BTreeMap<ListTuple, BTreeSet<ColoringSet>> = BTreeMap::new();
        for (l0, fam) in &self.entries {
            let restricted: ListTuple = idx.iter().map(|&i| l0[i].clone()).collect();
            let (key, rename) = canonicalize(&restricted);
            let slot = entries.entry(key).or_default();
            for psi in fam {
                slot.insert(psi.iter().map(|c| idx.iter().map(|&i| rename[&c[i]]).collect()).collect());
            }
        }
        Ok(ChoosabilityProfile { boundary: keep.to_vec(), entries })
    }
}

impl Serialize for ChoosabilityProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Entry<'a> {
            lists: &'a ListTuple,
            colorings: &'a BTreeSet<ColoringSet>,
        }
        let entries: Vec<Entry> = self.entries.iter().map(|(lists, colorings)| Entry { lists, colorings }).collect();
        let mut st = serializer.serialize_struct("ChoosabilityProfile", 2)?;
        st.serialize_field("boundary", &self.boundary)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Composes C(X1, G1) and C(X2, G2) for edge-disjoint G1, G2 meeting in
/// X1 ∩ X2 into C(X1 ∪ X2, G1 ∪ G2).
pub fn combine_choosability(
    c1: &ChoosabilityProfile,
    c2: &ChoosabilityProfile,
    params: &SolverParams,
) -> Result<ChoosabilityProfile> {
    let mut union = c1.boundary.clone();
    union.extend(c2.boundary.iter().copied().filter(|v| !c1.boundary.contains(v)));
    let pos1: Vec<usize> = c1.boundary.iter().map(|v| union.iter().position(|x| x == v).expect("in union")).collect();
    let pos2: Vec<usize> = c2.boundary.iter().map(|v| union.iter().position(|x| x == v).expect("in union")).collect();
    let shared: Vec<(usize, usize)> = pos2
        .iter()
        .enumerate()
        .filter_map(|(j, p)| pos1.iter().position(|q| q == p).map(|i| (i, j)))
        .collect();
    let mut entries = BTreeMap::new();
    for l0 in enumerate_list_classes(union.len(), params)? {
        let side = |c: &ChoosabilityProfile, pos: &[usize]| -> Option<Vec<ColoringSet>> {
            let restricted: ListTuple = pos.iter().map(|&p| l0[p].clone()).collect();
            let (key, rename) = canonicalize(&restricted);
            let back: BTreeMap<Color, Color> = rename.iter().map(|(&a, &b)| (b, a)).collect();
            c.entries.get(&key).map(|fam| {
                fam.iter().map(|psi| psi.iter().map(|col| col.iter().map(|x| back[x]).collect()).collect()).collect()
            })
        };
        let (Some(f1), Some(f2)) = (side(c1, &pos1), side(c2, &pos2)) else {
            continue;
        };
        let mut fam = BTreeSet::new();
        for p1 in &f1 {
            for p2 in &f2 {
                let mut psi = ColoringSet::new();
                for a in p1 {
                    for b in p2 {
                        if shared.iter().all(|&(i, j)| a[i] == b[j]) {
                            let mut col = vec![0; union.len()];
                            for (i, &p) in pos1.iter().enumerate() {
                                col[p] = a[i];
                            }
                            for (j, &p) in pos2.iter().enumerate() {
                                col[p] = b[j];
                            }
                            psi.insert(col);
                        }
                    }
                }
                fam.insert(psi);
            }
        }
        entries.insert(l0, fam);
    }
    Ok(ChoosabilityProfile { boundary: union, entries })
}

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

/// Repeatedly drops unmarked vertices with at most two remaining
/// neighbours; such a vertex can always be colored last.
pub fn reduce_low_degree(adj: &[Vec<VertexId>], keep: &[bool], present: &mut [bool]) {
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..adj.len() {
            if present[v] && !keep[v] && adj[v].iter().filter(|&&w| present[w]).count() <= 2 {
                present[v] = false;
                changed = true;
            }
        }
    }
}

struct Families<'a> {
    map: &'a CombinatorialMap,
    adj: Vec<Vec<VertexId>>,
    s: &'a [VertexId],
    in_s: Vec<bool>,
    l0: &'a ListTuple,
    off: Vec<VertexId>,
    psi0: ColoringSet,
    params: &'a SolverParams,
    memo: HashMap<u64, BTreeSet<ColoringSet>>,
    budget: usize,
}

impl Families<'_> {
    fn present(&self, mask: u64) -> Vec<bool> {
        let mut p = self.in_s.clone();
        for (i, &x) in self.off.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p[x] = true;
            }
        }
        p
    }

    fn reduce(&self, mask: u64) -> u64 {
        let mut p = self.present(mask);
        if self.params.core_reduction {
            reduce_low_degree(&self.adj, &self.in_s, &mut p);
        }
        (0..self.off.len()).filter(|&i| p[self.off[i]]).fold(0, |m, i| m | (1 << i))
    }

    fn family(&mut self, mask: u64) -> Result<BTreeSet<ColoringSet>> {
        let mask = self.reduce(mask);
        if let Some(f) = self.memo.get(&mask) {
            return Ok(f.clone());
        }
        let mut out = BTreeSet::new();
        if mask == 0 {
            out.insert(self.psi0.clone());
        } else {
            for i in 0..self.off.len() {
                if mask & (1 << i) != 0 {
                    out.extend(self.family(mask & !(1 << i))?);
                }
            }
            self.tight(mask, &mut out)?;
        }
        self.memo.insert(mask, out.clone());
        Ok(out)
    }

    /// Ψ for every assignment in which each color of each present vertex
    /// also appears on a neighbour; any other assignment reduces to a
    /// smaller vertex set.
    fn tight(&mut self, mask: u64, out: &mut BTreeSet<ColoringSet>) -> Result<()> {
        let xs: Vec<VertexId> = (0..self.off.len()).filter(|&i| mask & (1 << i) != 0).map(|i| self.off[i]).collect();
        let palette = self.l0.iter().flatten().copied().max().unwrap_or(0);
        let present = self.present(mask);
        let mut lists: HashMap<VertexId, Vec<Color>> = self.s.iter().enumerate().map(|(i, &v)| (v, self.l0[i].clone())).collect();
        let mut found = Vec::new();
        self.assign(&xs, 0, palette, &present, &mut lists, &mut found)?;
        let keep: Vec<bool> = present.clone();
        let sub = self.map.induced_submap(&keep);
        let boundary: Vec<VertexId> = self.s.iter().map(|&v| sub.vertex_index[v].expect("S kept")).collect();
        for assignment in found {
            let lists = ListAssignment::new(sub.vertex_origin.iter().map(|v| assignment[v].clone()).collect())?;
            let prof = profile_of(&sub.map, &lists, &boundary, self.params)?;
            out.insert(prof.colorings().clone());
        }
        Ok(())
    }

    fn assign(
        &mut self,
        xs: &[VertexId],
        i: usize,
        used: Color,
        present: &[bool],
        lists: &mut HashMap<VertexId, Vec<Color>>,
        found: &mut Vec<HashMap<VertexId, Vec<Color>>>,
    ) -> Result<()> {
        if i == xs.len() {
            if self.budget == 0 {
                return Err(Error::Resource(format!("more than {ASSIGNMENT_CAP} list assignments to examine")));
            }
            self.budget -= 1;
            let tight = xs.iter().all(|&x| {
                lists[&x].iter().all(|c| self.adj[x].iter().any(|w| present[*w] && lists[w].contains(c)))
            });
            if tight {
                found.push(lists.clone());
            }
            return Ok(());
        }
        let x = xs[i];
        let top = used + 3;
        for a in 1..=top {
            for b in a + 1..=top {
                for c in b + 1..=top {
                    // Fresh colors are introduced in increasing order.
                    let fresh: Vec<Color> = [a, b, c].into_iter().filter(|&z| z > used).collect();
                    if fresh.iter().enumerate().any(|(k, &z)| z != used + 1 + k as Color) {
                        continue;
                    }
                    lists.insert(x, vec![a, b, c]);
                    self.assign(xs, i + 1, used + fresh.len() as Color, present, lists, found)?;
                }
            }
        }
        lists.remove(&x);
        Ok(())
    }
}

/// Proper colorings of `s` from `l0`, respecting the edges among S.
fn proper_colorings(adj: &[Vec<VertexId>], s: &[VertexId], l0: &ListTuple) -> ColoringSet {
    let mut out = ColoringSet::new();
    let mut cur = Vec::new();
    fn go(adj: &[Vec<VertexId>], s: &[VertexId], l0: &ListTuple, cur: &mut Vec<Color>, out: &mut ColoringSet) {
        let i = cur.len();
        if i == s.len() {
            out.insert(cur.clone());
            return;
        }
        for &c in &l0[i] {
            if (0..i).all(|j| cur[j] != c || !adj[s[i]].contains(&s[j])) {
                cur.push(c);
                go(adj, s, l0, cur, out);
                cur.pop();
            }
        }
    }
    go(adj, s, l0, &mut cur, &mut out);
    out
}

/// C(S, G) by enumeration over the canonical list classes on S and the
/// tight list assignments on the low-degree-reduced rest.
pub fn profile_set(map: &CombinatorialMap, s: &[VertexId], params: &SolverParams) -> Result<ChoosabilityProfile> {
    let n = map.num_vertices();
    if let Some(&v) = s.iter().find(|&&v| v >= n) {
        return Err(Error::Precondition(format!("vertex {v} is not in the map")));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() {
        return Err(Error::Precondition("boundary vertices repeat".into()));
    }
    let adj = simple_adjacency(map);
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let mut present = vec![true; n];
    if params.core_reduction {
        reduce_low_degree(&adj, &in_s, &mut present);
    }
    let off: Vec<VertexId> = (0..n).filter(|&v| present[v] && !in_s[v]).collect();
    if off.len() > 60 {
        return Err(Error::Resource(format!("{} vertices of degree at least three remain", off.len())));
    }
    let full: u64 = if off.is_empty() { 0 } else { (1u64 << off.len()) - 1 };
    let mut entries = BTreeMap::new();
    let mut budget = ASSIGNMENT_CAP;
    for l0 in enumerate_list_classes(s.len(), params)? {
        let psi0 = proper_colorings(&adj, s, &l0);
        let mut fam = Families {
            map,
            adj: adj.clone(),
            s,
            in_s: in_s.clone(),
            l0: &l0,
            off: off.clone(),
            psi0,
            params,
            memo: HashMap::new(),
            budget,
        };
        let f = fam.family(full)?;
        budget = fam.budget;
        entries.insert(l0.clone(), f);
    }
    Ok(ChoosabilityProfile { boundary: s.to_vec(), entries })
}

/// C(S, G) with G split along short non-contractible cycles: each cycle
/// joins the boundary, its own profile is combined with the profile of
/// the rest, and the result is projected back to S.
fn cut_profile(map: &CombinatorialMap, s: &[VertexId], params: &SolverParams) -> Result<ChoosabilityProfile> {
    let g = map.euler_genus();
    let q = if g == 0 {
        None
    } else {
        find_short_cycle(map, &[], params.short_cycle_bound(g, 0), ShortCycleMode::NonFContractible)?
    };
    let Some(q) = q else {
        return profile_set(map, s, params);
    };
    let mut wider = s.to_vec();
    wider.extend(q.cycle.iter().copied().filter(|v| !s.contains(v)));
    let edges = map.cycle_edges(&q.cycle).ok_or_else(|| Error::NotACycle(format!("{:?}", q.cycle)))?;
    let mut on_q = vec![false; map.num_edges()];
    for &e in &edges {
        on_q[e] = true;
    }
    let cycle_part = map.submap(&{
        let mut k = vec![false; map.num_vertices()];
        for &v in &q.cycle {
            k[v] = true;
        }
        k
    }, &on_q);
    let local: Vec<VertexId> = q.cycle.iter().map(|&v| cycle_part.vertex_index[v].expect("cycle kept")).collect();
    let c_cycle = profile_set(&cycle_part.map, &local, params)?;
    let c_cycle = ChoosabilityProfile { boundary: q.cycle.clone(), entries: c_cycle.entries };
    let rest = map.without_edges(&on_q);
    let c_rest = cut_profile(&rest.map, &wider, params)?;
    combine_choosability(&c_cycle, &c_rest, params)?.project(s)
}

/// Whether the graph is 3-choosable. Vertices of degree at most two are
/// removed first; a plane remainder is choosable outright, otherwise the
/// remainder is split along short non-contractible cycles.
pub fn decide_choosable(map: &CombinatorialMap, params: &SolverParams) -> Result<bool> {
    if !map.has_girth_at_least(5) {
        return Err(Error::Precondition("the graph has a cycle of length at most four".into()));
    }
    let adj = simple_adjacency(map);
    let n = map.num_vertices();
    let mut present = vec![true; n];
    if params.core_reduction {
        reduce_low_degree(&adj, &vec![false; n], &mut present);
    }
    if !present.iter().any(|&p| p) {
        return Ok(true);
    }
    let core = map.induced_submap(&present);
    for comp in core.map.split_components() {
        if comp.map.euler_genus() == 0 {
            continue;
        }
        if !cut_profile(&comp.map, &[], params)?.all_extendable() {
            return Ok(false);
        }
    }
    Ok(true)
}
