//! List-coloring dynamic programming over a tree decomposition.
//!
//! Each bag keeps the set of proper list colorings of its vertices that
//! extend into the subtree below. A bag's table is built by joining the
//! projections of its children's tables onto the shared vertices and then
//! introducing the remaining vertices one at a time; every edge is checked
//! as soon as both ends are assigned.

use std::collections::{HashMap, HashSet};

use crate::embedding::{CombinatorialMap, VertexId};
use crate::error::{Error, Result};
use crate::lists::{Color, ListAssignment};
use crate::profile::ColoringProfile;
use crate::treedec::TreeDecomposition;

#[derive(Clone, Debug)]
struct Table {
    vars: Vec<VertexId>,
    rows: Vec<Vec<Color>>,
}

struct Ctx<'a> {
    adjacent: HashSet<(VertexId, VertexId)>,
    lists: &'a ListAssignment,
    cap: usize,
}

impl Ctx<'_> {
    fn adj(&self, u: VertexId, w: VertexId) -> bool {
        self.adjacent.contains(&(u.min(w), u.max(w)))
    }

    fn check(&self, len: usize) -> Result<()> {
        if len > self.cap {
            Err(Error::Resource(format!("DP table exceeded {} rows", self.cap)))
        } else {
            Ok(())
        }
    }

    fn project(&self, t: &Table, keep: &[VertexId]) -> Table {
        let idx: Vec<usize> = keep.iter().map(|v| t.vars.iter().position(|x| x == v).expect("kept var")).collect();
        let set: HashSet<Vec<Color>> = t.rows.iter().map(|r| idx.iter().map(|&i| r[i]).collect()).collect();
        let mut rows: Vec<Vec<Color>> = set.into_iter().collect();
        rows.sort_unstable();
        Table { vars: keep.to_vec(), rows }
    }

    fn join(&self, a: &Table, b: &Table) -> Result<Table> {
        let shared: Vec<(usize, usize)> =
            b.vars.iter().enumerate().filter_map(|(j, v)| a.vars.iter().position(|x| x == v).map(|i| (i, j))).collect();
        let fresh: Vec<usize> = (0..b.vars.len()).filter(|j| !shared.iter().any(|s| s.1 == *j)).collect();
        let a_only: Vec<usize> = (0..a.vars.len()).filter(|i| !shared.iter().any(|s| s.0 == *i)).collect();
        let checks: Vec<(usize, usize)> = a_only
            .iter()
            .flat_map(|&i| fresh.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| self.adj(a.vars[i], b.vars[j]))
            .collect();
        let mut index: HashMap<Vec<Color>, Vec<usize>> = HashMap::new();
        for (k, r) in b.rows.iter().enumerate() {
            index.entry(shared.iter().map(|s| r[s.1]).collect()).or_default().push(k);
        }
        let mut rows = Vec::new();
        for r in &a.rows {
            let key: Vec<Color> = shared.iter().map(|s| r[s.0]).collect();
            for &k in index.get(&key).map(|v| v.as_slice()).unwrap_or(&[]) {
                let o = &b.rows[k];
                if checks.iter().all(|&(i, j)| r[i] != o[j]) {
                    let mut row = r.clone();
                    row.extend(fresh.iter().map(|&j| o[j]));
                    rows.push(row);
                }
            }
            self.check(rows.len())?;
        }
        let mut vars = a.vars.clone();
        vars.extend(fresh.iter().map(|&j| b.vars[j]));
        Ok(Table { vars, rows })
    }

    fn introduce(&self, t: &Table, v: VertexId) -> Result<Table> {
        let nbrs: Vec<usize> = (0..t.vars.len()).filter(|&i| self.adj(t.vars[i], v)).collect();
        let mut rows = Vec::new();
        for r in &t.rows {
            for &c in self.lists.list(v) {
                if nbrs.iter().all(|&i| r[i] != c) {
                    let mut row = r.clone();
                    row.push(c);
                    rows.push(row);
                }
            }
            self.check(rows.len())?;
        }
        let mut vars = t.vars.clone();
        vars.push(v);
        Ok(Table { vars, rows })
    }
}

/// The profile of `boundary` colorings that extend to an L-coloring of the
/// whole map. Boundary vertices are added to every bag first. Fails with a
/// resource error when a table would exceed `table_cap` rows.
pub fn dp_list_color(
    map: &CombinatorialMap,
    td: &TreeDecomposition,
    lists: &ListAssignment,
    boundary: &[VertexId],
    table_cap: usize,
) -> Result<ColoringProfile> {
    if lists.len() != map.num_vertices() {
        return Err(Error::Precondition("list assignment does not match the map".into()));
    }
    if let Some(&v) = boundary.iter().find(|&&v| v >= map.num_vertices()) {
        return Err(Error::Precondition(format!("boundary vertex {v} is not in the map")));
    }
    let td = td.with_everywhere(boundary);
    let adjacent: HashSet<(VertexId, VertexId)> = (0..map.num_edges())
        .map(|e| {
            let (u, w) = map.edge_ends(e);
            (u.min(w), u.max(w))
        })
        .collect();
    if adjacent.iter().any(|&(u, w)| u == w) {
        return ColoringProfile::new(boundary.to_vec(), Vec::new());
    }
    let ctx = Ctx { adjacent, lists, cap: table_cap };
    let children = td.children();
    let mut tables: Vec<Option<Table>> = vec![None; td.bags.len()];
    for t in td.post_order() {
        let bag = &td.bags[t];
        let mut acc = Table { vars: Vec::new(), rows: vec![Vec::new()] };
        for &c in &children[t] {
            let child = tables[c].take().expect("child table computed");
            let keep: Vec<VertexId> = child.vars.iter().copied().filter(|v| bag.binary_search(v).is_ok()).collect();
            let proj = ctx.project(&child, &keep);
            acc = ctx.join(&acc, &proj)?;
            if acc.rows.is_empty() {
                break;
            }
        }
        for &v in bag {
            if !acc.vars.contains(&v) {
                acc = ctx.introduce(&acc, v)?;
            }
        }
        tables[t] = Some(acc);
    }
    let root = tables[td.root].take().expect("root table");
    let proj = ctx.project(&root, boundary);
    ColoringProfile::new(boundary.to_vec(), proj.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{cycle_map, petersen_projective};
    use crate::treedec::decompose;

    #[test]
    fn c5_is_3_colorable_not_2_colorable() {
        let m = cycle_map(5);
        let td = decompose(&m).unwrap();
        let l3 = ListAssignment::uniform(5, &[1, 2, 3]);
        assert!(!dp_list_color(&m, &td, &l3, &[], 1000).unwrap().is_empty());
        let l2 = ListAssignment::uniform(5, &[1, 2]);
        assert!(dp_list_color(&m, &td, &l2, &[], 1000).unwrap().is_empty());
    }

    #[test]
    fn k2_with_equal_singletons() {
        let m = CombinatorialMap::from_neighbor_rotations(&[vec![1], vec![0]]).unwrap();
        let td = decompose(&m).unwrap();
        let l = ListAssignment::uniform(2, &[1]);
        assert!(dp_list_color(&m, &td, &l, &[], 10).unwrap().is_empty());
    }

    #[test]
    fn boundary_profile_of_petersen() {
        // Petersen is 3-chromatic; every proper coloring of an edge extends.
        let m = petersen_projective();
        let td = decompose(&m).unwrap();
        let l = ListAssignment::uniform(10, &[1, 2, 3]);
        let (u, w) = m.edge_ends(0);
        let p = dp_list_color(&m, &td, &l, &[u, w], 100_000).unwrap();
        assert_eq!(p.len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let m = petersen_projective();
        let td = decompose(&m).unwrap();
        let l = ListAssignment::uniform(10, &[1, 2, 3]);
        assert!(matches!(dp_list_color(&m, &td, &l, &(0..10).collect::<Vec<_>>(), 5), Err(Error::Resource(_))));
    }
}
