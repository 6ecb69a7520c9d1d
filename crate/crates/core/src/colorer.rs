//! Coloring graphs whose short cycles are all contractible: truncate to a
//! neighbourhood of the precolored vertices, then run the tree-width DP.

use crate::embedding::{CombinatorialMap, FaceId, SubMap, VertexId};
use crate::error::{Error, Result};
use crate::lists::ListAssignment;
use crate::oracle::brute_profile;
use crate::params::SolverParams;
use crate::profile::ColoringProfile;
use crate::dp::dp_list_color;
use crate::treedec::decompose;

/// Subgraph induced by the vertices at distance less than `radius` from S.
pub fn restrict_to_near(map: &CombinatorialMap, s: &[VertexId], radius: usize) -> SubMap {
    let dist = map.distances_from(s);
    let keep: Vec<bool> = dist.iter().map(|&d| d < radius).collect();
    map.induced_submap(&keep)
}

/// Boundary profile by tree-decomposition DP, falling back to brute force
/// when the DP tables outgrow the configured cap.
pub fn profile_of(
    map: &CombinatorialMap,
    lists: &ListAssignment,
    boundary: &[VertexId],
    params: &SolverParams,
) -> Result<ColoringProfile> {
    let td = decompose(map)?;
    match dp_list_color(map, &td, lists, boundary, params.dp_table_cap) {
        Err(Error::Resource(msg)) if params.oracle_fallback && map.num_vertices() <= params.oracle_vertex_cap => {
            log::warn!("{msg}; falling back to brute force on {} vertices", map.num_vertices());
            brute_profile(map, lists, boundary, params.oracle_vertex_cap)
        }
        other => other,
    }
}

pub(crate) fn check_decision_instance(
    map: &CombinatorialMap,
    faces: &[FaceId],
    s: &[VertexId],
    lists: &ListAssignment,
) -> Result<()> {
    lists.check_solver_sizes(map.num_vertices(), s)?;
    if let Some(&f) = faces.iter().find(|&&f| f >= map.num_faces()) {
        return Err(Error::Precondition(format!("face {f} does not exist")));
    }
    for &v in s {
        if !map.vertex_faces(v).iter().any(|f| faces.contains(f)) {
            return Err(Error::Precondition(format!("precolored vertex {v} is not incident with a face of F")));
        }
    }
    if !map.has_girth_at_least(5) {
        return Err(Error::Precondition("the graph has a cycle of length at most four".into()));
    }
    Ok(())
}

/// Profile over `boundary` (vertices on faces of F, any list sizes) for a
/// map in which every cycle of length at most 100C is F-contractible.
///
/// Components meeting the boundary are truncated to the vertices at
/// distance less than the truncation radius; components missing it are
/// checked on their own.
pub fn large_ew_profile(
    map: &CombinatorialMap,
    faces: &[FaceId],
    boundary: &[VertexId],
    lists: &ListAssignment,
    params: &SolverParams,
) -> Result<ColoringProfile> {
    let mut touched = vec![false; map.components().len()];
    for &v in boundary {
        touched[map.component_of(v)] = true;
    }
    for (c, comp) in map.components().iter().enumerate() {
        if touched[c] || (comp.euler_genus == 0 && params.planar_shortcut) {
            continue;
        }
        let keep: Vec<bool> = (0..map.num_vertices()).map(|v| map.component_of(v) == c).collect();
        let sub = map.induced_submap(&keep);
        if profile_of(&sub.map, &lists.pull_back(&sub.vertex_origin), &[], params)?.is_empty() {
            return ColoringProfile::new(boundary.to_vec(), Vec::new());
        }
    }
    if boundary.is_empty() {
        return Ok(ColoringProfile::trivial(true));
    }
    let g = map.euler_genus();
    let radius = params.truncation_radius(g, faces.len(), boundary.len());
    let near = restrict_to_near(map, boundary, radius);
    let local: Vec<VertexId> = boundary.iter().map(|&v| near.vertex_index[v].expect("boundary kept")).collect();
    let p = profile_of(&near.map, &lists.pull_back(&near.vertex_origin), &local, params)?;
    ColoringProfile::new(boundary.to_vec(), p.colorings().iter().cloned())
}

/// Decides L-colorability when every cycle of length at most 100C is
/// F-contractible; S must lie on faces of F with singleton lists.
pub fn decide_large_ew(
    map: &CombinatorialMap,
    faces: &[FaceId],
    s: &[VertexId],
    lists: &ListAssignment,
    params: &SolverParams,
) -> Result<bool> {
    check_decision_instance(map, faces, s, lists)?;
    Ok(!large_ew_profile(map, faces, s, lists, params)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{dodecahedron, path_map};

    #[test]
    fn truncation_radius_is_strict() {
        let p = path_map(10);
        let near = restrict_to_near(&p, &[0], 4);
        assert_eq!(near.vertex_origin, vec![0, 1, 2, 3]);
        assert_eq!(restrict_to_near(&p, &[0], 1).vertex_origin, vec![0]);
        assert_eq!(restrict_to_near(&p, &[0], 100).vertex_origin.len(), 10);
    }

    #[test]
    fn planar_examples() {
        let m = dodecahedron();
        let params = SolverParams::default();
        let l = ListAssignment::uniform(20, &[1, 2, 3]);
        assert!(decide_large_ew(&m, &[], &[], &l, &params).unwrap());
        let mut l1 = l.clone();
        l1.precolor(0, 2);
        let f = m.vertex_faces(0)[0];
        assert!(decide_large_ew(&m, &[f], &[0], &l1, &params).unwrap());
        assert!(matches!(decide_large_ew(&m, &[], &[0], &l1, &params), Err(Error::Precondition(_))));
    }
}
