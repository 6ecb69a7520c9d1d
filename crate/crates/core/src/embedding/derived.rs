use super::map::{CombinatorialMap, EdgeId, FaceId, Step, VertexId};

use crate::error::{Error, Result};

/// Origin of a radial-map vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialVertex {
    Vertex(VertexId),
    Face(FaceId),
}

/// Radial map of a 2-cell map: vertex/face incidences with multiplicity,
/// embedded so that every face is a quadrilateral around one original edge.
#[derive(Clone, Debug)]
pub struct RadialCorrespondence {
    pub map: CombinatorialMap,
    pub vertex_origin: Vec<RadialVertex>,
    /// Original edge inside each radial face.
    pub face_edge: Vec<EdgeId>,
    /// The walk step (face, index) that each radial edge records.
    pub edge_corner: Vec<(FaceId, usize)>,
}

/// Dual map: one vertex per face and dual edge `e` crossing primal edge `e`.
#[derive(Clone, Debug)]
pub struct DualMap {
    pub map: CombinatorialMap,
    pub dual_edge_of_primal: Vec<EdgeId>,
    pub primal_edge_of_dual: Vec<EdgeId>,
}

impl CombinatorialMap {
    fn require_no_isolated(&self, what: &str) -> Result<()> {
        let isolated = self.faces().iter().any(|f| f.isolated_vertex.is_some());
        if isolated && self.num_edges() > 0 {
            return Err(Error::Precondition(format!("{what}: isolated vertices are not 2-cell components")));
        }
        Ok(())
    }

    pub fn radial_graph(&self) -> Result<RadialCorrespondence> {
        self.require_no_isolated("radial graph")?;
        let nv = self.num_vertices();
        let nf = self.num_faces();
        let mut corner_edge = vec![usize::MAX; self.num_darts()];
        let mut edge_corner = Vec::new();
        let mut edges = Vec::new();
        let mut face_rot: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for (f, face) in self.faces().iter().enumerate() {
            for (i, &s) in face.walk.iter().enumerate() {
                let k = edge_corner.len();
                edge_corner.push((f, i));
                corner_edge[self.corner_of(s)] = k;
                edges.push((2 * k, 2 * k + 1, s.reversed));
                face_rot[f].push(2 * k + 1);
            }
        }
        let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(nv + nf);
        for v in 0..nv {
            rotations.push(self.rotation(v).iter().map(|&x| 2 * corner_edge[x]).collect());
        }
        for mut rot in face_rot {
            rot.reverse();
            rotations.push(rot);
        }
        let map = CombinatorialMap::new(rotations, &edges)?;
        let mut vertex_origin: Vec<RadialVertex> = (0..nv).map(RadialVertex::Vertex).collect();
        vertex_origin.extend((0..nf).map(RadialVertex::Face));
        // Each radial face spans two corners at its vertex-class ends; the
        // original edge is the one between consecutive corners at a vertex.
        let mut face_edge = vec![usize::MAX; map.num_faces()];
        for (rf, face) in map.faces().iter().enumerate() {
            if let Some(&s) = face.walk.iter().find(|s| map.owner(s.dart) < nv) {
                face_edge[rf] = self.edge_between_corners(map.corner_of(s), &edge_corner);
            }
        }
        Ok(RadialCorrespondence { map, vertex_origin, face_edge, edge_corner })
    }

    fn edge_between_corners(&self, radial_corner: usize, edge_corner: &[(FaceId, usize)]) -> EdgeId {
        // The radial corner lies between radial dart `radial_corner` and its
        // successor; both are corners c(x) and c(next x) of the original
        // vertex, so the original dart strictly between them is next(x).
        let (f, i) = edge_corner[radial_corner / 2];
        let x = self.corner_of(self.face(f).walk[i]);
        self.edge_of(self.next(x))
    }

    pub fn dual_graph(&self) -> Result<DualMap> {
        self.require_no_isolated("dual graph")?;
        let m = self.num_edges();
        // A face walk orients its dual vertex; relative to the frame at the
        // first dart of an edge that orientation is flipped by a reversed
        // step and, on the second dart, by a twisted edge.
        let frame = |s: Step| s.reversed ^ (self.is_twisted(self.edge_of(s.dart)) && s.dart == self.edge_darts(self.edge_of(s.dart))[1]);
        let mut first: Vec<Option<(FaceId, Step)>> = vec![None; m];
        let mut twisted = vec![false; m];
        let mut rotations = Vec::with_capacity(self.num_faces());
        for (f, face) in self.faces().iter().enumerate() {
            let mut rot = Vec::with_capacity(face.walk.len());
            for &s in &face.walk {
                let e = self.edge_of(s.dart);
                match first[e] {
                    None => {
                        first[e] = Some((f, s));
                        rot.push(2 * e);
                    }
                    Some((_, s0)) => {
                        twisted[e] = frame(s0) ^ frame(s);
                        rot.push(2 * e + 1);
                    }
                }
            }
            rotations.push(rot);
        }
        let edges: Vec<_> = (0..m).map(|e| (2 * e, 2 * e + 1, twisted[e])).collect();
        let map = CombinatorialMap::new(rotations, &edges)?;
        Ok(DualMap { map, dual_edge_of_primal: (0..m).collect(), primal_edge_of_dual: (0..m).collect() })
    }
}

#[cfg(test)]
mod tests {
    use crate::generate::{cycle_map, dodecahedron, petersen_projective};

    #[test]
    fn radial_of_c5() {
        let r = cycle_map(5).radial_graph().unwrap();
        assert_eq!((r.map.num_vertices(), r.map.num_edges(), r.map.num_faces()), (7, 10, 5));
        assert!(r.map.faces().iter().all(|f| f.len() == 4));
        assert_eq!(r.map.euler_genus(), 0);
    }

    #[test]
    fn radial_of_k2() {
        let r = cycle_map(2).radial_graph();
        // cycle_map(2) is a digon; the single-edge case is built directly.
        assert!(r.is_ok());
        let k2 = crate::embedding::CombinatorialMap::from_neighbor_rotations(&[vec![1], vec![0]]).unwrap();
        let r = k2.radial_graph().unwrap();
        assert_eq!((r.map.num_vertices(), r.map.num_edges(), r.map.num_faces()), (3, 2, 1));
        assert_eq!(r.map.face(0).len(), 4);
        assert_eq!(r.face_edge, vec![0]);
    }

    #[test]
    fn radial_faces_each_hold_one_edge() {
        for g in [dodecahedron(), petersen_projective(), cycle_map(7)] {
            let r = g.radial_graph().unwrap();
            assert_eq!(r.map.num_edges(), 2 * g.num_edges());
            assert_eq!(r.map.num_faces(), g.num_edges());
            assert_eq!(r.map.euler_genus(), g.euler_genus());
            assert!(r.map.faces().iter().all(|f| f.len() == 4));
            let mut seen = r.face_edge.clone();
            seen.sort_unstable();
            assert_eq!(seen, (0..g.num_edges()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dual_examples() {
        let d = cycle_map(5).dual_graph().unwrap();
        assert_eq!((d.map.num_vertices(), d.map.num_edges()), (2, 5));
        let k2 = crate::embedding::CombinatorialMap::from_neighbor_rotations(&[vec![1], vec![0]]).unwrap();
        let d = k2.dual_graph().unwrap();
        assert_eq!((d.map.num_vertices(), d.map.num_edges()), (1, 1));
        let (u, w) = d.map.edge_ends(0);
        assert_eq!(u, w);
    }

    #[test]
    fn dual_of_dodecahedron_is_icosahedron() {
        let g = dodecahedron();
        let d = g.dual_graph().unwrap();
        assert_eq!((d.map.num_vertices(), d.map.num_edges(), d.map.num_faces()), (12, 30, 20));
        assert!(d.map.faces().iter().all(|f| f.len() == 3));
        assert!((0..12).all(|v| d.map.degree(v) == 5));
    }

    #[test]
    fn dual_face_lengths_are_primal_degrees() {
        for g in [dodecahedron(), petersen_projective(), crate::generate::hex_torus(3, 4)] {
            let d = g.dual_graph().unwrap();
            assert_eq!(d.map.euler_genus(), g.euler_genus());
            assert_eq!(d.map.is_orientable(), g.is_orientable());
            let mut primal: Vec<usize> = (0..g.num_vertices()).map(|v| g.degree(v)).collect();
            let mut dual: Vec<usize> = d.map.faces().iter().map(|f| f.len()).collect();
            primal.sort_unstable();
            dual.sort_unstable();
            assert_eq!(primal, dual);
            let dd = d.map.dual_graph().unwrap();
            assert_eq!(dd.map.num_vertices(), g.num_vertices());
            assert_eq!(dd.map.euler_genus(), g.euler_genus());
        }
    }
}
