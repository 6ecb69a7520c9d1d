//! Fixed example maps and seeded random generators of girth-five maps.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{CombinatorialMap, DartId, VertexId};
use crate::lists::{Color, ListAssignment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    Sphere,
    ProjectivePlane,
    Torus,
}

impl Surface {
    pub fn euler_genus(self) -> usize {
        match self {
            Surface::Sphere => 0,
            Surface::ProjectivePlane => 1,
            Surface::Torus => 2,
        }
    }

    pub fn orientable(self) -> bool {
        self != Surface::ProjectivePlane
    }
}

/// Plane map of a straight-line drawing: neighbours are ordered
/// counterclockwise by angle.
pub fn planar_from_coords(coords: &[(f64, f64)], edges: &[(VertexId, VertexId)]) -> CombinatorialMap {
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); coords.len()];
    for &(u, w) in edges {
        adj[u].push(w);
        adj[w].push(u);
    }
    for (u, list) in adj.iter_mut().enumerate() {
        let (x, y) = coords[u];
        list.sort_by(|&a, &b| {
            let ta = (coords[a].1 - y).atan2(coords[a].0 - x);
            let tb = (coords[b].1 - y).atan2(coords[b].0 - x);
            ta.total_cmp(&tb)
        });
    }
    CombinatorialMap::from_neighbor_rotations(&adj).expect("drawing gives a valid rotation system")
}

fn polar(r: f64, turns: f64) -> (f64, f64) {
    (r * (2.0 * PI * turns).cos(), r * (2.0 * PI * turns).sin())
}

/// The cycle C_n on the sphere; `n = 2` gives a digon.
pub fn cycle_map(n: usize) -> CombinatorialMap {
    assert!(n >= 2);
    let adj: Vec<Vec<VertexId>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    CombinatorialMap::from_neighbor_rotations(&adj).expect("cycle")
}

/// The path on `n` vertices.
pub fn path_map(n: usize) -> CombinatorialMap {
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|i| {
            let mut l = Vec::new();
            if i > 0 {
                l.push(i - 1);
            }
            if i + 1 < n {
                l.push(i + 1);
            }
            l
        })
        .collect();
    CombinatorialMap::from_neighbor_rotations(&adj).expect("path")
}

/// The `r × c` square grid; vertex `(i, j)` has id `i * c + j`.
pub fn grid_map(r: usize, c: usize) -> CombinatorialMap {
    let coords: Vec<_> = (0..r * c).map(|v| ((v % c) as f64, (v / c) as f64)).collect();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let v = i * c + j;
            if j + 1 < c {
                edges.push((v, v + 1));
            }
            if i + 1 < r {
                edges.push((v, v + c));
            }
        }
    }
    planar_from_coords(&coords, &edges)
}

pub fn dodecahedron() -> CombinatorialMap {
    // Inner pentagon u_i, middle decagon v_j, outer pentagon w_i.
    let mut coords = Vec::new();
    coords.extend((0..5).map(|i| polar(1.0, i as f64 / 5.0)));
    coords.extend((0..10).map(|j| polar(2.0, j as f64 / 10.0)));
    coords.extend((0..5).map(|i| polar(3.0, (2 * i + 1) as f64 / 10.0)));
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((15 + i, 15 + (i + 1) % 5));
        edges.push((15 + i, 5 + 2 * i + 1));
    }
    for j in 0..10 {
        edges.push((5 + j, 5 + (j + 1) % 10));
    }
    planar_from_coords(&coords, &edges)
}

/// The Petersen graph on the projective plane, as the antipodal quotient of
/// the dodecahedron (six pentagonal faces).
pub fn petersen_projective() -> CombinatorialMap {
    let d = dodecahedron();
    let n = d.num_vertices();
    let antipode: Vec<VertexId> = (0..n)
        .map(|v| {
            let dist = d.distances_from(&[v]);
            (0..n).max_by_key(|&w| dist[w]).expect("nonempty")
        })
        .collect();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if class[v] == usize::MAX {
            class[v] = reps.len();
            class[antipode[v]] = reps.len();
            reps.push(v);
        }
    }
    // Dart (rep u, dodecahedron dart x) for every x around u.
    let mut dart_id = vec![usize::MAX; d.num_darts()];
    let mut rotations = Vec::new();
    let mut next = 0;
    for &u in &reps {
        let mut rot = Vec::new();
        for &x in d.rotation(u) {
            dart_id[x] = next;
            rot.push(next);
            next += 1;
        }
        rotations.push(rot);
    }
    let mut edges = Vec::new();
    for &u in &reps {
        for &x in d.rotation(u) {
            let w = d.head(x);
            let target = reps[class[w]];
            if class[w] < class[u] || (class[w] == class[u] && u > target) {
                continue;
            }
            // The dart of the target representative pointing back at u's class.
            let back = d
                .rotation(target)
                .iter()
                .copied()
                .find(|&y| class[d.head(y)] == class[u])
                .expect("quotient edge");
            edges.push((dart_id[x], dart_id[back], w != target));
        }
    }
    CombinatorialMap::new(rotations, &edges).expect("petersen quotient")
}

fn hex_adjacency(rows: usize, cols: usize, wrap: bool) -> Vec<Vec<VertexId>> {
    let id = |i: usize, j: usize| i * cols + j;
    let mut adj = vec![Vec::new(); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let mut l = Vec::new();
            let right = if j + 1 < cols { Some(j + 1) } else if wrap { Some(0) } else { None };
            let left = if j > 0 { Some(j - 1) } else if wrap { Some(cols - 1) } else { None };
            if (i + j) % 2 == 0 {
                let up = if i + 1 < rows { Some(i + 1) } else if wrap { Some(0) } else { None };
                l.extend(right.map(|c| id(i, c)));
                l.extend(up.map(|r| id(r, j)));
                l.extend(left.map(|c| id(i, c)));
            } else {
                let down = if i > 0 { Some(i - 1) } else if wrap { Some(rows - 1) } else { None };
                l.extend(right.map(|c| id(i, c)));
                l.extend(left.map(|c| id(i, c)));
                l.extend(down.map(|r| id(r, j)));
            }
            adj[id(i, j)] = l;
        }
    }
    adj
}

/// Hexagonal grid on the torus with `2a` rows and `2b` columns (girth 6
/// for `a, b ≥ 2`).
pub fn hex_torus(a: usize, b: usize) -> CombinatorialMap {
    assert!(a >= 2 && b >= 2);
    CombinatorialMap::from_neighbor_rotations(&hex_adjacency(2 * a, 2 * b, true)).expect("hex torus")
}

/// Planar hexagonal (brick-wall) patch with `rows × cols` vertices.
pub fn hex_patch(rows: usize, cols: usize) -> CombinatorialMap {
    CombinatorialMap::from_neighbor_rotations(&hex_adjacency(rows, cols, false)).expect("hex patch")
}

/// A plane map with exactly `n ≥ 4` vertices and girth at least 5, built
/// in linear time: a brick-wall patch with a few random edges removed and
/// random edges subdivided until the vertex count is reached.
pub fn large_planar_girth5<R: Rng>(rng: &mut R, n: usize) -> CombinatorialMap {
    assert!(n >= 4, "need at least 4 vertices");
    let side = ((0.8 * n as f64).sqrt() as usize).max(2);
    let (rows, cols) = if side * side <= n { (side, side) } else { (2, 2) };
    let mut adj = hex_adjacency(rows, cols, false);
    let edges: Vec<(VertexId, VertexId)> =
        (0..adj.len()).flat_map(|u| adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w))).collect();
    for _ in 0..edges.len() / 20 {
        let (u, w) = edges[rng.gen_range(0..edges.len())];
        if adj[u].len() == 3 && adj[w].len() == 3 && adj[u].contains(&w) {
            adj[u].retain(|&x| x != w);
            adj[w].retain(|&x| x != u);
        }
    }
    while adj.len() < n {
        let u = rng.gen_range(0..adj.len());
        if adj[u].is_empty() {
            continue;
        }
        let i = rng.gen_range(0..adj[u].len());
        let w = adj[u][i];
        let x = adj.len();
        adj[u][i] = x;
        let j = adj[w].iter().position(|&y| y == u).expect("symmetric adjacency");
        adj[w][j] = x;
        adj.push(vec![u, w]);
    }
    CombinatorialMap::from_neighbor_rotations(&adj).expect("plane patch")
}

/// Nested `n`-cycles, `rings` of them, with `spokes` evenly spaced edges
/// between consecutive rings; spoke positions alternate between layers so
/// that spokes never line up. Ring `r` holds vertices `r*n .. (r+1)*n`.
pub fn concentric_rings(n: usize, rings: usize, spokes: usize) -> CombinatorialMap {
    assert!(spokes > 0 && n % spokes == 0 && rings >= 1);
    let step = n / spokes;
    let mut coords = Vec::new();
    for r in 0..rings {
        coords.extend((0..n).map(|i| polar(1.0 + r as f64, i as f64 / n as f64)));
    }
    let mut edges = Vec::new();
    for r in 0..rings {
        for i in 0..n {
            edges.push((r * n + i, r * n + (i + 1) % n));
        }
        if r + 1 < rings {
            let offset = if r % 2 == 0 { 0 } else { step / 2 };
            for k in 0..spokes {
                let i = (k * step + offset) % n;
                edges.push((r * n + i, (r + 1) * n + i));
            }
        }
    }
    planar_from_coords(&coords, &edges)
}

/// Rebuilds a map with a new path of `inner` fresh vertices drawn from the
/// corner after dart `x` to the corner after dart `y`; the first new edge is
/// twisted when `twisted` is set.
pub fn add_path(map: &CombinatorialMap, x: DartId, y: DartId, inner: usize, twisted: bool) -> CombinatorialMap {
    let mut rotations = map.rotations().to_vec();
    let mut edges = map.edge_table();
    let (u, w) = (map.owner(x), map.owner(y));
    let n0 = map.num_vertices();
    let mut next = map.num_darts();
    let chain: Vec<VertexId> =
        std::iter::once(u).chain(n0..n0 + inner).chain(std::iter::once(w)).collect();
    rotations.resize(n0 + inner, Vec::new());
    let mut ends = Vec::new();
    for i in 0..chain.len() - 1 {
        let (a, b) = (next, next + 1);
        next += 2;
        edges.push((a, b, twisted && i == 0));
        ends.push((a, b));
        if i > 0 {
            rotations[chain[i]].push(a);
        }
        if i + 1 < chain.len() - 1 {
            rotations[chain[i + 1]].push(b);
        }
    }
    let first = ends[0].0;
    let last = ends[ends.len() - 1].1;
    let pu = rotations[u].iter().position(|&d| d == x).expect("corner dart at u");
    rotations[u].insert(pu + 1, first);
    let pw = rotations[w].iter().position(|&d| d == y).expect("corner dart at w");
    rotations[w].insert(pw + 1, last);
    CombinatorialMap::new(rotations, &edges).expect("path insertion keeps the map valid")
}

/// Rebuilds a map with a pendant vertex attached in the corner after `x`.
pub fn add_pendant(map: &CombinatorialMap, x: DartId) -> CombinatorialMap {
    let mut rotations = map.rotations().to_vec();
    let mut edges = map.edge_table();
    let u = map.owner(x);
    let (a, b) = (map.num_darts(), map.num_darts() + 1);
    edges.push((a, b, false));
    let p = rotations[u].iter().position(|&d| d == x).expect("corner dart");
    rotations[u].insert(p + 1, a);
    rotations.push(vec![b]);
    CombinatorialMap::new(rotations, &edges).expect("pendant insertion keeps the map valid")
}

fn random_corner_pair<R: Rng>(rng: &mut R, map: &CombinatorialMap, same_face: bool) -> Option<(DartId, DartId)> {
    let faces: Vec<usize> = (0..map.num_faces()).filter(|&f| !map.face(f).is_empty()).collect();
    let f = *faces.choose(rng)?;
    let s1 = *map.face(f).walk.choose(rng)?;
    let g = if same_face { f } else { *faces.choose(rng)? };
    if !same_face && g == f {
        return None;
    }
    let s2 = *map.face(g).walk.choose(rng)?;
    Some((map.corner_of(s1), map.corner_of(s2)))
}

fn acceptable(map: &CombinatorialMap, genus: usize, orientable: bool) -> bool {
    map.euler_genus() == genus && map.is_orientable() == orientable && map.has_girth_at_least(5)
}

/// A connected girth-≥5 map with exactly `n` vertices on the given surface.
///
/// Starts from C5 (or a path when `n < 5`), grows by paths and pendant
/// vertices inside faces, adds one handle or crosscap for non-spherical
/// surfaces, and finishes with a few random chords. Every step is checked,
/// so the result always has the declared genus and girth ≥ 5.
pub fn random_girth5_map<R: Rng>(rng: &mut R, surface: Surface, n: usize) -> CombinatorialMap {
    assert!(n >= 1 && (surface == Surface::Sphere || n >= 7), "non-planar girth-5 maps need 7 vertices");
    let target = surface.euler_genus();
    loop {
        let mut map = if n >= 5 { cycle_map(5) } else { path_map(n) };
        let mut tries = 0;
        while tries < 400 && (map.num_vertices() < n || map.euler_genus() < target) {
            tries += 1;
            let room = n - map.num_vertices();
            let genus = map.euler_genus();
            if genus < target && (room <= 2 || rng.gen_bool(0.3)) {
                let same = surface == Surface::ProjectivePlane;
                let Some((x, y)) = random_corner_pair(rng, &map, same) else { continue };
                let inner = rng.gen_range(0..=room.min(2));
                let cand = add_path(&map, x, y, inner, same);
                if acceptable(&cand, target, surface.orientable()) {
                    map = cand;
                }
                continue;
            }
            if room == 0 {
                continue;
            }
            let cand = if rng.gen_bool(0.25) || map.num_edges() == 0 {
                let d = rng.gen_range(0..map.num_darts().max(1));
                if map.num_darts() == 0 {
                    continue;
                }
                add_pendant(&map, d)
            } else {
                let Some((x, y)) = random_corner_pair(rng, &map, true) else { continue };
                let inner = rng.gen_range(1..=room.min(3));
                let mut c = add_path(&map, x, y, inner, false);
                if c.euler_genus() != genus {
                    c = add_path(&map, x, y, inner, true);
                }
                c
            };
            if acceptable(&cand, genus, map.is_orientable()) {
                map = cand;
            }
        }
        if map.num_vertices() != n || map.euler_genus() != target {
            continue;
        }
        let chords = rng.gen_range(0..=2);
        for _ in 0..8 * chords {
            let Some((x, y)) = random_corner_pair(rng, &map, true) else { break };
            for twisted in [false, true] {
                let cand = add_path(&map, x, y, 0, twisted);
                if acceptable(&cand, target, surface.orientable()) {
                    map = cand;
                    break;
                }
            }
        }
        return map;
    }
}

/// Uniformly random 3-lists from the palette `1..=palette`.
pub fn random_lists<R: Rng>(rng: &mut R, n: usize, palette: Color) -> ListAssignment {
    let colors: Vec<Color> = (1..=palette).collect();
    let lists = (0..n).map(|_| colors.choose_multiple(rng, 3).copied().collect()).collect();
    ListAssignment::new(lists).expect("nonempty lists")
}

/// 3-lists built to make coloring hard: tiny palettes, lists sharing two
/// colors across whole neighbourhoods, or a single repeated list.
pub fn adversarial_lists<R: Rng>(rng: &mut R, map: &CombinatorialMap) -> ListAssignment {
    let n = map.num_vertices();
    match rng.gen_range(0..4) {
        0 => ListAssignment::uniform(n, &[1, 2, 3]),
        1 => random_lists(rng, n, 4),
        2 => {
            let lists = (0..n).map(|v| vec![1, 2, 3 + (v as Color % 3)]).collect();
            ListAssignment::new(lists).expect("nonempty")
        }
        _ => {
            // BFS layers alternate between two overlapping list families.
            let dist = map.distances_from(&[0]);
            let lists = (0..n)
                .map(|v| match dist[v] % 3 {
                    0 => vec![1, 2, 3],
                    1 => vec![1, 2, 4],
                    _ => vec![1, 3, rng.gen_range(4..=5)],
                })
                .collect();
            ListAssignment::new(lists).expect("nonempty")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_maps() {
        let d = dodecahedron();
        assert_eq!((d.num_vertices(), d.num_edges(), d.num_faces()), (20, 30, 12));
        assert!(d.faces().iter().all(|f| f.len() == 5));
        let h = hex_torus(2, 3);
        assert_eq!(h.euler_genus(), 2);
        assert!(h.is_orientable());
        assert!(h.faces().iter().all(|f| f.len() == 6));
        assert_eq!(h.girth(), 6);
        let p = hex_patch(6, 8);
        assert_eq!(p.euler_genus(), 0);
        assert_eq!(p.girth(), 6);
        let r = concentric_rings(10, 2, 5);
        assert_eq!(r.euler_genus(), 0);
        assert_eq!(r.girth(), 6);
        assert_eq!(grid_map(8, 8).euler_genus(), 0);
    }

    #[test]
    fn random_maps_have_declared_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for surface in [Surface::Sphere, Surface::ProjectivePlane, Surface::Torus] {
            for n in [3, 6, 9, 12] {
                if surface != Surface::Sphere && n < 7 {
                    continue;
                }
                let m = random_girth5_map(&mut rng, surface, n);
                assert_eq!(m.num_vertices(), n);
                assert_eq!(m.euler_genus(), surface.euler_genus());
                assert_eq!(m.is_orientable(), surface.orientable());
                assert!(m.girth() >= 5);
                assert!(m.is_connected());
            }
        }
    }
}
