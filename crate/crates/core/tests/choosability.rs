use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfcol::choosability::{combine_choosability, decide_choosable, profile_set, ChoosabilityProfile};
use surfcol::embedding::{CombinatorialMap, VertexId};
use surfcol::generate::{random_girth5_map, Surface};
use surfcol::oracle::{brute_choosability_profile, brute_choosable};
use surfcol::params::SolverParams;

const SURFACES: [Surface; 3] = [Surface::Sphere, Surface::ProjectivePlane, Surface::Torus];

fn random_subset(rng: &mut ChaCha8Rng, from: &[VertexId], k: usize) -> Vec<VertexId> {
    let mut pool = from.to_vec();
    let mut out = Vec::new();
    while out.len() < k && !pool.is_empty() {
        out.push(pool.swap_remove(rng.gen_range(0..pool.len())));
    }
    out
}

fn random_map(rng: &mut ChaCha8Rng, i: usize, n: usize) -> CombinatorialMap {
    let surface = if n < 7 { Surface::Sphere } else { SURFACES[i % 3] };
    random_girth5_map(rng, surface, n)
}

/// Two random maps glued at `shared` vertex pairs, as one graph with the
/// vertices of the first map numbered first.
fn glue(a: &CombinatorialMap, b: &CombinatorialMap, shared: &[(VertexId, VertexId)]) -> (CombinatorialMap, Vec<VertexId>) {
    let na = a.num_vertices();
    let mut to = Vec::new();
    let mut next = na;
    for v in 0..b.num_vertices() {
        match shared.iter().find(|&&(_, y)| y == v) {
            Some(&(x, _)) => to.push(x),
            None => {
                to.push(next);
                next += 1;
            }
        }
    }
    let mut adj = a.adjacency();
    adj.resize(next, Vec::new());
    for (v, nb) in b.adjacency().into_iter().enumerate() {
        adj[to[v]].extend(nb.into_iter().map(|w| to[w]));
    }
    (CombinatorialMap::from_neighbor_rotations(&adj).unwrap(), to)
}

fn relabel(c: ChoosabilityProfile, origin: &[VertexId]) -> ChoosabilityProfile {
    ChoosabilityProfile::new(c.boundary().iter().map(|&v| origin[v]).collect(), c.entries().clone())
}

#[test]
fn profile_set_matches_double_enumeration() {
    let params = SolverParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut compared = 0;
    for i in 0..90 {
        let n = rng.gen_range(5..=10);
        let map = random_map(&mut rng, i, n);
        let all: Vec<VertexId> = (0..map.num_vertices()).collect();
        let k = rng.gen_range(0..=3);
        let s = random_subset(&mut rng, &all, k);
        let want = match brute_choosability_profile(&map, &s, 20) {
            Ok(c) => c,
            Err(surfcol::Error::Resource(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        assert_eq!(profile_set(&map, &s, &params).unwrap(), want, "instance {i}, s {s:?}");
        compared += 1;
    }
    assert!(compared >= 60, "only {compared} instances within oracle reach");
}

#[test]
fn combination_matches_whole_graph() {
    let params = SolverParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    while compared < 40 {
        let (na, nb) = (rng.gen_range(3..=6), rng.gen_range(3..=6));
        let a = random_map(&mut rng, compared, na);
        let b = random_map(&mut rng, compared + 1, nb);
        let glued = rng.gen_range(1..=2);
        let shared: Vec<(VertexId, VertexId)> = (0..glued).map(|j| (a.num_vertices() - 1 - j, j)).collect();
        let (g, to) = glue(&a, &b, &shared);
        if g.num_vertices() > 10 || !g.has_girth_at_least(5) {
            continue;
        }
        let bset: Vec<VertexId> = shared.iter().map(|&(x, _)| x).collect();
        let a_only: Vec<VertexId> = (0..a.num_vertices()).filter(|v| !bset.contains(v)).collect();
        let c_only: Vec<VertexId> = (a.num_vertices()..g.num_vertices()).collect();
        let (ka, kc) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
        let aa = random_subset(&mut rng, &a_only, ka);
        let cc = random_subset(&mut rng, &c_only, kc);
        let s1: Vec<VertexId> = aa.iter().chain(&bset).copied().collect();
        let s2: Vec<VertexId> = bset.iter().chain(&cc).copied().collect();
        let s2_local: Vec<VertexId> = s2.iter().map(|&v| to.iter().position(|&t| t == v).unwrap()).collect();
        let c1 = profile_set(&a, &s1, &params).unwrap();
        let c2 = relabel(profile_set(&b, &s2_local, &params).unwrap(), &to);
        let joined = combine_choosability(&c1, &c2, &params).unwrap();
        let whole = profile_set(&g, joined.boundary(), &params).unwrap();
        assert_eq!(joined, whole, "split {compared}");
        let ends: Vec<VertexId> = aa.iter().chain(&cc).copied().collect();
        assert_eq!(joined.project(&ends).unwrap(), profile_set(&g, &ends, &params).unwrap());
        compared += 1;
    }
}

#[test]
fn choosability_matches_oracle_on_small_graphs() {
    let params = SolverParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..150 {
        let n = rng.gen_range(1..=8);
        let map = random_map(&mut rng, i, n);
        assert_eq!(decide_choosable(&map, &params).unwrap(), brute_choosable(&map, 20).unwrap());
    }
}
