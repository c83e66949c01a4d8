//! Exact automorphism groups by individualization-refinement backtracking.
//!
//! The search fixes a leftmost path `b_0, b_1, …` through the refinement
//! tree (with `b_0` forced to the base vertex). Working from the deepest
//! level up, it computes the orbit of `b_i` under the pointwise stabilizer of
//! `b_0..b_{i-1}`: each candidate in `b_i`'s cell that is not already known
//! to be in the orbit is tested by searching for an automorphism that sends
//! the path to the candidate's branch. The group order is the product of the
//! orbit sizes. Candidates are tried lowest index first, so generator lists
//! are reproducible.

use serde::Serialize;
use thiserror::Error;

use crate::cayley::CayleyGraph;
use crate::graphcore::refine::SearchPath;
use crate::graphcore::SimpleGraph;
use crate::perm::Perm;
use crate::permgroup::{GroupOrder, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("graph has {vertices} vertices, search bound is {limit}")]
    SearchBoundExceeded { vertices: usize, limit: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("supplied permutation is not an automorphism: {0}")]
    NotAnAutomorphism(String),
}

#[derive(Clone, Copy, Debug)]
pub struct AutConfig {
    pub max_vertices: usize,
}

impl Default for AutConfig {
    fn default() -> Self {
        AutConfig { max_vertices: 5000 }
    }
}

#[derive(Clone, Debug)]
pub struct AutResult {
    /// The automorphism group, acting on vertex indices.
    pub group: PermGroup,
    pub order: GroupOrder,
    /// Order of the stabilizer of the base vertex.
    pub stabilizer_order: GroupOrder,
    /// Size of the base vertex's orbit.
    pub orbit_size: usize,
    pub base_vertex: usize,
}

/// JSON shape of an [`AutResult`]. Generators are written in cycle notation
/// with vertex `v` printed as point `v + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutResultJson {
    pub order: String,
    pub generators: Vec<String>,
    pub stabilizer_order: String,
    pub orbit_size: usize,
}

impl AutResult {
    pub fn to_json(&self) -> AutResultJson {
        AutResultJson {
            order: self.order.to_string(),
            generators: self.group.generators().iter().map(|g| g.to_string()).collect(),
            stabilizer_order: self.stabilizer_order.to_string(),
            orbit_size: self.orbit_size,
        }
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.orbit_size == self.group.degree()
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut y = x;
        while self.0[y as usize] != r {
            let next = self.0[y as usize];
            self.0[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi as usize] = lo;
        }
    }

    fn absorb(&mut self, p: &Perm) {
        for (i, &x) in p.images0().iter().enumerate() {
            self.union(i as u32, x);
        }
    }
}

/// Per-level outcome of the search.
struct Search {
    generators: Vec<Perm>,
    /// Orbit size of `b_i` under the stabilizer of `b_0..b_{i-1}`.
    orbit_sizes: Vec<usize>,
}

/// Runs the level-by-level search with `forced[0]` as the first base point.
/// `known` automorphisms are used to seed orbits; each is filed at the
/// deepest level whose base prefix it fixes.
fn search(g: &SimpleGraph, forced: &[usize], known: &[Perm]) -> Search {
    let n = g.vertex_count();
    let path = SearchPath::build(g, forced);
    let base: Vec<(u32, usize)> = path.nodes.iter().filter_map(|node| node.chosen).collect();
    let levels = base.len();

    // generators grouped by the level they were filed at
    let mut by_level: Vec<Vec<Perm>> = vec![Vec::new(); levels + 1];
    for p in known {
        let fixed = base
            .iter()
            .take_while(|&&(b, _)| p.apply0(b as usize) == b as usize)
            .count();
        if !p.is_identity() {
            by_level[fixed.min(levels)].push(p.clone());
        }
    }

    let mut orbit_sizes = vec![1usize; levels];
    let mut found: Vec<Vec<Perm>> = vec![Vec::new(); levels];
    for i in (0..levels).rev() {
        let (b, cell) = base[i];
        let mut uf = UnionFind::new(n);
        for lvl in by_level.iter().skip(i) {
            for p in lvl {
                uf.absorb(p);
            }
        }
        for lvl in found.iter().skip(i) {
            for p in lvl {
                uf.absorb(p);
            }
        }
        let node = &path.nodes[i];
        let want = path.nodes[i + 1].trace;
        let mut candidates = node.partition.cell_members(cell).to_vec();
        candidates.sort_unstable();
        let mut failed: Vec<u32> = Vec::new();
        for c in candidates {
            if c == b || uf.find(c) == uf.find(b) {
                continue;
            }
            let rc = uf.find(c);
            if failed.iter().any(|&f| uf.find(f) == rc) {
                continue;
            }
            let mut right = node.partition.clone();
            let hit = if right.individualize(g, c as usize) == want {
                path.extend(g, g, i + 1, right)
            } else {
                None
            };
            match hit {
                Some(map) => {
                    let p = Perm::from_images0_unchecked(map);
                    uf.absorb(&p);
                    found[i].push(p);
                }
                None => failed.push(c),
            }
        }
        let rb = uf.find(b);
        orbit_sizes[i] = (0..n as u32).filter(|&v| uf.find(v) == rb).count();
    }

    let mut generators: Vec<Perm> = Vec::new();
    for i in 0..=levels {
        generators.extend(by_level[i].iter().cloned());
        if i < levels {
            generators.extend(found[i].iter().cloned());
        }
    }
    Search {
        generators,
        orbit_sizes,
    }
}

fn check(g: &SimpleGraph, config: AutConfig) -> Result<(), AutError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(AutError::EmptyGraph);
    }
    if n > config.max_vertices {
        return Err(AutError::SearchBoundExceeded {
            vertices: n,
            limit: config.max_vertices,
        });
    }
    Ok(())
}

/// Automorphism group with vertex 0 as base vertex.
pub fn automorphism_group(g: &SimpleGraph) -> Result<AutResult, AutError> {
    automorphism_group_with(g, AutConfig::default(), &[])
}

/// Automorphism group using `known` automorphisms (verified here) as seeds.
/// Seeds that already make vertex 0's orbit complete remove the top-level
/// search entirely.
pub fn automorphism_group_with(g: &SimpleGraph, config: AutConfig, known: &[Perm]) -> Result<AutResult, AutError> {
    check(g, config)?;
    for p in known {
        if !g.is_automorphism(p) {
            return Err(AutError::NotAnAutomorphism(p.to_string()));
        }
    }
    let s = search(g, &[0], known);
    let n = g.vertex_count();
    for p in &s.generators {
        assert!(g.is_automorphism(p), "search produced a non-automorphism");
    }
    let stabilizer_order = s.orbit_sizes[1..]
        .iter()
        .fold(GroupOrder::one(), |acc, &k| acc * GroupOrder::from(k as u64));
    let orbit_size = s.orbit_sizes[0];
    let order = &stabilizer_order * &GroupOrder::from(orbit_size as u64);
    let group = PermGroup::new(n, s.generators).expect("generators have the graph's degree");
    Ok(AutResult {
        group,
        order,
        stabilizer_order,
        orbit_size,
        base_vertex: 0,
    })
}

/// All automorphisms fixing `v`.
pub fn vertex_stabilizer(g: &SimpleGraph, v: usize) -> Result<PermGroup, AutError> {
    vertex_stabilizer_with(g, v, AutConfig::default())
}

pub fn vertex_stabilizer_with(g: &SimpleGraph, v: usize, config: AutConfig) -> Result<PermGroup, AutError> {
    check(g, config)?;
    if v >= g.vertex_count() {
        return Err(AutError::VertexOutOfRange {
            vertex: v,
            vertices: g.vertex_count(),
        });
    }
    let s = search(g, &[v], &[]);
    let gens = s.generators.into_iter().filter(|p| p.apply0(v) == v).collect();
    Ok(PermGroup::new(g.vertex_count(), gens).expect("generators have the graph's degree"))
}

pub fn is_vertex_transitive(g: &SimpleGraph) -> Result<bool, AutError> {
    Ok(automorphism_group(g)?.is_vertex_transitive())
}

/// Automorphism group of a Cayley graph. The right translations are seeded
/// as known automorphisms, so vertex-transitivity needs no search and only
/// the stabilizer of the identity is explored.
pub fn cayley_automorphism_group(c: &CayleyGraph, config: AutConfig) -> Result<AutResult, AutError> {
    let g = c.to_simple_graph();
    check(&g, config)?;
    let known = c.right_translations().generators().to_vec();
    automorphism_group_with(&g, config, &known)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{build_named, NamedGraph};
    use crate::transposition::TranspositionSet;

    fn named(s: &str) -> SimpleGraph {
        build_named(&s.parse().unwrap()).unwrap()
    }

    /// Every permutation of the vertices, kept if it is an automorphism.
    fn brute_force_order(g: &SimpleGraph) -> u64 {
        fn rec(g: &SimpleGraph, map: &mut Vec<u32>, used: &mut Vec<bool>) -> u64 {
            let k = map.len();
            if k == g.vertex_count() {
                return 1;
            }
            let mut total = 0;
            for c in 0..g.vertex_count() {
                if used[c] {
                    continue;
                }
                let ok = (0..k).all(|u| g.has_edge(u, k) == g.has_edge(map[u] as usize, c));
                if ok {
                    used[c] = true;
                    map.push(c as u32);
                    total += rec(g, map, used);
                    map.pop();
                    used[c] = false;
                }
            }
            total
        }
        rec(g, &mut Vec::new(), &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn worked_orders() {
        let cases = [
            ("cycle(12)", 24u64),
            ("petersen", 120),
            ("matching(3)", 48),
            ("star(4)", 24),
            ("hypercube(2)", 8),
            ("hypercube(3)", 48),
            ("hypercube(4)", 384),
            ("octahedron", 48),
            ("complete(5)", 120),
            ("kneser(6,3,1)", 1440),
        ];
        for (name, order) in cases {
            let r = automorphism_group(&named(name)).unwrap();
            assert_eq!(r.order, order, "{name}");
            assert_eq!(r.group.order(), r.order, "{name}");
        }
        let k4e = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(automorphism_group(&k4e).unwrap().order, 4u64);
    }

    #[test]
    fn stabilizers() {
        let q3 = named("hypercube(3)");
        assert_eq!(vertex_stabilizer(&q3, 0).unwrap().order(), 6u64);
        let p = named("petersen");
        for v in 0..10 {
            assert_eq!(vertex_stabilizer(&p, v).unwrap().order(), 12u64);
        }
        for n in 2..=6 {
            let k = build_named(&NamedGraph::Complete(n)).unwrap();
            assert_eq!(
                vertex_stabilizer(&k, n - 1).unwrap().order(),
                GroupOrder::factorial(n - 1)
            );
        }
    }

    #[test]
    fn vertex_transitivity() {
        assert!(is_vertex_transitive(&named("petersen")).unwrap());
        let k4e = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(!is_vertex_transitive(&k4e).unwrap());
        let c = crate::cayley::build_cayley(&TranspositionSet::path(4).unwrap(), 100).unwrap();
        assert!(is_vertex_transitive(&c.to_simple_graph()).unwrap());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            "path(5)",
            "cycle(6)",
            "complete-bipartite(2,3)",
            "star(3)",
            "empty(4)",
            "hypercube(3)",
        ];
        for name in graphs {
            let g = named(name);
            assert_eq!(automorphism_group(&g).unwrap().order, brute_force_order(&g), "{name}");
        }
        let irregular = SimpleGraph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6), (1, 3)]).unwrap();
        assert_eq!(
            automorphism_group(&irregular).unwrap().order,
            brute_force_order(&irregular)
        );
    }

    #[test]
    fn complement_has_same_group() {
        for name in ["petersen", "cycle(7)", "hypercube(3)", "matching(3)", "path(6)"] {
            let g = named(name);
            let a = automorphism_group(&g).unwrap();
            let b = automorphism_group(&g.complement()).unwrap();
            assert_eq!(a.order, b.order, "{name}");
            assert!(a.group.same_group(&b.group), "{name}");
        }
    }

    #[test]
    fn orbit_stabilizer_and_degree_preservation() {
        for name in ["path(5)", "star(5)", "petersen", "complete-bipartite(2,4)"] {
            let g = named(name);
            let r = automorphism_group(&g).unwrap();
            assert_eq!(r.order, &r.stabilizer_order * &GroupOrder::from(r.orbit_size as u64));
            assert_eq!(r.orbit_size, r.group.orbit(1).len());
            for p in r.group.generators() {
                assert!(g.is_automorphism(p));
                for u in 0..g.vertex_count() {
                    assert_eq!(g.degree(p.apply0(u)), g.degree(u));
                }
            }
        }
    }

    #[test]
    fn cayley_fast_path_agrees() {
        for s in [
            TranspositionSet::star(4).unwrap(),
            TranspositionSet::path(4).unwrap(),
            TranspositionSet::cycle(4).unwrap(),
        ] {
            let c = crate::cayley::build_cayley(&s, 1000).unwrap();
            let fast = cayley_automorphism_group(&c, AutConfig::default()).unwrap();
            let slow = automorphism_group(&c.to_simple_graph()).unwrap();
            assert_eq!(fast.order, slow.order);
            assert_eq!(fast.orbit_size, 24);
            assert!(fast.group.same_group(&slow.group));
        }
    }

    #[test]
    fn json_shape_and_bounds() {
        let r = automorphism_group(&named("cycle(4)")).unwrap();
        let j = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(j["order"], "8");
        assert_eq!(j["stabilizer_order"], "2");
        assert_eq!(j["orbit_size"], 4);
        let big = SimpleGraph::empty(10);
        assert!(matches!(
            automorphism_group_with(&big, AutConfig { max_vertices: 5 }, &[]),
            Err(AutError::SearchBoundExceeded { vertices: 10, limit: 5 })
        ));
        assert_eq!(
            automorphism_group(&SimpleGraph::empty(0)).unwrap_err(),
            AutError::EmptyGraph
        );
    }
}
