//! The Cayley graph `Cay(Gr(S), S)` of a transposition set, as an indexed
//! graph.
//!
//! Vertex `v` is the group element with mixed-radix Lehmer index `v` (see
//! [`lehmer`]); the identity is vertex 0. The neighbor of `g` along the
//! generator `s` is `s·g` in left-to-right order, i.e. apply `s` and then
//! `g`. On image arrays that is a swap of two positions, so neighbors are
//! computed without a lookup table. Above a vertex threshold the adjacency is
//! left implicit and recomputed on demand.

pub mod lehmer;

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graphcore::SimpleGraph;
use crate::perm::Perm;
use crate::permgroup::{GroupOrder, PermGroup};
use crate::transposition::TranspositionSet;
use lehmer::Indexer;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("group has order {required}, budget is {limit} vertices")]
    BudgetExceeded { required: GroupOrder, limit: u64 },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("{0} is not a generator of the Cayley graph")]
    NotAGenerator(String),
    #[error("degree {0} is outside the supported range 1..=20")]
    UnsupportedDegree(usize),
}

/// Construction knobs.
#[derive(Clone, Copy, Debug)]
pub struct CayleyOptions {
    /// Maximum number of vertices to build.
    pub limit: u64,
    /// Graphs with more vertices than this keep adjacency implicit.
    pub implicit_threshold: u64,
    /// Expand large BFS frontiers on the rayon pool.
    pub parallel_bfs: bool,
}

impl Default for CayleyOptions {
    fn default() -> Self {
        CayleyOptions {
            limit: 4_000_000,
            implicit_threshold: 1_000_000,
            parallel_bfs: true,
        }
    }
}

#[derive(Debug)]
enum Adjacency {
    /// `flat[v * degree + k]` is the neighbor of `v` along generator `k`.
    Explicit(Vec<u32>),
    Implicit,
}

#[derive(Debug)]
pub struct CayleyGraph {
    base: TranspositionSet,
    gens: Vec<(u8, u8)>,
    indexer: Indexer,
    adjacency: Adjacency,
    group_order: GroupOrder,
    parallel_bfs: bool,
    distances: OnceLock<Vec<u16>>,
}

/// `{family, n, vertices, degree, diameter}` record for front ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleySummary {
    pub family: String,
    pub n: usize,
    pub vertices: u64,
    pub degree: usize,
    pub diameter: u32,
}

const PARALLEL_FRONTIER: usize = 1 << 12;

/// Builds `Cay(Gr(S), S)` with default options and the given vertex budget.
pub fn build_cayley(s: &TranspositionSet, limit: u64) -> Result<CayleyGraph, CayleyError> {
    CayleyGraph::build(
        s,
        CayleyOptions {
            limit,
            ..CayleyOptions::default()
        },
    )
}

impl CayleyGraph {
    pub fn build(s: &TranspositionSet, opts: CayleyOptions) -> Result<CayleyGraph, CayleyError> {
        let n = s.n();
        if n == 0 || n > 20 {
            return Err(CayleyError::UnsupportedDegree(n));
        }
        let components = s.transposition_graph().components();
        let group_order = components
            .iter()
            .fold(GroupOrder::one(), |acc, c| acc * GroupOrder::factorial(c.len()));
        let limit = opts.limit.min(u32::MAX as u64);
        match group_order.to_u64() {
            Some(v) if v <= limit => {}
            _ => {
                return Err(CayleyError::BudgetExceeded {
                    required: group_order,
                    limit: opts.limit,
                })
            }
        }
        let indexer = Indexer::new(n, components);
        let gens: Vec<(u8, u8)> = s.pairs().iter().map(|&(i, j)| ((i - 1) as u8, (j - 1) as u8)).collect();
        let mut graph = CayleyGraph {
            base: s.clone(),
            gens,
            indexer,
            adjacency: Adjacency::Implicit,
            group_order,
            parallel_bfs: opts.parallel_bfs,
            distances: OnceLock::new(),
        };
        if graph.vertex_count() as u64 <= opts.implicit_threshold {
            graph.adjacency = Adjacency::Explicit(graph.compute_adjacency());
        }
        Ok(graph)
    }

    fn compute_adjacency(&self) -> Vec<u32> {
        let d = self.degree();
        let v = self.vertex_count();
        let mut flat = vec![0u32; v * d];
        if d == 0 {
            return flat;
        }
        flat.par_chunks_mut(d).enumerate().for_each(|(vertex, row)| {
            self.implicit_neighbors(vertex as u32, row);
        });
        flat
    }

    fn implicit_neighbors(&self, v: u32, out: &mut [u32]) {
        let n = self.indexer.n();
        let mut img = [0u8; 32];
        self.indexer.element(v as u64, &mut img[..n]);
        for (k, &(a, b)) in self.gens.iter().enumerate() {
            img.swap(a as usize, b as usize);
            out[k] = self.indexer.index_unchecked(&img[..n]) as u32;
            img.swap(a as usize, b as usize);
        }
    }

    pub fn base(&self) -> &TranspositionSet {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.indexer.total as usize
    }

    /// Number of generators; the graph is regular of this degree.
    pub fn degree(&self) -> usize {
        self.gens.len()
    }

    pub fn group_order(&self) -> &GroupOrder {
        &self.group_order
    }

    pub fn is_implicit(&self) -> bool {
        matches!(self.adjacency, Adjacency::Implicit)
    }

    /// Neighbor of `v` along the `k`-th generator (lexicographic order).
    pub fn neighbor(&self, v: u32, k: usize) -> u32 {
        match &self.adjacency {
            Adjacency::Explicit(flat) => flat[v as usize * self.degree() + k],
            Adjacency::Implicit => {
                let mut out = vec![0u32; self.degree()];
                self.implicit_neighbors(v, &mut out);
                out[k]
            }
        }
    }

    /// Neighbors of `v` in generator order.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        match &self.adjacency {
            Adjacency::Explicit(flat) => {
                let d = self.degree();
                flat[v as usize * d..(v as usize + 1) * d].to_vec()
            }
            Adjacency::Implicit => {
                let mut out = vec![0u32; self.degree()];
                self.implicit_neighbors(v, &mut out);
                out
            }
        }
    }

    /// The group element at vertex `v`.
    pub fn element(&self, v: u32) -> Perm {
        let n = self.n();
        let mut img = [0u8; 32];
        self.indexer.element(v as u64, &mut img[..n]);
        Perm::from_images0_unchecked(img[..n].iter().map(|&x| x as u32).collect())
    }

    /// Vertex of a group element, if it lies in `Gr(S)`.
    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        if p.degree() != self.n() {
            return None;
        }
        let img: Vec<u8> = p.images0().iter().map(|&x| x as u8).collect();
        self.indexer.index(&img).map(|i| i as u32)
    }

    /// Position of a transposition in the generator list.
    pub fn generator_index(&self, t: &Perm) -> Result<usize, CayleyError> {
        t.as_transposition()
            .filter(|_| t.degree() == self.n())
            .and_then(|(i, j)| {
                self.gens
                    .iter()
                    .position(|&(a, b)| (a as usize + 1, b as usize + 1) == (i, j))
            })
            .ok_or_else(|| CayleyError::NotAGenerator(t.to_string()))
    }

    /// Vertex of the generator `t` (its distance from the identity is 1).
    pub fn generator_vertex(&self, t: &Perm) -> Result<u32, CayleyError> {
        let k = self.generator_index(t)?;
        Ok(self.neighbor(0, k))
    }

    /// Breadth-first distances from the identity vertex, computed once.
    pub fn distances_from_identity(&self) -> Result<&[u16], CayleyError> {
        let d = self.distances.get_or_init(|| self.bfs());
        if d.contains(&u16::MAX) {
            return Err(CayleyError::DisconnectedGraph);
        }
        Ok(d)
    }

    fn bfs(&self) -> Vec<u16> {
        let v = self.vertex_count();
        let mut dist = vec![u16::MAX; v];
        let mut visited = vec![0u64; v.div_ceil(64)];
        let mark = |visited: &mut [u64], x: u32| -> bool {
            let (w, b) = ((x / 64) as usize, x % 64);
            let fresh = visited[w] >> b & 1 == 0;
            visited[w] |= 1 << b;
            fresh
        };
        mark(&mut visited, 0);
        dist[0] = 0;
        let mut frontier = vec![0u32];
        let mut level: u16 = 0;
        while !frontier.is_empty() {
            level += 1;
            let candidates: Vec<u32> = if self.parallel_bfs && frontier.len() >= PARALLEL_FRONTIER {
                frontier
                    .par_chunks(1024)
                    .map(|chunk| {
                        let mut out = Vec::with_capacity(chunk.len() * self.degree());
                        for &x in chunk {
                            out.extend(self.neighbors(x));
                        }
                        out
                    })
                    .collect::<Vec<_>>()
                    .concat()
            } else {
                let mut out = Vec::with_capacity(frontier.len() * self.degree());
                for &x in &frontier {
                    match &self.adjacency {
                        Adjacency::Explicit(flat) => {
                            let d = self.degree();
                            out.extend_from_slice(&flat[x as usize * d..(x as usize + 1) * d]);
                        }
                        Adjacency::Implicit => out.extend(self.neighbors(x)),
                    }
                }
                out
            };
            let mut next = Vec::new();
            for y in candidates {
                if mark(&mut visited, y) {
                    dist[y as usize] = level;
                    next.push(y);
                }
            }
            frontier = next;
        }
        dist
    }

    /// Largest distance from the identity; by vertex-transitivity this is
    /// the diameter.
    pub fn diameter(&self) -> Result<u32, CayleyError> {
        Ok(self.distances_from_identity()?.iter().copied().max().unwrap_or(0) as u32)
    }

    /// Vertices at distance exactly `d` from the identity, ascending.
    pub fn sphere(&self, d: u32) -> Result<Vec<u32>, CayleyError> {
        Ok(self
            .distances_from_identity()?
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x as u32 == d)
            .map(|(v, _)| v as u32)
            .collect())
    }

    /// Number of vertices at each distance `0..=diameter`.
    pub fn level_counts(&self) -> Result<Vec<u64>, CayleyError> {
        let dist = self.distances_from_identity()?;
        let diam = dist.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u64; diam + 1];
        for &d in dist {
            counts[d as usize] += 1;
        }
        Ok(counts)
    }

    /// Right translation `r_z: g ↦ g·z` as a permutation of vertex indices.
    /// In image arrays, `g·z` relabels values through `z`.
    pub fn right_translation(&self, z: &Perm) -> Result<Perm, CayleyError> {
        if self.index_of(z).is_none() {
            return Err(CayleyError::NotAGenerator(z.to_string()));
        }
        let n = self.n();
        let zi: Vec<u8> = z.images0().iter().map(|&x| x as u8).collect();
        let images: Vec<u32> = (0..self.vertex_count() as u32)
            .into_par_iter()
            .map(|v| {
                let mut img = [0u8; 32];
                self.indexer.element(v as u64, &mut img[..n]);
                for x in img[..n].iter_mut() {
                    *x = zi[*x as usize];
                }
                self.indexer.index_unchecked(&img[..n]) as u32
            })
            .collect();
        Ok(Perm::from_images0_unchecked(images))
    }

    /// `R(Gr(S))` on vertex indices, generated by the translations `r_s`.
    pub fn right_translations(&self) -> PermGroup {
        let gens = self
            .base
            .perms()
            .iter()
            .map(|s| self.right_translation(s).expect("generators lie in Gr(S)"))
            .collect();
        PermGroup::new(self.vertex_count(), gens).expect("degree matches vertex count")
    }

    /// True when the vertex permutation `p` is `r_z` for `z` the element at
    /// `p(0)`; this is membership in the regular group `R(Gr(S))`.
    pub fn is_right_translation(&self, p: &Perm) -> bool {
        if p.degree() != self.vertex_count() {
            return false;
        }
        let z = self.element(p.apply0(0) as u32);
        match self.right_translation(&z) {
            Ok(r) => &r == p,
            Err(_) => false,
        }
    }

    /// True when the vertex permutation maps every edge to an edge.
    pub fn preserves_adjacency(&self, p: &Perm) -> bool {
        if p.degree() != self.vertex_count() {
            return false;
        }
        (0..self.vertex_count() as u32).into_par_iter().all(|v| {
            let pv = p.apply0(v as usize) as u32;
            let mut image_nbrs = self.neighbors(pv);
            image_nbrs.sort_unstable();
            self.neighbors(v)
                .into_iter()
                .all(|w| image_nbrs.binary_search(&(p.apply0(w as usize) as u32)).is_ok())
        })
    }

    /// The graph as a [`SimpleGraph`] (sorted neighbor lists).
    pub fn to_simple_graph(&self) -> SimpleGraph {
        let adj: Vec<Vec<u32>> = (0..self.vertex_count() as u32)
            .into_par_iter()
            .map(|v| {
                let mut nb = self.neighbors(v);
                nb.sort_unstable();
                nb
            })
            .collect();
        SimpleGraph::from_adjacency(adj).expect("Cayley adjacency is symmetric and loop-free")
    }

    /// Vertex labels: each element in cycle notation.
    pub fn labels(&self) -> Vec<String> {
        (0..self.vertex_count() as u32)
            .map(|v| self.element(v).to_string())
            .collect()
    }

    pub fn summary(&self) -> Result<CayleySummary, CayleyError> {
        Ok(CayleySummary {
            family: self.base.recognize_family().to_string(),
            n: self.n(),
            vertices: self.vertex_count() as u64,
            degree: self.degree(),
            diameter: self.diameter()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{build_named, NamedGraph, SearchLimits};
    use std::collections::VecDeque;

    fn mbs(n: usize) -> CayleyGraph {
        build_cayley(&TranspositionSet::cycle(n).unwrap(), 1 << 24).unwrap()
    }

    /// BFS over explicit permutations with a hash set: no ranking involved.
    fn oracle_distances(s: &TranspositionSet) -> std::collections::HashMap<Perm, u32> {
        let gens = s.perms();
        let id = Perm::identity(s.n()).unwrap();
        let mut dist = std::collections::HashMap::from([(id.clone(), 0)]);
        let mut q = VecDeque::from([id]);
        while let Some(g) = q.pop_front() {
            let d = dist[&g];
            for t in &gens {
                let h = t.compose(&g).unwrap();
                if !dist.contains_key(&h) {
                    dist.insert(h.clone(), d + 1);
                    q.push_back(h);
                }
            }
        }
        dist
    }

    #[test]
    fn build_examples() {
        let lim = SearchLimits::default();
        let p3 = build_cayley(&TranspositionSet::path(3).unwrap(), 100).unwrap();
        assert_eq!(p3.vertex_count(), 6);
        let g = p3.to_simple_graph();
        assert_eq!(g.is_regular(), Some(2));
        assert!(g
            .is_isomorphic(&build_named(&NamedGraph::Cycle(6)).unwrap(), lim)
            .unwrap()
            .is_some());

        let q2 = build_cayley(&TranspositionSet::new(4, &[(1, 2), (3, 4)]).unwrap(), 100).unwrap();
        assert_eq!(q2.vertex_count(), 4);
        assert!(q2
            .to_simple_graph()
            .is_isomorphic(&build_named(&NamedGraph::Hypercube(2)).unwrap(), lim)
            .unwrap()
            .is_some());

        let st4 = build_cayley(&TranspositionSet::star(4).unwrap(), 100).unwrap();
        assert_eq!(st4.vertex_count(), 24);
        assert_eq!(st4.to_simple_graph().is_regular(), Some(3));
    }

    #[test]
    fn budget_is_enforced() {
        let err = build_cayley(&TranspositionSet::cycle(6).unwrap(), 100).unwrap_err();
        assert_eq!(
            err,
            CayleyError::BudgetExceeded {
                required: GroupOrder::from(720),
                limit: 100
            }
        );
    }

    #[test]
    fn identity_is_vertex_zero_and_neighbors_are_left_products() {
        let g = mbs(5);
        assert!(g.element(0).is_identity());
        for v in [0u32, 17, 63, 119] {
            let x = g.element(v);
            for (k, t) in g.base().perms().iter().enumerate() {
                let expected = t.compose(&x).unwrap();
                assert_eq!(g.element(g.neighbor(v, k)), expected);
            }
        }
    }

    #[test]
    fn distances_examples() {
        let g = mbs(4);
        let dist = g.distances_from_identity().unwrap();
        assert_eq!(dist[0], 0);
        for t in g.base().perms() {
            assert_eq!(dist[g.generator_vertex(&t).unwrap() as usize], 1);
        }
        assert_eq!(g.diameter().unwrap(), 4);
        let oracle = oracle_distances(g.base());
        for v in 0..g.vertex_count() as u32 {
            assert_eq!(dist[v as usize] as u32, oracle[&g.element(v)]);
        }
        let s3 = oracle.values().filter(|&&d| d == 3).count();
        assert_eq!(g.sphere(3).unwrap().len(), s3);
        assert_eq!(g.sphere(0).unwrap(), vec![0]);
        assert_eq!(g.sphere(1).unwrap().len(), 4);
    }

    #[test]
    fn diameter_examples() {
        let bs4 = build_cayley(&TranspositionSet::path(4).unwrap(), 100).unwrap();
        let oracle = oracle_distances(bs4.base());
        assert_eq!(bs4.diameter().unwrap(), *oracle.values().max().unwrap());
        assert_eq!(bs4.diameter().unwrap(), 6);
        for m in 1..=4 {
            let q = build_cayley(&TranspositionSet::matching(2 * m).unwrap(), 1000).unwrap();
            assert_eq!(q.diameter().unwrap(), m as u32);
        }
    }

    #[test]
    fn implicit_and_explicit_agree() {
        let s = TranspositionSet::cycle(6).unwrap();
        let explicit = build_cayley(&s, 10_000).unwrap();
        let implicit = CayleyGraph::build(
            &s,
            CayleyOptions {
                limit: 10_000,
                implicit_threshold: 10,
                parallel_bfs: true,
            },
        )
        .unwrap();
        assert!(implicit.is_implicit() && !explicit.is_implicit());
        assert_eq!(
            explicit.distances_from_identity().unwrap(),
            implicit.distances_from_identity().unwrap()
        );
        let seq = CayleyGraph::build(
            &s,
            CayleyOptions {
                limit: 10_000,
                implicit_threshold: 10,
                parallel_bfs: false,
            },
        )
        .unwrap();
        assert_eq!(
            seq.distances_from_identity().unwrap(),
            explicit.distances_from_identity().unwrap()
        );
    }

    #[test]
    fn regular_and_bipartite_by_parity() {
        for s in [TranspositionSet::cycle(5).unwrap(), TranspositionSet::star(5).unwrap()] {
            let g = build_cayley(&s, 1000).unwrap();
            let dist = g.distances_from_identity().unwrap();
            for v in 0..g.vertex_count() as u32 {
                let nb = g.neighbors(v);
                assert_eq!(nb.len(), s.len());
                let parity = (g.n() - g.element(v).cycle_count()) % 2;
                assert_eq!(dist[v as usize] as usize % 2, parity);
                for w in nb {
                    assert!(g.neighbors(w).contains(&v));
                    assert_ne!(dist[w as usize] % 2, dist[v as usize] % 2);
                }
            }
        }
    }

    #[test]
    fn right_translations_examples() {
        let g = build_cayley(&TranspositionSet::path(4).unwrap(), 100).unwrap();
        let r = g.right_translations();
        assert_eq!(r.order(), *g.group_order());
        let re = g.right_translation(&Perm::identity(4).unwrap()).unwrap();
        assert!(re.is_identity());
        assert_eq!(r.orbit(1).len(), 24);
        for t in r.generators() {
            assert!(g.preserves_adjacency(t));
            assert!(g.is_right_translation(t));
        }
        // a left translation is not a right translation in S_4
        let left = Perm::from_images0((0..24).map(|v| g.neighbor(v, 0)).collect()).unwrap();
        assert!(!g.is_right_translation(&left));
    }

    #[test]
    fn disconnected_transposition_graph_gives_product_group() {
        let s = TranspositionSet::new(5, &[(1, 2), (3, 5)]).unwrap();
        let g = build_cayley(&s, 100).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.diameter().unwrap(), 2);
        let s = TranspositionSet::new(5, &[(1, 2), (2, 3), (4, 5)]).unwrap();
        let g = build_cayley(&s, 100).unwrap();
        assert_eq!(g.vertex_count(), 12);
        let oracle = oracle_distances(&s);
        assert_eq!(oracle.len(), 12);
        for v in 0..12u32 {
            assert_eq!(
                g.distances_from_identity().unwrap()[v as usize] as u32,
                oracle[&g.element(v)]
            );
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let s = TranspositionSet::cycle(5).unwrap();
        let a = build_cayley(&s, 1000).unwrap().to_simple_graph();
        let b = build_cayley(&s, 1000).unwrap().to_simple_graph();
        assert_eq!(a, b);
    }

    #[test]
    fn non_generator_rejected() {
        let g = mbs(4);
        assert!(matches!(
            g.generator_index(&Perm::transposition(4, 1, 3).unwrap()),
            Err(CayleyError::NotAGenerator(_))
        ));
    }
}
