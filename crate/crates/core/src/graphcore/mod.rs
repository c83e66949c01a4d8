//! Finite simple undirected graphs and the structural queries used on them.

mod export;
mod named;
pub(crate) mod refine;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub use export::GraphJson;
pub use named::{build_named, NamedGraph};

use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid edge {{{0},{1}}}")]
    InvalidEdge(usize, usize),
    #[error("graph has {vertices} vertices, configured limit is {limit}")]
    SizeLimitExceeded { vertices: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Vertex-count caps for the bounded searches in this module.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_vertices: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_vertices: 2000 }
    }
}

/// Graph with vertices `0..n`, kept both as a sorted edge list and as
/// sorted per-vertex neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GirthData {
    pub has_triangle: bool,
    pub has_4cycle: bool,
    /// `None` for acyclic graphs.
    pub girth: Option<usize>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            labels: None,
        }
    }

    /// Rejects loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph, GraphError> {
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(GraphError::InvalidEdge(u, v));
            }
            list.push((u.min(v) as u32, u.max(v) as u32));
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            let (u, v) = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(GraphError::InvalidEdge(u as usize, v as usize));
        }
        Ok(SimpleGraph::from_sorted_edges(n, list))
    }

    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>) -> SimpleGraph {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SimpleGraph {
            adj,
            edges,
            labels: None,
        }
    }

    /// Builds from neighbor lists; the lists must describe a symmetric,
    /// loop-free relation.
    pub fn from_adjacency(adj: Vec<Vec<u32>>) -> Result<SimpleGraph, GraphError> {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                if v as usize >= n {
                    return Err(GraphError::InvalidEdge(u, v as usize));
                }
                if (u as u32) < v {
                    edges.push((u, v as usize));
                }
            }
        }
        let g = SimpleGraph::from_edges(n, &edges)?;
        if g.adj.iter().map(Vec::len).sum::<usize>() != adj.iter().map(Vec::len).sum::<usize>() {
            return Err(GraphError::InvalidParameters(
                "adjacency lists are not symmetric".into(),
            ));
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<SimpleGraph, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::InvalidParameters(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&(v as u32)).is_ok()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Same vertex set, complemented edge set.
    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertex_count();
        let mut edges = Vec::new();
        for u in 0..n {
            let mut it = self.adj[u].iter().peekable();
            for v in u + 1..n {
                while it.peek().is_some_and(|&&w| (w as usize) < v) {
                    it.next();
                }
                if it.peek().is_some_and(|&&w| w as usize == v) {
                    continue;
                }
                edges.push((u as u32, v as u32));
            }
        }
        let mut g = SimpleGraph::from_sorted_edges(n, edges);
        g.labels = self.labels.clone();
        g
    }

    /// Vertices are this graph's edges in lexicographic order, adjacent when
    /// the edges share an endpoint.
    pub fn line_graph(&self) -> SimpleGraph {
        let m = self.edge_count();
        let index: HashMap<(u32, u32), u32> = self.edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let mut edges = Vec::new();
        for v in 0..self.vertex_count() {
            let incident: Vec<u32> = self.adj[v]
                .iter()
                .map(|&w| index[&(v.min(w as usize) as u32, v.max(w as usize) as u32)])
                .collect();
            for (a, &x) in incident.iter().enumerate() {
                for &y in &incident[a + 1..] {
                    edges.push((x.min(y), x.max(y)));
                }
            }
        }
        edges.sort_unstable();
        let labels = self
            .edges
            .iter()
            .map(|&(u, v)| match &self.labels {
                Some(l) => format!("{}{}", l[u as usize], l[v as usize]),
                None => format!("{}-{}", u, v),
            })
            .collect();
        SimpleGraph::from_sorted_edges(m, edges)
            .with_labels(labels)
            .expect("one label per edge")
    }

    /// `n` disjoint copies; copy `i` occupies indices `i·|V| .. (i+1)·|V|`.
    pub fn disjoint_copies(&self, n: usize) -> Result<SimpleGraph, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParameters("need at least one copy".into()));
        }
        let k = self.vertex_count() as u32;
        let mut edges = Vec::with_capacity(self.edge_count() * n);
        for c in 0..n as u32 {
            edges.extend(self.edges.iter().map(|&(u, v)| (u + c * k, v + c * k)));
        }
        Ok(SimpleGraph::from_sorted_edges(n * k as usize, edges))
    }

    /// Image of the graph under a vertex permutation (vertex `v` becomes
    /// `p.apply0(v)`).
    pub fn relabel(&self, p: &Perm) -> SimpleGraph {
        let mut edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p.apply0(u as usize) as u32, p.apply0(v as usize) as u32);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        SimpleGraph::from_sorted_edges(self.vertex_count(), edges)
    }

    /// True when the vertex permutation maps the edge set onto itself.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.vertex_count()
            && self
                .edges
                .iter()
                .all(|&(u, v)| self.has_edge(p.apply0(u as usize), p.apply0(v as usize)))
    }

    /// True when `map` (indexed by this graph's vertices) carries the edge
    /// set exactly onto `other`'s.
    pub fn is_isomorphism_to(&self, other: &SimpleGraph, map: &[u32]) -> bool {
        if map.len() != self.vertex_count()
            || other.vertex_count() != self.vertex_count()
            || other.edge_count() != self.edge_count()
        {
            return false;
        }
        let mut seen = vec![false; map.len()];
        for &m in map {
            if m as usize >= map.len() || std::mem::replace(&mut seen[m as usize], true) {
                return false;
            }
        }
        self.edges
            .iter()
            .all(|&(u, v)| other.has_edge(map[u as usize] as usize, map[v as usize] as usize))
    }

    /// Breadth-first distances from `source`; `None` marks unreachable
    /// vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w as usize);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &w in &self.adj[u] {
                    if comp[w as usize] == usize::MAX {
                        comp[w as usize] = id;
                        members.push(w as usize);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Number of `k`-cliques, by ordered backtracking.
    pub fn count_cliques(&self, k: usize, limits: SearchLimits) -> Result<u64, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameters("clique size must be positive".into()));
        }
        self.check_limit(limits)?;
        fn extend(g: &SimpleGraph, cand: &[u32], depth: usize, k: usize) -> u64 {
            if depth == k {
                return 1;
            }
            let mut total = 0;
            for (i, &v) in cand.iter().enumerate() {
                let next: Vec<u32> = cand[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&w| g.has_edge(v as usize, w as usize))
                    .collect();
                if next.len() + depth + 1 >= k {
                    total += extend(g, &next, depth + 1, k);
                }
            }
            total
        }
        let all: Vec<u32> = (0..self.vertex_count() as u32).collect();
        Ok(extend(self, &all, 0, k))
    }

    /// Triangle and 4-cycle detection plus girth by BFS from every vertex.
    pub fn girth_data(&self) -> GirthData {
        let n = self.vertex_count();
        let mut girth: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![u32::MAX; n];
            let mut parent = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    let w = w as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u as u32;
                        queue.push_back(w);
                    } else if parent[u] as usize != w {
                        let len = (dist[u] + dist[w] + 1) as usize;
                        girth = Some(girth.map_or(len, |g| g.min(len)));
                    }
                }
            }
        }
        let has_triangle = self.edges.iter().any(|&(u, v)| {
            let (a, b) = (&self.adj[u as usize], &self.adj[v as usize]);
            sorted_intersection_count(a, b) > 0
        });
        let mut has_4cycle = false;
        let mut common: HashMap<(u32, u32), u32> = HashMap::new();
        'outer: for m in 0..n {
            let nb = &self.adj[m];
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    let c = common.entry((a, b)).or_insert(0);
                    *c += 1;
                    if *c >= 2 {
                        has_4cycle = true;
                        break 'outer;
                    }
                }
            }
        }
        GirthData {
            has_triangle,
            has_4cycle,
            girth,
        }
    }

    /// Finds a vertex bijection carrying `self` onto `other`, if one exists.
    pub fn is_isomorphic(&self, other: &SimpleGraph, limits: SearchLimits) -> Result<Option<Vec<u32>>, GraphError> {
        self.check_limit(limits)?;
        other.check_limit(limits)?;
        if self.vertex_count() != other.vertex_count()
            || self.edge_count() != other.edge_count()
            || self.degree_sequence() != other.degree_sequence()
        {
            return Ok(None);
        }
        if self.vertex_count() == 0 {
            return Ok(Some(Vec::new()));
        }
        let path = refine::SearchPath::build(self, &[]);
        let (right, trace) = refine::Partition::unit_refined(other);
        if trace != path.nodes[0].trace {
            return Ok(None);
        }
        let found = path.extend(self, other, 0, right);
        if let Some(map) = &found {
            debug_assert!(self.is_isomorphism_to(other, map));
        }
        Ok(found)
    }

    pub(crate) fn check_limit(&self, limits: SearchLimits) -> Result<(), GraphError> {
        if self.vertex_count() > limits.max_vertices {
            return Err(GraphError::SizeLimitExceeded {
                vertices: self.vertex_count(),
                limit: limits.max_vertices,
            });
        }
        Ok(())
    }
}

fn sorted_intersection_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn named(g: NamedGraph) -> SimpleGraph {
        build_named(&g).unwrap()
    }

    fn lim() -> SearchLimits {
        SearchLimits::default()
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            SimpleGraph::from_edges(3, &[(1, 1)]),
            Err(GraphError::InvalidEdge(1, 1))
        );
        assert_eq!(
            SimpleGraph::from_edges(3, &[(0, 3)]),
            Err(GraphError::InvalidEdge(0, 3))
        );
        assert!(SimpleGraph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn disjoint_copies_examples() {
        let k2 = named(NamedGraph::Complete(2));
        let m = k2.disjoint_copies(3).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (6, 3));
        assert_eq!(m.edges(), &[(0, 1), (2, 3), (4, 5)]);
        let c5 = named(NamedGraph::Cycle(5));
        assert_eq!(c5.disjoint_copies(1).unwrap(), c5);
        let c3 = named(NamedGraph::Cycle(3)).disjoint_copies(2).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (6, 6));
        assert!(c5.disjoint_copies(0).is_err());
    }

    #[test]
    fn complement_examples() {
        let oct = named(NamedGraph::Octahedron);
        let three_k2 = named(NamedGraph::Complete(2)).disjoint_copies(3).unwrap();
        assert!(oct.complement().is_isomorphic(&three_k2, lim()).unwrap().is_some());
        let p = named(NamedGraph::Petersen);
        assert_eq!(p.complement().complement(), p);
        let lk5 = named(NamedGraph::Complete(5)).line_graph();
        assert!(lk5.complement().is_isomorphic(&p, lim()).unwrap().is_some());
    }

    #[test]
    fn line_graph_examples() {
        let lk5 = named(NamedGraph::Complete(5)).line_graph();
        assert_eq!((lk5.vertex_count(), lk5.edge_count()), (10, 30));
        assert_eq!(lk5.is_regular(), Some(6));
        let lp3 = named(NamedGraph::Path(3)).line_graph();
        assert_eq!(
            lp3,
            SimpleGraph::from_edges(2, &[(0, 1)])
                .unwrap()
                .with_labels(lp3.labels().unwrap().to_vec())
                .unwrap()
        );
        let star = named(NamedGraph::Star(4)).line_graph();
        assert!(star
            .is_isomorphic(&named(NamedGraph::Complete(4)), lim())
            .unwrap()
            .is_some());
    }

    #[test]
    fn line_graph_of_complete_is_regular() {
        for n in 3..8 {
            let l = named(NamedGraph::Complete(n)).line_graph();
            assert_eq!(l.vertex_count(), n * (n - 1) / 2);
            assert_eq!(l.is_regular(), Some(2 * n - 4));
        }
    }

    #[test]
    fn clique_counts() {
        let lk5 = named(NamedGraph::Complete(5)).line_graph();
        assert_eq!(lk5.count_cliques(4, lim()).unwrap(), 5);
        assert_eq!(named(NamedGraph::Complete(4)).count_cliques(4, lim()).unwrap(), 1);
        assert_eq!(named(NamedGraph::Petersen).count_cliques(3, lim()).unwrap(), 0);
        assert_eq!(named(NamedGraph::Complete(6)).count_cliques(3, lim()).unwrap(), 20);
        assert!(named(NamedGraph::Cycle(5)).count_cliques(0, lim()).is_err());
        let tight = SearchLimits { max_vertices: 5 };
        assert!(matches!(
            lk5.count_cliques(3, tight),
            Err(GraphError::SizeLimitExceeded { vertices: 10, limit: 5 })
        ));
    }

    /// Shortest cycle by trying every simple closed walk (small graphs only).
    fn girth_oracle(g: &SimpleGraph) -> Option<usize> {
        fn dfs(g: &SimpleGraph, start: usize, v: usize, len: usize, used: &mut Vec<bool>, best: &mut Option<usize>) {
            for &w in g.neighbors(v) {
                let w = w as usize;
                if w == start && len >= 3 {
                    *best = Some(best.map_or(len, |b| b.min(len)));
                } else if !used[w] && w > start && best.is_none_or(|b| len + 1 < b) {
                    used[w] = true;
                    dfs(g, start, w, len + 1, used, best);
                    used[w] = false;
                }
            }
        }
        let mut best = None;
        for s in 0..g.vertex_count() {
            let mut used = vec![false; g.vertex_count()];
            used[s] = true;
            dfs(g, s, s, 1, &mut used, &mut best);
        }
        best
    }

    #[test]
    fn girth_examples() {
        let c4 = named(NamedGraph::Cycle(4));
        assert_eq!(
            c4.girth_data(),
            GirthData {
                has_triangle: false,
                has_4cycle: true,
                girth: Some(4)
            }
        );
        let p = named(NamedGraph::Petersen);
        assert_eq!(girth_oracle(&p), Some(5));
        assert_eq!(p.girth_data().girth, Some(5));
        let tree = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(tree.girth_data().girth, None);
        let k4 = named(NamedGraph::Complete(4));
        assert_eq!(
            k4.girth_data(),
            GirthData {
                has_triangle: true,
                has_4cycle: true,
                girth: Some(3)
            }
        );
        for g in [
            named(NamedGraph::Hypercube(3)),
            named(NamedGraph::Cycle(7)),
            named(NamedGraph::Octahedron),
        ] {
            assert_eq!(g.girth_data().girth, girth_oracle(&g));
        }
    }

    #[test]
    fn isomorphism_examples() {
        let kn = named(NamedGraph::Kneser { n: 5, k: 2, i: 0 });
        let p = named(NamedGraph::Petersen);
        let map = kn.is_isomorphic(&p, lim()).unwrap().expect("witness");
        assert!(kn.is_isomorphism_to(&p, &map));
        let claw = named(NamedGraph::Star(3));
        assert_eq!(claw.is_isomorphic(&named(NamedGraph::Path(4)), lim()).unwrap(), None);
        // same degree sequence, not isomorphic: C6 vs 2C3
        let c6 = named(NamedGraph::Cycle(6));
        let two_c3 = named(NamedGraph::Cycle(3)).disjoint_copies(2).unwrap();
        assert_eq!(c6.is_isomorphic(&two_c3, lim()).unwrap(), None);
        let tight = SearchLimits { max_vertices: 4 };
        assert!(c6.is_isomorphic(&c6, tight).is_err());
    }

    #[test]
    fn components_and_trees() {
        let g = SimpleGraph::from_edges(5, &[(0, 3), (1, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 3], vec![1, 4], vec![2]]);
        assert!(!g.is_connected());
        assert!(named(NamedGraph::Path(5)).is_tree());
        assert!(!named(NamedGraph::Cycle(5)).is_tree());
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                SimpleGraph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn complement_is_involution(g in arb_graph()) {
            let n = g.vertex_count();
            let c = g.complement();
            prop_assert_eq!(g.edge_count() + c.edge_count(), n * (n - 1) / 2);
            prop_assert_eq!(c.complement(), g);
        }

        #[test]
        fn relabeled_graph_is_isomorphic(g in arb_graph(), seed in any::<u64>()) {
            let n = g.vertex_count();
            let mut images: Vec<u32> = (0..n as u32).collect();
            // cheap deterministic shuffle from the seed
            let mut s = seed | 1;
            for i in (1..n).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                images.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let p = Perm::from_images0(images).unwrap();
            let h = g.relabel(&p);
            prop_assert_eq!(h.degree_sequence(), g.degree_sequence());
            let map = g.is_isomorphic(&h, SearchLimits::default()).unwrap();
            prop_assert!(map.is_some());
            prop_assert!(g.is_isomorphism_to(&h, &map.unwrap()));
            prop_assert_eq!(g.girth_data(), h.girth_data());
        }
    }
}
