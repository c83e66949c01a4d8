//! Sets of transpositions of `{1..n}` and their transposition graphs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphcore::SimpleGraph;
use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranspositionError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("({0},{1}) is not a transposition of 1..{2}")]
    InvalidPair(usize, usize, usize),
    #[error("transposition ({0},{1}) listed twice")]
    Duplicate(usize, usize),
    #[error("family {family} is not defined for n = {n}")]
    BadFamilySize { family: &'static str, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A set of transpositions of `{1..n}`, kept as sorted pairs `(i, j)` with
/// `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranspositionSet {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

/// Structural family of `T(S)`. Recognition tries the variants in
/// declaration order and reports the first that matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyTag {
    /// `K_{1,n−1}`.
    Star,
    /// `P_n`.
    Path,
    /// `C_n`.
    Cycle,
    /// Perfect matching `(n/2) K_2`.
    Matching,
    /// `K_n`.
    Complete,
    /// `K_{k,n−k}` with `k` the smaller side.
    CompleteBipartite {
        k: usize,
    },
    Tree,
    /// Connected, with neither triangles nor 4-cycles.
    TriangleAndSquareFree,
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Star => f.write_str("star"),
            FamilyTag::Path => f.write_str("path"),
            FamilyTag::Cycle => f.write_str("cycle"),
            FamilyTag::Matching => f.write_str("matching"),
            FamilyTag::Complete => f.write_str("complete"),
            FamilyTag::CompleteBipartite { k } => write!(f, "complete-bipartite(k={k})"),
            FamilyTag::Tree => f.write_str("tree"),
            FamilyTag::TriangleAndSquareFree => f.write_str("triangle-and-square-free"),
            FamilyTag::Other => f.write_str("other"),
        }
    }
}

impl TranspositionSet {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<TranspositionSet, TranspositionError> {
        if n == 0 {
            return Err(TranspositionError::ZeroDegree);
        }
        let mut out = Vec::with_capacity(pairs.len());
        for &(i, j) in pairs {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(TranspositionError::InvalidPair(i, j, n));
            }
            out.push((i.min(j), i.max(j)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(TranspositionError::Duplicate(w[0].0, w[0].1));
        }
        Ok(TranspositionSet { n, pairs: out })
    }

    /// `(1,2),(1,3),…,(1,n)`.
    pub fn star(n: usize) -> Result<TranspositionSet, TranspositionError> {
        if n < 2 {
            return Err(TranspositionError::BadFamilySize { family: "star", n });
        }
        TranspositionSet::new(n, &(2..=n).map(|j| (1, j)).collect::<Vec<_>>())
    }

    /// `(1,2),(2,3),…,(n−1,n)`: the bubble-sort generators.
    pub fn path(n: usize) -> Result<TranspositionSet, TranspositionError> {
        if n < 2 {
            return Err(TranspositionError::BadFamilySize { family: "path", n });
        }
        TranspositionSet::new(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    /// `(1,2),(2,3),…,(n,1)`: the modified bubble-sort generators.
    pub fn cycle(n: usize) -> Result<TranspositionSet, TranspositionError> {
        if n < 3 {
            return Err(TranspositionError::BadFamilySize { family: "cycle", n });
        }
        let mut pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        pairs.push((n, 1));
        TranspositionSet::new(n, &pairs)
    }

    /// `(1,2),(3,4),…` on an even number of points.
    pub fn matching(n: usize) -> Result<TranspositionSet, TranspositionError> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(TranspositionError::BadFamilySize { family: "matching", n });
        }
        TranspositionSet::new(n, &(0..n / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect::<Vec<_>>())
    }

    /// Every transposition of `{1..n}`.
    pub fn complete(n: usize) -> Result<TranspositionSet, TranspositionError> {
        if n < 2 {
            return Err(TranspositionError::BadFamilySize { family: "complete", n });
        }
        let pairs: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        TranspositionSet::new(n, &pairs)
    }

    /// All `(i, j)` with `i ≤ k < j`.
    pub fn complete_bipartite(n: usize, k: usize) -> Result<TranspositionSet, TranspositionError> {
        if k == 0 || k >= n {
            return Err(TranspositionError::BadFamilySize {
                family: "complete-bipartite",
                n,
            });
        }
        let pairs: Vec<_> = (1..=k).flat_map(|i| (k + 1..=n).map(move |j| (i, j))).collect();
        TranspositionSet::new(n, &pairs)
    }

    /// A spider: center 1 with legs of lengths `legs`, points numbered leg
    /// by leg. `n = 1 + Σ legs`.
    pub fn spider(legs: &[usize]) -> Result<TranspositionSet, TranspositionError> {
        let n = 1 + legs.iter().sum::<usize>();
        let mut pairs = Vec::new();
        let mut next = 2;
        for &len in legs {
            let mut prev = 1;
            for _ in 0..len {
                pairs.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        TranspositionSet::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted pairs, 1-based, `i < j`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.binary_search(&(i.min(j), i.max(j))).is_ok()
    }

    /// Generators as permutations, in lexicographic pair order.
    pub fn perms(&self) -> Vec<Perm> {
        self.pairs
            .iter()
            .map(|&(i, j)| Perm::transposition(self.n, i, j).expect("validated pair"))
            .collect()
    }

    /// `T(S)`: vertex `i−1` for point `i`, one edge per transposition.
    pub fn transposition_graph(&self) -> SimpleGraph {
        let edges: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(i, j)| ((i - 1) as u32, (j - 1) as u32))
            .collect();
        SimpleGraph::from_sorted_edges(self.n, edges)
    }

    /// Inverse of [`transposition_graph`](Self::transposition_graph).
    pub fn from_graph(g: &SimpleGraph) -> Result<TranspositionSet, TranspositionError> {
        let pairs: Vec<_> = g
            .edges()
            .iter()
            .map(|&(u, v)| (u as usize + 1, v as usize + 1))
            .collect();
        TranspositionSet::new(g.vertex_count(), &pairs)
    }

    /// `S` generates `S_n` exactly when `T(S)` is connected.
    pub fn generates_full_symmetric(&self) -> bool {
        self.transposition_graph().is_connected()
    }

    /// `S` is a minimal generating set exactly when `T(S)` is a tree.
    pub fn is_minimal_generating(&self) -> bool {
        self.transposition_graph().is_tree()
    }

    /// Image of the set under a relabeling of points.
    pub fn relabel(&self, p: &Perm) -> TranspositionSet {
        let pairs: Vec<_> = self.pairs.iter().map(|&(i, j)| (p.apply(i), p.apply(j))).collect();
        TranspositionSet::new(self.n, &pairs).expect("relabeling preserves validity")
    }

    pub fn recognize_family(&self) -> FamilyTag {
        let g = self.transposition_graph();
        let n = self.n;
        let m = self.pairs.len();
        let connected = g.is_connected();
        let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let is_tree = connected && m + 1 == n;

        if n >= 2 && is_tree && degrees.iter().any(|&d| d == n - 1) {
            return FamilyTag::Star;
        }
        if n >= 2 && is_tree && degrees.iter().all(|&d| d <= 2) {
            return FamilyTag::Path;
        }
        if n >= 3 && connected && degrees.iter().all(|&d| d == 2) {
            return FamilyTag::Cycle;
        }
        if degrees.iter().all(|&d| d == 1) {
            return FamilyTag::Matching;
        }
        if n >= 2 && m == n * (n - 1) / 2 {
            return FamilyTag::Complete;
        }
        if connected {
            if let Some(k) = complete_bipartite_side(&g) {
                return FamilyTag::CompleteBipartite { k };
            }
        }
        if is_tree {
            return FamilyTag::Tree;
        }
        if connected {
            let gd = g.girth_data();
            if !gd.has_triangle && !gd.has_4cycle {
                return FamilyTag::TriangleAndSquareFree;
            }
        }
        FamilyTag::Other
    }

    /// Parses `"(1,2) (2,3) (3,1)"` (whitespace optional) on `n` points.
    pub fn parse(s: &str, n: usize) -> Result<TranspositionSet, TranspositionError> {
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| TranspositionError::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| TranspositionError::Parse(format!("unclosed '(' in {s:?}")))?;
            let pts: Vec<usize> = body[..close]
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| TranspositionError::Parse(format!("bad point in {s:?}")))?;
            match pts.as_slice() {
                [i, j] => pairs.push((*i, *j)),
                _ => {
                    return Err(TranspositionError::Parse(format!(
                        "({}) is not a transposition",
                        &body[..close]
                    )))
                }
            }
            rest = body[close + 1..].trim_start();
        }
        TranspositionSet::new(n, &pairs)
    }

    /// Like [`parse`](Self::parse), taking `n` as the largest point named.
    pub fn parse_infer(s: &str) -> Result<TranspositionSet, TranspositionError> {
        let probe = TranspositionSet::parse(s, usize::MAX / 2)?;
        let n = probe.pairs.iter().map(|&(_, j)| j).max().unwrap_or(1);
        TranspositionSet::new(n, &probe.pairs)
    }

    /// Parses a JSON pair array such as `[[1,2],[2,3]]`.
    pub fn from_json_pairs(json: &str, n: usize) -> Result<TranspositionSet, TranspositionError> {
        let pairs: Vec<(usize, usize)> =
            serde_json::from_str(json).map_err(|e| TranspositionError::Parse(e.to_string()))?;
        TranspositionSet::new(n, &pairs)
    }

    pub fn to_json_pairs(&self) -> String {
        serde_json::to_string(&self.pairs).expect("pairs serialize")
    }
}

fn complete_bipartite_side(g: &SimpleGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    // vertex 0's side = its non-neighbors (including itself)
    let side: Vec<bool> = (0..n).map(|v| v == 0 || !g.has_edge(0, v)).collect();
    let k = side.iter().filter(|&&s| s).count();
    if k == n {
        return None;
    }
    if g.edge_count() != k * (n - k) {
        return None;
    }
    let ok = g.edges().iter().all(|&(u, v)| side[u as usize] != side[v as usize]);
    ok.then_some(k.min(n - k))
}

impl fmt::Display for TranspositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(i, j) in &self.pairs {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}
