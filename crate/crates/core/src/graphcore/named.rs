use std::fmt;
use std::str::FromStr;

use super::{GraphError, SimpleGraph};

/// Named graph families with their canonical vertex orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Complete(usize),
    /// `C_n`, vertices in cyclic order.
    Cycle(usize),
    /// `P_n` on `n` vertices.
    Path(usize),
    /// `K_{1,n}` with the center at vertex 0.
    Star(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
    /// `m K_2`.
    Matching(usize),
    /// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram.
    Petersen,
    /// `J(n,k,i)`: `k`-subsets of `{1..n}` in lexicographic order, adjacent
    /// when they meet in exactly `i` points.
    Kneser {
        n: usize,
        k: usize,
        i: usize,
    },
    /// Odd graph `O_k = J(2k−1, k−1, 0)`.
    Odd(usize),
    /// `Q_n`: bit strings in binary order, most significant bit first.
    Hypercube(usize),
    /// Complement of `3K_2`.
    Octahedron,
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameters(msg.into())
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Builds a named graph. Identical parameters give identical edge lists.
pub fn build_named(spec: &NamedGraph) -> Result<SimpleGraph, GraphError> {
    use NamedGraph::*;
    let g = match *spec {
        Complete(n) => {
            if n == 0 {
                return Err(invalid("complete graph needs n >= 1"));
            }
            let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            SimpleGraph::from_edges(n, &edges)?
        }
        Cycle(n) => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            SimpleGraph::from_edges(n, &edges)?
        }
        Path(n) => {
            if n == 0 {
                return Err(invalid("path needs n >= 1"));
            }
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            SimpleGraph::from_edges(n, &edges)?
        }
        Star(n) => {
            if n == 0 {
                return Err(invalid("star K_{1,n} needs n >= 1"));
            }
            let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            SimpleGraph::from_edges(n + 1, &edges)?
        }
        CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(invalid("complete bipartite graph needs both sides non-empty"));
            }
            let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            SimpleGraph::from_edges(a + b, &edges)?
        }
        Empty(n) => SimpleGraph::empty(n),
        Matching(m) => {
            if m == 0 {
                return Err(invalid("matching needs m >= 1"));
            }
            build_named(&Complete(2))?.disjoint_copies(m)?
        }
        Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            SimpleGraph::from_edges(10, &edges)?
        }
        Kneser { n, k, i } => {
            if k == 0 || k > n || i >= k {
                return Err(invalid(format!("J({n},{k},{i}) needs 1 <= k <= n and i < k")));
            }
            if n > 30 {
                return Err(invalid("Kneser parameter n too large"));
            }
            let subsets = k_subsets(n, k);
            let masks: Vec<u32> = subsets
                .iter()
                .map(|s| s.iter().fold(0u32, |m, &x| m | 1 << (x - 1)))
                .collect();
            let mut edges = Vec::new();
            for a in 0..masks.len() {
                for b in a + 1..masks.len() {
                    if (masks[a] & masks[b]).count_ones() as usize == i {
                        edges.push((a, b));
                    }
                }
            }
            let labels = subsets
                .iter()
                .map(|s| {
                    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                    format!("{{{}}}", parts.join(","))
                })
                .collect();
            SimpleGraph::from_edges(masks.len(), &edges)?.with_labels(labels)?
        }
        Odd(k) => {
            if k < 2 {
                return Err(invalid("odd graph O_k needs k >= 2"));
            }
            build_named(&Kneser {
                n: 2 * k - 1,
                k: k - 1,
                i: 0,
            })?
        }
        Hypercube(n) => {
            if n == 0 || n > 20 {
                return Err(invalid("hypercube dimension must be in 1..=20"));
            }
            let size = 1usize << n;
            let mut edges = Vec::new();
            for v in 0..size {
                for b in 0..n {
                    let w = v ^ (1 << b);
                    if v < w {
                        edges.push((v, w));
                    }
                }
            }
            let labels = (0..size).map(|v| format!("{:0width$b}", v, width = n)).collect();
            SimpleGraph::from_edges(size, &edges)?.with_labels(labels)?
        }
        Octahedron => build_named(&Matching(3))?.complement(),
    };
    Ok(g)
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NamedGraph::*;
        match self {
            Complete(n) => write!(f, "complete({n})"),
            Cycle(n) => write!(f, "cycle({n})"),
            Path(n) => write!(f, "path({n})"),
            Star(n) => write!(f, "star({n})"),
            CompleteBipartite(a, b) => write!(f, "complete-bipartite({a},{b})"),
            Empty(n) => write!(f, "empty({n})"),
            Matching(m) => write!(f, "matching({m})"),
            Petersen => f.write_str("petersen"),
            Kneser { n, k, i } => write!(f, "kneser({n},{k},{i})"),
            Odd(k) => write!(f, "odd({k})"),
            Hypercube(n) => write!(f, "hypercube({n})"),
            Octahedron => f.write_str("octahedron"),
        }
    }
}

/// Parses the `Display` form, e.g. `petersen`, `kneser(5,2,0)`, `cycle(12)`.
impl FromStr for NamedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let (name, args) = match s.find('(') {
            Some(p) => {
                let inner = s[p + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| GraphError::Parse(format!("unclosed '(' in {s:?}")))?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<usize>()
                            .map_err(|_| GraphError::Parse(format!("bad argument {a:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (s[..p].to_string(), args)
            }
            None => (s.clone(), Vec::new()),
        };
        use NamedGraph::*;
        let g = match (name.as_str(), args.as_slice()) {
            ("petersen", []) => Petersen,
            ("octahedron", []) => Octahedron,
            ("complete", [n]) => Complete(*n),
            ("cycle", [n]) => Cycle(*n),
            ("path", [n]) => Path(*n),
            ("star", [n]) => Star(*n),
            ("complete-bipartite", [a, b]) => CompleteBipartite(*a, *b),
            ("empty", [n]) => Empty(*n),
            ("matching", [m]) => Matching(*m),
            ("kneser", [n, k, i]) => Kneser { n: *n, k: *k, i: *i },
            ("odd", [k]) => Odd(*k),
            ("hypercube", [n]) => Hypercube(*n),
            _ => return Err(GraphError::Parse(format!("unknown named graph {s:?}"))),
        };
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_shape() {
        let p = build_named(&NamedGraph::Petersen).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        assert_eq!(p.is_regular(), Some(3));
    }

    #[test]
    fn kneser_is_petersen() {
        let k = build_named(&NamedGraph::Kneser { n: 5, k: 2, i: 0 }).unwrap();
        assert_eq!((k.vertex_count(), k.edge_count()), (10, 15));
        assert_eq!(k.labels().unwrap()[0], "{1,2}");
        assert_eq!(k.labels().unwrap()[9], "{4,5}");
        // {1,2} is adjacent to {3,4},{3,5},{4,5}
        assert_eq!(k.neighbors(0), &[7, 8, 9]);
        assert_eq!(build_named(&NamedGraph::Odd(3)).unwrap(), k);
    }

    #[test]
    fn hypercube_shape() {
        let q = build_named(&NamedGraph::Hypercube(3)).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (8, 12));
        assert_eq!(q.labels().unwrap()[5], "101");
        assert!(q.has_edge(0b101, 0b100));
    }

    #[test]
    fn invalid_parameters() {
        for g in [
            NamedGraph::Cycle(2),
            NamedGraph::Kneser { n: 3, k: 4, i: 0 },
            NamedGraph::Kneser { n: 5, k: 2, i: 2 },
            NamedGraph::Hypercube(0),
            NamedGraph::Complete(0),
        ] {
            assert!(matches!(build_named(&g), Err(GraphError::InvalidParameters(_))), "{g}");
        }
    }

    #[test]
    fn deterministic_and_parseable() {
        for s in [
            "petersen",
            "kneser(6,3,1)",
            "hypercube(4)",
            "octahedron",
            "cycle(12)",
            "complete-bipartite(2,3)",
        ] {
            let spec: NamedGraph = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(build_named(&spec).unwrap(), build_named(&spec).unwrap());
        }
        assert!("dodecahedron".parse::<NamedGraph>().is_err());
    }

    #[test]
    fn octahedron_shape() {
        let o = build_named(&NamedGraph::Octahedron).unwrap();
        assert_eq!((o.vertex_count(), o.edge_count()), (6, 12));
        assert!(!o.has_edge(0, 1));
    }
}
