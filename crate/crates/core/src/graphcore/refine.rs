//! Ordered partitions, equitable refinement and the individualize/refine
//! search tree shared by isomorphism testing and automorphism search.
//!
//! Every decision made here depends only on cell positions and neighbor
//! counts, never on vertex names, so refinement commutes with relabeling.
//! That is what lets the search compare a fixed "left" path against
//! candidate "right" paths cell by cell.

use super::SimpleGraph;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[inline]
fn mix(h: &mut u64, x: u64) {
    *h ^= x;
    *h = h.wrapping_mul(FNV_PRIME);
}

/// Ordered partition of `0..n`; cells are contiguous ranges of `lab`.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// Start position of each vertex's cell.
    cell_of: Vec<u32>,
    /// End position (exclusive) of the cell starting at each position.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Partition {
        let mut end = vec![0; n];
        if n > 0 {
            end[0] = n as u32;
        }
        Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell_of: vec![0; n],
            end,
            cells: usize::from(n > 0),
        }
    }

    /// Unit partition refined to equitable, with its trace.
    pub(crate) fn unit_refined(g: &SimpleGraph) -> (Partition, u64) {
        let mut p = Partition::unit(g.vertex_count());
        let trace = p.refine(g, vec![0]);
        (p, trace)
    }

    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub(crate) fn cell_start(&self, v: usize) -> usize {
        self.cell_of[v] as usize
    }

    pub(crate) fn cell_members(&self, start: usize) -> &[u32] {
        &self.lab[start..self.end[start] as usize]
    }

    /// First cell with more than one vertex.
    fn first_nontrivial_cell(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let e = self.end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    pub(crate) fn lab(&self) -> &[u32] {
        &self.lab
    }

    /// Splits `v` off the front of its cell and refines; returns the trace.
    pub(crate) fn individualize(&mut self, g: &SimpleGraph, v: usize) -> u64 {
        let c = self.cell_of[v] as usize;
        let e = self.end[c] as usize;
        let mut trace = FNV_OFFSET;
        mix(&mut trace, c as u64);
        if e - c == 1 {
            return trace;
        }
        let pv = self.pos[v] as usize;
        let first = self.lab[c];
        self.lab.swap(c, pv);
        self.pos[first as usize] = pv as u32;
        self.pos[v] = c as u32;
        self.end[c] = c as u32 + 1;
        self.end[c + 1] = e as u32;
        for p in c + 1..e {
            self.cell_of[self.lab[p] as usize] = c as u32 + 1;
        }
        self.cells += 1;
        mix(&mut trace, self.refine(g, vec![c as u32]));
        trace
    }

    /// Refines to an equitable partition, starting from the given splitter
    /// cells. The returned trace hashes every split in order.
    fn refine(&mut self, g: &SimpleGraph, mut queue: Vec<u32>) -> u64 {
        let n = self.lab.len();
        let mut trace = FNV_OFFSET;
        let mut in_queue = vec![false; n];
        for &q in &queue {
            in_queue[q as usize] = true;
        }
        let mut count = vec![0u32; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut touched_cells: Vec<u32> = Vec::new();
        let mut head = 0;
        while head < queue.len() && !self.is_discrete() {
            let w = queue[head] as usize;
            head += 1;
            in_queue[w] = false;
            let members: Vec<u32> = self.cell_members(w).to_vec();
            for &x in &members {
                for &y in g.neighbors(x as usize) {
                    if count[y as usize] == 0 {
                        touched.push(y);
                    }
                    count[y as usize] += 1;
                }
            }
            touched_cells.clear();
            for &y in &touched {
                touched_cells.push(self.cell_of[y as usize]);
            }
            touched_cells.sort_unstable();
            touched_cells.dedup();
            mix(&mut trace, w as u64);
            for &c in &touched_cells {
                let c = c as usize;
                let e = self.end[c] as usize;
                if e - c == 1 {
                    mix(&mut trace, count[self.lab[c] as usize] as u64);
                    continue;
                }
                {
                    let cnt = &count;
                    self.lab[c..e].sort_unstable_by_key(|&v| cnt[v as usize]);
                }
                for p in c..e {
                    self.pos[self.lab[p] as usize] = p as u32;
                }
                // split into runs of equal count
                let mut runs: Vec<(usize, usize)> = Vec::new();
                let mut a = c;
                while a < e {
                    let k = count[self.lab[a] as usize];
                    let mut b = a + 1;
                    while b < e && count[self.lab[b] as usize] == k {
                        b += 1;
                    }
                    mix(&mut trace, ((k as u64) << 32) | (b - a) as u64);
                    runs.push((a, b));
                    a = b;
                }
                if runs.len() == 1 {
                    continue;
                }
                for &(a, b) in &runs {
                    self.end[a] = b as u32;
                    for p in a..b {
                        self.cell_of[self.lab[p] as usize] = a as u32;
                    }
                }
                self.cells += runs.len() - 1;
                if in_queue[c] {
                    for &(a, _) in &runs[1..] {
                        in_queue[a] = true;
                        queue.push(a as u32);
                    }
                } else {
                    let largest = runs
                        .iter()
                        .enumerate()
                        .max_by(|x, y| (x.1 .1 - x.1 .0).cmp(&(y.1 .1 - y.1 .0)).then(y.0.cmp(&x.0)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(a, _)) in runs.iter().enumerate() {
                        if i != largest {
                            in_queue[a] = true;
                            queue.push(a as u32);
                        }
                    }
                }
            }
            for &y in &touched {
                count[y as usize] = 0;
            }
            touched.clear();
        }
        mix(&mut trace, self.cells as u64);
        trace
    }
}

pub(crate) struct PathNode {
    pub(crate) partition: Partition,
    /// Trace of the refinement that produced this node.
    pub(crate) trace: u64,
    /// Vertex individualized to reach the next node, with its cell start.
    pub(crate) chosen: Option<(u32, usize)>,
}

/// The leftmost path of the search tree: forced vertices first, then the
/// smallest vertex of the first non-singleton cell, until discrete.
pub(crate) struct SearchPath {
    pub(crate) nodes: Vec<PathNode>,
}

impl SearchPath {
    pub(crate) fn build(g: &SimpleGraph, forced: &[usize]) -> SearchPath {
        let (mut part, trace) = Partition::unit_refined(g);
        let mut nodes = Vec::new();
        let mut trace = trace;
        let mut depth = 0;
        loop {
            let choice = if depth < forced.len() {
                let v = forced[depth];
                Some((v as u32, part.cell_start(v)))
            } else {
                part.first_nontrivial_cell().map(|c| {
                    let v = *part.cell_members(c).iter().min().unwrap();
                    (v, c)
                })
            };
            let Some((v, c)) = choice else {
                nodes.push(PathNode {
                    partition: part,
                    trace,
                    chosen: None,
                });
                break;
            };
            let mut next = part.clone();
            let next_trace = next.individualize(g, v as usize);
            nodes.push(PathNode {
                partition: part,
                trace,
                chosen: Some((v, c)),
            });
            part = next;
            trace = next_trace;
            depth += 1;
        }
        SearchPath { nodes }
    }

    /// Looks for a map from `left` to `right` that sends the left path's
    /// partition at `depth` onto `right_part` cell by cell and extends it to
    /// an isomorphism. Returns the map as `map[left_vertex] = right_vertex`.
    pub(crate) fn extend(
        &self,
        left: &SimpleGraph,
        right: &SimpleGraph,
        depth: usize,
        right_part: Partition,
    ) -> Option<Vec<u32>> {
        let node = &self.nodes[depth];
        match node.chosen {
            None => {
                if !right_part.is_discrete() {
                    return None;
                }
                let mut map = vec![0u32; left.vertex_count()];
                for (l, r) in node.partition.lab().iter().zip(right_part.lab()) {
                    map[*l as usize] = *r;
                }
                left.is_isomorphism_to(right, &map).then_some(map)
            }
            Some((_, cell)) => {
                let want = self.nodes[depth + 1].trace;
                let mut candidates = right_part.cell_members(cell).to_vec();
                candidates.sort_unstable();
                for u in candidates {
                    let mut next = right_part.clone();
                    if next.individualize(right, u as usize) != want {
                        continue;
                    }
                    if let Some(m) = self.extend(left, right, depth + 1, next) {
                        return Some(m);
                    }
                }
                None
            }
        }
    }
}
