//! Permutations of `{1..n}`.
//!
//! Points are 1-based at the public surface and stored 0-based internally.
//! Composition is **left to right**: `p.compose(&q)` applies `p` first and then
//! `q`, so `(1,2)(2,3) = (1,3,2)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation degree must be at least 1")]
    ZeroDegree,
    #[error("image sequence is not a bijection of 1..{0}")]
    NotABijection(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range 1..{degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a transposition: ({0},{1})")]
    NotATransposition(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A bijection of `{1..n}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    /// The identity on `n` points.
    pub fn identity(n: usize) -> Result<Perm, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Perm::identity0(n))
    }

    pub(crate) fn identity0(n: usize) -> Perm {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i-1] = π(i)`.
    pub fn from_images(images: &[usize]) -> Result<Perm, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut zero = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(PermError::NotABijection(n));
            }
            zero.push((x - 1) as u32);
        }
        Perm::from_images0(zero)
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images0(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images0_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images0(images.clone()).is_ok());
        Perm { images }
    }

    /// The transposition `(i,j)` on `n` points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Perm, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        for p in [i, j] {
            if p == 0 || p > n {
                return Err(PermError::PointOutOfRange { point: p, degree: n });
            }
        }
        if i == j {
            return Err(PermError::NotATransposition(i, j));
        }
        let mut images = Perm::identity0(n).images;
        images.swap(i - 1, j - 1);
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image slice.
    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Left-to-right product: the result maps `i` to `q(p(i))`.
    pub fn compose(&self, q: &Perm) -> Result<Perm, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        Ok(self.then(q))
    }

    /// Left-to-right product without the degree check (apply `self`, then `q`).
    #[inline]
    pub(crate) fn then(&self, q: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| q.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `x⁻¹ · self · x` in left-to-right order.
    pub fn conjugate_by(&self, x: &Perm) -> Perm {
        // i ↦ x(self(x⁻¹(i))), i.e. new[x(j)] = x(self(j))
        let mut images = vec![0u32; self.images.len()];
        for (j, &sj) in self.images.iter().enumerate() {
            images[x.images[j] as usize] = x.images[sj as usize];
        }
        Perm { images }
    }

    /// Canonical cycle form, 1-based: every cycle starts at its minimum, cycles
    /// are ordered by minimum, fixed points appear as 1-cycles.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        count
    }

    /// `Some((i, j))` with `i < j` when this is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.degree()).filter(|&i| self.images[i] as usize != i).collect();
        match moved.as_slice() {
            [a, b] if self.images[*a] as usize == *b => Some((a + 1, b + 1)),
            _ => None,
        }
    }

    /// True when the permutation is a single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        self.cycle_count() == 1
    }

    /// Left-to-right product of the given transpositions on `n` points.
    pub fn product_of(ts: &[(usize, usize)], n: usize) -> Result<Perm, PermError> {
        let mut images = Perm::identity(n)?.images;
        for &(i, j) in ts {
            let t = Perm::transposition(n, i, j)?;
            images = images.iter().map(|&x| t.images[x as usize]).collect();
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `"(1,5,4)(3,6)"` on `n` points. `"()"`
    /// and the empty string denote the identity; 1-cycles are accepted.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        let s = s.trim();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            if rest_trim.is_empty() {
                break;
            }
            let Some(body_start) = rest_trim.strip_prefix('(') else {
                return Err(PermError::Parse(format!("expected '(' in {s:?}")));
            };
            let Some(close) = body_start.find(')') else {
                return Err(PermError::Parse(format!("unclosed cycle in {s:?}")));
            };
            let body = body_start[..close].trim();
            rest = &body_start[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut points = Vec::new();
            for tok in body.split(',') {
                let p: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| PermError::Parse(format!("bad point {tok:?} in {s:?}")))?;
                if p == 0 || p > n {
                    return Err(PermError::PointOutOfRange { point: p, degree: n });
                }
                if used[p - 1] {
                    return Err(PermError::Parse(format!("point {p} repeated in {s:?}")));
                }
                used[p - 1] = true;
                points.push(p - 1);
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()] as u32;
            }
        }
        Ok(Perm { images })
    }

    /// Parses one-line image notation such as `"[5,2,6,1,4,3]"`.
    pub fn parse_images(s: &str) -> Result<Perm, PermError> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| PermError::Parse(format!("expected [..] in {s:?}")))?;
        let images = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| PermError::Parse(format!("bad image {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Perm::from_images(&images)
    }

    /// One-line notation `[π(1),…,π(n)]`.
    pub fn image_notation(&self) -> String {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Cycle notation with fixed points written out, e.g. `(1,5,4)(2)(3,6)`.
    pub fn full_cycle_notation(&self) -> String {
        self.cycle_decomposition().iter().map(|c| format_cycle(c)).collect()
    }
}

fn format_cycle(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycle_decomposition() {
            if c.len() > 1 {
                any = true;
                f.write_str(&format_cycle(&c))?;
            }
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self, self.degree())
    }
}

/// Parses image notation; cycle notation needs an explicit degree, see
/// [`Perm::parse_cycles`].
impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Perm::parse_images(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn identity_basics() {
        assert_eq!(Perm::identity(3).unwrap().images(), vec![1, 2, 3]);
        assert_eq!(Perm::identity(1).unwrap().images(), vec![1]);
        assert_eq!(Perm::identity(0), Err(PermError::ZeroDegree));
        let pi = cyc("(1,5,4)(3,6)", 6);
        assert_eq!(Perm::identity(6).unwrap().compose(&pi).unwrap(), pi);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = cyc("(1,2)", 3);
        let b = cyc("(2,3)", 3);
        assert_eq!(a.compose(&b).unwrap(), cyc("(1,3,2)", 3));
        let pi = cyc("(1,5,4)(3,6)", 6);
        let inv = cyc("(1,4,5)(3,6)", 6);
        assert!(pi.compose(&inv).unwrap().is_identity());
        assert_eq!(pi.compose(&Perm::identity(6).unwrap()).unwrap(), pi);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let a = cyc("(1,2)", 3);
        let b = cyc("(1,2)", 4);
        assert_eq!(a.compose(&b), Err(PermError::DegreeMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn inverse_examples() {
        let pi = cyc("(1,5,4)(3,6)", 6);
        assert_eq!(pi.inverse(), cyc("(1,4,5)(3,6)", 6));
        assert!(Perm::identity(4).unwrap().inverse().is_identity());
        let t = Perm::transposition(5, 2, 4).unwrap();
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn cycle_decomposition_examples() {
        let pi = Perm::parse_images("[5,2,6,1,4,3]").unwrap();
        assert_eq!(pi.cycle_decomposition(), vec![vec![1, 5, 4], vec![2], vec![3, 6]]);
        assert_eq!(pi.full_cycle_notation(), "(1,5,4)(2)(3,6)");
        assert_eq!(pi, cyc("(1,5,4)(3,6)(2)", 6));
        assert_eq!(
            Perm::identity(4).unwrap().cycle_decomposition(),
            vec![vec![1], vec![2], vec![3], vec![4]]
        );
        assert_eq!(cyc("(1,3,2)", 3).cycle_decomposition(), vec![vec![1, 3, 2]]);
    }

    #[test]
    fn cycle_count_examples() {
        assert_eq!(Perm::identity(7).unwrap().cycle_count(), 7);
        assert_eq!(cyc("(1,5,4)(3,6)(2)", 6).cycle_count(), 3);
        let p = cyc("(1,2)(3,4)", 4);
        let q = p.compose(&Perm::transposition(4, 2, 3).unwrap()).unwrap();
        assert_eq!(q, cyc("(1,3,4,2)", 4));
        assert_eq!(q.cycle_count(), p.cycle_count() - 1);
    }

    #[test]
    fn product_of_examples() {
        let path = [(1, 2), (2, 3), (3, 4)];
        let orders: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for o in orders {
            let ts: Vec<_> = o.iter().map(|&k| path[k]).collect();
            assert!(Perm::product_of(&ts, 4).unwrap().is_full_cycle());
        }
        assert!(Perm::product_of(&[(1, 2), (3, 4), (1, 3)], 4).unwrap().is_full_cycle());
        let p = Perm::product_of(&[(1, 2), (2, 3), (1, 3)], 4).unwrap();
        assert_eq!(p.apply(4), 4);
        assert!(!p.is_full_cycle());
        assert!(matches!(
            Perm::product_of(&[(1, 1)], 3),
            Err(PermError::NotATransposition(1, 1))
        ));
    }

    #[test]
    fn parsing_and_printing() {
        let pi = cyc("(1,5,4)(3,6)", 6);
        assert_eq!(pi.to_string(), "(1,5,4)(3,6)");
        assert_eq!(pi.image_notation(), "[5,2,6,1,4,3]");
        assert_eq!(Perm::identity(3).unwrap().to_string(), "()");
        assert!(Perm::parse_cycles("()", 3).unwrap().is_identity());
        assert!(Perm::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Perm::parse_cycles("(1,7)", 3).is_err());
        assert!(Perm::parse_cycles("(1,2", 3).is_err());
        assert!(Perm::parse_images("[1,1,2]").is_err());
        assert_eq!("[2,1]".parse::<Perm>().unwrap().as_transposition(), Some((1, 2)));
        // non-canonical input normalizes on print
        assert_eq!(cyc("(4,1,5) (6,3)", 6).to_string(), "(1,5,4)(3,6)");
    }

    #[test]
    fn as_transposition() {
        assert_eq!(cyc("(2,5)", 6).as_transposition(), Some((2, 5)));
        assert_eq!(cyc("(1,2,3)", 3).as_transposition(), None);
        assert_eq!(Perm::identity(3).unwrap().as_transposition(), None);
    }

    #[test]
    fn conjugation_matches_left_to_right_product() {
        let y = cyc("(1,2,3)", 4);
        let x = cyc("(1,4)(2,3)", 4);
        let direct = x.inverse().compose(&y).unwrap().compose(&x).unwrap();
        assert_eq!(y.conjugate_by(&x), direct);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images0(v).unwrap())
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in (1usize..10).prop_flat_map(arb_perm)) {
            let n = p.degree();
            prop_assert_eq!(Perm::parse_cycles(&p.to_string(), n).unwrap(), p.clone());
            prop_assert_eq!(Perm::parse_cycles(&p.full_cycle_notation(), n).unwrap(), p.clone());
            prop_assert_eq!(Perm::parse_images(&p.image_notation()).unwrap(), p);
        }

        #[test]
        fn inverse_and_associativity(
            (a, b, c) in (1usize..9).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
        ) {
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
