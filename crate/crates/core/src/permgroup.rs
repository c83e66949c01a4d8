//! Permutation groups given by generators.
//!
//! Order and membership go through a stabilizer chain built with the
//! deterministic Schreier–Sims procedure. Base points are taken in increasing
//! point order and orbits are explored breadth-first over the generators in
//! input order, so the chain (and everything derived from it) is reproducible.

use std::fmt;
use std::ops::Mul;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::perm::{Perm, PermError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: group acts on {group} points, element has degree {element}")]
    DegreeMismatch { group: usize, element: usize },
    #[error("group order {order} exceeds cap {cap}")]
    OrderExceedsCap { order: GroupOrder, cap: u64 },
    #[error("not a subgroup: generator {0} is not in the ambient group")]
    NotASubgroup(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("json: {0}")]
    Json(String),
}

/// Exact group order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupOrder(pub BigUint);

impl GroupOrder {
    pub fn one() -> GroupOrder {
        GroupOrder(BigUint::one())
    }

    pub fn factorial(n: usize) -> GroupOrder {
        GroupOrder((1..=n as u64).fold(BigUint::one(), |acc, k| acc * k))
    }

    pub fn pow(&self, e: usize) -> GroupOrder {
        GroupOrder(self.0.pow(e as u32))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for GroupOrder {
    fn from(v: u64) -> Self {
        GroupOrder(BigUint::from(v))
    }
}

impl Mul for GroupOrder {
    type Output = GroupOrder;
    fn mul(self, rhs: GroupOrder) -> GroupOrder {
        GroupOrder(self.0 * rhs.0)
    }
}

impl Mul<&GroupOrder> for &GroupOrder {
    type Output = GroupOrder;
    fn mul(self, rhs: &GroupOrder) -> GroupOrder {
        GroupOrder(&self.0 * &rhs.0)
    }
}

impl PartialEq<u64> for GroupOrder {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigUint>().map(GroupOrder).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Level {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base] = Some(Perm::identity0(degree));
        self.orbit = vec![self.base];
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.apply0(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap().then(g);
                    self.transversal[q] = Some(u);
                    self.orbit.push(q);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct StabChain {
    levels: Vec<Level>,
}

impl StabChain {
    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` when it went all the way).
    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply0(level.base);
            match &level.transversal[beta] {
                None => return (h, l),
                Some(u) => h = h.then(&u.inverse()),
            }
        }
        let k = self.levels.len();
        (h, k)
    }

    fn build(degree: usize, gens: &[Perm]) -> StabChain {
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply0(b) == b) {
                base.push(first_moved_point(g, &base));
            }
        }
        let mut chain = StabChain { levels: Vec::new() };
        for (l, &b) in base.iter().enumerate() {
            let mut level = Level::new(b, degree);
            level.gens = gens
                .iter()
                .filter(|g| base[..l].iter().all(|&c| g.apply0(c) == c))
                .cloned()
                .collect();
            level.rebuild_orbit(degree);
            chain.levels.push(level);
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut jumped_to = None;
            'pairs: for oi in 0..chain.levels[iu].orbit.len() {
                let y = chain.levels[iu].orbit[oi];
                for gi in 0..chain.levels[iu].gens.len() {
                    let level = &chain.levels[iu];
                    let x = &level.gens[gi];
                    let ux = level.transversal[y].as_ref().unwrap().then(x);
                    let yx = x.apply0(y);
                    let target = level.transversal[yx].as_ref().unwrap();
                    if &ux == target {
                        continue;
                    }
                    let h = ux.then(&target.inverse());
                    let (res, j) = chain.strip(h, iu + 1);
                    let k = chain.levels.len();
                    if j < k || !res.is_identity() {
                        if j == k {
                            let used: Vec<usize> = chain.levels.iter().map(|l| l.base).collect();
                            let b = first_moved_point(&res, &used);
                            chain.levels.push(Level::new(b, degree));
                        }
                        for l in iu + 1..=j {
                            chain.levels[l].gens.push(res.clone());
                            chain.levels[l].rebuild_orbit(degree);
                        }
                        jumped_to = Some(j);
                        break 'pairs;
                    }
                }
            }
            match jumped_to {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        chain
    }

    fn order(&self) -> GroupOrder {
        GroupOrder(self.levels.iter().fold(BigUint::one(), |acc, l| acc * l.orbit.len()))
    }
}

fn first_moved_point(g: &Perm, exclude: &[usize]) -> usize {
    (0..g.degree())
        .find(|&p| g.apply0(p) != p && !exclude.contains(&p))
        .expect("non-identity permutation fixing all base points moves some other point")
}

/// A finite permutation group on `{1..degree}` given by generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, GroupError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree.into());
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    group: degree,
                    element: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    /// Parses generators given in cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<PermGroup, GroupError> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse_cycles(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> Result<PermGroup, GroupError> {
        PermGroup::new(degree, Vec::new())
    }

    /// `S_n`, generated by `(1,2)` and `(1,2,…,n)`.
    pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
        if n == 1 {
            return PermGroup::trivial(1);
        }
        let t = Perm::transposition(n, 1, 2)?;
        let c = Perm::from_images0_unchecked((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        PermGroup::new(n, vec![t, c])
    }

    /// The dihedral group of order `2n` acting on the `n`-gon: rotation
    /// `(1,2,…,n)` and the reflection `(2,n)(3,n−1)…` fixing 1.
    pub fn dihedral(n: usize) -> Result<PermGroup, GroupError> {
        if n < 3 {
            return Err(GroupError::Perm(PermError::Parse(format!(
                "dihedral group needs n >= 3, got {n}"
            ))));
        }
        let rot = Perm::from_images0_unchecked((0..n as u32).map(|i| (i + 1) % n as u32).collect());
        let refl = Perm::from_images0_unchecked((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        PermGroup::new(n, vec![rot, refl])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    /// Exact order from the stabilizer chain.
    pub fn order(&self) -> GroupOrder {
        self.chain().order()
    }

    /// Base points of the stabilizer chain, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.chain().levels.iter().map(|l| l.base + 1).collect()
    }

    /// Sifts `p` through the stabilizer chain.
    pub fn contains(&self, p: &Perm) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                group: self.degree,
                element: p.degree(),
            });
        }
        Ok(self.contains_unchecked(p))
    }

    fn contains_unchecked(&self, p: &Perm) -> bool {
        let chain = self.chain();
        let (res, j) = chain.strip(p.clone(), 0);
        j == chain.levels.len() && res.is_identity()
    }

    /// All elements, sorted. Fails when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Perm>, GroupError> {
        let order = self.order();
        if order.0 > BigUint::from(cap) {
            return Err(GroupError::OrderExceedsCap { order, cap });
        }
        let chain = self.chain();
        let mut out = vec![Perm::identity0(self.degree)];
        for level in chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for x in &out {
                for &p in &level.orbit {
                    next.push(x.then(level.transversal[p].as_ref().unwrap()));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// Orbit of a 1-based point, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit0(self.degree, &self.generators, point - 1)
            .into_iter()
            .map(|p| p + 1)
            .collect()
    }

    /// True when the two groups contain the same permutations.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.generators.iter().all(|g| self.contains_unchecked(g))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains_unchecked(g))
    }

    /// Conjugates the group by `x` (left to right: each `g` becomes
    /// `x⁻¹ g x`), i.e. relabels point `i` as `x(i)`.
    pub fn conjugate_by(&self, x: &Perm) -> Result<PermGroup, GroupError> {
        if x.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                group: self.degree,
                element: x.degree(),
            });
        }
        PermGroup::new(self.degree, self.generators.iter().map(|g| g.conjugate_by(x)).collect())
    }

    /// The subgroup generated by `self`'s generators together with `extra`.
    pub fn join(&self, extra: &[Perm]) -> Result<PermGroup, GroupError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// Generators as a JSON array of cycle-notation strings.
    pub fn generators_json(&self) -> serde_json::Value {
        generators_to_json(&self.generators)
    }
}

pub(crate) fn orbit0(degree: usize, gens: &[Perm], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut orbit = vec![point];
    let mut head = 0;
    while head < orbit.len() {
        let p = orbit[head];
        head += 1;
        for g in gens {
            let q = g.apply0(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
            }
        }
    }
    orbit
}

/// Direct product acting on the disjoint union: `a`'s points keep labels
/// `1..|X|`, `b`'s point `y` becomes `|X| + y`.
pub fn direct_sum(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (dx, dy) = (a.degree, b.degree);
    let n = dx + dy;
    let mut gens = Vec::new();
    for g in &a.generators {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for (i, x) in images.iter_mut().enumerate().take(dx) {
            *x = g.apply0(i) as u32;
        }
        gens.push(Perm::from_images0_unchecked(images));
    }
    for g in &b.generators {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for j in 0..dy {
            images[dx + j] = (dx + g.apply0(j)) as u32;
        }
        gens.push(Perm::from_images0_unchecked(images));
    }
    PermGroup::new(n, gens).expect("degrees are consistent by construction")
}

/// Wreath product `A[B]` on `X × Y`; the pair `(x_i, y_j)` is point
/// `(i−1)·|Y| + j`. Generators: each generator of `a` permuting the blocks,
/// plus each generator of `b` acting inside block `i`, for every `i`.
pub fn wreath(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (d, m) = (a.degree, b.degree);
    let n = d * m;
    let mut gens = Vec::new();
    for g in &a.generators {
        let images: Vec<u32> = (0..n).map(|p| (g.apply0(p / m) * m + p % m) as u32).collect();
        gens.push(Perm::from_images0_unchecked(images));
    }
    for i in 0..d {
        for g in &b.generators {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for j in 0..m {
                images[i * m + j] = (i * m + g.apply0(j)) as u32;
            }
            gens.push(Perm::from_images0_unchecked(images));
        }
    }
    PermGroup::new(n, gens).expect("degrees are consistent by construction")
}

/// Decides whether `h` is normal in `g` by conjugating `h`'s generators by
/// `g`'s generators and sifting the results through `h`.
pub fn is_normal(h: &PermGroup, g: &PermGroup) -> Result<bool, GroupError> {
    if h.degree != g.degree {
        return Err(GroupError::DegreeMismatch {
            group: g.degree,
            element: h.degree,
        });
    }
    if let Some(bad) = h.generators.iter().find(|y| !g.contains_unchecked(y)) {
        return Err(GroupError::NotASubgroup(bad.to_string()));
    }
    Ok(g.generators
        .iter()
        .all(|x| h.generators.iter().all(|y| h.contains_unchecked(&y.conjugate_by(x)))))
}

pub fn generators_to_json(gens: &[Perm]) -> serde_json::Value {
    serde_json::Value::Array(gens.iter().map(|g| serde_json::Value::String(g.to_string())).collect())
}

pub fn generators_from_json(json: &str, degree: usize) -> Result<Vec<Perm>, GroupError> {
    let strings: Vec<String> = serde_json::from_str(json).map_err(|e| GroupError::Json(e.to_string()))?;
    strings
        .iter()
        .map(|s| Perm::parse_cycles(s, degree).map_err(GroupError::from))
        .collect()
}
