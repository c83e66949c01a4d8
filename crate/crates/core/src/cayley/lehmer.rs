//! Lehmer-code ranking of permutations and the mixed-radix indexer for
//! direct products of symmetric groups on the components of `T(S)`.

/// Rank of a permutation of `0..m` in `0..m!` (lexicographic order).
pub fn rank(perm: &[u8]) -> u64 {
    let m = perm.len();
    let mut r = 0u64;
    for i in 0..m {
        let smaller_after = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count() as u64;
        r = r * (m - i) as u64 + smaller_after;
    }
    r
}

/// Inverse of [`rank`]; writes the permutation of `0..out.len()` into `out`.
pub fn unrank(mut r: u64, out: &mut [u8]) {
    let m = out.len();
    let mut digits = [0u8; 32];
    for i in (0..m).rev() {
        let base = (m - i) as u64;
        digits[i] = (r % base) as u8;
        r /= base;
    }
    let mut avail: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    for i in 0..m {
        // pick the digits[i]-th smallest remaining value
        let mut k = digits[i];
        let mut bits = avail;
        loop {
            let v = bits.trailing_zeros();
            if k == 0 {
                out[i] = v as u8;
                avail &= !(1 << v);
                break;
            }
            k -= 1;
            bits &= bits - 1;
        }
    }
}

pub(crate) fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

/// Bijection between elements of `Sym(C_1) × … × Sym(C_r)` (the components
/// of `T(S)`, ordered by smallest point) and `0..Π |C_i|!`. The first
/// component is the least significant digit; the identity has index 0.
#[derive(Clone, Debug)]
pub(crate) struct Indexer {
    n: usize,
    components: Vec<Vec<u8>>,
    /// Position of each point inside its component.
    local: Vec<u8>,
    radix: Vec<u64>,
    pub(crate) total: u64,
}

impl Indexer {
    pub(crate) fn new(n: usize, components: Vec<Vec<usize>>) -> Indexer {
        let mut local = vec![0u8; n];
        let mut radix = Vec::with_capacity(components.len());
        let mut total = 1u64;
        let comps: Vec<Vec<u8>> = components
            .into_iter()
            .map(|c| c.into_iter().map(|p| p as u8).collect())
            .collect();
        for c in &comps {
            for (k, &p) in c.iter().enumerate() {
                local[p as usize] = k as u8;
            }
            radix.push(total);
            total *= factorial(c.len());
        }
        Indexer {
            n,
            components: comps,
            local,
            radix,
            total,
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.n
    }

    /// Index of an element given by its 0-based image array. Returns `None`
    /// when the element does not preserve the components.
    pub(crate) fn index(&self, images: &[u8]) -> Option<u64> {
        let mut buf = [0u8; 32];
        let mut idx = 0u64;
        for (c, comp) in self.components.iter().enumerate() {
            for (k, &p) in comp.iter().enumerate() {
                let img = images[p as usize];
                if !comp.contains(&img) {
                    return None;
                }
                buf[k] = self.local[img as usize];
            }
            idx += rank(&buf[..comp.len()]) * self.radix[c];
        }
        Some(idx)
    }

    /// Index of an element known to preserve the components.
    #[inline]
    pub(crate) fn index_unchecked(&self, images: &[u8]) -> u64 {
        let mut buf = [0u8; 32];
        let mut idx = 0u64;
        for (c, comp) in self.components.iter().enumerate() {
            if comp.len() == 1 {
                continue;
            }
            for (k, &p) in comp.iter().enumerate() {
                buf[k] = self.local[images[p as usize] as usize];
            }
            idx += rank(&buf[..comp.len()]) * self.radix[c];
        }
        idx
    }

    pub(crate) fn element(&self, mut idx: u64, images: &mut [u8]) {
        let mut buf = [0u8; 32];
        for comp in &self.components {
            let f = factorial(comp.len());
            let r = idx % f;
            idx /= f;
            unrank(r, &mut buf[..comp.len()]);
            for (k, &p) in comp.iter().enumerate() {
                images[p as usize] = comp[buf[k] as usize];
            }
        }
    }
}
