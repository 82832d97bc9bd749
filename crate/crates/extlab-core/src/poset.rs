//! Finite posets on `{0, .., n-1}` with a transitively closed strict order.
//!
//! The relation is stored as one bitmask row per element, which keeps closure,
//! restriction and antichain scans cheap for the small instances this crate
//! targets (`n <= 32`). Elements are 0-indexed internally; anything printed
//! for human consumption converts to 1-indexed.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub const MAX_ELEMENTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relations create a cycle through element {0}")]
    Cycle(usize),
    #[error("poset has width {0}, expected width <= 2")]
    Width(usize),
    #[error("element index {0} out of range")]
    Index(usize),
    #[error("poset size {0} exceeds the supported maximum {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("size cap exceeded: {0}")]
    Cap(u64),
    #[error("chains do not partition the poset")]
    BadChains,
    #[error("second chain is empty")]
    EmptyChain,
    #[error("poset is a total order")]
    TotalOrder,
}

/// A finite poset: `n` elements, `rel[x]` has bit `y` set iff `x` is strictly
/// below `y`. Always irreflexive, antisymmetric and transitively closed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    n: usize,
    rel: Vec<u32>,
}

impl core::fmt::Debug for Poset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Poset(n={};", self.n)?;
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    write!(f, " {x}<{y}")?;
                }
            }
        }
        write!(f, ")")
    }
}

impl Poset {
    /// Builds the transitive closure of the given cover relations.
    /// Rejects cycles (including 2-cycles that would break antisymmetry).
    pub fn from_cover_relations(
        n: usize,
        covers: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut rel = vec![0u32; n];
        for &(x, y) in covers {
            if x >= n {
                return Err(PosetError::Index(x));
            }
            if y >= n {
                return Err(PosetError::Index(y));
            }
            if x == y {
                return Err(PosetError::Cycle(x));
            }
            rel[x] |= 1 << y;
        }
        Self::close(n, rel)
    }

    /// Antichain on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_cover_relations(n, &[]).expect("antichain is always valid")
    }

    /// Chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_cover_relations(n, &covers).expect("chain is always valid")
    }

    fn close(n: usize, mut rel: Vec<u32>) -> Result<Poset, PosetError> {
        // Floyd-Warshall on bitmask rows.
        for k in 0..n {
            for x in 0..n {
                if rel[x] >> k & 1 == 1 {
                    rel[x] |= rel[k];
                }
            }
        }
        for x in 0..n {
            if rel[x] >> x & 1 == 1 {
                return Err(PosetError::Cycle(x));
            }
            for y in 0..n {
                if rel[x] >> y & 1 == 1 && rel[y] >> x & 1 == 1 {
                    return Err(PosetError::Cycle(x));
                }
            }
        }
        Ok(Poset { n, rel })
    }

    /// Wraps an already-closed relation table. Debug-asserts the invariants.
    pub(crate) fn from_closed_rel(n: usize, rel: Vec<u32>) -> Poset {
        let p = Poset { n, rel };
        debug_assert!(p.check_invariants());
        p
    }

    fn check_invariants(&self) -> bool {
        for x in 0..self.n {
            if self.lt(x, x) {
                return false;
            }
            for y in 0..self.n {
                if self.lt(x, y) {
                    if self.lt(y, x) {
                        return false;
                    }
                    // transitivity: everything above y is above x
                    if self.rel[y] & !self.rel[x] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x` strictly below `y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.rel[x] >> y & 1 == 1
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    /// Bitmask of elements strictly above `x`.
    pub fn above_mask(&self, x: usize) -> u32 {
        self.rel[x]
    }

    /// Bitmask of elements strictly below `x`.
    pub fn below_mask(&self, x: usize) -> u32 {
        let mut m = 0u32;
        for y in 0..self.n {
            if self.lt(y, x) {
                m |= 1 << y;
            }
        }
        m
    }

    /// Number of elements strictly below `x`.
    pub fn less_count(&self, x: usize) -> usize {
        self.below_mask(x).count_ones() as usize
    }

    /// Number of elements incomparable to `x` (excluding `x`).
    pub fn inc_count(&self, x: usize) -> usize {
        self.n - 1 - self.less_count(x) - (self.above_mask(x).count_ones() as usize)
    }

    /// Size of the largest antichain, by brute force over subsets.
    pub fn width(&self) -> usize {
        let mut best = 0usize;
        for mask in 1u64..(1u64 << self.n) {
            let mask = mask as u32;
            if (mask.count_ones() as usize) <= best {
                continue;
            }
            let mut ok = true;
            let mut rest = mask;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.rel[x] | self.below_mask(x)) & mask != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                best = mask.count_ones() as usize;
            }
        }
        best
    }

    /// Order dual: all relations reversed.
    pub fn dual(&self) -> Poset {
        let mut rel = vec![0u32; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(y, x) {
                    rel[x] |= 1 << y;
                }
            }
        }
        Poset { n: self.n, rel }
    }

    /// Induced order on `subset`, re-indexed preserving the order of ids.
    /// Returns the restriction together with the map old id -> new id.
    pub fn restrict(&self, subset: u32) -> (Poset, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut ids = Vec::new();
        for x in 0..self.n {
            if subset >> x & 1 == 1 {
                map[x] = Some(ids.len());
                ids.push(x);
            }
        }
        let m = ids.len();
        let mut rel = vec![0u32; m];
        for (new_x, &old_x) in ids.iter().enumerate() {
            for (new_y, &old_y) in ids.iter().enumerate() {
                if self.lt(old_x, old_y) {
                    rel[new_x] |= 1 << new_y;
                }
            }
        }
        (Poset { n: m, rel }, map)
    }

    /// Adds a new element incomparable to everything; returns its id.
    pub fn adjoin_incomparable(&self) -> (Poset, usize) {
        let mut rel = self.rel.clone();
        rel.push(0);
        (Poset { n: self.n + 1, rel }, self.n)
    }

    /// Adds a new global minimum; returns its id.
    pub fn adjoin_global_min(&self) -> (Poset, usize) {
        let mut rel = self.rel.clone();
        let all = if self.n == 0 { 0 } else { (1u32 << self.n) - 1 };
        rel.push(all);
        (Poset { n: self.n + 1, rel }, self.n)
    }

    /// Closure of this order plus extra relations; `Err` if that cycles.
    pub fn with_relations(&self, extra: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut rel = self.rel.clone();
        for &(x, y) in extra {
            if x >= self.n {
                return Err(PosetError::Index(x));
            }
            if y >= self.n {
                return Err(PosetError::Index(y));
            }
            if x == y {
                return Err(PosetError::Cycle(x));
            }
            rel[x] |= 1 << y;
        }
        Self::close(self.n, rel)
    }

    /// Cover relations (the transitive reduction), ascending by `(x, y)`.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) {
                    // cover iff nothing sits strictly between
                    let between = self.rel[x] & self.below_mask(y);
                    if between == 0 {
                        covers.push((x, y));
                    }
                }
            }
        }
        covers
    }

    /// Deterministic partition into two chains, or `Err(Width)` if none
    /// exists. The incomparability graph of a two-chain-coverable poset is
    /// bipartite; each connected component is 2-colored starting from its
    /// least id, and isolated elements go to the first chain.
    pub fn chain_decomposition_width_two(&self) -> Result<ChainDecomposition, PosetError> {
        let mut color = vec![None::<bool>; self.n];
        for root in 0..self.n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(true);
            let mut queue = vec![root];
            while let Some(x) = queue.pop() {
                let cx = color[x].expect("queued elements are colored");
                for y in 0..self.n {
                    if y != x && !self.comparable(x, y) {
                        match color[y] {
                            None => {
                                color[y] = Some(!cx);
                                queue.push(y);
                            }
                            Some(cy) if cy == cx => {
                                return Err(PosetError::Width(self.width()));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        let c1: Vec<usize> = (0..self.n).filter(|&x| color[x] == Some(true)).collect();
        let c2: Vec<usize> = (0..self.n).filter(|&x| color[x] == Some(false)).collect();
        ChainDecomposition::new(self, c1, c2)
    }

    /// Lexicographically minimal relation table over all permutations of the
    /// elements. Brute force; intended for `n <= 10`.
    pub fn canonical_form(&self) -> Vec<u32> {
        let n = self.n;
        let mut best: Option<Vec<u32>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |perm| {
            // perm[old] = new id
            let mut table = vec![0u32; n];
            for x in 0..n {
                for y in 0..n {
                    if self.lt(x, y) {
                        table[perm[x]] |= 1 << perm[y];
                    }
                }
            }
            match &best {
                Some(b) if *b <= table => {}
                _ => best = Some(table),
            }
        });
        best.unwrap_or_default()
    }

    /// True iff every pair of elements is comparable.
    pub fn is_total_order(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.comparable(x, y)))
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// An ordered partition of a poset into two chains `c1 = a_1 < .. < a_a`
/// and `c2 = b_1 < .. < b_b`. Either chain may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainDecomposition {
    c1: Vec<usize>,
    c2: Vec<usize>,
}

impl ChainDecomposition {
    pub fn new(p: &Poset, mut c1: Vec<usize>, mut c2: Vec<usize>) -> Result<Self, PosetError> {
        c1.sort_unstable();
        c2.sort_unstable();
        let mut seen = 0u32;
        for &x in c1.iter().chain(c2.iter()) {
            if x >= p.n() || seen >> x & 1 == 1 {
                return Err(PosetError::BadChains);
            }
            seen |= 1 << x;
        }
        if seen.count_ones() as usize != p.n() {
            return Err(PosetError::BadChains);
        }
        let sort_chain = |chain: &mut Vec<usize>| -> Result<(), PosetError> {
            chain.sort_by_key(|&x| p.less_count(x));
            for w in chain.windows(2) {
                if !p.lt(w[0], w[1]) {
                    return Err(PosetError::BadChains);
                }
            }
            Ok(())
        };
        sort_chain(&mut c1)?;
        sort_chain(&mut c2)?;
        Ok(ChainDecomposition { c1, c2 })
    }

    /// Swapped decomposition `(c2, c1)`.
    pub fn swapped(&self) -> ChainDecomposition {
        ChainDecomposition {
            c1: self.c2.clone(),
            c2: self.c1.clone(),
        }
    }

    pub fn a(&self) -> usize {
        self.c1.len()
    }

    pub fn b(&self) -> usize {
        self.c2.len()
    }

    /// Element `a_h`, `h` 1-based.
    pub fn alpha(&self, h: usize) -> usize {
        self.c1[h - 1]
    }

    /// Element `b_k`, `k` 1-based.
    pub fn beta(&self, k: usize) -> usize {
        self.c2[k - 1]
    }

    pub fn chain1(&self) -> &[usize] {
        &self.c1
    }

    pub fn chain2(&self) -> &[usize] {
        &self.c2
    }

    pub fn in_chain1(&self, x: usize) -> bool {
        self.c1.contains(&x)
    }

    /// 1-based rank of `x` within its chain, with the chain flag
    /// (`true` = first chain).
    pub fn rank(&self, x: usize) -> Option<(bool, usize)> {
        if let Some(i) = self.c1.iter().position(|&y| y == x) {
            return Some((true, i + 1));
        }
        self.c2.iter().position(|&y| y == x).map(|i| (false, i + 1))
    }
}

/// Three distinct elements `(z1, z2, z3)` whose position differences the
/// correlation statistics track.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementTriple {
    pub z1: usize,
    pub z2: usize,
    pub z3: usize,
}

impl ElementTriple {
    pub fn new(z1: usize, z2: usize, z3: usize) -> Result<Self, PosetError> {
        if z1 == z2 || z1 == z3 || z2 == z3 {
            return Err(PosetError::BadChains);
        }
        Ok(ElementTriple { z1, z2, z3 })
    }

    /// Adds `z1 < z2 < z3` to the order (sound for statistics restricted to
    /// positive offsets). `Err` if those relations would cycle.
    pub fn normalize(&self, p: &Poset) -> Result<Poset, PosetError> {
        p.with_relations(&[(self.z1, self.z2), (self.z2, self.z3)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycle_detection() {
        let p = Poset::from_cover_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.lt(0, 2), "transitivity must add 0<2");
        assert!(Poset::from_cover_relations(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_cover_relations(3, &[(0, 1), (1, 2), (2, 0)]).is_err());
        let empty = Poset::from_cover_relations(2, &[]).unwrap();
        assert!(!empty.lt(0, 1) && !empty.lt(1, 0));
    }

    #[test]
    fn width_examples() {
        assert_eq!(Poset::chain(5).width(), 1);
        assert_eq!(Poset::antichain(4).width(), 4);
        let two_chains =
            Poset::from_cover_relations(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert_eq!(two_chains.width(), 2);
    }

    #[test]
    fn counts() {
        let chain = Poset::chain(3);
        assert_eq!(chain.less_count(2), 2);
        assert_eq!(chain.inc_count(2), 0);
        let anti = Poset::antichain(3);
        assert_eq!(anti.less_count(1), 0);
        assert_eq!(anti.inc_count(1), 2);
        let cc = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        for x in 0..4 {
            assert_eq!(cc.inc_count(x), 2);
        }
    }

    #[test]
    fn dual_is_involution() {
        let p = Poset::from_cover_relations(5, &[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p.dual().dual(), p);
        let chain = Poset::chain(3);
        assert!(chain.dual().lt(2, 0));
        assert_eq!(Poset::antichain(3).dual(), Poset::antichain(3));
    }

    #[test]
    fn restriction() {
        let (r, map) = Poset::chain(3).restrict(0b101);
        assert_eq!(r.n(), 2);
        assert!(r.lt(0, 1));
        assert_eq!(map[2], Some(1));
        let p = Poset::from_cover_relations(4, &[(0, 1), (1, 3)]).unwrap();
        let (full, _) = p.restrict(0b1111);
        assert_eq!(full, p);
        let (single, _) = Poset::antichain(3).restrict(0b010);
        assert_eq!(single.n(), 1);
    }

    #[test]
    fn adjoins() {
        let (p, y) = Poset::antichain(0).adjoin_incomparable();
        assert_eq!((p.n(), y), (1, 0));
        let (p, _) = Poset::chain(2).adjoin_incomparable();
        assert_eq!(p.width(), 2);
        let (v, z) = Poset::antichain(2).adjoin_global_min();
        assert!(v.lt(z, 0) && v.lt(z, 1));
        assert_eq!(v.width(), 2);
    }

    #[test]
    fn decomposition_rule() {
        let cc = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let d = cc.chain_decomposition_width_two().unwrap();
        assert_eq!(d.chain1(), &[0, 1]);
        assert_eq!(d.chain2(), &[2, 3]);

        let chain = Poset::chain(4);
        let d = chain.chain_decomposition_width_two().unwrap();
        assert_eq!(d.a(), 4);
        assert_eq!(d.b(), 0);

        assert!(matches!(
            Poset::antichain(3).chain_decomposition_width_two(),
            Err(PosetError::Width(3))
        ));
    }

    #[test]
    fn decomposition_handles_greedy_trap() {
        // a<c, b<c, a<e with e incomparable to b and c: a naive greedy
        // assignment strands e; the coloring rule must not.
        let p = Poset::from_cover_relations(4, &[(0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(p.width(), 2);
        let d = p.chain_decomposition_width_two().unwrap();
        for chain in [d.chain1(), d.chain2()] {
            for w in chain.windows(2) {
                assert!(p.lt(w[0], w[1]));
            }
        }
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        // three labelings of the 3-chain
        let c1 = Poset::from_cover_relations(3, &[(0, 1), (1, 2)]).unwrap();
        let c2 = Poset::from_cover_relations(3, &[(0, 2), (2, 1)]).unwrap();
        let c3 = Poset::from_cover_relations(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(c1.canonical_form(), c2.canonical_form());
        assert_eq!(c1.canonical_form(), c3.canonical_form());
        let v = Poset::from_cover_relations(3, &[(0, 1), (0, 2)]).unwrap();
        assert_ne!(c1.canonical_form(), v.canonical_form());
    }

    #[test]
    fn triple_normalization() {
        let p = Poset::antichain(3);
        let t = ElementTriple::new(0, 1, 2).unwrap();
        let q = t.normalize(&p).unwrap();
        assert!(q.lt(0, 2));
        let chain = Poset::chain(3);
        let back = ElementTriple::new(2, 1, 0).unwrap();
        assert!(back.normalize(&chain).is_err());
    }
}
