//! Lattice-path model for width-two posets.
//!
//! Extensions of a poset split into chains `(c1, c2)` correspond to monotone
//! NE paths from `(0,0)` to `(a,b)` inside a staircase-convex region: step
//! `t` goes East when the element at position `t` is in the first chain.
//! The path weight (area below the path) matches the extension weight up to
//! a constant, so `q`-statistics transfer. First-intersection surgeries on
//! path pairs give the injections behind the `q` cross-product inequality,
//! and the half-path polynomials split a correlation entry at the pivot's
//! East step.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::linext::LinearExtension;
use crate::poset::{ChainDecomposition, ElementTriple, Poset};
use crate::qpoly::QPolynomial;

pub type Point = (i64, i64);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("path leaves the region")]
    OutOfRegion,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("points do not satisfy the required geometry")]
    Geometry,
}

/// The staircase-convex region between two boundary NE paths over the
/// `a x b` grid. `ylo[x] <= y <= yhi[x]` characterizes the in-region lattice
/// points at abscissa `x`; both bound sequences are nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRegion {
    a: usize,
    b: usize,
    ylo: Vec<i64>,
    yhi: Vec<i64>,
    // height bounds for the East step in column h, 1-based, h in 1..=a
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl LatticeRegion {
    /// Region of a poset under a chain decomposition: the East step in
    /// column `h` must pass above every `b_k` below `a_h` and below every
    /// `b_k` above it.
    pub fn of(p: &Poset, d: &ChainDecomposition) -> LatticeRegion {
        let a = d.a();
        let b = d.b();
        let mut lo = vec![0i64; a + 1];
        let mut hi = vec![b as i64; a + 1];
        for h in 1..=a {
            let x = d.alpha(h);
            for k in 1..=b {
                let y = d.beta(k);
                if p.lt(y, x) {
                    lo[h] = lo[h].max(k as i64);
                }
                if p.lt(x, y) {
                    hi[h] = hi[h].min(k as i64 - 1);
                }
            }
        }
        let mut ylo = vec![0i64; a + 1];
        let mut yhi = vec![b as i64; a + 1];
        for x in 1..=a {
            ylo[x] = lo[x];
        }
        for x in 0..a {
            yhi[x] = hi[x + 1];
        }
        LatticeRegion { a, b, ylo, yhi, lo, hi }
    }

    /// Full `a x b` rectangle: the region of two disjoint chains.
    pub fn rectangle(a: usize, b: usize) -> LatticeRegion {
        let mut covers: Vec<(usize, usize)> = (1..a).map(|i| (i - 1, i)).collect();
        covers.extend((1..b).map(|k| (a + k - 1, a + k)));
        let p = Poset::from_cover_relations(a + b, &covers).expect("two chains are valid");
        let d = ChainDecomposition::new(&p, (0..a).collect(), (a..a + b).collect())
            .expect("disjoint chains are valid");
        LatticeRegion::of(&p, &d)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn corner(&self) -> Point {
        (self.a as i64, self.b as i64)
    }

    pub fn contains(&self, pt: Point) -> bool {
        let (x, y) = pt;
        x >= 0 && x <= self.a as i64 && y >= self.ylo[x as usize] && y <= self.yhi[x as usize]
    }

    /// All in-region lattice points, ascending by `(x, y)`.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for x in 0..=self.a as i64 {
            for y in self.ylo[x as usize]..=self.yhi[x as usize] {
                out.push((x, y));
            }
        }
        out
    }

    /// The boundary staircase assigning each column its maximal height.
    pub fn upper_boundary(&self) -> LatticePath {
        self.staircase(&self.hi)
    }

    /// The boundary staircase assigning each column its minimal height.
    pub fn lower_boundary(&self) -> LatticePath {
        self.staircase(&self.lo)
    }

    fn staircase(&self, heights: &[i64]) -> LatticePath {
        let mut steps = Vec::with_capacity(self.a + self.b);
        let mut y = 0i64;
        for h in 1..=self.a {
            while y < heights[h] {
                steps.push(Step::North);
                y += 1;
            }
            steps.push(Step::East);
        }
        while y < self.b as i64 {
            steps.push(Step::North);
            y += 1;
        }
        LatticePath::new((0, 0), steps)
    }

    /// Whether the unit square with lower-left corner `(x, y)` is forbidden
    /// (cut away by a relation between `a_{x+1}` and `b_{y+1}`).
    pub fn square_forbidden(&self, x: usize, y: usize) -> bool {
        let yy = y as i64;
        yy > self.hi[x + 1] - 1 || yy < self.lo[x + 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    East,
    North,
}

/// A monotone NE lattice path: a start point and a step word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    start: Point,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: Point, steps: Vec<Step>) -> LatticePath {
        LatticePath { start, steps }
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        let e = self.steps.iter().filter(|s| **s == Step::East).count() as i64;
        let n = self.steps.len() as i64 - e;
        (self.start.0 + e, self.start.1 + n)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Visited points, start to end.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start;
        out.push(cur);
        for s in &self.steps {
            match s {
                Step::East => cur.0 += 1,
                Step::North => cur.1 += 1,
            }
            out.push(cur);
        }
        out
    }

    /// Area below the path inside the bounding rectangle: the sum of the
    /// heights of its East steps.
    pub fn weight(&self) -> i64 {
        let mut w = 0i64;
        let mut y = self.start.1;
        for s in &self.steps {
            match s {
                Step::East => w += y,
                Step::North => y += 1,
            }
        }
        w
    }

    pub fn translate(&self, dx: i64, dy: i64) -> LatticePath {
        LatticePath {
            start: (self.start.0 + dx, self.start.1 + dy),
            steps: self.steps.clone(),
        }
    }

    pub fn in_region(&self, r: &LatticeRegion) -> bool {
        self.points().into_iter().all(|pt| r.contains(pt))
    }

    /// Prefix ending at `pt` (a monotone path visits a point at most once).
    pub fn prefix_to(&self, pt: Point) -> Option<LatticePath> {
        let idx = self.points().iter().position(|&q| q == pt)?;
        Some(LatticePath {
            start: self.start,
            steps: self.steps[..idx].to_vec(),
        })
    }

    /// Suffix starting at `pt`.
    pub fn suffix_from(&self, pt: Point) -> Option<LatticePath> {
        let idx = self.points().iter().position(|&q| q == pt)?;
        Some(LatticePath {
            start: pt,
            steps: self.steps[idx..].to_vec(),
        })
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &LatticePath) -> LatticePath {
        assert_eq!(self.end(), other.start(), "paths must be contiguous");
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        LatticePath {
            start: self.start,
            steps,
        }
    }
}

/// The path of an extension: step `t` is East iff the element at position
/// `t` belongs to the first chain.
pub fn path_of_extension(l: &LinearExtension, d: &ChainDecomposition) -> LatticePath {
    let steps = (1..=l.n())
        .map(|t| {
            if d.in_chain1(l.element_at(t)) {
                Step::East
            } else {
                Step::North
            }
        })
        .collect();
    LatticePath::new((0, 0), steps)
}

/// Inverse of [`path_of_extension`]: rejects paths that leave the region.
pub fn extension_of_path(
    p: &Poset,
    d: &ChainDecomposition,
    path: &LatticePath,
) -> Result<LinearExtension, LatticeError> {
    let region = LatticeRegion::of(p, d);
    if path.start() != (0, 0) || path.end() != region.corner() || !path.in_region(&region) {
        return Err(LatticeError::OutOfRegion);
    }
    let mut order = Vec::with_capacity(p.n());
    let (mut x, mut y) = (0usize, 0usize);
    for s in path.steps() {
        match s {
            Step::East => {
                x += 1;
                order.push(d.alpha(x));
            }
            Step::North => {
                y += 1;
                order.push(d.beta(y));
            }
        }
    }
    LinearExtension::from_order(p, order).ok_or(LatticeError::OutOfRegion)
}

/// `K_q(A, B)`: the `q`-count of in-region NE paths from `A` to `B`, with
/// `q`-weight the area below the path. Zero when either endpoint is outside
/// the region or `B` is not reachable.
pub fn count_paths_q(r: &LatticeRegion, a: Point, b: Point) -> QPolynomial {
    if !r.contains(a) || !r.contains(b) || b.0 < a.0 || b.1 < a.1 {
        return QPolynomial::zero();
    }
    let idx = |y: i64| y as usize;
    // dp[y]: paths from a to (x, y), for the current column x
    let mut dp: Vec<QPolynomial> = vec![QPolynomial::zero(); r.b() + 1];
    for y in a.1..=b.1 {
        if r.contains((a.0, y)) {
            dp[idx(y)] = QPolynomial::one();
        } else {
            break;
        }
    }
    for x in a.0..b.0 {
        let mut next: Vec<QPolynomial> = vec![QPolynomial::zero(); r.b() + 1];
        for y in a.1..=b.1 {
            if !r.contains((x + 1, y)) {
                continue;
            }
            let mut acc = if dp[idx(y)].is_zero() {
                QPolynomial::zero()
            } else {
                dp[idx(y)].shift(y as u64)
            };
            if y > a.1 {
                let below = next[idx(y - 1)].clone();
                acc += &below;
            }
            next[idx(y)] = acc;
        }
        dp = next;
    }
    dp[idx(b.1)].clone()
}

/// Plain path count.
pub fn count_paths(r: &LatticeRegion, a: Point, b: Point) -> BigInt {
    count_paths_q(r, a, b).eval_one()
}

/// All in-region paths from `a` to `b`, for exhaustive surgery tests.
pub fn enumerate_paths(r: &LatticeRegion, a: Point, b: Point) -> Vec<LatticePath> {
    let mut out = Vec::new();
    if !r.contains(a) || !r.contains(b) {
        return out;
    }
    fn go(
        r: &LatticeRegion,
        cur: Point,
        b: Point,
        steps: &mut Vec<Step>,
        out: &mut Vec<LatticePath>,
        start: Point,
    ) {
        if cur == b {
            out.push(LatticePath::new(start, steps.clone()));
            return;
        }
        let east = (cur.0 + 1, cur.1);
        if east.0 <= b.0 && r.contains(east) {
            steps.push(Step::East);
            go(r, east, b, steps, out, start);
            steps.pop();
        }
        let north = (cur.0, cur.1 + 1);
        if north.1 <= b.1 && r.contains(north) {
            steps.push(Step::North);
            go(r, north, b, steps, out, start);
            steps.pop();
        }
    }
    let mut steps = Vec::new();
    go(r, a, b, &mut steps, &mut out, a);
    out
}

/// First common lattice point of two paths. Common points of monotone paths
/// are met in the same order along both, so "first" is well defined.
pub fn first_common_point(p1: &LatticePath, p2: &LatticePath) -> Option<Point> {
    let set: BTreeSet<Point> = p1.points().into_iter().collect();
    p2.points().into_iter().find(|pt| set.contains(pt))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaCase {
    /// Start-side surgery: the start pair is strictly wider apart.
    A,
    /// End-side surgery: the end pair is strictly wider apart.
    B,
}

pub type PathPair = (LatticePath, LatticePath);

/// The first-intersection injection for `A, B` on one vertical line
/// (`A` above `B`) and `C, D` on a vertical line strictly to the right
/// (`C` weakly above `D`). Case `A` requires `|AB| > |CD|` and maps
/// `K(A,C) x K(B,D)` into `K(A-e2,C) x K(B+e2,D)`; case `B` requires
/// `|CD| > |AB|` and maps into `K(A,C-e2) x K(B,D+e2)`. Returns the list of
/// `((gamma, zeta), (image gamma, image zeta))` entries.
pub fn kappa_vertical(
    r: &LatticeRegion,
    a: Point,
    b: Point,
    c: Point,
    d: Point,
    case: KappaCase,
) -> Result<Vec<(PathPair, PathPair)>, LatticeError> {
    if a.0 != b.0 || c.0 != d.0 || a.1 < b.1 || c.1 < d.1 || c.0 <= a.0 {
        return Err(LatticeError::Geometry);
    }
    for pt in [a, b, c, d] {
        if !r.contains(pt) {
            return Err(LatticeError::Precondition("corner points must be in the region"));
        }
    }
    match case {
        KappaCase::A if a.1 - b.1 <= c.1 - d.1 => {
            return Err(LatticeError::Precondition("case a needs |AB| > |CD|"))
        }
        KappaCase::B if c.1 - d.1 <= a.1 - b.1 => {
            return Err(LatticeError::Precondition("case b needs |CD| > |AB|"))
        }
        _ => {}
    }
    let mut out = Vec::new();
    for gamma in enumerate_paths(r, a, c) {
        for zeta in enumerate_paths(r, b, d) {
            let image = match case {
                KappaCase::A => {
                    let s = a.1 - b.1 - 1;
                    let lifted = zeta.translate(0, s); // starts at A - e2
                    let e = first_common_point(&gamma, &lifted)
                        .expect("translated paths must intersect");
                    let gamma_hat = lifted
                        .prefix_to(e)
                        .expect("E on lifted")
                        .concat(&gamma.suffix_from(e).expect("E on gamma"));
                    let dropped = gamma.translate(0, -s); // starts at B + e2
                    let e2 = (e.0, e.1 - s);
                    let zeta_hat = dropped
                        .prefix_to(e2)
                        .expect("E' on dropped")
                        .concat(&zeta.suffix_from(e2).expect("E' on zeta"));
                    (gamma_hat, zeta_hat)
                }
                KappaCase::B => {
                    let s = c.1 - d.1 - 1;
                    let lifted = zeta.translate(0, s); // ends at C - e2
                    let e = first_common_point(&gamma, &lifted)
                        .expect("translated paths must intersect");
                    let gamma_hat = gamma
                        .prefix_to(e)
                        .expect("E on gamma")
                        .concat(&lifted.suffix_from(e).expect("E on lifted"));
                    let dropped = gamma.translate(0, -s); // ends at D + e2
                    let e2 = (e.0, e.1 - s);
                    let zeta_hat = zeta
                        .prefix_to(e2)
                        .expect("E' on zeta")
                        .concat(&dropped.suffix_from(e2).expect("E' on dropped"));
                    (gamma_hat, zeta_hat)
                }
            };
            out.push(((gamma.clone(), zeta), image));
        }
    }
    Ok(out)
}

/// The analogous injection for `A, B` on one horizontal line (`A` left of
/// `B`) and `C, D` on one vertical line weakly above it (`C` below `D`).
/// Case `A` requires `|AB| > 0` and maps into `K(A+e1,C) x K(B-e1,D)`;
/// case `B` requires `|CD| > 0` and maps into `K(A,C+e2) x K(B,D-e2)`.
pub fn kappa_horizontal(
    r: &LatticeRegion,
    a: Point,
    b: Point,
    c: Point,
    d: Point,
    case: KappaCase,
) -> Result<Vec<(PathPair, PathPair)>, LatticeError> {
    if a.1 != b.1 || c.0 != d.0 || a.0 > b.0 || c.1 > d.1 || c.1 < a.1 {
        return Err(LatticeError::Geometry);
    }
    for pt in [a, b, c, d] {
        if !r.contains(pt) {
            return Err(LatticeError::Precondition("corner points must be in the region"));
        }
    }
    match case {
        KappaCase::A if b.0 <= a.0 => {
            return Err(LatticeError::Precondition("case a needs |AB| > 0"))
        }
        KappaCase::B if d.1 <= c.1 => {
            return Err(LatticeError::Precondition("case b needs |CD| > 0"))
        }
        _ => {}
    }
    let mut out = Vec::new();
    for gamma in enumerate_paths(r, a, c) {
        for zeta in enumerate_paths(r, b, d) {
            let image = match case {
                KappaCase::A => {
                    let t = b.0 - a.0 - 1;
                    let shifted = zeta.translate(-t, 0); // starts at A + e1
                    let e = first_common_point(&gamma, &shifted)
                        .expect("translated paths must intersect");
                    let gamma_hat = shifted
                        .prefix_to(e)
                        .expect("E on shifted")
                        .concat(&gamma.suffix_from(e).expect("E on gamma"));
                    let moved = gamma.translate(t, 0); // starts at B - e1
                    let e2 = (e.0 + t, e.1);
                    let zeta_hat = moved
                        .prefix_to(e2)
                        .expect("E' on moved")
                        .concat(&zeta.suffix_from(e2).expect("E' on zeta"));
                    (gamma_hat, zeta_hat)
                }
                KappaCase::B => {
                    let s = d.1 - c.1 - 1;
                    let lowered = zeta.translate(0, -s); // ends at C + e2
                    let e = first_common_point(&gamma, &lowered)
                        .expect("translated paths must intersect");
                    let gamma_hat = gamma
                        .prefix_to(e)
                        .expect("E on gamma")
                        .concat(&lowered.suffix_from(e).expect("E on lowered"));
                    let raised = gamma.translate(0, s); // ends at D - e2
                    let e2 = (e.0, e.1 + s);
                    let zeta_hat = zeta
                        .prefix_to(e2)
                        .expect("E' on zeta")
                        .concat(&raised.suffix_from(e2).expect("E' on raised"));
                    (gamma_hat, zeta_hat)
                }
            };
            out.push(((gamma.clone(), zeta), image));
        }
    }
    Ok(out)
}

/// Geometry of a fixed element triple in the lattice model. The pivot `z2`
/// must sit in the first chain; when it does not, the chains are relabeled
/// and `swapped` records that `q`-statistics computed here use the swapped
/// weight. [`TripleGeometry::correlation_poly`] maps them back via
/// `q -> 1/q` renormalization (a reflection at `n(n+1)/2`); the raw variant
/// stays in the relabeled convention.
pub struct TripleGeometry {
    pub region: LatticeRegion,
    pub swapped: bool,
    n: usize,
    pivot_rank: usize, // z2 = alpha_ell after relabeling
    z1: (bool, usize), // (first chain?, 1-based rank)
    z3: (bool, usize),
    cache: RefCell<BTreeMap<(Point, Point), QPolynomial>>,
}

impl TripleGeometry {
    pub fn new(p: &Poset, d: &ChainDecomposition, t: &ElementTriple) -> TripleGeometry {
        let swapped = !d.in_chain1(t.z2);
        let dd = if swapped { d.swapped() } else { d.clone() };
        let region = LatticeRegion::of(p, &dd);
        let (in1, ell) = dd.rank(t.z2).expect("z2 belongs to the poset");
        debug_assert!(in1);
        TripleGeometry {
            region,
            swapped,
            n: p.n(),
            pivot_rank: ell,
            z1: dd.rank(t.z1).expect("z1 belongs to the poset"),
            z3: dd.rank(t.z3).expect("z3 belongs to the poset"),
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    /// The point whose East step corresponds to `L(z2) = u`.
    pub fn pivot_point(&self, u: usize) -> Point {
        (self.pivot_rank as i64 - 1, u as i64 - self.pivot_rank as i64)
    }

    fn k_q(&self, from: Point, to: Point) -> QPolynomial {
        if let Some(hit) = self.cache.borrow().get(&(from, to)) {
            return hit.clone();
        }
        let val = count_paths_q(&self.region, from, to);
        self.cache.borrow_mut().insert((from, to), val.clone());
        val
    }

    /// `G_q(i, Y)`: paths `(0,0) -> Y` through the mandated step above `z1`.
    pub fn prefix_poly(&self, i: i64, y: Point) -> QPolynomial {
        let (in1, k) = self.z1;
        let k = k as i64;
        let level = y.0 + y.1; // L(z2) - 1
        let (p1, east_step) = if in1 {
            ((k - 1, level - i - k + 1), true)
        } else {
            ((level - i - k + 1, k - 1), false)
        };
        let p2 = if east_step {
            (p1.0 + 1, p1.1)
        } else {
            (p1.0, p1.1 + 1)
        };
        if !self.region.contains(p1) || !self.region.contains(p2) {
            return QPolynomial::zero();
        }
        let head = self.k_q((0, 0), p1);
        if head.is_zero() {
            return QPolynomial::zero();
        }
        let tail = self.k_q(p2, y);
        if tail.is_zero() {
            return QPolynomial::zero();
        }
        let step = if east_step {
            QPolynomial::monomial(p1.1 as u64, BigInt::one())
        } else {
            QPolynomial::one()
        };
        &(&head * &step) * &tail
    }

    /// `H_q(j, Y)`: paths `Y + e1 -> (a,b)` through the mandated step above
    /// `z3`.
    pub fn suffix_poly(&self, j: i64, y: Point) -> QPolynomial {
        let (in1, m) = self.z3;
        let m = m as i64;
        let level = y.0 + y.1;
        let (p3, east_step) = if in1 {
            ((m - 1, level + j - m + 1), true)
        } else {
            ((level + j - m + 1, m - 1), false)
        };
        let p4 = if east_step {
            (p3.0 + 1, p3.1)
        } else {
            (p3.0, p3.1 + 1)
        };
        let start = (y.0 + 1, y.1);
        if !self.region.contains(p3)
            || !self.region.contains(p4)
            || !self.region.contains(start)
        {
            return QPolynomial::zero();
        }
        let head = self.k_q(start, p3);
        if head.is_zero() {
            return QPolynomial::zero();
        }
        let tail = self.k_q(p4, self.region.corner());
        if tail.is_zero() {
            return QPolynomial::zero();
        }
        let step = if east_step {
            QPolynomial::monomial(p3.1 as u64, BigInt::one())
        } else {
            QPolynomial::one()
        };
        &(&head * &step) * &tail
    }

    /// `F_q(i, j)` assembled from the half-path polynomials, in this
    /// geometry's (possibly swapped) weight convention.
    pub fn correlation_poly_raw(&self, i: i64, j: i64) -> QPolynomial {
        let a = self.region.a() as u64;
        let base = a * (a + 1) / 2;
        let ell = self.pivot_rank;
        let mut sum = QPolynomial::zero();
        for u in ell..=self.n {
            let y = self.pivot_point(u);
            if !self.region.contains(y) {
                continue;
            }
            let g = self.prefix_poly(i, y);
            if g.is_zero() {
                continue;
            }
            let h = self.suffix_poly(j, y);
            if h.is_zero() {
                continue;
            }
            sum += &(&g * &h).shift((u - ell) as u64);
        }
        sum.shift(base)
    }

    /// `F_q(i, j)` mapped back to the caller's original decomposition;
    /// identical to the raw value when no relabeling happened.
    pub fn correlation_poly(&self, i: i64, j: i64) -> QPolynomial {
        let raw = self.correlation_poly_raw(i, j);
        if !self.swapped || raw.is_zero() {
            return raw;
        }
        let total = (self.n * (self.n + 1) / 2) as u64;
        raw.reflect(total)
    }

    /// `GCP_q(i, Y, V) = G_q(i,Y) G_q(i+1,V) - G_q(i+1,Y) G_q(i,V)` for `Y`
    /// weakly below `V` on one vertical line.
    pub fn prefix_cross_diff(
        &self,
        i: i64,
        y: Point,
        v: Point,
    ) -> Result<QPolynomial, LatticeError> {
        if y.0 != v.0 || y.1 > v.1 {
            return Err(LatticeError::Geometry);
        }
        let lhs = &self.prefix_poly(i, y) * &self.prefix_poly(i + 1, v);
        let rhs = &self.prefix_poly(i + 1, y) * &self.prefix_poly(i, v);
        Ok(lhs - rhs)
    }

    /// `HCP_q(j, Y, V)`, same geometry.
    pub fn suffix_cross_diff(
        &self,
        j: i64,
        y: Point,
        v: Point,
    ) -> Result<QPolynomial, LatticeError> {
        if y.0 != v.0 || y.1 > v.1 {
            return Err(LatticeError::Geometry);
        }
        let lhs = &self.suffix_poly(j, y) * &self.suffix_poly(j + 1, v);
        let rhs = &self.suffix_poly(j + 1, y) * &self.suffix_poly(j, v);
        Ok(lhs - rhs)
    }
}

/// ASCII rendering of the region: rows top to bottom, one character per unit
/// square. `#` marks forbidden squares, `.` free ones, and `*` overlays the
/// squares whose boundary edges the given path uses.
pub fn render_region(r: &LatticeRegion, overlay: Option<&LatticePath>) -> String {
    let (a, b) = (r.a(), r.b());
    let mut east: BTreeSet<Point> = BTreeSet::new();
    let mut north: BTreeSet<Point> = BTreeSet::new();
    if let Some(path) = overlay {
        let pts = path.points();
        for (idx, s) in path.steps().iter().enumerate() {
            match s {
                Step::East => east.insert(pts[idx]),
                Step::North => north.insert(pts[idx]),
            };
        }
    }
    let mut out = String::new();
    for row in (0..b).rev() {
        for col in 0..a {
            let (x, y) = (col as i64, row as i64);
            let ch = if r.square_forbidden(col, row) {
                '#'
            } else if east.contains(&(x, y))
                || east.contains(&(x, y + 1))
                || north.contains(&(x, y))
                || north.contains(&(x + 1, y))
            {
                '*'
            } else {
                '.'
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{width_two_posets, width_two_posets_up_to};
    use crate::linext::{correlation_table, extensions};

    fn binomial(n: u64, k: u64) -> BigInt {
        let mut r = BigInt::one();
        for i in 0..k {
            r = r * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        r
    }

    #[test]
    fn rectangle_region() {
        let r = LatticeRegion::rectangle(3, 2);
        assert!(r.contains((0, 0)) && r.contains((3, 2)) && r.contains((1, 2)));
        assert!(!r.contains((4, 0)) && !r.contains((0, 3)));
        assert_eq!(count_paths(&r, (0, 0), (3, 2)), binomial(5, 2));
    }

    #[test]
    fn forced_region_of_total_order() {
        // a1 < b1 with a = b = 1: the single path is East then North
        let p = Poset::from_cover_relations(2, &[(0, 1)]).unwrap();
        let d = ChainDecomposition::new(&p, vec![0], vec![1]).unwrap();
        let r = LatticeRegion::of(&p, &d);
        assert!(r.contains((0, 0)) && r.contains((1, 0)) && r.contains((1, 1)));
        assert!(!r.contains((0, 1)));
        assert_eq!(count_paths(&r, (0, 0), (1, 1)), BigInt::one());
    }

    #[test]
    fn boundaries_are_the_extreme_extensions() {
        for (p, d) in width_two_posets_up_to(6, 10).unwrap() {
            let r = LatticeRegion::of(&p, &d);
            let upper = r.upper_boundary();
            let lower = r.lower_boundary();
            assert!(upper.in_region(&r) && lower.in_region(&r));
            let minimal = crate::profile::minimal_extension(&p, &d);
            assert_eq!(path_of_extension(&minimal, &d), upper);
            let minimal_sw = crate::profile::minimal_extension(&p, &d.swapped());
            assert_eq!(path_of_extension(&minimal_sw, &d), lower);
        }
    }

    #[test]
    fn bijection_round_trip_small() {
        for (p, d) in width_two_posets_up_to(6, 10).unwrap() {
            let r = LatticeRegion::of(&p, &d);
            let exts = extensions(&p);
            let mut seen = BTreeSet::new();
            for l in &exts {
                let path = path_of_extension(l, &d);
                assert!(path.in_region(&r), "image path must stay in region");
                let back = extension_of_path(&p, &d, &path).unwrap();
                assert_eq!(&back, l);
                seen.insert(path);
            }
            // the in-region paths are exactly the images
            let all = enumerate_paths(&r, (0, 0), r.corner());
            assert_eq!(all.len(), exts.len());
            for path in all {
                assert!(seen.contains(&path));
            }
        }
    }

    #[test]
    fn out_of_region_is_rejected() {
        let p = Poset::from_cover_relations(2, &[(0, 1)]).unwrap();
        let d = ChainDecomposition::new(&p, vec![0], vec![1]).unwrap();
        let bad = LatticePath::new((0, 0), vec![Step::North, Step::East]);
        assert_eq!(
            extension_of_path(&p, &d, &bad),
            Err(LatticeError::OutOfRegion)
        );
    }

    #[test]
    fn path_weights() {
        // E..EN.. has weight 0; N..NE.. has weight a*b
        let flat = LatticePath::new((0, 0), vec![Step::East, Step::East, Step::North]);
        assert_eq!(flat.weight(), 0);
        let steep = LatticePath::new((0, 0), vec![Step::North, Step::North, Step::East]);
        assert_eq!(steep.weight(), 2);
    }

    #[test]
    fn weight_bridge() {
        for (p, d) in width_two_posets_up_to(6, 10).unwrap() {
            let shift = (d.a() * (d.a() + 1) / 2) as i64;
            for l in extensions(&p) {
                let path = path_of_extension(&l, &d);
                assert_eq!(path.weight(), l.weight(&d) as i64 - shift);
            }
        }
    }

    #[test]
    fn count_paths_edge_cases() {
        let r = LatticeRegion::rectangle(2, 2);
        assert_eq!(count_paths_q(&r, (1, 1), (1, 1)), QPolynomial::one());
        assert!(count_paths_q(&r, (1, 1), (0, 2)).is_zero());
        assert!(count_paths_q(&r, (-1, 0), (2, 2)).is_zero());
    }

    #[test]
    fn count_paths_q_matches_enumeration() {
        for (a, b) in [(3usize, 3usize), (4, 2), (2, 4)] {
            for (p, d) in width_two_posets(a, b, 10).unwrap() {
                let r = LatticeRegion::of(&p, &d);
                for &src in &[(0i64, 0i64), (1, 0)] {
                    let poly = count_paths_q(&r, src, r.corner());
                    let mut manual = QPolynomial::zero();
                    for path in enumerate_paths(&r, src, r.corner()) {
                        manual += &QPolynomial::monomial(path.weight() as u64, BigInt::one());
                    }
                    assert_eq!(poly, manual);
                }
            }
        }
    }

    #[test]
    fn half_path_decomposition_small() {
        // F_q(i,j) from the half-path split agrees with the oracle
        for (p, d) in width_two_posets_up_to(5, 10).unwrap() {
            let n = p.n();
            for z1 in 0..n {
                for z2 in 0..n {
                    for z3 in 0..n {
                        if z1 == z2 || z1 == z3 || z2 == z3 {
                            continue;
                        }
                        let t = ElementTriple::new(z1, z2, z3).unwrap();
                        let geom = TripleGeometry::new(&p, &d, &t);
                        let table = correlation_table(&p, Some(&d), t, true);
                        for i in 1..=n as i64 {
                            for j in 1..=n as i64 {
                                assert_eq!(
                                    geom.correlation_poly(i, j),
                                    table.get(i, j),
                                    "decomposition mismatch on {:?} triple {:?} at ({}, {})",
                                    p,
                                    t,
                                    i,
                                    j
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn half_path_cross_diff_signs_small() {
        for (p, d) in width_two_posets_up_to(5, 10).unwrap() {
            let n = p.n();
            for z1 in 0..n {
                for z2 in 0..n {
                    for z3 in 0..n {
                        if z1 == z2 || z1 == z3 || z2 == z3 {
                            continue;
                        }
                        let t = ElementTriple::new(z1, z2, z3).unwrap();
                        let geom = TripleGeometry::new(&p, &d, &t);
                        let pts: Vec<Point> = (1..=n)
                            .map(|u| geom.pivot_point(u))
                            .filter(|&pt| geom.region.contains(pt))
                            .collect();
                        for yi in 0..pts.len() {
                            for vi in yi..pts.len() {
                                for i in 1..n as i64 {
                                    let g =
                                        geom.prefix_cross_diff(i, pts[yi], pts[vi]).unwrap();
                                    assert!(g.is_nonneg(), "GCP sign failure");
                                    let h =
                                        geom.suffix_cross_diff(i, pts[yi], pts[vi]).unwrap();
                                    assert!(
                                        (QPolynomial::zero() - h).is_nonneg(),
                                        "HCP sign failure"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_diff_vanishes_on_equal_points() {
        let p = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let d = ChainDecomposition::new(&p, vec![0, 1], vec![2, 3]).unwrap();
        let t = ElementTriple::new(2, 0, 3).unwrap();
        let geom = TripleGeometry::new(&p, &d, &t);
        let y = (0, 1);
        assert!(geom.prefix_cross_diff(1, y, y).unwrap().is_zero());
        assert!(geom.suffix_cross_diff(1, y, y).unwrap().is_zero());
        assert!(geom.prefix_cross_diff(1, (0, 1), (1, 1)).is_err());
    }

    #[test]
    fn render_shapes() {
        let r = LatticeRegion::rectangle(3, 2);
        assert_eq!(render_region(&r, None), "...\n...\n");
        let p = Poset::from_cover_relations(2, &[(0, 1)]).unwrap();
        let d = ChainDecomposition::new(&p, vec![0], vec![1]).unwrap();
        let forced = LatticeRegion::of(&p, &d);
        assert_eq!(render_region(&forced, None), "#\n");
        let free = LatticeRegion::rectangle(2, 1);
        let low = LatticePath::new((0, 0), vec![Step::East, Step::East, Step::North]);
        assert_eq!(render_region(&free, Some(&low)), "**\n");
    }
}
