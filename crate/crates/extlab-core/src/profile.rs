//! The algebraic fast path for width-two posets.
//!
//! For a poset split into chains `(c1, c2)`, the profile matrix counts
//! extensions by the positions of the second chain's endpoints:
//! `N(i, j) = #{L : L(b_1) = i, L(b_b) = j + less(b_b)}`. Walking the minimal
//! extension turns this count into an ordered product of banded generator
//! matrices, one per position, which is the engine behind the cross-product
//! checks. The gap matrices and their factorization split the correlation
//! matrix of a triple into two halves with signed 2x2 minors.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::linext::{for_each_extension, LinearExtension};
use crate::matrix::{
    diag_prefix_matrix, shift_matrix, upper_ones_matrix, IntMatrix,
};
use crate::poset::{ChainDecomposition, ElementTriple, Poset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("second chain is empty")]
    EmptyChain,
    #[error("truncation {0} too small for a poset on {1} elements")]
    Dim(usize, usize),
    #[error("triple is not normalized: need z1 < z2 < z3 in the order")]
    NotNormalized,
}

/// What a single position of the minimal extension contributes to the
/// product: `S` for a first-chain element, `W_{inc+1} T` for a second-chain
/// element, and a bare `W_{inc+1}` for the second chain's top.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    FirstChain,
    SecondChain { inc: usize },
    SecondChainTop { inc: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSequence {
    steps: Vec<StepKind>,
    poset_size: usize,
}

impl StepSequence {
    pub fn steps(&self) -> &[StepKind] {
        &self.steps
    }

    /// Position of the second chain's top in the minimal extension.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn poset_size(&self) -> usize {
        self.poset_size
    }
}

/// The unique extension giving the smallest possible values to the second
/// chain: at every step the second chain's next element is placed if it is
/// available.
pub fn minimal_extension(p: &Poset, d: &ChainDecomposition) -> LinearExtension {
    let n = p.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u32;
    let mut next1 = 0usize; // index into d.chain1()
    let mut next2 = 0usize;
    let is_free = |x: usize, placed: u32, p: &Poset| p.below_mask(x) & !placed == 0;
    for _ in 0..n {
        let cand2 = d.chain2().get(next2).copied();
        let cand1 = d.chain1().get(next1).copied();
        let x = match (cand2, cand1) {
            (Some(b), _) if is_free(b, placed, p) => {
                next2 += 1;
                b
            }
            (_, Some(a)) if is_free(a, placed, p) => {
                next1 += 1;
                a
            }
            _ => unreachable!("one chain head is always available in a chain partition"),
        };
        placed |= 1 << x;
        order.push(x);
    }
    LinearExtension::from_order(p, order).expect("greedy order is a linear extension")
}

/// The step kinds for positions `1..=d` of the minimal extension, where `d`
/// is the position of the second chain's top. Incomparability counts are
/// taken in the full poset.
pub fn step_sequence(p: &Poset, d: &ChainDecomposition) -> Result<StepSequence, ProfileError> {
    let b = d.b();
    if b == 0 {
        return Err(ProfileError::EmptyChain);
    }
    let lmin = minimal_extension(p, d);
    let top = d.beta(b);
    let dpos = lmin.position(top);
    let steps = (1..=dpos)
        .map(|t| {
            let x = lmin.element_at(t);
            if d.in_chain1(x) {
                StepKind::FirstChain
            } else if x == top {
                StepKind::SecondChainTop { inc: p.inc_count(x) }
            } else {
                StepKind::SecondChain { inc: p.inc_count(x) }
            }
        })
        .collect();
    Ok(StepSequence {
        steps,
        poset_size: p.n(),
    })
}

/// The generator matrix of one step at the given truncation.
pub fn step_matrix(kind: StepKind, dim: usize) -> IntMatrix {
    match kind {
        StepKind::FirstChain => shift_matrix(dim),
        StepKind::SecondChain { inc } => diag_prefix_matrix(dim, inc + 1)
            .mul(&upper_ones_matrix(dim))
            .expect("square dims match"),
        StepKind::SecondChainTop { inc } => diag_prefix_matrix(dim, inc + 1),
    }
}

/// Ordered product of the step matrices, multiplied right to left so every
/// intermediate is a profile matrix of a smaller poset; its support stays
/// inside the truncation and no boundary columns are corrupted.
pub fn profile_matrix_product(seq: &StepSequence, dim: usize) -> Result<IntMatrix, ProfileError> {
    if seq.is_empty() {
        return Err(ProfileError::EmptyChain);
    }
    if dim < seq.poset_size() + 2 {
        return Err(ProfileError::Dim(dim, seq.poset_size()));
    }
    let mut iter = seq.steps().iter().rev();
    let mut acc = step_matrix(*iter.next().expect("nonempty"), dim);
    for kind in iter {
        acc = step_matrix(*kind, dim)
            .mul(&acc)
            .expect("square dims match");
    }
    Ok(acc)
}

/// The profile matrix counted directly from the extension stream.
pub fn profile_matrix_bruteforce(
    p: &Poset,
    d: &ChainDecomposition,
    dim: usize,
) -> Result<IntMatrix, ProfileError> {
    let b = d.b();
    if b == 0 {
        return Err(ProfileError::EmptyChain);
    }
    if dim < p.n() + 2 {
        return Err(ProfileError::Dim(dim, p.n()));
    }
    let first = d.beta(1);
    let top = d.beta(b);
    let shift = p.less_count(top);
    let mut m = IntMatrix::zeros(dim, dim);
    let one = BigInt::one();
    for_each_extension(p, |l| {
        let i = l.position(first);
        let j = l.position(top) - shift;
        m.add_to(i, j, &one);
    });
    Ok(m)
}

/// Default truncation for a poset on `n` elements: all nonzero profile
/// indices lie in `[1, n]`, the margin absorbs shift products in identities.
pub fn default_truncation(n: usize) -> usize {
    n + 2
}

/// Gap matrix below the pivot: entry `(i, t)` counts extensions with
/// `L(z1) = t - i` and `L(z2) = t`; rows are offsets `i >= 1`.
pub fn gap_matrix_below(p: &Poset, z1: usize, z2: usize) -> IntMatrix {
    let n = p.n();
    let mut m = IntMatrix::zeros(n, n);
    let one = BigInt::one();
    for_each_extension(p, |l| {
        let t = l.position(z2);
        let i = t as i64 - l.position(z1) as i64;
        if i >= 1 {
            m.add_to(i as usize, t, &one);
        }
    });
    m
}

/// Gap matrix above the pivot: entry `(i, t)` counts extensions with
/// `L(z3) = t + i` and `L(z2) = t`.
pub fn gap_matrix_above(p: &Poset, z2: usize, z3: usize) -> IntMatrix {
    let n = p.n();
    let mut m = IntMatrix::zeros(n, n);
    let one = BigInt::one();
    for_each_extension(p, |l| {
        let t = l.position(z2);
        let i = l.position(z3) as i64 - t as i64;
        if i >= 1 {
            m.add_to(i as usize, t, &one);
        }
    });
    m
}

/// The two induced subposets of the correlation factorization: `below` drops
/// everything strictly above `z2`, `above` drops everything strictly below,
/// and the returned ids are `(z1, z2)` in `below` and `(z2, z3)` in `above`.
pub struct SplitAtPivot {
    pub below: Poset,
    pub below_ids: (usize, usize),
    pub above: Poset,
    pub above_ids: (usize, usize),
    pub pivot_less: usize,
}

pub fn split_at_pivot(p: &Poset, t: &ElementTriple) -> Result<SplitAtPivot, ProfileError> {
    if !p.lt(t.z1, t.z2) || !p.lt(t.z2, t.z3) {
        return Err(ProfileError::NotNormalized);
    }
    let n = p.n();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let (below, below_map) = p.restrict(full & !p.above_mask(t.z2));
    let (above, above_map) = p.restrict(full & !p.below_mask(t.z2));
    Ok(SplitAtPivot {
        below,
        below_ids: (
            below_map[t.z1].expect("z1 not above z2"),
            below_map[t.z2].expect("z2 stays"),
        ),
        above,
        above_ids: (
            above_map[t.z2].expect("z2 stays"),
            above_map[t.z3].expect("z3 not below z2"),
        ),
        pivot_less: p.less_count(t.z2),
    })
}

/// The product `G S^c H^top` of the factorization, as a `max x max` matrix
/// over offsets `i, j >= 1`.
pub fn factorization_product(p: &Poset, t: &ElementTriple) -> Result<IntMatrix, ProfileError> {
    let split = split_at_pivot(p, t)?;
    let g = gap_matrix_below(&split.below, split.below_ids.0, split.below_ids.1);
    let h = gap_matrix_above(&split.above, split.above_ids.0, split.above_ids.1);
    let c = split.pivot_less;
    let n = p.n();
    let mut out = IntMatrix::zeros(n, n);
    for i in 1..=g.rows() {
        for j in 1..=h.rows() {
            let mut sum = BigInt::from(0u8);
            for tt in 1..=g.cols() {
                if tt > c && tt - c <= h.cols() {
                    sum += g.get(i, tt) * h.get(j, tt - c);
                }
            }
            out.set(i, j, sum);
        }
    }
    Ok(out)
}

/// True iff the factorization product reproduces the correlation counts.
pub fn factorization_check(p: &Poset, t: &ElementTriple) -> Result<bool, ProfileError> {
    let product = factorization_product(p, t)?;
    let table = crate::linext::correlation_table(p, None, *t, true);
    let n = p.n();
    for i in 1..=n {
        for j in 1..=n {
            if *product.get(i, j) != table.count(i as i64, j as i64) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
