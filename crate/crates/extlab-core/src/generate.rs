//! Poset generators for exhaustive and randomized sweeps.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{ChainDecomposition, Poset, PosetError};

/// Default cap on `a + b` for the width-two enumeration.
pub const DEFAULT_SIZE_CAP: usize = 10;

/// Every poset on two labeled chains of sizes `a` and `b`, together with that
/// chain decomposition.
///
/// A closed relation set between the chains is determined by two monotone
/// threshold sequences: for each `h`, `up[h]` is the least `k` with
/// `alpha_h < beta_k` (or `b+1`), and `dn[h]` the largest `k` with
/// `beta_k < alpha_h` (or `0`). Validity is exactly `dn[h] < up[h]`
/// pointwise, so the enumeration is already duplicate-free: distinct
/// threshold pairs give distinct relation tables. Note that the *same*
/// abstract poset can still appear under several labelings (e.g. the 3-chain
/// shows up three times for `a = 2, b = 1`); sweeps want exactly that, since
/// q-statistics depend on the decomposition.
///
/// Elements `0..a` form the first chain bottom-up, `a..a+b` the second.
pub fn width_two_posets(
    a: usize,
    b: usize,
    size_cap: usize,
) -> Result<Vec<(Poset, ChainDecomposition)>, PosetError> {
    if a + b > size_cap {
        return Err(PosetError::Cap((a + b) as u64));
    }
    let mut out = Vec::new();
    let mut up = vec![1usize; a];
    let mut dn = vec![0usize; a];
    enum_thresholds(a, b, 0, &mut up, &mut dn, &mut |up, dn| {
        out.push(build_decorated(a, b, up, dn));
    });
    Ok(out)
}

fn enum_thresholds(
    a: usize,
    b: usize,
    h: usize,
    up: &mut Vec<usize>,
    dn: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize], &[usize]),
) {
    if h == a {
        f(up, dn);
        return;
    }
    let up_min = if h == 0 { 1 } else { up[h - 1] };
    let dn_min = if h == 0 { 0 } else { dn[h - 1] };
    for u in up_min..=b + 1 {
        for d in dn_min..u.min(b + 1) {
            up[h] = u;
            dn[h] = d;
            enum_thresholds(a, b, h + 1, up, dn, f);
        }
    }
}

fn build_decorated(a: usize, b: usize, up: &[usize], dn: &[usize]) -> (Poset, ChainDecomposition) {
    let n = a + b;
    let mut rel = vec![0u32; n];
    for h in 1..a {
        rel[h - 1] |= 1 << h; // alpha chain covers; closed below
    }
    for k in 1..b {
        rel[a + k - 1] |= 1 << (a + k);
    }
    for h in 0..a {
        for k in up[h]..=b {
            rel[h] |= 1 << (a + k - 1);
        }
        for k in 1..=dn[h] {
            rel[a + k - 1] |= 1 << h;
        }
    }
    // fixed-point transitive closure; n is tiny
    let mut closed = rel;
    loop {
        let mut changed = false;
        for x in 0..n {
            let mut m = closed[x];
            let mut rest = m;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                m |= closed[y];
            }
            if m != closed[x] {
                closed[x] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let p = Poset::from_closed_rel(n, closed);
    let d = ChainDecomposition::new(&p, (0..a).collect(), (a..n).collect())
        .expect("generated chains are valid");
    (p, d)
}

/// All decorated width-two posets with `a + b == n`, every `(a, b)` split.
pub fn width_two_posets_of_size(
    n: usize,
    size_cap: usize,
) -> Result<Vec<(Poset, ChainDecomposition)>, PosetError> {
    let mut out = Vec::new();
    for a in 0..=n {
        out.extend(width_two_posets(a, n - a, size_cap)?);
    }
    Ok(out)
}

/// All decorated width-two posets with `a + b <= max_n`.
pub fn width_two_posets_up_to(
    max_n: usize,
    size_cap: usize,
) -> Result<Vec<(Poset, ChainDecomposition)>, PosetError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(width_two_posets_of_size(n, size_cap)?);
    }
    Ok(out)
}

/// Every naturally labeled poset on `n` elements: all transitively closed
/// strict orders with `x < y` implying `x < y` as integers. Each isomorphism
/// class appears at least once, so sweeps over this list are exhaustive over
/// abstract posets of that size. Intended for `n <= 7`.
pub fn naturally_labeled_posets(n: usize) -> Vec<Poset> {
    assert!(n <= 12, "exhaustive enumeration is for small n");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let np = pairs.len();
    let mut out = Vec::new();
    'cand: for bits in 0u64..(1u64 << np) {
        let mut rel = vec![0u32; n];
        for (idx, &(x, y)) in pairs.iter().enumerate() {
            if bits >> idx & 1 == 1 {
                rel[x] |= 1 << y;
            }
        }
        // transitivity check: x<y and y<z but not x<z kills the candidate
        for x in 0..n {
            let mut rest = rel[x];
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rel[y] & !rel[x] != 0 {
                    continue 'cand;
                }
            }
        }
        out.push(Poset::from_closed_rel(n, rel));
    }
    out
}

/// Transitive closure of a random DAG on the fixed topological order
/// `0 < 1 < .. < n-1`; each forward pair becomes an edge with probability
/// `edge_prob`. Deterministic per seed.
pub fn random_poset(n: usize, edge_prob: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covers = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen::<f64>() < edge_prob {
                covers.push((x, y));
            }
        }
    }
    Poset::from_cover_relations(n, &covers).expect("forward edges cannot cycle")
}
