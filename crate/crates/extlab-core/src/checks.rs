//! Executable inequality and equality checks with exact verdicts.
//!
//! Each check compares arbitrary-precision counts (or `q`-polynomials,
//! coefficient-wise) and reports the first violation as a replayable witness.
//! Theorem-backed checks are expected to hold on their stated domains;
//! conjecture checks treat violations as findings, not failures.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linext::{
    correlation_table, extension_count_bound, for_each_extension, pair_gap_vector,
    position_histogram, CorrelationTable, ForwardEvent, OracleError, PairGapVector,
};
use crate::poset::{ChainDecomposition, ElementTriple, Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("index precondition violated")]
    Index,
}

/// Outcome of a single check: `holds`, with the first violating instance
/// (indices plus the two compared values) when it does not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

impl Verdict {
    pub fn ok() -> Verdict {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn violated(indices: Vec<i64>, lhs: impl ToString, rhs: impl ToString) -> Verdict {
        Verdict {
            holds: false,
            witness: Some(Witness {
                indices,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }),
        }
    }

    fn and(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.holds {
            next()
        } else {
            self
        }
    }
}

/// A violation found by a sweep, with enough context to replay it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub poset: Poset,
    pub chains: Option<ChainDecomposition>,
    pub triple: Option<ElementTriple>,
    pub indices: Vec<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Cross-product inequality at one cell:
/// `F(k,l) F(k+1,l+1) <= F(k,l+1) F(k+1,l)` at `q = 1`.
pub fn check_cpc(table: &CorrelationTable, k: i64, l: i64) -> Verdict {
    let lhs = table.count(k, l) * table.count(k + 1, l + 1);
    let rhs = table.count(k, l + 1) * table.count(k + 1, l);
    if lhs <= rhs {
        Verdict::ok()
    } else {
        Verdict::violated(vec![k, l], lhs, rhs)
    }
}

/// Cross-product inequality over every `k, l >= 1` touching the support.
pub fn check_cpc_all(table: &CorrelationTable) -> Verdict {
    let (imax, jmax) = support_box(table);
    for k in 1..=imax {
        for l in 1..=jmax {
            let v = check_cpc(table, k, l);
            if !v.holds {
                return v;
            }
        }
    }
    Verdict::ok()
}

/// Generalized cross-product inequality:
/// `F(i,j) F(k,l) <= F(i,l) F(k,j)` for `i <= k`, `j <= l`; in unsigned mode
/// all four indices must be positive.
pub fn check_gcpc(
    table: &CorrelationTable,
    i: i64,
    j: i64,
    k: i64,
    l: i64,
    signed: bool,
) -> Result<Verdict, CheckError> {
    if i > k || j > l || (!signed && (i < 1 || j < 1)) {
        return Err(CheckError::Index);
    }
    let lhs = table.count(i, j) * table.count(k, l);
    let rhs = table.count(i, l) * table.count(k, j);
    Ok(if lhs <= rhs {
        Verdict::ok()
    } else {
        Verdict::violated(vec![i, j, k, l], lhs, rhs)
    })
}

/// Generalized cross-product inequality over all index quadruples with
/// support; it suffices to scan pairs of support cells, since a vanishing
/// left side makes the inequality trivial.
///
/// In signed mode the scan covers the three sign patterns on which the
/// inequality actually holds for width-two posets: all indices positive,
/// all indices negative (the reversed-triple image of the former), and the
/// mixed quadrant `i, j < 0 < k, l` that the correlation-gap expansion of
/// the positive-correlation inequality consumes. Outside these patterns the
/// claim is false: see the pinned counterexample test.
pub fn check_gcpc_all(table: &CorrelationTable, signed: bool) -> Verdict {
    let cells: Vec<(i64, i64)> = table
        .support()
        .filter(|((i, j), _)| signed || (*i >= 1 && *j >= 1))
        .map(|(c, _)| c)
        .collect();
    for &(i, j) in &cells {
        for &(k, l) in &cells {
            if i > k || j > l {
                continue;
            }
            let in_scope = (i > 0 && j > 0)
                || (k < 0 && l < 0)
                || (i < 0 && j < 0 && k > 0 && l > 0);
            if !in_scope {
                continue;
            }
            let v = check_gcpc(table, i, j, k, l, signed).expect("indices are ordered");
            if !v.holds {
                return v;
            }
        }
    }
    Verdict::ok()
}

/// `q`-cross-product inequality at one cell, coefficient-wise:
/// `F_q(k,l) F_q(k+1,l+1) <= F_q(k,l+1) F_q(k+1,l)`.
pub fn check_qcpc(table: &CorrelationTable, k: i64, l: i64) -> Verdict {
    let lhs = &table.get(k, l) * &table.get(k + 1, l + 1);
    let rhs = &table.get(k, l + 1) * &table.get(k + 1, l);
    if lhs.le(&rhs) {
        Verdict::ok()
    } else {
        Verdict::violated(vec![k, l], lhs, rhs)
    }
}

pub fn check_qcpc_all(table: &CorrelationTable) -> Verdict {
    let (imax, jmax) = support_box(table);
    for k in 1..=imax {
        for l in 1..=jmax {
            let v = check_qcpc(table, k, l);
            if !v.holds {
                return v;
            }
        }
    }
    Verdict::ok()
}

fn support_box(table: &CorrelationTable) -> (i64, i64) {
    let mut imax = 0;
    let mut jmax = 0;
    for ((i, j), _) in table.unsigned_support() {
        imax = imax.max(i);
        jmax = jmax.max(j);
    }
    (imax + 1, jmax + 1)
}

/// Kahn-Saks log-concavity at one index: `F(k)^2 >= F(k-1) F(k+1)` for
/// `k > 1`; coefficient-wise on the `q`-polynomials in `q_mode`.
pub fn check_kahn_saks(v: &PairGapVector, k: i64, q_mode: bool) -> Result<Verdict, CheckError> {
    if k <= 1 {
        return Err(CheckError::Index);
    }
    Ok(if q_mode {
        let lhs = &v.get(k - 1) * &v.get(k + 1);
        let rhs = &v.get(k) * &v.get(k);
        if lhs.le(&rhs) {
            Verdict::ok()
        } else {
            Verdict::violated(vec![k], lhs, rhs)
        }
    } else {
        let lhs = v.count(k - 1) * v.count(k + 1);
        let rhs = v.count(k) * v.count(k);
        if lhs <= rhs {
            Verdict::ok()
        } else {
            Verdict::violated(vec![k], lhs, rhs)
        }
    })
}

/// Kahn-Saks log-concavity over every `k >= 2` touching the support.
pub fn check_kahn_saks_all(v: &PairGapVector, q_mode: bool) -> Verdict {
    let kmax = v.support().map(|(k, _)| k).max().unwrap_or(0) + 1;
    for k in 2..=kmax {
        let verdict = check_kahn_saks(v, k, q_mode).expect("k >= 2");
        if !verdict.holds {
            return verdict;
        }
    }
    Verdict::ok()
}

/// The reduction of Kahn-Saks to the cross-product inequality: adjoin an
/// element `y` incomparable to everything, then
/// `F_P(k+l-1; x,z) = F_Q(k,l; x,y,z)` for all `k, l >= 1`, and the
/// cross-product instance on `Q` at `(k, l)` is literally the Kahn-Saks
/// instance on `P` at `k + l`.
pub fn kahn_saks_reduction(p: &Poset, x: usize, z: usize) -> Result<Verdict, CheckError> {
    if x == z || x >= p.n() || z >= p.n() {
        return Err(CheckError::Index);
    }
    let (q, y) = p.adjoin_incomparable();
    let gaps = pair_gap_vector(p, None, x, z);
    // F_Q(k, l; x, y, z) counts L(z)-L(y) = k and L(y)-L(x) = l, which is
    // the (l, k) entry of the correlation table on the triple (x, y, z).
    let table = correlation_table(&q, None, ElementTriple::new(x, y, z).expect("distinct"), true);
    let n = p.n() as i64;
    let identity = || -> Verdict {
        for k in 1..=n + 1 {
            for l in 1..=n + 1 {
                let lhs = gaps.count(k + l - 1);
                let rhs = table.count(l, k);
                if lhs != rhs {
                    return Verdict::violated(vec![k, l], lhs, rhs);
                }
            }
        }
        Verdict::ok()
    };
    let translation = || -> Verdict {
        for k in 1..=n {
            for l in 1..=n {
                let cpc_lhs = table.count(l, k) * table.count(l + 1, k + 1);
                let ks_lhs = gaps.count(k + l - 1) * gaps.count(k + l + 1);
                if cpc_lhs != ks_lhs {
                    return Verdict::violated(vec![k, l, 0], cpc_lhs, ks_lhs);
                }
                let cpc_rhs = table.count(l + 1, k) * table.count(l, k + 1);
                let ks_rhs = gaps.count(k + l) * gaps.count(k + l);
                if cpc_rhs != ks_rhs {
                    return Verdict::violated(vec![k, l, 1], cpc_rhs, ks_rhs);
                }
            }
        }
        Verdict::ok()
    };
    Ok(identity().and(translation))
}

/// Stanley log-concavity of a position histogram (index 0 unused):
/// `h[i]^2 >= h[i-1] h[i+1]` for all interior `i`.
pub fn check_stanley(hist: &[BigInt]) -> Verdict {
    for i in 1..hist.len().saturating_sub(1) {
        let lhs = &hist[i - 1] * &hist[i + 1];
        let rhs = &hist[i] * &hist[i];
        if lhs > rhs {
            return Verdict::violated(vec![i as i64], lhs, rhs);
        }
    }
    Verdict::ok()
}

/// The equality refinement of Stanley's inequality: at every index with a
/// nonzero count, equality forces the two neighbors to match it.
pub fn stanley_equality_pattern(hist: &[BigInt]) -> Verdict {
    for i in 1..hist.len().saturating_sub(1) {
        if hist[i].is_zero() {
            continue;
        }
        let prod = &hist[i - 1] * &hist[i + 1];
        let sq = &hist[i] * &hist[i];
        if prod == sq && !(hist[i - 1] == hist[i] && hist[i + 1] == hist[i]) {
            return Verdict::violated(
                vec![i as i64],
                format!("{} {} {}", hist[i - 1], hist[i], hist[i + 1]),
                "equal neighbors",
            );
        }
    }
    Verdict::ok()
}

/// Which of the four degeneracies explain a cross-product equality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EqualityCases {
    /// `F(k,l) = F(k+1,l)` and `F(k,l+1) = F(k+1,l+1)`.
    pub row_constant: bool,
    /// `F(k,l) = F(k,l+1)` and `F(k+1,l) = F(k+1,l+1)`.
    pub col_constant: bool,
    /// `F(k+1,l) F(k,l+1) = 0`.
    pub zero_side: bool,
    /// The pivot has the same position in every extension.
    pub pivot_frozen: bool,
}

impl EqualityCases {
    pub fn any(&self) -> bool {
        self.row_constant || self.col_constant || self.zero_side || self.pivot_frozen
    }

    pub fn label(&self) -> String {
        let mut out = String::new();
        for (flag, name) in [
            (self.row_constant, "a"),
            (self.col_constant, "b"),
            (self.zero_side, "c"),
            (self.pivot_frozen, "d"),
        ] {
            if flag {
                out.push_str(name);
            }
        }
        if out.is_empty() {
            out.push_str("none");
        }
        out
    }
}

/// Full classification of one cross-product equality instance.
#[derive(Clone, Debug)]
pub struct EqualityClassification {
    pub cases: EqualityCases,
    pub equality: bool,
    pub q_equality: bool,
    /// Whether the asymmetric variant of the `q`-equality (with the last
    /// factor `F_q(k+1,l+1)` in place of `F_q(k+1,l)`) agrees with the
    /// symmetric one on this instance; recorded for diagnostics.
    pub asymmetric_q_form_agrees: bool,
    /// Theorem verdict: equality iff some case applies, and iff the
    /// `q`-equality holds. Meaningful for width-two posets.
    pub verdict: Verdict,
}

/// Reusable classifier for one `(poset, triple)`: the signed `q`-table and
/// the frozen-pivot flag are computed once, then any `(k, l)` cell can be
/// classified.
pub struct EqualityScanner {
    table: CorrelationTable,
    pivot_frozen: bool,
    n: i64,
}

impl EqualityScanner {
    pub fn new(p: &Poset, d: Option<&ChainDecomposition>, t: &ElementTriple) -> EqualityScanner {
        let table = correlation_table(p, d, *t, true);
        EqualityScanner::from_table(table, p, t)
    }

    pub fn from_table(table: CorrelationTable, p: &Poset, t: &ElementTriple) -> EqualityScanner {
        let hist = position_histogram(p, t.z2);
        let pivot_frozen = hist.iter().filter(|c| !c.is_zero()).count() == 1;
        EqualityScanner {
            table,
            pivot_frozen,
            n: p.n() as i64,
        }
    }

    pub fn table(&self) -> &CorrelationTable {
        &self.table
    }

    pub fn cases(&self, k: i64, l: i64) -> EqualityCases {
        let f = |i, j| self.table.count(i, j);
        EqualityCases {
            row_constant: f(k, l) == f(k + 1, l) && f(k, l + 1) == f(k + 1, l + 1),
            col_constant: f(k, l) == f(k, l + 1) && f(k + 1, l) == f(k + 1, l + 1),
            zero_side: (f(k + 1, l) * f(k, l + 1)).is_zero(),
            pivot_frozen: self.pivot_frozen,
        }
    }

    pub fn classify(&self, k: i64, l: i64) -> Result<EqualityClassification, CheckError> {
        if k < 1 || l < 1 || k > self.n - 1 || l > self.n - 1 {
            return Err(CheckError::Index);
        }
        let cases = self.cases(k, l);
        let table = &self.table;
        let equality = table.count(k, l) * table.count(k + 1, l + 1)
            == table.count(k, l + 1) * table.count(k + 1, l);
        let q_lhs = &table.get(k, l) * &table.get(k + 1, l + 1);
        let q_rhs = &table.get(k, l + 1) * &table.get(k + 1, l);
        let q_equality = q_lhs == q_rhs;
        let q_rhs_asym = &table.get(k, l + 1) * &table.get(k + 1, l + 1);
        let asymmetric_q_form_agrees = (q_lhs == q_rhs_asym) == q_equality;
        let verdict = if equality != cases.any() {
            Verdict::violated(
                vec![k, l],
                format!("equality={equality}"),
                format!("cases={}", cases.label()),
            )
        } else if equality != q_equality {
            Verdict::violated(
                vec![k, l],
                format!("equality={equality}"),
                format!("q_equality={q_equality}"),
            )
        } else {
            Verdict::ok()
        };
        Ok(EqualityClassification {
            cases,
            equality,
            q_equality,
            asymmetric_q_form_agrees,
            verdict,
        })
    }
}

/// Case detection independent of any width assumption (the width-three
/// counterexample sweep relies on this).
pub fn equality_cases(p: &Poset, t: &ElementTriple, k: i64, l: i64) -> (EqualityCases, bool) {
    let scanner = EqualityScanner::new(p, None, t);
    let cases = scanner.cases(k, l);
    let table = scanner.table();
    let equality = table.count(k, l) * table.count(k + 1, l + 1)
        == table.count(k, l + 1) * table.count(k + 1, l);
    (cases, equality)
}

/// Classifies a cross-product equality instance on a width-two poset (the
/// decomposition witnesses the width bound and fixes the `q`-weights).
/// Valid index range is `1 <= k, l <= n-1`.
pub fn classify_cpc_equality(
    p: &Poset,
    d: &ChainDecomposition,
    t: &ElementTriple,
    k: i64,
    l: i64,
) -> Result<EqualityClassification, CheckError> {
    EqualityScanner::new(p, Some(d), t).classify(k, l)
}

/// Positive correlation of two forward events:
/// `Pr[A and B] >= Pr[A] Pr[B]`, compared exactly as
/// `|A and B| e(P) >= |A| |B|`.
pub fn check_gyy(
    p: &Poset,
    _d: &ChainDecomposition,
    a: &ForwardEvent,
    b: &ForwardEvent,
) -> Verdict {
    let mut total = 0u64;
    let mut ca = 0u64;
    let mut cb = 0u64;
    let mut cab = 0u64;
    for_each_extension(p, |l| {
        total += 1;
        let ha = a.holds(l);
        let hb = b.holds(l);
        ca += ha as u64;
        cb += hb as u64;
        cab += (ha && hb) as u64;
    });
    let lhs = BigInt::from(ca) * BigInt::from(cb);
    let rhs = BigInt::from(cab) * BigInt::from(total);
    if lhs <= rhs {
        Verdict::ok()
    } else {
        Verdict::violated(vec![], lhs, rhs)
    }
}

/// Sweeps every pair of forward events with at most `max_atoms` atoms each;
/// returns the first violation. The second result is the number of event
/// pairs checked.
pub fn gyy_sweep(
    p: &Poset,
    d: &ChainDecomposition,
    max_atoms: usize,
) -> (Option<Violation>, u64) {
    let atoms: Vec<(usize, usize)> = (1..=d.a())
        .flat_map(|i| (1..=d.b()).map(move |j| (i, j)))
        .collect();
    // satisfaction bitset per atom over the extension stream
    let mut total = 0u64;
    let mut masks: Vec<Vec<u64>> = vec![Vec::new(); atoms.len()];
    let elems: Vec<(usize, usize)> = atoms
        .iter()
        .map(|&(i, j)| (d.alpha(i), d.beta(j)))
        .collect();
    for_each_extension(p, |l| {
        let slot = (total / 64) as usize;
        let bit = total % 64;
        for (idx, &(x, y)) in elems.iter().enumerate() {
            if masks[idx].len() <= slot {
                masks[idx].push(0);
            }
            if l.position(x) < l.position(y) {
                masks[idx][slot] |= 1 << bit;
            }
        }
        total += 1;
    });
    let slots = total.div_ceil(64) as usize;
    for m in &mut masks {
        m.resize(slots, 0);
    }
    // events: all atom subsets of size <= max_atoms, as index lists
    let mut events: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_atoms {
        let mut next = Vec::new();
        for e in &frontier {
            let start = e.last().map_or(0, |&x| x + 1);
            for idx in start..atoms.len() {
                let mut bigger = e.clone();
                bigger.push(idx);
                next.push(bigger);
            }
        }
        events.extend(next.iter().cloned());
        frontier = next;
    }
    let event_mask = |e: &[usize]| -> Vec<u64> {
        let mut m = vec![u64::MAX; slots];
        if slots > 0 && total % 64 != 0 {
            m[slots - 1] = (1u64 << (total % 64)) - 1;
        }
        for &idx in e {
            for s in 0..slots {
                m[s] &= masks[idx][s];
            }
        }
        m
    };
    let popcount = |m: &[u64]| -> u64 { m.iter().map(|w| w.count_ones() as u64).sum() };
    let event_masks: Vec<Vec<u64>> = events.iter().map(|e| event_mask(e)).collect();
    let counts: Vec<u64> = event_masks.iter().map(|m| popcount(m)).collect();
    let mut pairs = 0u64;
    for ia in 0..events.len() {
        for ib in ia..events.len() {
            pairs += 1;
            let inter: u64 = event_masks[ia]
                .iter()
                .zip(&event_masks[ib])
                .map(|(x, y)| (x & y).count_ones() as u64)
                .sum();
            let lhs = BigInt::from(counts[ia]) * BigInt::from(counts[ib]);
            let rhs = BigInt::from(inter) * BigInt::from(total);
            if lhs > rhs {
                return (
                    Some(Violation {
                        poset: p.clone(),
                        chains: Some(d.clone()),
                        triple: None,
                        indices: atom_indices(&events[ia], &events[ib], &atoms),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    }),
                    pairs,
                );
            }
        }
    }
    (None, pairs)
}

fn atom_indices(a: &[usize], b: &[usize], atoms: &[(usize, usize)]) -> Vec<i64> {
    let mut out = Vec::new();
    for &idx in a {
        out.push(atoms[idx].0 as i64);
        out.push(atoms[idx].1 as i64);
    }
    out.push(0);
    for &idx in b {
        out.push(atoms[idx].0 as i64);
        out.push(atoms[idx].1 as i64);
    }
    out
}

/// The positive-correlation inequality for position comparisons:
/// `Pr[L(x)<L(y), L(x)<L(z)] >= Pr[L(x)<L(y)] Pr[L(x)<L(z)]`; strict when
/// `{x, y, z}` is an antichain and `strict_if_antichain` is set.
pub fn check_xyz(
    p: &Poset,
    x: usize,
    y: usize,
    z: usize,
    strict_if_antichain: bool,
) -> Verdict {
    let mut total = 0u64;
    let mut cy = 0u64;
    let mut cz = 0u64;
    let mut cyz = 0u64;
    for_each_extension(p, |l| {
        total += 1;
        let hy = l.position(x) < l.position(y);
        let hz = l.position(x) < l.position(z);
        cy += hy as u64;
        cz += hz as u64;
        cyz += (hy && hz) as u64;
    });
    let lhs = BigInt::from(cy) * BigInt::from(cz);
    let rhs = BigInt::from(cyz) * BigInt::from(total);
    let antichain =
        !p.comparable(x, y) && !p.comparable(x, z) && !p.comparable(y, z);
    let ok = if strict_if_antichain && antichain {
        lhs < rhs
    } else {
        lhs <= rhs
    };
    if ok {
        Verdict::ok()
    } else {
        Verdict::violated(vec![x as i64, y as i64, z as i64], lhs, rhs)
    }
}

/// Recomputes the gap of the positive-correlation inequality as the quadrant
/// sum of signed generalized cross-product differences:
/// the sum of `F(i,l) F(k,j) - F(i,j) F(k,l)` over `i, j < 0 < k, l` equals
/// `|A and B| e(P) - |A| |B|` scaled by one, and on width-two posets every
/// term is nonnegative.
pub fn xyz_gap_decomposition(
    p: &Poset,
    x: usize,
    y: usize,
    z: usize,
) -> Result<Verdict, CheckError> {
    // width-two hypothesis, witnessed by a decomposition
    let _ = p.chain_decomposition_width_two()?;
    let t = ElementTriple::new(y, x, z).map_err(|_| CheckError::Index)?;
    let table = correlation_table(p, None, t, true);
    let mut lo_i = 0;
    let mut hi_k = 0;
    let mut lo_j = 0;
    let mut hi_l = 0;
    for ((i, j), _) in table.support() {
        lo_i = lo_i.min(i);
        hi_k = hi_k.max(i);
        lo_j = lo_j.min(j);
        hi_l = hi_l.max(j);
    }
    let mut sum = BigInt::zero();
    for i in lo_i..0 {
        for j in lo_j..0 {
            for k in 1..=hi_k {
                for l in 1..=hi_l {
                    let term =
                        table.count(i, l) * table.count(k, j) - table.count(i, j) * table.count(k, l);
                    if term < BigInt::zero() {
                        return Ok(Verdict::violated(
                            vec![i, j, k, l],
                            term.to_string(),
                            "term >= 0",
                        ));
                    }
                    sum += term;
                }
            }
        }
    }
    // direct gap: |A and B| e(P) - |A| |B| with A = {L(x)<L(y)}, B = {L(x)<L(z)}
    let mut total = 0u64;
    let mut cy = 0u64;
    let mut cz = 0u64;
    let mut cyz = 0u64;
    for_each_extension(p, |l| {
        total += 1;
        let hy = l.position(x) < l.position(y);
        let hz = l.position(x) < l.position(z);
        cy += hy as u64;
        cz += hz as u64;
        cyz += (hy && hz) as u64;
    });
    let direct = BigInt::from(cyz) * BigInt::from(total) - BigInt::from(cy) * BigInt::from(cz);
    Ok(if sum == direct {
        Verdict::ok()
    } else {
        Verdict::violated(vec![], sum, direct)
    })
}

/// Exhaustive general-poset cross-product search: runs the plain inequality
/// over every naturally labeled poset on up to `max_n` elements and every
/// triple ordered in the poset. Violations are findings about the open
/// conjecture, not errors. Returns the findings and the instance count.
pub fn search_general_cpc(max_n: usize, cap: u64) -> (Vec<Violation>, u64) {
    let mut findings = Vec::new();
    let mut instances = 0u64;
    for n in 3..=max_n {
        for p in crate::generate::naturally_labeled_posets(n) {
            if extension_count_bound(&p) > cap as u128 {
                continue;
            }
            for z1 in 0..n {
                for z2 in 0..n {
                    for z3 in 0..n {
                        if z1 == z2 || z1 == z3 || z2 == z3 {
                            continue;
                        }
                        if !p.lt(z1, z2) || !p.lt(z2, z3) {
                            continue;
                        }
                        let t = ElementTriple::new(z1, z2, z3).expect("distinct");
                        let table = correlation_table(&p, None, t, true);
                        instances += 1;
                        let v = check_cpc_all(&table);
                        if !v.holds {
                            let w = v.witness.expect("violated");
                            findings.push(Violation {
                                poset: p.clone(),
                                chains: None,
                                triple: Some(t),
                                indices: w.indices,
                                lhs: w.lhs,
                                rhs: w.rhs,
                            });
                        }
                    }
                }
            }
        }
    }
    (findings, instances)
}

/// Scans `order x order` minors of the column-reversed correlation matrix of
/// width-two instances; sign violations are expected findings (the 2x2 level
/// is a theorem, higher orders are not).
pub fn search_tp_minors(max_n: usize, order: usize, cap: u64) -> (Vec<Violation>, u64) {
    use crate::matrix::{minor_sign_scan_order, IntMatrix, MinorSign};
    let mut findings = Vec::new();
    let mut instances = 0u64;
    let posets = crate::generate::width_two_posets_up_to(max_n, max_n.max(10))
        .expect("cap covers max_n");
    for (p, _d) in posets {
        if extension_count_bound(&p) > cap as u128 {
            continue;
        }
        let n = p.n();
        for z1 in 0..n {
            for z2 in 0..n {
                for z3 in 0..n {
                    if z1 == z2 || z1 == z3 || z2 == z3 {
                        continue;
                    }
                    if !p.lt(z1, z2) || !p.lt(z2, z3) {
                        continue;
                    }
                    let t = ElementTriple::new(z1, z2, z3).expect("distinct");
                    let table = correlation_table(&p, None, t, true);
                    let mut imax = 0usize;
                    let mut jmax = 0usize;
                    for ((i, j), _) in table.unsigned_support() {
                        imax = imax.max(i as usize);
                        jmax = jmax.max(j as usize);
                    }
                    if imax < order || jmax < order {
                        continue;
                    }
                    instances += 1;
                    let mut rev = IntMatrix::zeros(imax, jmax);
                    for i in 1..=imax {
                        for j in 1..=jmax {
                            rev.set(i, j, table.count(i as i64, (jmax - j + 1) as i64));
                        }
                    }
                    if let Some((rows, cols)) = minor_sign_scan_order(&rev, order, MinorSign::NonNegative)
                    {
                        let mut indices: Vec<i64> = rows.iter().map(|&r| r as i64).collect();
                        indices.extend(cols.iter().map(|&c| c as i64));
                        findings.push(Violation {
                            poset: p.clone(),
                            chains: None,
                            triple: Some(t),
                            indices,
                            lhs: format!("{order}x{order} minor < 0"),
                            rhs: "0".to_string(),
                        });
                    }
                }
            }
        }
    }
    (findings, instances)
}

/// Checks the `q`-cross-product inequality across *every* chain partition of
/// each width-two poset, not just the canonical one; returns findings (none
/// expected) and the instance count.
pub fn search_qcpc_decompositions(max_n: usize, cap: u64) -> (Vec<Violation>, u64) {
    let mut findings = Vec::new();
    let mut instances = 0u64;
    let posets = crate::generate::width_two_posets_up_to(max_n, max_n.max(10))
        .expect("cap covers max_n");
    // dedup relation tables: the same table is generated once per (a, b) but
    // admits many chain partitions, enumerated here from scratch
    let mut seen: Vec<Poset> = Vec::new();
    for (p, _) in posets {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p.clone());
        if extension_count_bound(&p) > cap as u128 {
            continue;
        }
        let n = p.n();
        for mask in 0u32..(1u32 << n) {
            let c1: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let c2: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 0).collect();
            let Ok(d) = ChainDecomposition::new(&p, c1, c2) else {
                continue;
            };
            for z1 in 0..n {
                for z2 in 0..n {
                    for z3 in 0..n {
                        if z1 == z2 || z1 == z3 || z2 == z3 {
                            continue;
                        }
                        if !p.lt(z1, z2) || !p.lt(z2, z3) {
                            continue;
                        }
                        let t = ElementTriple::new(z1, z2, z3).expect("distinct");
                        let table = correlation_table(&p, Some(&d), t, true);
                        instances += 1;
                        let v = check_qcpc_all(&table);
                        if !v.holds {
                            let w = v.witness.expect("violated");
                            findings.push(Violation {
                                poset: p.clone(),
                                chains: Some(d.clone()),
                                triple: Some(t),
                                indices: w.indices,
                                lhs: w.lhs,
                                rhs: w.rhs,
                            });
                        }
                    }
                }
            }
        }
    }
    (findings, instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{naturally_labeled_posets, width_two_posets_up_to};
    use crate::linext::{extension_count, position_pair_table};

    #[test]
    fn cpc_on_zero_table_holds() {
        let p = Poset::chain(3);
        let t = ElementTriple::new(2, 1, 0).unwrap();
        let table = correlation_table(&p, None, t, false);
        assert!(check_cpc(&table, 1, 1).holds);
        assert!(check_cpc_all(&table).holds);
    }

    #[test]
    fn gcpc_index_preconditions() {
        let p = Poset::chain(3);
        let t = ElementTriple::new(0, 1, 2).unwrap();
        let table = correlation_table(&p, None, t, true);
        assert!(check_gcpc(&table, 2, 1, 1, 1, true).is_err());
        assert!(check_gcpc(&table, -1, 1, 1, 1, false).is_err());
        // equal rows give equality
        assert!(check_gcpc(&table, 1, 1, 1, 1, true).unwrap().holds);
    }

    #[test]
    fn kahn_saks_example_and_bounds() {
        let cc = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let v = pair_gap_vector(&cc, None, 0, 1);
        // F(2)^2 = 4 >= F(1) F(3) = 3
        let verdict = check_kahn_saks(&v, 2, false).unwrap();
        assert!(verdict.holds);
        assert!(check_kahn_saks(&v, 1, false).is_err());
        assert!(check_kahn_saks_all(&v, false).holds);
    }

    #[test]
    fn kahn_saks_holds_on_small_general_posets() {
        for n in 2..=5 {
            for p in naturally_labeled_posets(n) {
                for x in 0..n {
                    for y in 0..n {
                        if x != y {
                            let v = pair_gap_vector(&p, None, x, y);
                            assert!(check_kahn_saks_all(&v, false).holds);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_identity_small() {
        for n in 2..=4 {
            for p in naturally_labeled_posets(n) {
                for x in 0..n {
                    for z in 0..n {
                        if x != z {
                            assert!(kahn_saks_reduction(&p, x, z).unwrap().holds);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stanley_checks() {
        let p = Poset::from_cover_relations(3, &[(0, 1)]).unwrap();
        for x in 0..3 {
            let h = position_histogram(&p, x);
            assert!(check_stanley(&h).holds);
            assert!(stanley_equality_pattern(&h).holds);
        }
        let bad = [0, 1, 0, 5]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect::<Vec<_>>();
        assert!(!check_stanley(&bad).holds);
    }

    #[test]
    fn equality_classifier_on_cells() {
        // frozen-pivot series composition: chain 0 < 1 < 2
        let chain = Poset::chain(3);
        let d = ChainDecomposition::new(&chain, vec![0, 1, 2], vec![]).unwrap();
        let t = ElementTriple::new(0, 1, 2).unwrap();
        let cls = classify_cpc_equality(&chain, &d, &t, 1, 1).unwrap();
        assert!(cls.equality && cls.cases.any() && cls.verdict.holds);
        assert!(cls.cases.pivot_frozen);
        assert!(classify_cpc_equality(&chain, &d, &t, 0, 1).is_err());
        assert!(classify_cpc_equality(&chain, &d, &t, 1, 3).is_err());
    }

    #[test]
    fn gyy_small() {
        let cc = Poset::from_cover_relations(4, &[(0, 1), (2, 3)]).unwrap();
        let d = cc.chain_decomposition_width_two().unwrap();
        let sure = ForwardEvent::new(&d, &[]).unwrap();
        assert!(check_gyy(&cc, &d, &sure, &sure).holds);
        let (violation, pairs) = gyy_sweep(&cc, &d, 2);
        assert!(violation.is_none());
        // 1 + 4 + 6 events of at most two atoms, paired without order
        assert_eq!(pairs, 11 * 12 / 2);
    }

    #[test]
    fn xyz_small() {
        for n in 3..=4 {
            for p in naturally_labeled_posets(n) {
                for x in 0..n {
                    for y in 0..n {
                        for z in 0..n {
                            if x != y && x != z && y < z {
                                assert!(check_xyz(&p, x, y, z, true).holds);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn xyz_gap_matches_direct() {
        for (p, _) in width_two_posets_up_to(5, 10).unwrap() {
            let n = p.n();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if x != y && x != z && y < z {
                            assert!(xyz_gap_decomposition(&p, x, y, z).unwrap().holds);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn position_pair_inequality_same_chain() {
        // R(i,j) R(k,l) >= R(i,l) R(k,j) for i <= k, j <= l, when x and z
        // share a chain of the decomposition (the shape the forward-event
        // correlation argument consumes)
        for (p, d) in width_two_posets_up_to(5, 10).unwrap() {
            let n = p.n();
            for x in 0..n {
                for z in 0..n {
                    if x == z {
                        continue;
                    }
                    let same = (d.chain1().contains(&x) && d.chain1().contains(&z))
                        || (d.chain2().contains(&x) && d.chain2().contains(&z));
                    if !same {
                        continue;
                    }
                    let r = position_pair_table(&p, x, z);
                    let cells: Vec<(usize, usize)> = r.keys().copied().collect();
                    for &(i, j) in &cells {
                        for &(k, l) in &cells {
                            if i <= k && j <= l {
                                let get = |a: usize, b: usize| {
                                    r.get(&(a, b)).cloned().unwrap_or_default()
                                };
                                assert!(get(i, j) * get(k, l) >= get(i, l) * get(k, j));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn position_pair_inequality_fails_across_chains() {
        // negative control: the same inequality is false for a pair taken
        // from different chains (x below z, even): the fence 0<1, 0<3, 2<3
        // has R(1,3) R(2,4) = 1 < R(1,4) R(2,3) = 2 for x = 0, z = 3
        let p = Poset::from_cover_relations(4, &[(0, 1), (0, 3), (2, 3)]).unwrap();
        let r = position_pair_table(&p, 0, 3);
        let get = |a: usize, b: usize| r.get(&(a, b)).cloned().unwrap_or_default();
        assert!(get(1, 3) * get(2, 4) < get(1, 4) * get(2, 3));
    }

    #[test]
    fn signed_gcpc_fails_outside_quadrant_scope() {
        // the quantifier "all i <= k, j <= l" cannot include sign patterns
        // beyond the three scanned quadrant families: on the fence poset
        // with triple (2, 0, 1), the instance (-2, 1, 1, 2) violates the
        // inequality even though k, l >= 1
        let p = Poset::from_cover_relations(4, &[(0, 1), (0, 3), (2, 3)]).unwrap();
        let t = ElementTriple::new(2, 0, 1).unwrap();
        let table = correlation_table(&p, None, t, true);
        let v = check_gcpc(&table, -2, 1, 1, 2, true).unwrap();
        assert!(!v.holds);
        // yet the quadrant-scoped sweep holds, here and on every small case
        assert!(check_gcpc_all(&table, true).holds);
    }

    #[test]
    fn searches_find_nothing_tiny() {
        let (findings, instances) = search_general_cpc(4, 1_000_000);
        assert!(findings.is_empty());
        assert!(instances > 0);
        let (findings, _) = search_qcpc_decompositions(4, 1_000_000);
        assert!(findings.is_empty());
        // zero budget keeps the report empty
        let (findings, instances) = search_general_cpc(2, 1_000_000);
        assert!(findings.is_empty());
        assert_eq!(instances, 0);
    }

    #[test]
    fn qcpc_specializes_to_cpc() {
        for (p, d) in width_two_posets_up_to(5, 10).unwrap() {
            let n = p.n();
            for z1 in 0..n {
                for z2 in 0..n {
                    for z3 in 0..n {
                        if z1 == z2 || z1 == z3 || z2 == z3 {
                            continue;
                        }
                        if !p.lt(z1, z2) || !p.lt(z2, z3) {
                            continue;
                        }
                        let t = ElementTriple::new(z1, z2, z3).unwrap();
                        let table = correlation_table(&p, Some(&d), t, true);
                        assert!(check_qcpc_all(&table).holds);
                        assert!(check_cpc_all(&table).holds);
                        assert!(check_gcpc_all(&table, true).holds);
                        let _ = extension_count(&p);
                    }
                }
            }
        }
    }
}
