//! Truncated integer matrices and the cross-product vector relation.
//!
//! The infinite matrices used by the width-two machinery are represented by
//! their top-left `rows x cols` corner with `BigInt` entries. The generator
//! matrices are banded (zero below the first subdiagonal), which makes their
//! infinite products well defined; products themselves may fill lower bands.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    Dim(usize, usize, usize, usize),
}

/// Dense matrix over `BigInt`. Indices in the public accessors are 1-based,
/// matching the semantics of the infinite matrices it truncates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[(i - 1) * self.cols + (j - 1)] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        self.data[(i - 1) * self.cols + (j - 1)] += v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dim(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 1..=self.rows {
            for k in 1..=self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; `v` is indexed from 1 implicitly (slice index 0
    /// holds entry 1).
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length must match cols");
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                let a = self.get(i, j);
                if !a.is_zero() && !v[j - 1].is_zero() {
                    out[i - 1] += a * &v[j - 1];
                }
            }
        }
        out
    }

    /// True iff every entry below the first subdiagonal is zero.
    pub fn is_banded(&self) -> bool {
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                if i > j + 1 && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Equality of the top-left `size x size` blocks.
    pub fn eq_block(&self, rhs: &IntMatrix, size: usize) -> bool {
        if size > self.rows.min(rhs.rows) || size > self.cols.min(rhs.cols) {
            return false;
        }
        for i in 1..=size {
            for j in 1..=size {
                if self.get(i, j) != rhs.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// 2x2 minor on rows `i < k`, columns `j < l` (1-based).
    pub fn minor2(&self, i: usize, k: usize, j: usize, l: usize) -> BigInt {
        self.get(i, j) * self.get(k, l) - self.get(i, l) * self.get(k, j)
    }
}

/// Shift matrix `S`: ones on the first subdiagonal (`i = j + 1`).
pub fn shift_matrix(dim: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for j in 1..dim {
        m.set(j + 1, j, BigInt::one());
    }
    m
}

/// Upper-ones matrix `T`: ones on and above the diagonal (`i <= j`).
pub fn upper_ones_matrix(dim: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 1..=dim {
        for j in i..=dim {
            m.set(i, j, BigInt::one());
        }
    }
    m
}

/// Diagonal prefix matrix `W_k`: ones at `i = j <= k`; `k = 0` is the zero
/// matrix.
pub fn diag_prefix_matrix(dim: usize, k: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 1..=dim.min(k) {
        m.set(i, i, BigInt::one());
    }
    m
}

/// `U = I - W_1`: the identity with the `(1, 1)` entry zeroed.
pub fn punctured_identity(dim: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, dim);
    for i in 2..=dim {
        m.set(i, i, BigInt::one());
    }
    m
}

/// A vector of nonnegative integers is admissible when its support is a
/// contiguous interval (possibly empty).
pub fn is_admissible(v: &[BigInt]) -> bool {
    if v.iter().any(|c| c.is_negative()) {
        return false;
    }
    let first = v.iter().position(|c| !c.is_zero());
    let last = v.iter().rposition(|c| !c.is_zero());
    match (first, last) {
        (Some(f), Some(l)) => v[f..=l].iter().all(|c| !c.is_zero()),
        _ => true,
    }
}

/// The cross-product relation: `v <=cc w` iff every determinant
/// `v[i] w[j] - v[j] w[i]` with `i <= j` is nonnegative. Exact integer
/// cross-multiplication, no division.
pub fn cross_leq(v: &[BigInt], w: &[BigInt]) -> bool {
    assert_eq!(v.len(), w.len(), "vectors must have equal length");
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            if &v[i] * &w[j] < &v[j] * &w[i] {
                return false;
            }
        }
    }
    true
}

/// Expected sign for a minor scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorSign {
    NonNegative,
    NonPositive,
}

/// Scans all 2x2 minors (rows `i < k`, columns `j < l`, lexicographic by
/// `(i, j, k, l)`) and returns the first violation of the expected sign.
pub fn minor_sign_scan(
    m: &IntMatrix,
    expected: MinorSign,
) -> Option<(usize, usize, usize, usize)> {
    for i in 1..=m.rows() {
        for j in 1..=m.cols() {
            for k in i + 1..=m.rows() {
                for l in j + 1..=m.cols() {
                    let det = m.minor2(i, k, j, l);
                    let bad = match expected {
                        MinorSign::NonNegative => det.is_negative(),
                        MinorSign::NonPositive => det.is_positive(),
                    };
                    if bad {
                        return Some((i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// Scans all `order x order` minors of the block `[1..=rows] x [1..=cols]`
/// and returns the first violating row/column index sets. Used by the
/// total-positivity search, where 3x3 violations are expected findings.
pub fn minor_sign_scan_order(
    m: &IntMatrix,
    order: usize,
    expected: MinorSign,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if order > m.rows() || order > m.cols() {
        return None;
    }
    for rows in index_combinations(m.rows(), order) {
        for cols in index_combinations(m.cols(), order) {
            let det = det_of_submatrix(m, &rows, &cols);
            let bad = match expected {
                MinorSign::NonNegative => det.is_negative(),
                MinorSign::NonPositive => det.is_positive(),
            };
            if bad {
                return Some((rows, cols));
            }
        }
    }
    None
}

/// All ascending `k`-subsets of `1..=n`, lexicographic.
fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        while i > 0 && cur[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn det_of_submatrix(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    // Laplace expansion; orders here are at most 3 or 4.
    let k = rows.len();
    if k == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let mut det = BigInt::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = det_of_submatrix(m, &rows[1..], &sub_cols);
        let term = m.get(rows[0], c) * sub;
        if idx % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}
