//! Polynomials in `q` with arbitrary-precision integer coefficients.
//!
//! Sparse representation keyed by exponent; zero coefficients are never
//! stored. Inequalities between polynomials are coefficient-wise: `f <= g`
//! means `g - f` has no negative coefficient.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial in `q` with `BigInt` coefficients and exponents >= 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u64, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn one() -> Self {
        QPolynomial::monomial(0, BigInt::one())
    }

    /// The monomial `c * q^e`.
    pub fn monomial(exp: u64, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        QPolynomial { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        QPolynomial::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: u64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: u64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Value at `q = 1`, i.e. the plain count behind the statistic.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// True iff every coefficient is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Coefficient-wise `self <= other`.
    pub fn le(&self, other: &QPolynomial) -> bool {
        (other.clone() - self.clone()).is_nonneg()
    }

    /// Substitute `q -> 1/q` and renormalize by `q^pivot`, i.e. map the
    /// coefficient at exponent `e` to exponent `pivot - e`. Panics if some
    /// exponent exceeds `pivot`.
    pub fn reflect(&self, pivot: u64) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            assert!(*e <= pivot, "exponent {e} exceeds reflection pivot {pivot}");
            coeffs.insert(pivot - e, c.clone());
        }
        QPolynomial { coeffs }
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: u64) -> QPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, c)| (e + shift, c.clone()))
            .collect();
        QPolynomial { coeffs }
    }

    /// Text form `c0 + c1*q + c2*q^2 + ...` with exponents ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        fmt::write(&mut out, format_args!("{self}")).expect("formatting cannot fail");
        out
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(mut self, rhs: QPolynomial) -> QPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(mut self, rhs: QPolynomial) -> QPolynomial {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &(-c));
        }
        self
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(terms: &[(u64, i64)]) -> QPolynomial {
        let mut p = QPolynomial::zero();
        for (e, c) in terms {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn display_matches_text_form() {
        assert_eq!(poly(&[]).to_text(), "0");
        assert_eq!(poly(&[(0, 3)]).to_text(), "3");
        assert_eq!(poly(&[(0, 1), (1, 2), (3, 1)]).to_text(), "1 + 2*q + 1*q^3");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = poly(&[(2, 5)]) + poly(&[(2, -5), (0, 1)]);
        assert_eq!(p, poly(&[(0, 1)]));
        assert!(poly(&[(4, 1), (4, -1)]).is_zero());
    }

    #[test]
    fn eval_one_and_le() {
        let f = poly(&[(0, 1), (2, 2)]);
        let g = poly(&[(0, 1), (1, 1), (2, 2)]);
        assert_eq!(f.eval_one(), BigInt::from(3));
        assert!(f.le(&g));
        assert!(!g.le(&f));
    }

    #[test]
    fn reflect_swaps_exponents() {
        let f = poly(&[(0, 1), (3, 4)]);
        assert_eq!(f.reflect(5), poly(&[(5, 1), (2, 4)]));
        assert_eq!(f.reflect(5).reflect(5), f);
    }
}
