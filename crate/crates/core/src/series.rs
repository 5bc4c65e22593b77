//! Truncated power series `c₀ + c₁t + … + c_N t^N` over an arbitrary
//! coefficient ring, with the substitutions `t ↦ t/(1∓t)` that convert
//! between λ- and γ-series.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficient arithmetic used by series and polynomial evaluation.
///
/// The ring is passed by reference so that elements can stay plain data
/// (for presented rings the multiplication table lives in the context).
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, k: &BigInt, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn integer(&self, k: &BigInt) -> Self::Elem {
        self.scale(k, &self.one())
    }
}

/// The integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn scale(&self, k: &BigInt, a: &BigInt) -> BigInt {
        k * a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation mismatch: {0} vs {1}")]
    Truncation(usize, usize),
    #[error("constant term is not the unit")]
    NonUnit,
}

pub const DEFAULT_TRUNCATION: usize = 16;

/// Series truncated after `t^N`; always stores exactly `N + 1` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + Debug> TruncSeries<E> {
    /// Builds a series from leading coefficients, zero-padded or cut to order `n`.
    pub fn from_coeffs<R: CoeffRing<Elem = E>>(ring: &R, mut coeffs: Vec<E>, n: usize) -> Self {
        coeffs.truncate(n + 1);
        while coeffs.len() < n + 1 {
            coeffs.push(ring.zero());
        }
        TruncSeries { coeffs }
    }

    pub fn one<R: CoeffRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_coeffs(ring, vec![ring.one()], n)
    }

    /// `1 + x·t`
    pub fn linear<R: CoeffRing<Elem = E>>(ring: &R, x: E, n: usize) -> Self {
        Self::from_coeffs(ring, vec![ring.one(), x], n)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &E {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn truncate<R: CoeffRing<Elem = E>>(&self, ring: &R, n: usize) -> Self {
        Self::from_coeffs(ring, self.coeffs.clone(), n)
    }

    pub fn is_unit_series<R: CoeffRing<Elem = E>>(&self, ring: &R) -> bool {
        self.coeffs[0] == ring.one()
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !ring.is_zero(c))
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(TruncSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| ring.add(a, b)).collect() })
    }

    pub fn scale_coeffs<R: CoeffRing<Elem = E>>(&self, ring: &R, x: &E) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| ring.mul(x, c)).collect() }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            Err(SeriesError::Truncation(self.order(), other.order()))
        } else {
            Ok(())
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![ring.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Inverse of a unit series by forward substitution.
    pub fn inverse<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Result<Self, SeriesError> {
        if !self.is_unit_series(ring) {
            return Err(SeriesError::NonUnit);
        }
        let n = self.order();
        let mut inv = vec![ring.one()];
        for k in 1..=n {
            let mut acc = ring.zero();
            for i in 1..=k {
                if ring.is_zero(&self.coeffs[i]) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(&self.coeffs[i], &inv[k - i]));
            }
            inv.push(ring.neg(&acc));
        }
        Ok(TruncSeries { coeffs: inv })
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow<R: CoeffRing<Elem = E>>(&self, ring: &R, e: &BigInt) -> Result<Self, SeriesError> {
        let base = if e.is_negative() { self.inverse(ring)? } else { self.clone() };
        let mut e = e.abs();
        let mut acc = Self::one(ring, self.order());
        let mut sq = base;
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                acc = acc.mul(ring, &sq)?;
            }
            e /= &two;
            if !e.is_zero() {
                sq = sq.mul(ring, &sq)?;
            }
        }
        Ok(acc)
    }

    /// γ-series from a λ-series: substitute `t ↦ t/(1−t)`.
    ///
    /// The coefficient of `t^k` is `Σ_{1≤i≤k} C(k−1, k−i)·cᵢ` for `k ≥ 1`.
    pub fn gamma_from_lambda<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        self.substitute(ring, false)
    }

    /// λ-series from a γ-series: substitute `t ↦ t/(1+t)`.
    pub fn lambda_from_gamma<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Self {
        self.substitute(ring, true)
    }

    fn substitute<R: CoeffRing<Elem = E>>(&self, ring: &R, alternating: bool) -> Self {
        let n = self.order();
        let mut out = vec![ring.zero(); n + 1];
        out[0] = self.coeffs[0].clone();
        for k in 1..=n {
            let mut acc = ring.zero();
            for i in 1..=k {
                if ring.is_zero(&self.coeffs[i]) {
                    continue;
                }
                let mut b = binomial(k - 1, k - i);
                if alternating && (k - i) % 2 == 1 {
                    b = -b;
                }
                acc = ring.add(&acc, &ring.scale(&b, &self.coeffs[i]));
            }
            out[k] = acc;
        }
        TruncSeries { coeffs: out }
    }
}

/// `C(n, k)` for machine-sized arguments.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(n, k)` for any integer `n` (upper index may be negative).
pub fn binomial_signed(n: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zs(v: &[i64], n: usize) -> TruncSeries<BigInt> {
        TruncSeries::from_coeffs(&Integers, v.iter().map(|&x| BigInt::from(x)).collect(), n)
    }

    #[test]
    fn product_of_one_plus_and_minus_t() {
        let p = zs(&[1, 1], 6).mul(&Integers, &zs(&[1, -1], 6)).unwrap();
        assert_eq!(p, zs(&[1, 0, -1], 6));
    }

    #[test]
    fn truncation_mismatch() {
        assert_eq!(zs(&[1], 3).mul(&Integers, &zs(&[1], 4)), Err(SeriesError::Truncation(3, 4)));
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(zs(&[1, 1], 5).inverse(&Integers).unwrap(), zs(&[1, -1, 1, -1, 1, -1], 5));
        assert_eq!(zs(&[1, 2, 1], 5).inverse(&Integers).unwrap(), zs(&[1, -2, 3, -4, 5, -6], 5));
        assert_eq!(zs(&[2, 1], 5).inverse(&Integers), Err(SeriesError::NonUnit));
    }

    #[test]
    fn negative_power_is_inverse_power() {
        let s = zs(&[1, 1], 8);
        assert_eq!(s.pow(&Integers, &BigInt::from(-2)).unwrap(), zs(&[1, 2, 1], 8).inverse(&Integers).unwrap());
        assert_eq!(s.pow(&Integers, &BigInt::from(0)).unwrap(), zs(&[1], 8));
    }

    #[test]
    fn substitution_of_a_line() {
        // 1 + xt ↦ 1 + x(t + t² + …) and 1 + x(t − t² + …)
        let g = zs(&[1, 1], 6).gamma_from_lambda(&Integers);
        assert_eq!(g, zs(&[1, 1, 1, 1, 1, 1, 1], 6));
        let l = zs(&[1, 1], 6).lambda_from_gamma(&Integers);
        assert_eq!(l, zs(&[1, 1, -1, 1, -1, 1, -1], 6));
        assert_eq!(zs(&[1], 6).gamma_from_lambda(&Integers), zs(&[1], 6));
    }

    /// Direct substitution oracle: Σ cᵢ (t/(1−t))^i expanded with series arithmetic.
    #[test]
    fn substitution_matches_direct_composition() {
        let n = 9;
        let s = zs(&[1, 3, -2, 5, 0, 7, -1, 2, 4, -3], n);
        let t_over = zs(&[0, 1, 1, 1, 1, 1, 1, 1, 1, 1], n);
        let mut acc = zs(&[0], n);
        let mut power = zs(&[1], n);
        for i in 0..=n {
            let term = power.scale_coeffs(&Integers, s.coeff(i));
            acc = acc.add(&Integers, &term).unwrap();
            power = power.mul(&Integers, &t_over).unwrap();
        }
        assert_eq!(s.gamma_from_lambda(&Integers), acc);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial_signed(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial_signed(&BigInt::from(-2), 2), BigInt::from(3));
        assert_eq!(binomial_signed(&BigInt::from(0), 0), BigInt::from(1));
    }
}
