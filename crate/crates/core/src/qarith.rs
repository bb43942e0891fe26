//! Gaussian binomial coefficients, numerically and as polynomials in `q`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigNat = BigUint;

/// `q^e` as a big natural.
pub fn big_pow(q: u64, e: usize) -> BigNat {
    num_traits::pow(BigUint::from(q), e)
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: usize, q: u64) -> BigNat {
    (0..n).map(|e| big_pow(q, e)).sum()
}

/// Exact `[n choose k]_q` via the telescoping product
/// `prod_{j<k} (q^{n-j} - 1) / (q^{j+1} - 1)`, dividing at every step.
pub fn gauss_binom(n: usize, k: usize, q: u64) -> Result<BigNat> {
    if k > n {
        return Err(Error::BadArgs(format!("k = {k} exceeds n = {n}")));
    }
    if q < 2 {
        return Err(Error::BadArgs(format!("q = {q} < 2")));
    }
    let one = BigUint::one();
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= big_pow(q, n - j) - &one;
        let den = big_pow(q, j + 1) - &one;
        let rem = &acc % &den;
        assert!(rem.is_zero(), "inexact Gaussian binomial step");
        acc /= den;
    }
    Ok(acc)
}

/// `[a choose b]_q` with the convention that it vanishes for `b > a`.
pub fn gauss_binom_or_zero(a: usize, b: usize, q: u64) -> BigNat {
    gauss_binom(a, b, q).unwrap_or_default()
}

/// Polynomial in one indeterminate `q` with natural coefficients; index is
/// the exponent, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<BigNat>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (e, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{c}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{c}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigNat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigUint::one()])
    }

    pub fn coeffs(&self) -> &[BigNat] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![BigUint::zero(); s];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn add(&self, other: &QPoly) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, q: u64) -> BigNat {
        let q = BigUint::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, c| acc * &q + c)
    }
}

/// `[n choose k]` as a polynomial in `q`, built from
/// `[n, k] = q^{n-k} [n-1, k-1] + [n-1, k]`.
pub fn gauss_binom_poly(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::BadArgs(format!("k = {k} exceeds n = {n}")));
    }
    let mut memo = HashMap::new();
    Ok(poly_rec(n, k, &mut memo))
}

fn poly_rec(n: usize, k: usize, memo: &mut HashMap<(usize, usize), QPoly>) -> QPoly {
    if k == 0 || k == n {
        return QPoly::one();
    }
    if let Some(p) = memo.get(&(n, k)) {
        return p.clone();
    }
    let left = poly_rec(n - 1, k - 1, memo).shift(n - k);
    let right = poly_rec(n - 1, k, memo);
    let out = left.add(&right);
    memo.insert((n, k), out.clone());
    out
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dl = den.len();
    assert!(den[dl - 1].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let ql = rem.len() + 1 - dl;
    let mut quot = vec![BigInt::zero(); ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// `[n choose k]` as a polynomial via the product route
/// `prod_{j<k} [n-j]_q / [j+1]_q`, using exact polynomial division. Shares
/// no code with the recurrence route.
pub fn gauss_binom_poly_product(n: usize, k: usize) -> Result<QPoly> {
    if k > n {
        return Err(Error::BadArgs(format!("k = {k} exceeds n = {n}")));
    }
    let qint = |m: usize| vec![BigInt::one(); m];
    let mut acc = vec![BigInt::one()];
    for j in 0..k {
        acc = int_poly_mul(&acc, &qint(n - j));
        acc = int_poly_div_exact(&acc, &qint(j + 1));
    }
    let coeffs = acc
        .into_iter()
        .map(|c| {
            assert!(!c.is_negative(), "negative Gaussian coefficient");
            c.to_biguint().expect("nonnegative")
        })
        .collect();
    Ok(QPoly::new(coeffs))
}

/// `|F_i| = q^{(k-i)^2} [k-1, i-1]_q [n-k, k-i]_q`: members of the full star
/// meeting a fixed member in exactly `i` dimensions.
pub fn star_layer_size(n: usize, k: usize, i: usize, q: u64) -> Result<BigNat> {
    if i < 1 || i > k || k > n {
        return Err(Error::BadArgs(format!(
            "need 1 <= i <= k <= n, got n={n} k={k} i={i}"
        )));
    }
    if q < 2 {
        return Err(Error::BadArgs(format!("q = {q} < 2")));
    }
    Ok(big_pow(q, (k - i) * (k - i))
        * gauss_binom(k - 1, i - 1, q)?
        * gauss_binom_or_zero(n - k, k - i, q))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarIdentity {
    pub holds: bool,
    /// `sum_i |F_i|`
    pub layer_sum: BigNat,
    /// `[n-1, k-1]_q`
    pub star_size: BigNat,
}

pub fn verify_star_identity(n: usize, k: usize, q: u64) -> Result<StarIdentity> {
    if k < 1 || 2 * k > n {
        return Err(Error::BadArgs(format!(
            "need 1 <= k <= n/2, got n={n} k={k}"
        )));
    }
    let layer_sum = (1..=k)
        .map(|i| star_layer_size(n, k, i, q))
        .sum::<Result<BigNat>>()?;
    let star_size = gauss_binom(n - 1, k - 1, q)?;
    Ok(StarIdentity {
        holds: layer_sum == star_size,
        layer_sum,
        star_size,
    })
}

/// Checks, as exact polynomials, that the recurrence route agrees with the
/// product route, that the product route satisfies
/// `[n, k] = q^{n-k} [n-1, k-1] + [n-1, k]`, that `[n, k] = [n, n-k]`, and
/// that the degree is `k(n-k)`.
pub fn verify_pascal(n: usize, k: usize) -> Result<bool> {
    if k < 1 || k >= n {
        return Err(Error::BadArgs(format!(
            "need 1 <= k <= n-1, got n={n} k={k}"
        )));
    }
    let rec = gauss_binom_poly(n, k)?;
    let prod = gauss_binom_poly_product(n, k)?;
    let rhs = gauss_binom_poly_product(n - 1, k - 1)?
        .shift(n - k)
        .add(&gauss_binom_poly_product(n - 1, k)?);
    let sym = gauss_binom_poly_product(n, n - k)?;
    Ok(rec == prod && prod == rhs && prod == sym && prod.degree() == Some(k * (n - k)))
}

/// Small helper for reports: a `BigNat` that fits in `u64`.
pub fn to_u64(x: &BigNat) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigNat {
        BigUint::from(x)
    }

    #[test]
    fn numeric_examples() {
        for n in 0..6 {
            assert_eq!(gauss_binom(n, 0, 3).unwrap(), big(1));
        }
        assert_eq!(gauss_binom(4, 2, 2).unwrap(), big(35));
        assert_eq!(gauss_binom(4, 1, 2).unwrap(), big(15));
        assert_eq!(gauss_binom(4, 3, 2).unwrap(), big(15));
        assert_eq!(gauss_binom(4, 2, 3).unwrap(), big(130));
        assert!(matches!(gauss_binom(2, 3, 2), Err(Error::BadArgs(_))));
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(gauss_binom_poly(2, 1).unwrap(), QPoly::from_u64(&[1, 1]));
        let p = gauss_binom_poly(4, 2).unwrap();
        assert_eq!(p, QPoly::from_u64(&[1, 1, 2, 1, 1]));
        assert_eq!(p.eval(2), big(35));
        assert_eq!(p.eval(3), big(130));
        assert_eq!(p.to_string(), "1 + q + 2q^2 + q^3 + q^4");
        for n in 0..6 {
            assert_eq!(gauss_binom_poly(n, n).unwrap(), QPoly::one());
        }
        assert!(gauss_binom_poly(1, 2).is_err());
    }

    #[test]
    fn product_route_matches_recurrence_small() {
        for n in 0..10 {
            for k in 0..=n {
                assert_eq!(
                    gauss_binom_poly(n, k).unwrap(),
                    gauss_binom_poly_product(n, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn star_layer_examples() {
        assert_eq!(star_layer_size(4, 2, 1, 2).unwrap(), big(6));
        assert_eq!(star_layer_size(4, 2, 2, 2).unwrap(), big(1));
        for (n, k) in [(5, 3), (7, 2), (9, 4)] {
            for q in [2, 3, 5] {
                assert_eq!(star_layer_size(n, k, k, q).unwrap(), big(1));
            }
        }
        assert!(star_layer_size(4, 2, 0, 2).is_err());
        assert!(star_layer_size(4, 2, 3, 2).is_err());
    }

    #[test]
    fn star_identity_examples() {
        let r = verify_star_identity(4, 2, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.star_size, big(7));
        let r = verify_star_identity(5, 2, 2).unwrap();
        assert!(r.holds);
        assert_eq!(r.layer_sum, big(15));
        for q in [2, 3, 4, 7] {
            let r = verify_star_identity(2, 1, q).unwrap();
            assert!(r.holds);
            assert_eq!(r.star_size, big(1));
        }
        assert!(verify_star_identity(5, 3, 2).is_err());
    }

    #[test]
    fn pascal_examples() {
        assert!(verify_pascal(4, 2).unwrap());
        assert!(verify_pascal(3, 1).unwrap());
        assert!(verify_pascal(7, 6).unwrap());
        assert_eq!(
            gauss_binom_poly(7, 6).unwrap(),
            gauss_binom_poly(7, 1).unwrap()
        );
        assert!(verify_pascal(3, 3).is_err());
        assert!(verify_pascal(3, 0).is_err());
    }

    #[test]
    fn shift_of_zero_is_zero() {
        assert_eq!(QPoly::default().shift(3), QPoly::default());
        assert_eq!(QPoly::default().degree(), None);
    }
}
