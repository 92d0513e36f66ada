//! Base fields.
//!
//! Elements do not carry their field: a [`Field`] value is a context object
//! that performs the arithmetic. This lets the prime modulus be chosen at
//! runtime while keeping polynomial and matrix code generic.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Runtime descriptor of a base field, used for dispatch and serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(u64),
    Rational,
}

#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn kind(&self) -> FieldKind;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Parses the textual coefficient encoding: a decimal integer for prime
    /// fields (reduced mod p), `a` or `a/b` with `b > 0` for the rationals.
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// Returns `(numerator, denominator)` integers with `a = n/d`, `d > 0`.
    /// Prime field elements are returned as their representative in `[0, p)`.
    fn to_fraction(&self, a: &Self::Elem) -> (BigInt, BigInt);

    /// Uniform element for prime fields; a small-height rational otherwise.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Up to `limit` distinct elements in a fixed order
    /// (`0, 1, 2, ...` mod p, or `0, 1, -1, 2, -2, ...` over Q).
    fn enumerate(&self, limit: usize) -> Vec<Self::Elem>;

    /// Characteristic, 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds F_p after checking primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let egcd = (*a as i128).extended_gcd(&(self.p as i128));
        Some(egcd.x.rem_euclid(self.p as i128) as u64)
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let t = s.trim();
        let n: BigInt = t.parse().map_err(|_| Error::MalformedCoefficient(s.to_string()))?;
        Ok(self.from_bigint(&n))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn to_fraction(&self, a: &u64) -> (BigInt, BigInt) {
        (BigInt::from(*a), BigInt::one())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn enumerate(&self, limit: usize) -> Vec<u64> {
        (0..self.p).take(limit).collect()
    }

    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// The rational numbers, with arbitrary-precision numerators and denominators.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::MalformedCoefficient(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        if den.starts_with('+') || den.starts_with('-') {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if !d.is_positive() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn to_fraction(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let n = rng.gen_range(-3i64..=3);
        let d = if rng.gen_bool(0.2) { rng.gen_range(2i64..=3) } else { 1 };
        BigRational::new(n.into(), d.into())
    }

    fn enumerate(&self, limit: usize) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(limit);
        let mut k = 0i64;
        while out.len() < limit {
            if k == 0 {
                out.push(BigRational::zero());
            } else {
                out.push(BigRational::from_integer(k.into()));
                if out.len() < limit {
                    out.push(BigRational::from_integer((-k).into()));
                }
            }
            k += 1;
        }
        out
    }

    fn characteristic(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn coefficient_parsing() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.parse_elem("12").unwrap(), 2);
        assert_eq!(f5.parse_elem("-1").unwrap(), 4);
        assert!(f5.parse_elem("1/2").is_err());

        let q = Rationals;
        assert_eq!(q.parse_elem("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(q.format_elem(&q.parse_elem("4/2").unwrap()), "2");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("1/-2").is_err());
        assert!(q.parse_elem("x").is_err());
        let big = "123456789012345678901234567891/7";
        assert_eq!(q.format_elem(&q.parse_elem(big).unwrap()), big);
    }

    #[test]
    fn enumerate_is_distinct() {
        let q = Rationals;
        let xs = q.enumerate(7);
        assert_eq!(q.format_elem(&xs[2]), "-1");
        let mut sorted = xs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 7);
        assert_eq!(PrimeField::new(3).unwrap().enumerate(10), vec![0, 1, 2]);
    }
}
