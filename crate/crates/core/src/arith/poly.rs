use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients in ascending exponent order.
///
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, cs)
    }

    pub fn zero(field: F) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: F, c: F::Elem, exp: usize) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); exp + 1];
        coeffs[exp] = c;
        Self { field, coeffs }
    }

    /// The coordinate `t`.
    pub fn var(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    /// `t - a`.
    pub fn linear(field: F, a: &F::Elem) -> Self {
        let c0 = field.neg(a);
        let one = field.one();
        Self::new(field, vec![c0, one])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| *c == self.field.one())
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_i64(i as i64), c))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `t^n · f(1/t)` for `n ≥ deg f`.
    pub fn reversed(&self, n: usize) -> Self {
        debug_assert!(self.degree().is_none_or(|d| d <= n));
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(self.field.clone(), coeffs)
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_field(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lc_inv = f.inv(d.leading_coeff().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return Ok((Self::zero(f.clone()), Self::zero(f.clone())));
        };
        if n < dd {
            return Ok((Self::zero(f.clone()), self.clone()));
        }
        let mut quot = vec![f.zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let c = f.mul(&rem[i + dd], &lc_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("nonzero divisor").1
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    pub(crate) fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Dense coefficient string, highest exponent first, comma separated.
    pub fn dense_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|c| self.field.format_elem(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Human-readable rendering in the given variable.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format_elem(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if s.contains('/') && i > 0 {
                s = format!("({s})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{s}*{mon}"));
            }
        }
        out
    }
}

pub fn poly_gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Result<Polynomial<F>> {
    a.check_field(b)?;
    Ok(a.gcd(b))
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render("t"))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

/// Degree first, then coefficients from the leading one downwards.
impl<F: Field> Ord for Polynomial<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> PartialOrd for Polynomial<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Add<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul<&Polynomial<F>> for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f.clone());
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Polynomial::new(f.clone(), coeffs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        let f = &self.field;
        Polynomial {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ident, $tr:ident, $method:ident) => {
        impl<F: Field> $tr<$ty<F>> for $ty<F> {
            type Output = $ty<F>;
            fn $method(self, rhs: $ty<F>) -> $ty<F> {
                (&self).$method(&rhs)
            }
        }
        impl<F: Field> $tr<&$ty<F>> for $ty<F> {
            type Output = $ty<F>;
            fn $method(self, rhs: &$ty<F>) -> $ty<F> {
                (&self).$method(rhs)
            }
        }
        impl<F: Field> $tr<$ty<F>> for &$ty<F> {
            type Output = $ty<F>;
            fn $method(self, rhs: $ty<F>) -> $ty<F> {
                self.$method(&rhs)
            }
        }
    };
}

pub(crate) use forward_owned_binop;

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{PrimeField, Rationals};

    fn q(cs: &[i64]) -> Polynomial<Rationals> {
        Polynomial::from_i64s(Rationals, cs)
    }

    #[test]
    fn gcd_examples() {
        // gcd(t^2 - 1, t - 1) = t - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])), q(&[-1, 1]));
        // gcd(f, 0) is f made monic
        assert_eq!(q(&[2, 4]).gcd(&q(&[])), q(&[2, 4]).monic());
        assert_eq!(q(&[]).gcd(&q(&[])), q(&[]));
        // over F2: gcd(t^2 + t, t^2 + 1) = t + 1
        let f2 = PrimeField::new(2).unwrap();
        let a = Polynomial::from_i64s(f2, &[0, 1, 1]);
        let b = Polynomial::from_i64s(f2, &[1, 0, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_i64s(f2, &[1, 1]));
    }

    #[test]
    fn gcd_rejects_field_mismatch() {
        let a = Polynomial::from_i64s(PrimeField::new(3).unwrap(), &[1, 1]);
        let b = Polynomial::from_i64s(PrimeField::new(5).unwrap(), &[1, 1]);
        assert_eq!(poly_gcd(&a, &b), Err(Error::FieldMismatch));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(&[1, 1]).div_rem(&q(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = q(&[3, -2, 0, 5, 1]);
        let b = q(&[1, 0, 2]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn ordering_by_degree_then_coefficients() {
        let mut v = vec![q(&[0, 0, 1]), q(&[1, 1]), q(&[0, 1]), q(&[-1, 1])];
        v.sort();
        assert_eq!(v, vec![q(&[-1, 1]), q(&[0, 1]), q(&[1, 1]), q(&[0, 0, 1])]);
    }

    #[test]
    fn rendering() {
        assert_eq!(q(&[-1, 0, 1]).render("t"), "t^2 - 1");
        assert_eq!(q(&[0, -3, 2]).render("s"), "2*s^2 - 3*s");
        assert_eq!(q(&[1, 0, 1]).dense_string(), "1,0,1");
        assert_eq!(q(&[]).render("t"), "0");
    }
}
