use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::laurent::LaurentPolynomial;
use super::poly::{forward_owned_binop, Polynomial};
use crate::error::{Error, Result};

/// Element of `K = k(t)` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction<F: Field> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        num.check_field(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let field = den.field().clone();
        if num.is_zero() {
            return Self {
                num,
                den: Polynomial::one(field),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.leading_coeff().unwrap().clone();
        if lc != field.one() {
            let inv = field.inv(&lc).unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Self { num, den }
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        let den = Polynomial::one(p.field().clone());
        Self { num: p, den }
    }

    pub fn zero(field: F) -> Self {
        Self::from_poly(Polynomial::zero(field))
    }

    pub fn one(field: F) -> Self {
        Self::from_poly(Polynomial::one(field))
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_poly(Polynomial::constant(field, c))
    }

    /// The coordinate `t`.
    pub fn var(field: F) -> Self {
        Self::from_poly(Polynomial::var(field))
    }

    pub fn field(&self) -> &F {
        self.den.field()
    }

    pub fn numer(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 {
            self.inv().expect("nonzero base for negative power")
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        Self {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Value at `t = x`, `None` at a pole.
    pub fn eval(&self, x: &F::Elem) -> Option<F::Elem> {
        let f = self.field();
        f.div(&self.num.eval(x), &self.den.eval(x))
    }

    /// Order at ∞: `deg(den) − deg(num)`; `None` for zero.
    pub fn valuation_at_infinity(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().unwrap() as i64 - dn)
    }

    /// Value at ∞ when finite.
    pub fn eval_at_infinity(&self) -> Option<F::Elem> {
        match self.valuation_at_infinity() {
            None => Some(self.field().zero()),
            Some(v) if v > 0 => Some(self.field().zero()),
            Some(0) => Some(self.num.leading_coeff().unwrap().clone()),
            Some(_) => None,
        }
    }

    /// Substitutes `t ↦ 1/t`.
    pub fn invert_variable(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap();
        let n = dn.max(dd);
        // f(1/t) = t^(n-dn) rev(num) / (t^(n-dd) rev(den))
        let num = self.num.reversed(dn).shift(n - dn);
        let den = self.den.reversed(dd).shift(n - dd);
        Self::reduce(num, den)
    }

    /// The Laurent polynomial, when the denominator is a power of `t`.
    pub fn to_laurent(&self) -> Option<LaurentPolynomial<F>> {
        let dd = self.den.degree().unwrap();
        let f = self.field();
        let monomial = self.den.coeffs()[..dd].iter().all(|c| f.is_zero(c));
        monomial.then(|| LaurentPolynomial::from_poly(&self.num, -(dd as i64)))
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let wrap = |p: &Polynomial<F>| {
            let s = p.render(var);
            if p.coeffs().iter().filter(|c| !p.field().is_zero(c)).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl<F: Field> From<Polynomial<F>> for RationalFunction<F> {
    fn from(p: Polynomial<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Field> fmt::Debug for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self.render("t"))
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl<F: Field> Add<&RationalFunction<F>> for &RationalFunction<F> {
    type Output = RationalFunction<F>;

    fn add(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::reduce(num, &self.den * &rhs.den)
    }
}

impl<F: Field> Sub<&RationalFunction<F>> for &RationalFunction<F> {
    type Output = RationalFunction<F>;

    fn sub(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul<&RationalFunction<F>> for &RationalFunction<F> {
    type Output = RationalFunction<F>;

    fn mul(self, rhs: &RationalFunction<F>) -> RationalFunction<F> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.field().clone());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<F: Field> Neg for &RationalFunction<F> {
    type Output = RationalFunction<F>;

    fn neg(self) -> RationalFunction<F> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = RationalFunction<F>;

    fn neg(self) -> RationalFunction<F> {
        -&self
    }
}

forward_owned_binop!(RationalFunction, Add, add);
forward_owned_binop!(RationalFunction, Sub, sub);
forward_owned_binop!(RationalFunction, Mul, mul);
