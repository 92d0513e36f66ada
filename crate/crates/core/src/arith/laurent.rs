use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::poly::{forward_owned_binop, Polynomial};
use super::ratfunc::RationalFunction;

/// Element of `k[t, t⁻¹]`, stored sparsely as exponent → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<F: Field> {
    field: F,
    terms: BTreeMap<i64, F::Elem>,
}

impl<F: Field> LaurentPolynomial<F> {
    pub fn zero(field: F) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 0)
    }

    pub fn monomial(field: F, c: F::Elem, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(exp, c);
        }
        Self { field, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, F::Elem)>>(field: F, terms: I) -> Self {
        let mut map: BTreeMap<i64, F::Elem> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        map.retain(|_, c| !field.is_zero(c));
        Self { field, terms: map }
    }

    pub fn from_i64_terms(field: F, terms: &[(i64, i64)]) -> Self {
        let ts: Vec<_> = terms.iter().map(|&(e, c)| (e, field.from_i64(c))).collect();
        Self::from_terms(field, ts)
    }

    /// `t^shift · p(t)`.
    pub fn from_poly(p: &Polynomial<F>, shift: i64) -> Self {
        let f = p.field();
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| (i as i64 + shift, c.clone()))
            .collect();
        Self {
            field: f.clone(),
            terms,
        }
    }

    /// `p(1/t)` for a polynomial `p` in the chart-∞ coordinate `s`.
    pub fn from_poly_in_s(p: &Polynomial<F>) -> Self {
        Self::from_poly(p, 0).invert_variable()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &F::Elem)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> F::Elem {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lo(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn hi(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, m))` when `self = c·t^m` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(F::Elem, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some((c.clone(), *e))
    }

    /// Nonzero constant, if that is what this is.
    pub fn as_constant(&self) -> Option<F::Elem> {
        self.as_monomial().filter(|(_, e)| *e == 0).map(|(c, _)| c)
    }

    pub fn shift(&self, k: i64) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ 1/t`.
    pub fn invert_variable(&self) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_terms(f.clone(), self.terms.iter().map(|(e, a)| (*e, f.mul(a, c))))
    }

    /// The polynomial in `t`, when no negative exponents occur.
    pub fn to_polynomial(&self) -> Option<Polynomial<F>> {
        if self.lo().is_some_and(|lo| lo < 0) {
            return None;
        }
        let n = self.hi().map_or(0, |h| h as usize + 1);
        let mut coeffs = vec![self.field.zero(); n];
        for (e, c) in &self.terms {
            coeffs[*e as usize] = c.clone();
        }
        Some(Polynomial::new(self.field.clone(), coeffs))
    }

    /// The polynomial in `s = 1/t`, when no positive exponents occur.
    pub fn to_polynomial_in_s(&self) -> Option<Polynomial<F>> {
        self.invert_variable().to_polynomial()
    }

    pub fn to_rational_function(&self) -> RationalFunction<F> {
        let lo = self.lo().unwrap_or(0);
        let num = self.shift(-lo.min(0)).to_polynomial().expect("shifted to nonnegative");
        let den = Polynomial::monomial(self.field.clone(), self.field.one(), (-lo.min(0)) as usize);
        RationalFunction::new(num, den).expect("monomial denominator is nonzero")
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mut s = f.format_elem(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mon = match *e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if *e == 0 {
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

impl<F: Field> fmt::Debug for LaurentPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.render("t"))
    }
}

impl<F: Field> fmt::Display for LaurentPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl<F: Field> Add<&LaurentPolynomial<F>> for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;

    fn add(self, rhs: &LaurentPolynomial<F>) -> LaurentPolynomial<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            match terms.get_mut(e) {
                Some(a) => {
                    *a = f.add(a, c);
                    if f.is_zero(a) {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        LaurentPolynomial {
            field: f.clone(),
            terms,
        }
    }
}

impl<F: Field> Sub<&LaurentPolynomial<F>> for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;

    fn sub(self, rhs: &LaurentPolynomial<F>) -> LaurentPolynomial<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Mul<&LaurentPolynomial<F>> for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;

    fn mul(self, rhs: &LaurentPolynomial<F>) -> LaurentPolynomial<F> {
        assert!(self.field == rhs.field, "field mismatch");
        let f = &self.field;
        let mut terms: BTreeMap<i64, F::Elem> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let prod = f.mul(c1, c2);
                let entry = terms.entry(e1 + e2).or_insert_with(|| f.zero());
                *entry = f.add(entry, &prod);
            }
        }
        terms.retain(|_, c| !f.is_zero(c));
        LaurentPolynomial {
            field: f.clone(),
            terms,
        }
    }
}

impl<F: Field> Neg for &LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;

    fn neg(self) -> LaurentPolynomial<F> {
        let f = &self.field;
        LaurentPolynomial {
            field: f.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, f.neg(c))).collect(),
        }
    }
}

impl<F: Field> Neg for LaurentPolynomial<F> {
    type Output = LaurentPolynomial<F>;

    fn neg(self) -> LaurentPolynomial<F> {
        -&self
    }
}

forward_owned_binop!(LaurentPolynomial, Add, add);
forward_owned_binop!(LaurentPolynomial, Sub, sub);
forward_owned_binop!(LaurentPolynomial, Mul, mul);
