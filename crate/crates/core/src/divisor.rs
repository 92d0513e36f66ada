//! Closed points of ℙ¹, valuations and divisors.
//!
//! Finite closed points are handled in groups: a *cluster* is a monic
//! squarefree polynomial in `t` standing for all of its roots at once, with
//! residue degree equal to its degree. Over the rationals no irreducible
//! factorization is ever needed; instead the clusters of the divisors being
//! compared are refined to a common gcd-free basis, after which every
//! multiplicity is constant across each cluster.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::factor::{coprime_basis, factor_irreducible, factor_squarefree};
use crate::arith::{Field, Polynomial, PrimeField, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point<F: Field> {
    Infinity,
    Finite(Polynomial<F>),
}

impl<F: Field> Point<F> {
    /// A finite cluster; must be monic, squarefree and nonconstant.
    pub fn finite(cluster: Polynomial<F>) -> Result<Self> {
        if cluster.is_constant() {
            return Err(Error::InvalidPoint(format!("cluster {cluster} is constant")));
        }
        if !cluster.is_monic() {
            return Err(Error::InvalidPoint(format!("cluster {cluster} is not monic")));
        }
        if !cluster.is_squarefree() {
            return Err(Error::InvalidPoint(format!("cluster {cluster} is not squarefree")));
        }
        Ok(Point::Finite(cluster))
    }

    /// The rational point `t = a`.
    pub fn rational(field: F, a: &F::Elem) -> Self {
        Point::Finite(Polynomial::linear(field, a))
    }

    pub fn residue_degree(&self) -> usize {
        match self {
            Point::Infinity => 1,
            Point::Finite(c) => c.degree().unwrap(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    /// For a rational finite point `t - a`, returns `a`.
    pub fn rational_coordinate(&self) -> Option<F::Elem> {
        match self {
            Point::Finite(c) if c.degree() == Some(1) => Some(c.field().neg(&c.coeff(0))),
            _ => None,
        }
    }
}

impl<F: Field> fmt::Debug for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Point<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("inf"),
            Point::Finite(c) => write!(f, "[{c}]"),
        }
    }
}

/// Order of the nonzero polynomial `p` along the cluster `c`.
fn poly_valuation<F: Field>(p: &Polynomial<F>, c: &Polynomial<F>) -> Result<i64> {
    let mut rest = p.clone();
    let mut k = 0;
    loop {
        let g = rest.gcd(c);
        if g.is_constant() {
            return Ok(k);
        }
        if g != *c {
            return Err(Error::NonUniformCluster(c.to_string()));
        }
        rest = rest.exact_div(c).expect("cluster divides");
        k += 1;
    }
}

/// Order of vanishing of `f` at `p` (negative for poles).
pub fn valuation<F: Field>(f: &RationalFunction<F>, p: &Point<F>) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroInput("rational function"));
    }
    match p {
        Point::Infinity => Ok(f.valuation_at_infinity().unwrap()),
        Point::Finite(c) => {
            if c.field() != f.field() {
                return Err(Error::FieldMismatch);
            }
            Ok(poly_valuation(f.numer(), c)? - poly_valuation(f.denom(), c)?)
        }
    }
}

/// Finite-support integer combination of closed points.
///
/// The finite clusters are pairwise coprime. Two divisors compare equal when
/// they agree at every closed point, whatever clusters they happen to use.
#[derive(Clone)]
pub struct Divisor<F: Field> {
    field: F,
    finite: BTreeMap<Polynomial<F>, i64>,
    at_infinity: i64,
}

impl<F: Field> Divisor<F> {
    pub fn zero(field: F) -> Self {
        Self {
            field,
            finite: BTreeMap::new(),
            at_infinity: 0,
        }
    }

    /// Builds a divisor from `(cluster, multiplicity)` pairs. Clusters must be
    /// monic squarefree and pairwise coprime; repeated clusters are summed.
    pub fn from_parts<I>(field: F, clusters: I, at_infinity: i64) -> Result<Self>
    where
        I: IntoIterator<Item = (Polynomial<F>, i64)>,
    {
        let mut finite: BTreeMap<Polynomial<F>, i64> = BTreeMap::new();
        for (c, m) in clusters {
            if *c.field() != field {
                return Err(Error::FieldMismatch);
            }
            Point::finite(c.clone())?;
            *finite.entry(c).or_insert(0) += m;
        }
        finite.retain(|_, m| *m != 0);
        let keys: Vec<_> = finite.keys().collect();
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i + 1..] {
                if !a.gcd(b).is_constant() {
                    return Err(Error::InvalidDivisor(format!("clusters {a} and {b} overlap")));
                }
            }
        }
        Ok(Self {
            field,
            finite,
            at_infinity,
        })
    }

    pub fn point(field: F, p: &Point<F>, mult: i64) -> Self {
        let mut d = Self::zero(field);
        match p {
            Point::Infinity => d.at_infinity = mult,
            Point::Finite(c) => {
                if mult != 0 {
                    d.finite.insert(c.clone(), mult);
                }
            }
        }
        d
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn clusters(&self) -> impl Iterator<Item = (&Polynomial<F>, i64)> {
        self.finite.iter().map(|(c, m)| (c, *m))
    }

    pub fn at_infinity(&self) -> i64 {
        self.at_infinity
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.at_infinity == 0
    }

    /// Residue-degree weighted degree of the finite part.
    pub fn finite_degree(&self) -> i64 {
        self.finite.iter().map(|(c, m)| m * c.degree().unwrap() as i64).sum()
    }

    pub fn degree(&self) -> i64 {
        self.finite_degree() + self.at_infinity
    }

    /// Multiplicity at `p`. For a cluster `p` the multiplicity must be the
    /// same at all of its roots.
    pub fn value_at(&self, p: &Point<F>) -> Result<i64> {
        let Point::Finite(q) = p else {
            return Ok(self.at_infinity);
        };
        let mut values = Vec::new();
        let mut rest = q.clone();
        for (c, m) in &self.finite {
            let g = c.gcd(&rest);
            if !g.is_constant() {
                values.push(*m);
                rest = rest.exact_div(&g).expect("gcd divides");
            }
        }
        if !rest.is_constant() {
            values.push(0);
        }
        match values.split_first() {
            Some((first, others)) if others.iter().any(|v| v != first) => Err(Error::NonUniformCluster(q.to_string())),
            Some((first, _)) => Ok(*first),
            None => Ok(0),
        }
    }

    /// Points of the support (clusters, then ∞).
    pub fn support(&self) -> Vec<Point<F>> {
        let mut out: Vec<_> = self.finite.keys().cloned().map(Point::Finite).collect();
        if self.at_infinity != 0 {
            out.push(Point::Infinity);
        }
        out
    }

    fn map_mults(&self, f: impl Fn(i64) -> i64) -> Self {
        let mut finite: BTreeMap<_, _> = self.finite.iter().map(|(c, m)| (c.clone(), f(*m))).collect();
        finite.retain(|_, m| *m != 0);
        Self {
            field: self.field.clone(),
            finite,
            at_infinity: f(self.at_infinity),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        self.map_mults(|m| m * k)
    }

    pub fn neg(&self) -> Self {
        self.map_mults(|m| -m)
    }

    fn combine(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        let refined = refine(&[self.clone(), other.clone()]);
        let (a, b) = (&refined[0], &refined[1]);
        let keys: Vec<_> = a.finite.keys().chain(b.finite.keys()).cloned().collect();
        let mut finite = BTreeMap::new();
        for k in keys {
            let v = op(
                a.finite.get(&k).copied().unwrap_or(0),
                b.finite.get(&k).copied().unwrap_or(0),
            );
            if v != 0 {
                finite.insert(k, v);
            }
        }
        Self {
            field: self.field.clone(),
            finite,
            at_infinity: op(a.at_infinity, b.at_infinity),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |x, y| x - y)
    }

    /// Pointwise `self ≥ other` at every closed point.
    pub fn dominates(&self, other: &Self) -> bool {
        let diff = self.sub(other);
        diff.at_infinity >= 0 && diff.finite.values().all(|m| *m >= 0)
    }

    /// Pointwise minimum.
    pub fn pointwise_min(divisors: &[Self]) -> Option<Self> {
        let first = divisors.first()?;
        let refined = refine(divisors);
        let mut keys: Vec<_> = refined.iter().flat_map(|d| d.finite.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut finite = BTreeMap::new();
        for k in keys {
            let v = refined
                .iter()
                .map(|d| d.finite.get(&k).copied().unwrap_or(0))
                .min()
                .unwrap();
            if v != 0 {
                finite.insert(k, v);
            }
        }
        let at_infinity = refined.iter().map(|d| d.at_infinity).min().unwrap();
        Some(Self {
            field: first.field.clone(),
            finite,
            at_infinity,
        })
    }

    /// Merges clusters of equal multiplicity into a single cluster, giving a
    /// representation that depends only on the pointwise values.
    pub fn canonical(&self) -> Self {
        let mut by_mult: BTreeMap<i64, Polynomial<F>> = BTreeMap::new();
        for (c, m) in &self.finite {
            let e = by_mult.entry(*m).or_insert_with(|| Polynomial::one(self.field.clone()));
            *e = &*e * c;
        }
        Self {
            field: self.field.clone(),
            finite: by_mult.into_iter().map(|(m, c)| (c, m)).collect(),
            at_infinity: self.at_infinity,
        }
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self.finite.iter().map(|(c, m)| format!("[{c}]^{m}")).collect();
        parts.push(format!("inf^{}", self.at_infinity));
        parts.join(" ")
    }
}

impl Divisor<PrimeField> {
    /// Replaces each cluster by its irreducible factors.
    pub fn full_split(&self) -> Result<Self> {
        let mut parts = Vec::new();
        for (c, m) in &self.finite {
            for (irr, _) in factor_irreducible(c)?.factors {
                parts.push((irr, *m));
            }
        }
        Self::from_parts(self.field, parts, self.at_infinity)
    }
}

impl<F: Field> PartialEq for Divisor<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.sub(other).is_zero()
    }
}

impl<F: Field> Eq for Divisor<F> {}

impl<F: Field> fmt::Debug for Divisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({})", self.render())
    }
}

impl<F: Field> fmt::Display for Divisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Rewrites the divisors over one common gcd-free basis of clusters, so that
/// pointwise comparisons become comparisons of multiplicities per cluster.
pub fn refine<F: Field>(divisors: &[Divisor<F>]) -> Vec<Divisor<F>> {
    let all: Vec<Polynomial<F>> = divisors.iter().flat_map(|d| d.finite.keys().cloned()).collect();
    let basis = coprime_basis(&all);
    divisors
        .iter()
        .map(|d| {
            let mut finite = BTreeMap::new();
            for b in &basis {
                if let Some((_, m)) = d.finite.iter().find(|(c, _)| b.divides(c)) {
                    finite.insert(b.clone(), *m);
                }
            }
            Divisor {
                field: d.field.clone(),
                finite,
                at_infinity: d.at_infinity,
            }
        })
        .collect()
}

/// Zeros minus poles of `f`.
pub fn principal_divisor<F: Field>(f: &RationalFunction<F>) -> Result<Divisor<F>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("rational function"));
    }
    let mut finite = BTreeMap::new();
    for (g, m) in factor_squarefree(f.numer())?.factors {
        finite.insert(g, m as i64);
    }
    for (g, m) in factor_squarefree(f.denom())?.factors {
        finite.insert(g, -(m as i64));
    }
    Ok(Divisor {
        field: f.field().clone(),
        finite,
        at_infinity: f.valuation_at_infinity().unwrap(),
    })
}

pub fn divisor_degree<F: Field>(d: &Divisor<F>) -> i64 {
    d.degree()
}

/// A rational function whose principal divisor is `d`, optionally scaled so
/// that it takes the value 1 at a rational point outside the support.
pub fn function_with_divisor<F: Field>(d: &Divisor<F>, normalize_at: Option<&Point<F>>) -> Result<RationalFunction<F>> {
    let deg = d.degree();
    if deg != 0 {
        return Err(Error::NotPrincipal(deg));
    }
    if let Some(p) = normalize_at {
        if p.residue_degree() > 1 {
            return Err(Error::UnsupportedResidueDegree(p.residue_degree()));
        }
        if d.value_at(p)? != 0 {
            return Err(Error::NormalizationInSupport);
        }
    }
    let field = d.field.clone();
    let mut num = Polynomial::one(field.clone());
    let mut den = Polynomial::one(field.clone());
    for (c, m) in &d.finite {
        let power = c.pow(m.unsigned_abs() as u32);
        if *m > 0 {
            num = &num * &power;
        } else {
            den = &den * &power;
        }
    }
    let f = RationalFunction::new(num, den)?;
    let Some(p) = normalize_at else {
        return Ok(f);
    };
    let value = match p {
        Point::Infinity => f.eval_at_infinity(),
        Point::Finite(_) => f.eval(&p.rational_coordinate().unwrap()),
    }
    .ok_or_else(|| Error::Internal("normalizing value is a pole".into()))?;
    let inv = field
        .inv(&value)
        .ok_or_else(|| Error::Internal("normalizing value is zero".into()))?;
    Ok(f.scale(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;

    fn q(cs: &[i64]) -> Polynomial<Rationals> {
        Polynomial::from_i64s(Rationals, cs)
    }

    fn fp(p: u64, cs: &[i64]) -> Polynomial<PrimeField> {
        Polynomial::from_i64s(PrimeField::new(p).unwrap(), cs)
    }

    fn rf<F: Field>(n: Polynomial<F>, d: Polynomial<F>) -> RationalFunction<F> {
        RationalFunction::new(n, d).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let f = rf(q(&[0, 0, 1]), q(&[1, 1]));
        assert_eq!(valuation(&f, &Point::finite(q(&[0, 1])).unwrap()).unwrap(), 2);
        let g = rf(q(&[1, 0, 1]), q(&[0, 1]));
        assert_eq!(valuation(&g, &Point::Infinity).unwrap(), -1);
        let c = fp(2, &[1, 1, 1]);
        let h = RationalFunction::from_poly(c.clone());
        assert_eq!(valuation(&h, &Point::finite(c).unwrap()).unwrap(), 1);
    }

    #[test]
    fn valuation_errors() {
        let z = RationalFunction::zero(Rationals);
        assert!(matches!(valuation(&z, &Point::Infinity), Err(Error::ZeroInput(_))));
        // t vanishes at one root of t(t-1) only
        let t = RationalFunction::var(Rationals);
        let cluster = Point::finite(q(&[0, -1, 1])).unwrap();
        assert!(matches!(valuation(&t, &cluster), Err(Error::NonUniformCluster(_))));
    }

    #[test]
    fn invalid_points() {
        assert!(Point::finite(q(&[1])).is_err());
        assert!(Point::finite(q(&[0, 2])).is_err());
        assert!(Point::finite(q(&[0, 0, 1])).is_err());
    }

    #[test]
    fn principal_divisor_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let d = principal_divisor(&RationalFunction::from_poly(fp(5, &[-1, 0, 1]))).unwrap();
        let expected = Divisor::from_parts(f5, [(fp(5, &[-1, 1]), 1), (fp(5, &[1, 1]), 1)], -2).unwrap();
        assert_eq!(d, expected);
        assert_eq!(d.full_split().unwrap().clusters().count(), 2);

        let f2 = PrimeField::new(2).unwrap();
        let d = principal_divisor(&RationalFunction::from_poly(fp(2, &[1, 1, 1]))).unwrap();
        assert_eq!(d, Divisor::from_parts(f2, [(fp(2, &[1, 1, 1]), 1)], -2).unwrap());
        assert_eq!(d.degree(), 0);

        let seven = RationalFunction::constant(Rationals, Rationals.from_i64(7));
        assert!(principal_divisor(&seven).unwrap().is_zero());
    }

    #[test]
    fn degree_examples() {
        let d = Divisor::from_parts(Rationals, [(q(&[-1, 1]), 1)], -2).unwrap();
        assert_eq!(divisor_degree(&d), -1);
        let f2 = PrimeField::new(2).unwrap();
        let d = Divisor::from_parts(f2, [(fp(2, &[1, 1, 1]), 1)], -2).unwrap();
        assert_eq!(divisor_degree(&d), 0);
        assert_eq!(divisor_degree(&Divisor::zero(Rationals)), 0);
    }

    #[test]
    fn refine_examples() {
        let a = Divisor::from_parts(Rationals, [(q(&[0, -1, 1]), 1)], 0).unwrap();
        let b = Divisor::from_parts(Rationals, [(q(&[0, 1]), 2)], 0).unwrap();
        let r = refine(&[a, b]);
        let ca: Vec<_> = r[0].clusters().map(|(c, m)| (c.clone(), m)).collect();
        assert_eq!(ca, vec![(q(&[-1, 1]), 1), (q(&[0, 1]), 1)]);
        let cb: Vec<_> = r[1].clusters().map(|(c, m)| (c.clone(), m)).collect();
        assert_eq!(cb, vec![(q(&[0, 1]), 2)]);

        let a = Divisor::from_parts(Rationals, [(q(&[2, -3, 1]), 1)], 0).unwrap();
        let b = Divisor::from_parts(Rationals, [(q(&[-2, 1]), 3)], 0).unwrap();
        let r = refine(&[a.clone(), b.clone()]);
        assert_eq!(r[0].clusters().count(), 2);
        assert_eq!(r[0], a);
        assert_eq!(r[1], b);
        assert_eq!(r[0].value_at(&Point::finite(q(&[-2, 1])).unwrap()).unwrap(), 1);
        assert_eq!(r[1].value_at(&Point::finite(q(&[-1, 1])).unwrap()).unwrap(), 0);

        let disjoint = refine(&[
            Divisor::from_parts(Rationals, [(q(&[1, 0, 1]), 1)], 0).unwrap(),
            Divisor::from_parts(Rationals, [(q(&[0, 1]), 1)], 0).unwrap(),
        ]);
        assert_eq!(disjoint[0].clusters().next().unwrap().0, &q(&[1, 0, 1]));
    }

    #[test]
    fn function_with_divisor_examples() {
        let d = Divisor::from_parts(Rationals, [(q(&[0, 1]), 1)], -1).unwrap();
        assert_eq!(
            function_with_divisor(&d, None).unwrap(),
            RationalFunction::var(Rationals)
        );

        let f5 = PrimeField::new(5).unwrap();
        let d = Divisor::from_parts(f5, [(fp(5, &[-1, 1]), 1), (fp(5, &[1, 1]), -1)], 0).unwrap();
        let origin = Point::rational(f5, &0);
        let f = function_with_divisor(&d, Some(&origin)).unwrap();
        assert_eq!(f, rf(fp(5, &[1, -1]), fp(5, &[1, 1])));
        assert_eq!(f.eval(&0), Some(1));

        let bad = Divisor::from_parts(Rationals, [(q(&[0, 1]), 1)], 0).unwrap();
        assert_eq!(function_with_divisor(&bad, None), Err(Error::NotPrincipal(1)));
    }

    #[test]
    fn normalization_errors() {
        let d = Divisor::from_parts(Rationals, [(q(&[0, 1]), 1)], -1).unwrap();
        let origin = Point::rational(Rationals, &Rationals.from_i64(0));
        assert_eq!(
            function_with_divisor(&d, Some(&origin)),
            Err(Error::NormalizationInSupport)
        );
        let quad = Point::finite(q(&[1, 0, 1])).unwrap();
        assert_eq!(
            function_with_divisor(&d, Some(&quad)),
            Err(Error::UnsupportedResidueDegree(2))
        );
        // normalization at infinity uses the leading-coefficient ratio
        let e = Divisor::from_parts(Rationals, [(q(&[0, 1]), 1), (q(&[-1, 1]), -1)], 0).unwrap();
        let g = function_with_divisor(&e, Some(&Point::Infinity)).unwrap();
        assert_eq!(g.eval_at_infinity(), Some(Rationals.from_i64(1)));
    }

    #[test]
    fn semantic_equality_ignores_cluster_grouping() {
        let a = Divisor::from_parts(Rationals, [(q(&[0, -1, 1]), 1)], -2).unwrap();
        let b = Divisor::from_parts(Rationals, [(q(&[0, 1]), 1), (q(&[-1, 1]), 1)], -2).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.canonical().clusters().count(), 1);
        let c = Divisor::from_parts(Rationals, [(q(&[0, 1]), 2), (q(&[-1, 1]), 1)], -2).unwrap();
        assert_ne!(a, c);
        assert!(c.dominates(&a));
        assert!(!a.dominates(&c));
    }
}
