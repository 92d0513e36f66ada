//! Vector bundles as two-chart transition data, and the order, divisor and
//! degree of germs of their generic fiber.

use std::fmt;

use crate::arith::factor::{coprime_basis, factor_squarefree};
use crate::arith::matrix::{laurent_to_rational, rational_to_laurent};
use crate::arith::{Field, LaurentPolynomial, Matrix, Polynomial, RationalFunction};
use crate::divisor::{valuation, Divisor, Point};
use crate::error::{Error, Result};

/// A vector bundle on ℙ¹ over `field`.
///
/// `transition` maps chart-∞ coordinates to chart-0 coordinates:
/// `v(t) = T(t)·w(1/t)`. Its determinant is `c·t^c1`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorBundle<F: Field> {
    field: F,
    rank: usize,
    transition: Matrix<LaurentPolynomial<F>>,
    inverse_transition: Matrix<LaurentPolynomial<F>>,
    inverse_rational: Matrix<RationalFunction<F>>,
    det_coeff: F::Elem,
    c1: i64,
}

impl<F: Field> fmt::Debug for VectorBundle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorBundle")
            .field("rank", &self.rank)
            .field("c1", &self.c1)
            .field("transition", &self.transition)
            .finish()
    }
}

pub fn validate_bundle<F: Field>(
    field: F,
    rank: usize,
    transition: Matrix<LaurentPolynomial<F>>,
) -> Result<VectorBundle<F>> {
    VectorBundle::new(field, rank, transition)
}

impl<F: Field> VectorBundle<F> {
    /// Checks that `transition` is a `rank × rank` matrix with monomial
    /// determinant and caches its inverse.
    pub fn new(field: F, rank: usize, transition: Matrix<LaurentPolynomial<F>>) -> Result<Self> {
        if !transition.is_square() {
            return Err(Error::NotSquare {
                rows: transition.rows(),
                cols: transition.cols(),
            });
        }
        if transition.rows() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: transition.rows(),
            });
        }
        if transition.entries().iter().any(|e| *e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let rational = laurent_to_rational(&transition);
        let det = rational.determinant()?;
        if det.is_zero() {
            return Err(Error::ZeroDeterminant);
        }
        let (det_coeff, c1) = det
            .to_laurent()
            .and_then(|l| l.as_monomial())
            .ok_or(Error::NonMonomialDeterminant)?;
        let inverse_rational = rational.inverse()?;
        let inverse_transition = rational_to_laurent(&inverse_rational)
            .ok_or_else(|| Error::Internal("inverse of a unimodular Laurent matrix is not Laurent".into()))?;
        let id = Matrix::identity(rank, &LaurentPolynomial::one(field.clone()));
        if transition.mul(&inverse_transition)? != id {
            return Err(Error::Internal("T·T⁻¹ ≠ I".into()));
        }
        Ok(Self {
            field,
            rank,
            transition,
            inverse_transition,
            inverse_rational,
            det_coeff,
            c1,
        })
    }

    /// The bundle `O(d_1) ⊕ … ⊕ O(d_n)`.
    pub fn diagonal(field: F, degrees: &[i64]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let diag = degrees
            .iter()
            .map(|&d| LaurentPolynomial::monomial(field.clone(), field.one(), d))
            .collect();
        Self::new(field, degrees.len(), Matrix::diagonal(diag))
    }

    pub fn trivial(field: F, rank: usize) -> Result<Self> {
        Self::diagonal(field, &vec![0; rank])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn transition(&self) -> &Matrix<LaurentPolynomial<F>> {
        &self.transition
    }

    pub fn inverse_transition(&self) -> &Matrix<LaurentPolynomial<F>> {
        &self.inverse_transition
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    /// Leading constant `c` of `det T = c·t^c1`.
    pub fn det_coeff(&self) -> &F::Elem {
        &self.det_coeff
    }

    /// The twist `E(k)`, with transition `t^k·T`.
    pub fn twist(&self, k: i64) -> Self {
        let tk = LaurentPolynomial::monomial(self.field.clone(), self.field.one(), k);
        let tmk = tk.invert_variable();
        let tmk_rat = tmk.to_rational_function();
        let n = self.rank as i64;
        Self {
            field: self.field.clone(),
            rank: self.rank,
            transition: self.transition.scale(&tk),
            inverse_transition: self.inverse_transition.scale(&tmk),
            inverse_rational: self.inverse_rational.scale(&tmk_rat),
            det_coeff: self.det_coeff.clone(),
            c1: self.c1 + n * k,
        }
    }

    /// The same bundle seen from the other chart: coordinate `t' = 1/t`, with
    /// the roles of the two frames exchanged.
    pub fn swap_charts(&self) -> Self {
        let transition = self.inverse_transition.map(LaurentPolynomial::invert_variable);
        let inverse_transition = self.transition.map(LaurentPolynomial::invert_variable);
        let inverse_rational = laurent_to_rational(&inverse_transition);
        let det_coeff = self.field.inv(&self.det_coeff).expect("nonzero determinant");
        Self {
            field: self.field.clone(),
            rank: self.rank,
            transition,
            inverse_transition,
            inverse_rational,
            det_coeff,
            c1: self.c1,
        }
    }

    /// A germ in the chart-0 frame of this bundle, re-expressed in the frame
    /// of [`swap_charts`](Self::swap_charts).
    pub fn swap_germ(&self, germ: &Germ<F>) -> Result<Germ<F>> {
        let w = self.chart_infinity(germ)?;
        Ok(Germ::new(w.iter().map(RationalFunction::invert_variable).collect()))
    }

    /// Chart-∞ coordinates `T⁻¹·α`, as rational functions of `t`.
    pub fn chart_infinity(&self, germ: &Germ<F>) -> Result<Vec<RationalFunction<F>>> {
        self.check_germ(germ)?;
        self.inverse_rational.mul_vec(&germ.coords)
    }

    fn check_germ(&self, germ: &Germ<F>) -> Result<()> {
        if germ.coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: germ.coords.len(),
            });
        }
        if germ.coords.iter().any(|c| *c.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn check_nonzero(&self, germ: &Germ<F>) -> Result<()> {
        self.check_germ(germ)?;
        if germ.is_zero() {
            return Err(Error::ZeroGerm);
        }
        Ok(())
    }

    /// `δ_P(α)`: the largest `n` with `π^{-n}·α` in the local lattice at `P`,
    /// `π` the canonical local parameter (the cluster polynomial, or `s`).
    pub fn order_at(&self, germ: &Germ<F>, p: &Point<F>) -> Result<i64> {
        self.check_nonzero(germ)?;
        let coords = match p {
            Point::Infinity => self.chart_infinity(germ)?,
            Point::Finite(_) => germ.coords.clone(),
        };
        let mut best: Option<i64> = None;
        for c in coords.iter().filter(|c| !c.is_zero()) {
            let v = valuation(c, p)?;
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        Ok(best.expect("nonzero germ has a nonzero coordinate"))
    }

    /// `δ(α)`, the divisor of the germ.
    pub fn germ_divisor(&self, germ: &Germ<F>) -> Result<Divisor<F>> {
        self.check_nonzero(germ)?;
        let mut pieces = Vec::new();
        for c in germ.coords.iter().filter(|c| !c.is_zero()) {
            for part in [c.numer(), c.denom()] {
                if !part.is_constant() {
                    pieces.extend(factor_squarefree(part)?.factors.into_iter().map(|(g, _)| g));
                }
            }
        }
        let mut clusters = Vec::new();
        for b in coprime_basis(&pieces) {
            let p = Point::Finite(b.clone());
            let mut best: Option<i64> = None;
            for c in germ.coords.iter().filter(|c| !c.is_zero()) {
                let v = if b.divides(c.numer()) || b.divides(c.denom()) {
                    valuation(c, &p)?
                } else {
                    0
                };
                best = Some(best.map_or(v, |x| x.min(v)));
            }
            let m = best.unwrap();
            if m != 0 {
                clusters.push((b, m));
            }
        }
        let inf = self.order_at(germ, &Point::Infinity)?;
        Divisor::from_parts(self.field.clone(), clusters, inf)
    }

    pub fn germ_degree(&self, germ: &Germ<F>) -> Result<i64> {
        Ok(self.germ_divisor(germ)?.degree())
    }

    /// The line subbundle generated by `α`, after checking that its local
    /// generators do not vanish on any fiber.
    pub fn sub_line_bundle(&self, germ: &Germ<F>) -> Result<LineSubbundle<F>> {
        let divisor = self.germ_divisor(germ)?;
        let inf_coords = self.chart_infinity(germ)?;
        let hits = |coords: &[RationalFunction<F>], p: &Point<F>, m: i64| -> Result<bool> {
            for c in coords.iter().filter(|c| !c.is_zero()) {
                if valuation(c, p)? == m {
                    return Ok(true);
                }
            }
            Ok(false)
        };
        for (c, m) in divisor.clusters() {
            if !hits(&germ.coords, &Point::Finite(c.clone()), m)? {
                return Err(Error::Internal(format!("generator vanishes on the fiber over {c}")));
            }
        }
        if !hits(&inf_coords, &Point::Infinity, divisor.at_infinity())? {
            return Err(Error::Internal("generator vanishes on the fiber over ∞".into()));
        }
        let degree = divisor.degree();
        Ok(LineSubbundle {
            generator: germ.clone(),
            divisor,
            degree,
        })
    }
}

/// Whether `m` (acting on chart-0 coordinates) is an isomorphism `e → f`:
/// unimodular over `k[t]`, and `T_f⁻¹·m·T_e` unimodular over `k[s]`.
pub fn is_isomorphism<F: Field>(
    e: &VectorBundle<F>,
    f: &VectorBundle<F>,
    m: &Matrix<RationalFunction<F>>,
) -> Result<bool> {
    if e.field != f.field {
        return Err(Error::FieldMismatch);
    }
    if e.rank != f.rank {
        return Err(Error::DimensionMismatch {
            expected: e.rank,
            found: f.rank,
        });
    }
    if !m.is_square() || m.rows() != e.rank {
        return Err(Error::DimensionMismatch {
            expected: e.rank,
            found: m.rows(),
        });
    }
    let det = m.determinant()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let chart0 = m.entries().iter().all(RationalFunction::is_polynomial)
        && det.numer().is_constant()
        && det.denom().is_constant();
    if !chart0 {
        return Ok(false);
    }
    let n = f.inverse_rational.mul(m)?.mul(&laurent_to_rational(&e.transition))?;
    let Some(n) = rational_to_laurent(&n) else {
        return Ok(false);
    };
    if n.entries().iter().any(|x| x.hi().is_some_and(|h| h > 0)) {
        return Ok(false);
    }
    let det_n = laurent_to_rational(&n).determinant()?;
    Ok(det_n.to_laurent().and_then(|l| l.as_constant()).is_some())
}

/// Element of the generic fiber, in the chart-0 frame.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Germ<F: Field> {
    coords: Vec<RationalFunction<F>>,
}

impl<F: Field> Germ<F> {
    pub fn new(coords: Vec<RationalFunction<F>>) -> Self {
        Self { coords }
    }

    pub fn from_polys(coords: Vec<Polynomial<F>>) -> Self {
        Self {
            coords: coords.into_iter().map(RationalFunction::from_poly).collect(),
        }
    }

    pub fn zero(field: F, rank: usize) -> Self {
        Self {
            coords: vec![RationalFunction::zero(field); rank],
        }
    }

    pub fn coords(&self) -> &[RationalFunction<F>] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RationalFunction::is_zero)
    }

    pub fn scale(&self, f: &RationalFunction<F>) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "germ rank mismatch");
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(field: F, rank: usize, germs: I) -> Self
    where
        F: 'a,
    {
        germs.into_iter().fold(Self::zero(field, rank), |acc, g| acc.add(g))
    }
}

impl<F: Field> fmt::Debug for Germ<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Germ<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.render("t")).collect();
        write!(f, "({})", parts.join("; "))
    }
}

/// The line subbundle `𝓛 ⊂ E` generated by a germ.
#[derive(Debug, Clone)]
pub struct LineSubbundle<F: Field> {
    pub generator: Germ<F>,
    pub divisor: Divisor<F>,
    pub degree: i64,
}

impl<F: Field> LineSubbundle<F> {
    /// A two-chart presentation of the subbundle as a rank-1 bundle. Its local
    /// generators are `h·α` on chart 0 and `t^{-deg}·h·α` on chart ∞, where
    /// `δ(h·α)` is concentrated at ∞; the transition is then `t^deg`.
    pub fn presentation(&self, bundle: &VectorBundle<F>) -> Result<(VectorBundle<F>, Germ<F>)> {
        let field = bundle.field().clone();
        let target = Divisor::point(field.clone(), &Point::Infinity, self.degree);
        let h = crate::divisor::function_with_divisor(&target.sub(&self.divisor), None)?;
        let chart0 = self.generator.scale(&h);
        let moved = bundle.germ_divisor(&chart0)?;
        if moved.clusters().next().is_some() || moved.at_infinity() != self.degree {
            return Err(Error::Internal("normalized generator has finite zeros or poles".into()));
        }
        let t = LaurentPolynomial::monomial(field.clone(), field.one(), self.degree);
        Ok((VectorBundle::new(field, 1, Matrix::new(1, 1, vec![t])?)?, chart0))
    }
}
