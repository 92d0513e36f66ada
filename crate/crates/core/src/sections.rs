//! Global sections, the dimension-count splitting oracle, and the search for
//! germs of maximal degree outside a given span.

use std::collections::BTreeMap;

use crate::arith::linalg::nullspace;
use crate::arith::{laurent_span, Field, LaurentPolynomial, Matrix, Polynomial, RationalFunction};
use crate::bundle::{Germ, VectorBundle};
use crate::error::{Error, Result};

/// A global section: chart-0 vector `v(t)` and chart-∞ vector `w(s)` with
/// `v(t) = T(t)·w(1/t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section<F: Field> {
    pub v: Vec<Polynomial<F>>,
    pub w: Vec<Polynomial<F>>,
}

impl<F: Field> Section<F> {
    /// The section viewed as a germ of the bundle.
    pub fn germ(&self) -> Germ<F> {
        Germ::from_polys(self.v.clone())
    }

    /// Checks `v(t) = T(t)·w(1/t)` as an identity of Laurent polynomials.
    pub fn satisfies(&self, bundle: &VectorBundle<F>) -> bool {
        let w: Vec<_> = self.w.iter().map(LaurentPolynomial::from_poly_in_s).collect();
        let v: Vec<_> = self.v.iter().map(|p| LaurentPolynomial::from_poly(p, 0)).collect();
        bundle.transition().mul_vec(&w).is_ok_and(|tw| tw == v)
    }
}

#[derive(Debug, Clone)]
pub struct SectionSpace<F: Field> {
    pub bundle: VectorBundle<F>,
    pub basis: Vec<Section<F>>,
}

impl<F: Field> SectionSpace<F> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Degree bound on `w(s)`: any section has `w = T⁻¹·v` with `v` polynomial,
/// so no exponent of `w` in `t` is below `lo(T⁻¹)`.
pub fn section_degree_bound<F: Field>(bundle: &VectorBundle<F>) -> usize {
    let (lo, _) = laurent_span(bundle.inverse_transition()).expect("invertible");
    (-lo).max(0) as usize
}

/// Basis of `H⁰(E)`.
pub fn global_sections<F: Field>(bundle: &VectorBundle<F>) -> SectionSpace<F> {
    global_sections_with_bound(bundle, section_degree_bound(bundle))
}

/// Solves for sections whose chart-∞ vector has degree at most `bound` in
/// `s`. The unknowns are the coefficients of `w`; the constraints say that
/// `T(t)·w(1/t)` has no negative powers of `t`.
pub fn global_sections_with_bound<F: Field>(bundle: &VectorBundle<F>, bound: usize) -> SectionSpace<F> {
    let field = bundle.field();
    let n = bundle.rank();
    let t = bundle.transition();
    let (lo, hi) = laurent_span(t).expect("invertible");
    let width = bound + 1;
    let ncols = n * width;
    let b = bound as i64;

    let mut rows = Vec::new();
    for r in 0..n {
        for e in (lo - b)..0 {
            let mut row = vec![field.zero(); ncols];
            let mut any = false;
            for i in 0..n {
                let entry = t.get(r, i);
                if entry.is_zero() {
                    continue;
                }
                for j in 0..width {
                    let c = entry.coeff(e + j as i64);
                    if !field.is_zero(&c) {
                        row[i * width + j] = c;
                        any = true;
                    }
                }
            }
            if any {
                rows.push(row);
            }
        }
    }

    let basis = nullspace(field, rows, ncols)
        .into_iter()
        .map(|x| {
            let w: Vec<Polynomial<F>> = (0..n)
                .map(|i| Polynomial::new(field.clone(), x[i * width..(i + 1) * width].to_vec()))
                .collect();
            let v = (0..n)
                .map(|r| {
                    let top = hi.max(0) as usize;
                    let coeffs = (0..=top)
                        .map(|e| {
                            let mut acc = field.zero();
                            for i in 0..n {
                                let entry = t.get(r, i);
                                if entry.is_zero() {
                                    continue;
                                }
                                for j in 0..width {
                                    let xij = &x[i * width + j];
                                    if field.is_zero(xij) {
                                        continue;
                                    }
                                    let c = entry.coeff(e as i64 + j as i64);
                                    acc = field.add(&acc, &field.mul(&c, xij));
                                }
                            }
                            acc
                        })
                        .collect();
                    Polynomial::new(field.clone(), coeffs)
                })
                .collect();
            Section { v, w }
        })
        .collect();
    SectionSpace {
        bundle: bundle.clone(),
        basis,
    }
}

/// Lazily computed `H⁰(E(k))` for the twists of one bundle.
#[derive(Debug)]
pub struct SectionCache<'a, F: Field> {
    bundle: &'a VectorBundle<F>,
    spaces: BTreeMap<i64, SectionSpace<F>>,
}

impl<'a, F: Field> SectionCache<'a, F> {
    pub fn new(bundle: &'a VectorBundle<F>) -> Self {
        Self {
            bundle,
            spaces: BTreeMap::new(),
        }
    }

    pub fn bundle(&self) -> &VectorBundle<F> {
        self.bundle
    }

    pub fn twisted(&mut self, k: i64) -> &SectionSpace<F> {
        let bundle = self.bundle;
        self.spaces
            .entry(k)
            .or_insert_with(|| global_sections(&bundle.twist(k)))
    }

    pub fn h0(&mut self, k: i64) -> usize {
        self.twisted(k).dimension()
    }
}

/// Twist range `[-hi(T) - 1, hi(T⁻¹) + 1]` outside of which `h⁰(E(k))` is
/// known to be 0 (below) or to grow by exactly the rank (above).
pub fn oracle_twist_range<F: Field>(bundle: &VectorBundle<F>) -> (i64, i64) {
    let (_, hi) = laurent_span(bundle.transition()).expect("invertible");
    let (_, hi_inv) = laurent_span(bundle.inverse_transition()).expect("invertible");
    (-hi - 1, hi_inv + 1)
}

/// Splitting type recovered from dimension counts alone:
/// `h⁰(E(k)) − h⁰(E(k−1)) = #{i : d_i ≥ −k}`.
pub fn splitting_type_oracle<F: Field>(bundle: &VectorBundle<F>) -> Result<Vec<i64>> {
    splitting_type_oracle_cached(&mut SectionCache::new(bundle))
}

pub fn splitting_type_oracle_cached<F: Field>(cache: &mut SectionCache<'_, F>) -> Result<Vec<i64>> {
    let bundle = cache.bundle();
    let n = bundle.rank();
    let c1 = bundle.c1();
    let (k_min, k_max) = oracle_twist_range(bundle);
    if cache.h0(k_min) != 0 {
        return Err(Error::Internal(format!("h0(E({k_min})) is nonzero")));
    }
    let mut degrees = Vec::with_capacity(n);
    let mut prev_h = 0usize;
    let mut prev_jump = 0usize;
    for k in k_min + 1..=k_max {
        let h = cache.h0(k);
        let jump = h
            .checked_sub(prev_h)
            .ok_or_else(|| Error::Internal("h0 decreased under twist".into()))?;
        let new = jump
            .checked_sub(prev_jump)
            .ok_or_else(|| Error::Internal("h0 jumps decreased".into()))?;
        degrees.extend(std::iter::repeat_n(-k, new));
        prev_h = h;
        prev_jump = jump;
    }
    if prev_jump != n {
        return Err(Error::Internal(format!("final h0 jump is {prev_jump}, rank is {n}")));
    }
    if degrees.iter().sum::<i64>() != c1 {
        return Err(Error::Internal(format!(
            "oracle type {degrees:?} does not sum to c1 = {c1}"
        )));
    }
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    Ok(degrees)
}

/// Tests membership in the K-span of a fixed set of independent germs via the
/// maximal minors of `[avoid | σ]`, each of which is a K-linear form in `σ`.
pub struct SpanTest<F: Field> {
    rank: usize,
    forms: Vec<Vec<(usize, Polynomial<F>)>>,
}

impl<F: Field> SpanTest<F> {
    pub fn new(field: &F, rank: usize, avoid: &[Germ<F>]) -> Result<Self> {
        let r = avoid.len();
        if r >= rank {
            return Err(Error::AvoidSpansAll);
        }
        if let Some(g) = avoid.iter().find(|g| g.rank() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        if r > 0 {
            let cols: Vec<Vec<RationalFunction<F>>> = avoid.iter().map(|g| g.coords().to_vec()).collect();
            if Matrix::from_columns(&cols)?.rank() < r {
                return Err(Error::DependentGerms);
            }
        }
        let mut forms = Vec::new();
        for subset in subsets(rank, r + 1) {
            let mut terms = Vec::new();
            for (pos, &k) in subset.iter().enumerate() {
                let rows: Vec<usize> = subset.iter().copied().filter(|&x| x != k).collect();
                let minor = if r == 0 {
                    RationalFunction::one(field.clone())
                } else {
                    let entries = rows
                        .iter()
                        .flat_map(|&i| avoid.iter().map(move |g| g.coords()[i].clone()))
                        .collect();
                    Matrix::new(r, r, entries)?.determinant()?
                };
                if minor.is_zero() {
                    continue;
                }
                let signed = if (pos + r) % 2 == 1 { -minor } else { minor };
                terms.push((k, signed));
            }
            if terms.is_empty() {
                continue;
            }
            let lcm = terms.iter().fold(Polynomial::one(field.clone()), |acc, (_, m)| {
                let g = acc.gcd(m.denom());
                (&acc * m.denom()).exact_div(&g).unwrap()
            });
            let lcm = RationalFunction::from_poly(lcm);
            let cleared = terms
                .into_iter()
                .map(|(k, m)| (k, (&m * &lcm).numer().clone()))
                .collect();
            forms.push(cleared);
        }
        Ok(Self { rank, forms })
    }

    pub fn in_span(&self, germ: &Germ<F>) -> bool {
        debug_assert_eq!(germ.rank(), self.rank);
        let coords = germ.coords();
        self.forms.iter().all(|form| {
            let field = coords[0].field().clone();
            form.iter()
                .fold(RationalFunction::zero(field), |acc, (k, p)| {
                    &acc + &(&coords[*k] * &RationalFunction::from_poly(p.clone()))
                })
                .is_zero()
        })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A germ of maximal degree outside the K-span of `avoid`, with its degree.
pub fn max_degree_germ<F: Field>(bundle: &VectorBundle<F>, avoid: &[Germ<F>]) -> Result<(Germ<F>, i64)> {
    let (_, hi) = laurent_span(bundle.transition())?;
    max_degree_germ_from(&mut SectionCache::new(bundle), avoid, hi)
}

/// As [`max_degree_germ`], scanning degrees downwards from `start`, which must
/// be at least the answer.
pub fn max_degree_germ_from<F: Field>(
    cache: &mut SectionCache<'_, F>,
    avoid: &[Germ<F>],
    start: i64,
) -> Result<(Germ<F>, i64)> {
    let bundle = cache.bundle().clone();
    let test = SpanTest::new(bundle.field(), bundle.rank(), avoid)?;
    let (_, hi_inv) = laurent_span(bundle.inverse_transition())?;
    for d in (-hi_inv..=start).rev() {
        let space = cache.twisted(-d);
        if let Some(section) = space.basis.iter().find(|s| !test.in_span(&s.germ())) {
            let germ = section.germ();
            let degree = bundle.germ_degree(&germ)?;
            if degree != d {
                return Err(Error::Internal(format!(
                    "section of E({}) has germ degree {degree}, expected {d}",
                    -d
                )));
            }
            return Ok((germ, d));
        }
    }
    Err(Error::Internal("degree scan exhausted without leaving the span".into()))
}
