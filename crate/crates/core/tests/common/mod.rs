#![allow(dead_code)]

use p1split::arith::{Field, LaurentPolynomial, Matrix, Polynomial, PrimeField, RationalFunction, Rationals};
use p1split::{Germ, Point, VectorBundle};
use rand::Rng;

pub fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn random_poly<F: Field, R: Rng>(field: &F, max_deg: usize, rng: &mut R) -> Polynomial<F> {
    let deg = rng.gen_range(0..=max_deg);
    Polynomial::new(field.clone(), (0..=deg).map(|_| field.random_elem(rng)).collect())
}

pub fn random_nonzero_poly<F: Field, R: Rng>(field: &F, max_deg: usize, rng: &mut R) -> Polynomial<F> {
    loop {
        let p = random_poly(field, max_deg, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_ratfunc<F: Field, R: Rng>(field: &F, max_deg: usize, rng: &mut R) -> RationalFunction<F> {
    let num = random_nonzero_poly(field, max_deg, rng);
    let den = random_nonzero_poly(field, max_deg, rng);
    RationalFunction::new(num, den).unwrap()
}

/// Nonzero germ with some zero coordinates now and then.
pub fn random_germ<F: Field, R: Rng>(field: &F, rank: usize, max_deg: usize, rng: &mut R) -> Germ<F> {
    loop {
        let coords = (0..rank)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    RationalFunction::zero(field.clone())
                } else {
                    random_ratfunc(field, max_deg, rng)
                }
            })
            .collect();
        let g = Germ::new(coords);
        if !g.is_zero() {
            return g;
        }
    }
}

pub fn random_rational_point<F: Field, R: Rng>(field: &F, rng: &mut R) -> Point<F> {
    if rng.gen_bool(0.25) {
        Point::Infinity
    } else {
        Point::rational(field.clone(), &field.random_elem(rng))
    }
}

pub fn random_degrees<R: Rng>(rank: usize, lo: i64, hi: i64, rng: &mut R) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(lo..=hi)).collect()
}

pub fn laurent<F: Field>(field: &F, terms: &[(i64, i64)]) -> LaurentPolynomial<F> {
    LaurentPolynomial::from_i64_terms(field.clone(), terms)
}

/// `[[t⁻¹, c],[0, t]]`.
pub fn extension<F: Field>(field: &F, corner: &[(i64, i64)]) -> VectorBundle<F> {
    let rows = vec![
        vec![laurent(field, &[(-1, 1)]), laurent(field, corner)],
        vec![laurent(field, &[]), laurent(field, &[(1, 1)])],
    ];
    VectorBundle::new(field.clone(), 2, Matrix::from_rows(rows).unwrap()).unwrap()
}

pub fn rationals() -> Rationals {
    Rationals
}
