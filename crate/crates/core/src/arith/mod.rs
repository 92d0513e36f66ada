//! Exact scalars, univariate polynomials, Laurent polynomials, rational
//! functions and dense matrices over them.

pub mod factor;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod ratfunc;

pub use factor::{coprime_basis, factor_irreducible, factor_squarefree, Factorization};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use laurent::LaurentPolynomial;
pub use matrix::{
    laurent_span, laurent_to_rational, matrix_inverse, rational_to_laurent, FieldElement, Matrix, RingElement,
};
pub use poly::{poly_gcd, Polynomial};
pub use ratfunc::RationalFunction;
