use std::fmt;

use crate::arith::matrix::laurent_to_rational;
use crate::arith::{Field, LaurentPolynomial, Matrix, Polynomial, RationalFunction};
use crate::bundle::{Germ, VectorBundle};
use crate::divisor::{function_with_divisor, Divisor, Point};
use crate::error::{Error, Result};

use super::criterion_check;

/// Birkhoff factorization `T(t) = A(t)·diag(t^{d_i})·B(1/t)⁻¹` with `A`
/// unimodular over `k[t]` and `B` unimodular over `k[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCertificate<F: Field> {
    pub degrees: Vec<i64>,
    /// Entries are polynomials in `t`.
    pub a: Matrix<Polynomial<F>>,
    /// Entries are polynomials in `s = 1/t`.
    pub b: Matrix<Polynomial<F>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateFailure {
    Shape,
    DegreeSum,
    DegreeOrder,
    ANotUnimodular,
    BNotUnimodular,
    IdentityMismatch,
}

impl CertificateFailure {
    pub fn code(&self) -> &'static str {
        match self {
            CertificateFailure::Shape => "shape",
            CertificateFailure::DegreeSum => "degree_sum",
            CertificateFailure::DegreeOrder => "degree_order",
            CertificateFailure::ANotUnimodular => "a_not_unimodular",
            CertificateFailure::BNotUnimodular => "b_not_unimodular",
            CertificateFailure::IdentityMismatch => "identity_mismatch",
        }
    }
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Every failed check, in the order they are performed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CertificateVerdict {
    pub failures: Vec<CertificateFailure>,
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn primary(&self) -> Option<CertificateFailure> {
        self.failures.first().copied()
    }
}

fn has_constant_det<F: Field>(m: &Matrix<Polynomial<F>>) -> bool {
    m.map(|p| RationalFunction::from_poly(p.clone()))
        .determinant()
        .is_ok_and(|d| !d.is_zero() && d.is_polynomial() && d.numer().is_constant())
}

/// Independently re-checks a certificate against the bundle.
pub fn verify_certificate<F: Field>(bundle: &VectorBundle<F>, cert: &SplittingCertificate<F>) -> CertificateVerdict {
    let n = bundle.rank();
    let mut failures = Vec::new();
    let square = |m: &Matrix<Polynomial<F>>| m.rows() == n && m.cols() == n;
    let same_field = |m: &Matrix<Polynomial<F>>| m.entries().iter().all(|p| p.field() == bundle.field());
    if cert.degrees.len() != n || !square(&cert.a) || !square(&cert.b) || !same_field(&cert.a) || !same_field(&cert.b) {
        return CertificateVerdict {
            failures: vec![CertificateFailure::Shape],
        };
    }
    if cert.degrees.iter().sum::<i64>() != bundle.c1() {
        failures.push(CertificateFailure::DegreeSum);
    }
    if cert.degrees.windows(2).any(|w| w[0] < w[1]) {
        failures.push(CertificateFailure::DegreeOrder);
    }
    if !has_constant_det(&cert.a) {
        failures.push(CertificateFailure::ANotUnimodular);
    }
    let b_ok = has_constant_det(&cert.b);
    if !b_ok {
        failures.push(CertificateFailure::BNotUnimodular);
    }
    // T = A·D·B⁻¹  ⟺  T·B = A·D when B is invertible
    let field = bundle.field().clone();
    let a = cert.a.map(|p| LaurentPolynomial::from_poly(p, 0));
    let b = cert.b.map(LaurentPolynomial::from_poly_in_s);
    let d: Vec<_> = cert
        .degrees
        .iter()
        .map(|&k| LaurentPolynomial::monomial(field.clone(), field.one(), k))
        .collect();
    let lhs = bundle.transition().mul(&b).expect("square");
    let rhs = a.scale_columns(&d);
    let b_invertible = b_ok || laurent_to_rational(&b).determinant().is_ok_and(|x| !x.is_zero());
    if lhs != rhs || !b_invertible {
        failures.push(CertificateFailure::IdentityMismatch);
    }
    CertificateVerdict { failures }
}

/// Builds the factorization from a basis satisfying the splitting criterion:
/// each germ is rescaled so that its divisor is concentrated at ∞; the
/// rescaled germs are the columns of `A`, and `B = T⁻¹·A·diag(t^{d_i})`.
pub fn certificate_from_basis<F: Field>(
    bundle: &VectorBundle<F>,
    basis: &[Germ<F>],
) -> Result<SplittingCertificate<F>> {
    if !criterion_check(bundle, basis)? {
        return Err(Error::CriterionFailed);
    }
    let field = bundle.field().clone();
    let mut tagged = Vec::with_capacity(basis.len());
    for g in basis {
        let div = bundle.germ_divisor(g)?;
        tagged.push((div.degree(), div, g));
    }
    tagged.sort_by_key(|x| std::cmp::Reverse(x.0));

    let mut columns = Vec::with_capacity(basis.len());
    let mut degrees = Vec::with_capacity(basis.len());
    for (d, div, g) in tagged {
        let at_cusp = Divisor::point(field.clone(), &Point::Infinity, d);
        let h = function_with_divisor(&at_cusp.sub(&div), None)?;
        let column: Option<Vec<Polynomial<F>>> = g
            .scale(&h)
            .coords()
            .iter()
            .map(|c| c.as_polynomial().cloned())
            .collect();
        columns.push(column.ok_or_else(|| Error::Internal("rescaled germ is not polynomial".into()))?);
        degrees.push(d);
    }
    let a = Matrix::from_columns(&columns)?;
    let a_laurent = a.map(|p| LaurentPolynomial::from_poly(p, 0));
    let diag: Vec<_> = degrees
        .iter()
        .map(|&k| LaurentPolynomial::monomial(field.clone(), field.one(), k))
        .collect();
    let b_laurent = bundle.inverse_transition().mul(&a_laurent)?.scale_columns(&diag);
    let b = b_laurent
        .try_map(LaurentPolynomial::to_polynomial_in_s)
        .ok_or_else(|| Error::Internal("B has positive powers of t".into()))?;
    let cert = SplittingCertificate { degrees, a, b };
    let verdict = verify_certificate(bundle, &cert);
    if !verdict.is_valid() {
        return Err(Error::Internal(format!(
            "constructed certificate fails: {:?}",
            verdict.failures
        )));
    }
    Ok(cert)
}
