//! Greedy computation of the splitting type, with a Birkhoff certificate.

mod certificate;
mod random;
mod repair;

pub use certificate::{
    certificate_from_basis, verify_certificate, CertificateFailure, CertificateVerdict, SplittingCertificate,
};
pub use random::{random_bundle, random_unimodular_s, random_unimodular_t};
pub use repair::{repair_boost, repair_filter, RepairOutcome};

use crate::arith::{laurent_span, Field, Matrix, RationalFunction};
use crate::bundle::{Germ, VectorBundle};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::sections::{max_degree_germ_from, splitting_type_oracle_cached, SectionCache};

/// Germs chosen one at a time, each of maximal degree outside the span of
/// the previous ones. Degrees are non-increasing.
#[derive(Debug, Clone)]
pub struct GreedyBasis<F: Field> {
    pub germs: Vec<Germ<F>>,
    pub degrees: Vec<i64>,
    pub divisors: Vec<Divisor<F>>,
}

pub fn greedy_basis<F: Field>(bundle: &VectorBundle<F>) -> Result<GreedyBasis<F>> {
    greedy_basis_cached(&mut SectionCache::new(bundle))
}

pub fn greedy_basis_cached<F: Field>(cache: &mut SectionCache<'_, F>) -> Result<GreedyBasis<F>> {
    let bundle = cache.bundle().clone();
    let (_, mut start) = laurent_span(bundle.transition())?;
    let mut basis = GreedyBasis {
        germs: Vec::new(),
        degrees: Vec::new(),
        divisors: Vec::new(),
    };
    for _ in 0..bundle.rank() {
        let (germ, d) = max_degree_germ_from(cache, &basis.germs, start)?;
        basis.divisors.push(bundle.germ_divisor(&germ)?);
        basis.germs.push(germ);
        basis.degrees.push(d);
        start = d;
    }
    Ok(basis)
}

/// Whether a K-basis of germs has degrees summing to `c1(E)`, which holds
/// exactly when the germs split the bundle.
pub fn criterion_check<F: Field>(bundle: &VectorBundle<F>, basis: &[Germ<F>]) -> Result<bool> {
    let n = bundle.rank();
    if basis.len() != n || basis.iter().any(|g| g.rank() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: basis.len(),
        });
    }
    let columns: Vec<Vec<RationalFunction<F>>> = basis.iter().map(|g| g.coords().to_vec()).collect();
    if Matrix::from_columns(&columns)?.rank() != n {
        return Err(Error::DependentGerms);
    }
    let mut total = 0;
    for g in basis {
        total += bundle.germ_degree(g)?;
    }
    Ok(total == bundle.c1())
}

#[derive(Debug, Clone)]
pub struct Splitting<F: Field> {
    /// Non-increasing.
    pub splitting_type: Vec<i64>,
    pub certificate: SplittingCertificate<F>,
    pub basis: GreedyBasis<F>,
}

/// Splitting type and certificate via the greedy basis, cross-checked
/// against the cohomological count.
pub fn split<F: Field>(bundle: &VectorBundle<F>) -> Result<Splitting<F>> {
    let mut cache = SectionCache::new(bundle);
    let expected = splitting_type_oracle_cached(&mut cache)?;
    let basis = greedy_basis_cached(&mut cache)?;
    if !criterion_check(bundle, &basis.germs)? {
        return Err(Error::CriterionFailed);
    }
    let certificate = certificate_from_basis(bundle, &basis.germs)?;
    if certificate.degrees != expected {
        return Err(Error::Internal(format!(
            "greedy type {:?} disagrees with section count {:?}",
            certificate.degrees, expected
        )));
    }
    Ok(Splitting {
        splitting_type: certificate.degrees.clone(),
        certificate,
        basis,
    })
}
