//! Splitting types of vector bundles on the projective line.
//!
//! A rank-`n` bundle is presented by a transition matrix `T ∈ GL_n(k[t, t⁻¹])`
//! between the chart-0 frame (coordinate `t`) and the chart-∞ frame
//! (coordinate `s = 1/t`): a section with chart-0 vector `v(t)` and chart-∞
//! vector `w(s)` satisfies `v(t) = T(t)·w(1/t)`. With this convention
//! `T = t^d` presents `O(d)`, which has `d + 1` global sections for `d ≥ 0`.
//!
//! Everything is generic over the base [`Field`]; the prime fields and the
//! rationals are provided, and the aliases below name the concrete types.

pub mod arith;
pub mod bundle;
pub mod divisor;
pub mod error;
pub mod sections;
pub mod splitting;

pub use arith::{Field, FieldKind, LaurentPolynomial, Matrix, Polynomial, PrimeField, RationalFunction, Rationals};
pub use bundle::{Germ, LineSubbundle, VectorBundle};
pub use divisor::{Divisor, Point};
pub use error::{Error, Result};
pub use sections::{global_sections, max_degree_germ, splitting_type_oracle, SectionSpace};
pub use splitting::{
    certificate_from_basis, criterion_check, greedy_basis, random_bundle, repair_boost, repair_filter, split,
    verify_certificate, CertificateFailure, CertificateVerdict, GreedyBasis, RepairOutcome, Splitting,
    SplittingCertificate,
};

pub type QPoly = Polynomial<Rationals>;
pub type QLaurent = LaurentPolynomial<Rationals>;
pub type QRatFn = RationalFunction<Rationals>;
pub type QBundle = VectorBundle<Rationals>;
pub type QGerm = Germ<Rationals>;
pub type QDivisor = Divisor<Rationals>;

pub type FpPoly = Polynomial<PrimeField>;
pub type FpLaurent = LaurentPolynomial<PrimeField>;
pub type FpRatFn = RationalFunction<PrimeField>;
pub type FpBundle = VectorBundle<PrimeField>;
pub type FpGerm = Germ<PrimeField>;
pub type FpDivisor = Divisor<PrimeField>;
