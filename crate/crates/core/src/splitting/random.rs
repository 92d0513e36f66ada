use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, LaurentPolynomial, Matrix};
use crate::bundle::VectorBundle;
use crate::error::{Error, Result};

fn random_nonzero<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let c = field.random_elem(rng);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

/// Product of `ops` random elementary matrices whose entries are Laurent
/// polynomials with exponents in `[0, 2]` times `sign`.
fn random_elementary_product<F: Field, R: Rng + ?Sized>(
    field: &F,
    rank: usize,
    ops: usize,
    sign: i64,
    rng: &mut R,
) -> Matrix<LaurentPolynomial<F>> {
    let one = LaurentPolynomial::one(field.clone());
    let mut m = Matrix::identity(rank, &one);
    for _ in 0..ops {
        let mut e = Matrix::identity(rank, &one);
        if rank >= 2 && rng.gen_bool(0.75) {
            let i = rng.gen_range(0..rank);
            let j = (i + rng.gen_range(1..rank)) % rank;
            let deg = rng.gen_range(0..=2i64);
            let p = LaurentPolynomial::from_terms(field.clone(), (0..=deg).map(|k| (sign * k, field.random_elem(rng))));
            e.set(i, j, p);
        } else {
            let i = rng.gen_range(0..rank);
            e.set(
                i,
                i,
                LaurentPolynomial::monomial(field.clone(), random_nonzero(field, rng), 0),
            );
        }
        m = m.mul(&e).expect("square");
    }
    m
}

/// Random matrix in `GL_n(k[t])`.
pub fn random_unimodular_t<F: Field, R: Rng + ?Sized>(
    field: &F,
    rank: usize,
    ops: usize,
    rng: &mut R,
) -> Matrix<LaurentPolynomial<F>> {
    random_elementary_product(field, rank, ops, 1, rng)
}

/// Random matrix in `GL_n(k[1/t])`.
pub fn random_unimodular_s<F: Field, R: Rng + ?Sized>(
    field: &F,
    rank: usize,
    ops: usize,
    rng: &mut R,
) -> Matrix<LaurentPolynomial<F>> {
    random_elementary_product(field, rank, ops, -1, rng)
}

/// Bundle isomorphic to `⊕ O(d_i)`, presented as `U·diag(t^{d_i})·W` with `U`
/// and `W` random products of `op_count` elementary matrices over `k[t]` and
/// `k[1/t]` respectively. Returns the bundle and the sorted degrees.
pub fn random_bundle<F: Field>(
    seed: u64,
    field: &F,
    rank: usize,
    degrees: &[i64],
    op_count: usize,
) -> Result<(VectorBundle<F>, Vec<i64>)> {
    if rank == 0 || degrees.len() != rank {
        return Err(Error::DimensionMismatch {
            expected: rank,
            found: degrees.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = random_unimodular_t(field, rank, op_count, &mut rng);
    let w = random_unimodular_s(field, rank, op_count, &mut rng);
    let diag = Matrix::diagonal(
        degrees
            .iter()
            .map(|&d| LaurentPolynomial::monomial(field.clone(), field.one(), d))
            .collect(),
    );
    let transition = u.mul(&diag)?.mul(&w)?;
    let bundle = VectorBundle::new(field.clone(), rank, transition)?;
    let mut truth = degrees.to_vec();
    truth.sort_unstable_by(|a, b| b.cmp(a));
    Ok((bundle, truth))
}
