//! Squarefree decomposition, gcd-free bases, and full factorization over F_p.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// `f = unit · ∏ factors[i].0 ^ factors[i].1`, factors monic, squarefree and
/// pairwise coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Polynomial<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    pub fn expand(&self, field: &F) -> Polynomial<F> {
        self.factors
            .iter()
            .fold(Polynomial::constant(field.clone(), self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            })
    }
}

/// Squarefree decomposition (Yun in characteristic 0, Musser-style p-th root
/// extraction in characteristic p).
pub fn factor_squarefree<F: Field>(f: &Polynomial<F>) -> Result<Factorization<F>> {
    let unit = f.leading_coeff().ok_or(Error::ZeroInput("polynomial"))?.clone();
    let monic = f.monic();
    let mut factors = if f.field().characteristic() == 0 {
        yun(&monic)
    } else {
        sff_char_p(&monic)
    };
    factors.sort();
    Ok(Factorization { unit, factors })
}

fn yun<F: Field>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn sff_char_p<F: Field>(f: &Polynomial<F>) -> Vec<(Polynomial<F>, u32)> {
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        // c is a polynomial in t^p; over F_p its p-th root just compresses exponents.
        let root_coeffs = c.coeffs().iter().step_by(p).cloned().collect();
        let root = Polynomial::new(f.field().clone(), root_coeffs);
        for (g, m) in sff_char_p(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Monic, pairwise coprime, nonconstant polynomials such that every input
/// squarefree polynomial is a product of a subset of them (a gcd-free basis).
pub fn coprime_basis<F: Field>(polys: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut list: Vec<Polynomial<F>> = polys.iter().filter(|p| !p.is_constant()).map(|p| p.monic()).collect();
    list.sort();
    list.dedup();
    'outer: loop {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                let g = list[i].gcd(&list[j]);
                if g.is_constant() {
                    continue;
                }
                let b = list.swap_remove(j);
                let a = list.swap_remove(i);
                for piece in [a.exact_div(&g), b.exact_div(&g)].into_iter().flatten() {
                    if !piece.is_constant() {
                        list.push(piece);
                    }
                }
                list.push(g);
                list.sort();
                list.dedup();
                continue 'outer;
            }
        }
        break;
    }
    list
}

/// `base^exp mod modulus`.
fn powmod<F: Field>(base: &Polynomial<F>, exp: &BigUint, modulus: &Polynomial<F>) -> Polynomial<F> {
    let mut acc = Polynomial::one(base.field().clone());
    let b = base.rem(modulus);
    for i in (0..exp.bits()).rev() {
        acc = (&acc * &acc).rem(modulus);
        if exp.bit(i) {
            acc = (&acc * &b).rem(modulus);
        }
    }
    acc
}

/// Full factorization into monic irreducibles over F_p, with multiplicities.
pub fn factor_irreducible(f: &Polynomial<PrimeField>) -> Result<Factorization<PrimeField>> {
    let sq = factor_squarefree(f)?;
    let mut factors = Vec::new();
    for (g, m) in &sq.factors {
        for (h, d) in distinct_degree(g) {
            for irr in equal_degree(&h, d)? {
                factors.push((irr, *m));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit: sq.unit, factors })
}

/// Splits a monic squarefree `g` into products of irreducibles of equal degree.
fn distinct_degree(g: &Polynomial<PrimeField>) -> Vec<(Polynomial<PrimeField>, usize)> {
    let field = *g.field();
    let p = BigUint::from(field.modulus());
    let t = Polynomial::var(field);
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = t.clone();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = powmod(&h, &p, &rest);
        let gd = rest.gcd(&(&h - &t));
        if !gd.is_constant() {
            rest = rest.exact_div(&gd).expect("gcd divides");
            h = h.rem(&rest);
            out.push((gd, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&n| n > 0) {
        out.push((rest, deg));
    }
    out
}

const EDF_ATTEMPTS: usize = 200;

/// Cantor–Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree(g: &Polynomial<PrimeField>, d: usize) -> Result<Vec<Polynomial<PrimeField>>> {
    let n = g.degree().expect("nonzero");
    if n == d {
        return Ok(vec![g.clone()]);
    }
    let field = *g.field();
    let p = field.modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64 ^ ((d as u64) << 32));
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    for _ in 0..EDF_ATTEMPTS {
        let a = Polynomial::new(field, (0..n).map(|_| field.random_elem(&mut rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1)) mod g
            let mut acc = a.rem(g);
            let mut pw = acc.clone();
            for _ in 1..d {
                pw = (&pw * &pw).rem(g);
                acc = &acc + &pw;
            }
            acc
        } else {
            &powmod(&a, &exp, g) - &Polynomial::one(field)
        };
        let s = g.gcd(&b);
        if !s.is_constant() && s.degree() != g.degree() {
            let other = g.exact_div(&s).expect("gcd divides");
            let mut out = equal_degree(&s, d)?;
            out.extend(equal_degree(&other, d)?);
            out.sort();
            return Ok(out);
        }
    }
    trial_division_irreducibles(g)
}

/// Exhaustive trial division by enumerated monic polynomials of degree ≤ deg/2.
/// Only feasible at desk scale (degree ≤ 8, small p).
pub fn trial_division_irreducibles(g: &Polynomial<PrimeField>) -> Result<Vec<Polynomial<PrimeField>>> {
    let field = *g.field();
    let p = field.modulus();
    let n = g.degree().ok_or(Error::ZeroInput("polynomial"))?;
    let budget = (p as f64).powi((n / 2) as i32);
    if n > 8 || budget > 5e6 {
        return Err(Error::Internal(format!(
            "trial division out of range for degree {n} over F_{p}"
        )));
    }
    let mut rest = g.monic();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let count = p.pow(d as u32);
        let mut k = 0;
        while k < count {
            let mut x = k;
            let mut cs: Vec<u64> = (0..d)
                .map(|_| {
                    let c = x % p;
                    x /= p;
                    c
                })
                .collect();
            cs.push(1);
            let cand = Polynomial::new(field, cs);
            if let Some(q) = rest.exact_div(&cand) {
                out.push(cand);
                rest = q;
                continue;
            }
            k += 1;
        }
        d += 1;
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out.sort();
    Ok(out)
}

pub fn is_irreducible(g: &Polynomial<PrimeField>) -> bool {
    match factor_irreducible(g) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;

    fn q(cs: &[i64]) -> Polynomial<Rationals> {
        Polynomial::from_i64s(Rationals, cs)
    }

    fn fp(p: u64, cs: &[i64]) -> Polynomial<PrimeField> {
        Polynomial::from_i64s(PrimeField::new(p).unwrap(), cs)
    }

    #[test]
    fn squarefree_over_rationals() {
        // t^3 - t is already squarefree
        let f = q(&[0, -1, 0, 1]);
        let sq = factor_squarefree(&f).unwrap();
        assert_eq!(sq.factors, vec![(f.clone(), 1)]);
        // (t-1)^2 (t+1)
        let g = &q(&[-1, 1]).pow(2) * &q(&[1, 1]);
        let sq = factor_squarefree(&g.scale(&Rationals.from_i64(3))).unwrap();
        assert_eq!(sq.factors, vec![(q(&[-1, 1]), 2), (q(&[1, 1]), 1)]);
        assert_eq!(sq.unit, Rationals.from_i64(3));
    }

    #[test]
    fn squarefree_rejects_zero() {
        assert_eq!(factor_squarefree(&q(&[])), Err(Error::ZeroInput("polynomial")));
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        // (t+1)^2 over F2 has zero... derivative 2(t+1) = 0
        let f = fp(2, &[1, 0, 1]);
        let sq = factor_squarefree(&f).unwrap();
        assert_eq!(sq.factors, vec![(fp(2, &[1, 1]), 2)]);
        // t^3 (t+2)^5 over F3
        let g = &fp(3, &[0, 1]).pow(3) * &fp(3, &[2, 1]).pow(5);
        let sq = factor_squarefree(&g).unwrap();
        assert_eq!(sq.expand(&PrimeField::new(3).unwrap()), g);
        assert_eq!(sq.factors, vec![(fp(3, &[0, 1]), 3), (fp(3, &[2, 1]), 5)]);
    }

    #[test]
    fn full_factorization_over_f5() {
        let sq = factor_irreducible(&fp(5, &[0, -1, 0, 1])).unwrap();
        assert_eq!(
            sq.factors,
            vec![(fp(5, &[0, 1]), 1), (fp(5, &[1, 1]), 1), (fp(5, &[4, 1]), 1)]
        );
    }

    #[test]
    fn irreducible_over_f2() {
        // t^2 + t + 1 has no roots in F2
        let f = fp(2, &[1, 1, 1]);
        assert!((0..2).all(|a| f.eval(&a) != 0));
        assert!(is_irreducible(&f));
        let sq = factor_irreducible(&f).unwrap();
        assert_eq!(sq.factors, vec![(f, 1)]);
    }

    #[test]
    fn edf_agrees_with_trial_division() {
        // product of two quadratics and a cubic over F3, split by degree
        let a = fp(3, &[1, 0, 1]); // t^2 + 1
        let b = fp(3, &[2, 1, 1]); // t^2 + t + 2
        let c = fp(3, &[1, 2, 0, 1]); // t^3 + 2t + 1
        let f = &(&a * &b) * &c;
        let mut full: Vec<_> = factor_irreducible(&f)
            .unwrap()
            .factors
            .into_iter()
            .map(|x| x.0)
            .collect();
        full.sort();
        assert_eq!(full, trial_division_irreducibles(&f).unwrap());
        let mut expected = vec![a, b, c];
        expected.sort();
        assert_eq!(full, expected);
    }

    #[test]
    fn coprime_basis_splits_overlaps() {
        let basis = coprime_basis(&[q(&[0, -1, 1]), q(&[0, 1])]);
        assert_eq!(basis, vec![q(&[-1, 1]), q(&[0, 1])]);
        let basis = coprime_basis(&[q(&[2, -3, 1]), q(&[-2, 1])]);
        assert_eq!(basis, vec![q(&[-2, 1]), q(&[-1, 1])]);
        let disjoint = coprime_basis(&[q(&[1, 0, 1]), q(&[0, 1])]);
        assert_eq!(disjoint, vec![q(&[0, 1]), q(&[1, 0, 1])]);
    }
}
