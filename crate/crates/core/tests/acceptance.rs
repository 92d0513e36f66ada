//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{extension, fp, random_degrees, random_germ, random_nonzero_poly, random_ratfunc};
use p1split::arith::{laurent_to_rational, Field, Polynomial, RationalFunction, Rationals};
use p1split::divisor::principal_divisor;
use p1split::sections::global_sections;
use p1split::splitting::certificate_from_basis;
use p1split::{
    random_bundle, repair_boost, repair_filter, split, splitting_type_oracle, verify_certificate, CertificateFailure,
    Divisor, Error, Germ, Point, VectorBundle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:.2?}, limit {limit:?}"))
}

fn sorted_desc(d: &[i64]) -> Vec<i64> {
    let mut v = d.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Splits, verifies the certificate and the degree sum, and returns the type.
fn checked_split<F: Field>(e: &VectorBundle<F>) -> Result<Vec<i64>, String> {
    let s = split(e).map_err(|err| format!("split failed: {err}"))?;
    let verdict = verify_certificate(e, &s.certificate);
    ensure(verdict.is_valid(), || {
        format!("certificate rejected: {:?}", verdict.failures)
    })?;
    ensure(s.splitting_type.iter().sum::<i64>() == e.c1(), || {
        "type does not sum to c1".into()
    })?;
    Ok(s.splitting_type)
}

fn line_bundle_sections() -> Outcome {
    let start = Instant::now();
    for d in -5..=10i64 {
        let e = VectorBundle::diagonal(Rationals, &[d]).unwrap();
        let h0 = global_sections(&e).dimension();
        let expected = (d + 1).max(0) as usize;
        ensure(h0 == expected, || format!("h0(O({d})) = {h0}, expected {expected}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn diagonal_recovery() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..120 {
        let rank = rng.gen_range(1..=4);
        let d = random_degrees(rank, -5, 5, &mut rng);
        let e = VectorBundle::diagonal(Rationals, &d).unwrap();
        let ty = checked_split(&e)?;
        ensure(ty == sorted_desc(&d), || format!("diag {d:?} split as {ty:?}"))?;
    }
    within(start, Duration::from_secs(5))
}

fn extension_pair_over<F: Field>(field: &F) -> Result<(Vec<i64>, Vec<i64>), String> {
    let split_ext = extension(field, &[(0, 1)]);
    let cob = extension(field, &[(-1, 1)]);
    Ok((checked_split(&split_ext)?, checked_split(&cob)?))
}

fn extension_pair() -> Outcome {
    let start = Instant::now();
    let q = extension_pair_over(&Rationals)?;
    let f5 = extension_pair_over(&fp(5))?;
    ensure(q == (vec![0, 0], vec![1, -1]), || format!("over Q: {q:?}"))?;
    ensure(f5 == q, || format!("over F5: {f5:?}"))?;
    within(start, Duration::from_secs(1))
}

fn triangle_instance<F: Field>(field: &F, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let rank = rng.gen_range(1..=4);
    let d = random_degrees(rank, -4, 4, rng);
    let ops = rng.gen_range(0..=8);
    let (e, truth) = random_bundle(seed, field, rank, &d, ops).map_err(|err| err.to_string())?;
    ensure(e.c1() == d.iter().sum::<i64>(), || "generator c1 mismatch".into())?;
    let oracle = splitting_type_oracle(&e).map_err(|err| err.to_string())?;
    let greedy = checked_split(&e)?;
    ensure(truth == greedy && greedy == oracle, || {
        format!("seed {seed} {d:?} ops {ops}: truth {truth:?} greedy {greedy:?} oracle {oracle:?}")
    })
}

fn oracle_triangle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..250u64 {
        match i % 5 {
            0 => triangle_instance(&fp(2), i, &mut rng)?,
            1 => triangle_instance(&fp(3), i, &mut rng)?,
            2 => triangle_instance(&fp(5), i, &mut rng)?,
            3 => triangle_instance(&fp(101), i, &mut rng)?,
            _ => triangle_instance(&Rationals, i, &mut rng)?,
        }
    }
    within(start, Duration::from_secs(120))
}

fn small_bundle<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> VectorBundle<F> {
    let rank = rng.gen_range(1..=3);
    let d = random_degrees(rank, -2, 2, rng);
    random_bundle(rng.gen(), field, rank, &d, rng.gen_range(0..=4))
        .unwrap()
        .0
}

fn divisor_calculus_cases<F: Field>(field: &F, count: usize, rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..count {
        let e = small_bundle(field, rng);
        let f = random_ratfunc(field, 3, rng);
        let a = random_germ(field, e.rank(), 2, rng);
        let lhs = e.germ_divisor(&a.scale(&f)).map_err(|err| err.to_string())?;
        let rhs = principal_divisor(&f).unwrap().add(&e.germ_divisor(&a).unwrap());
        ensure(lhs == rhs, || {
            format!("δ(fα) = {} but δ(f) + δ(α) = {}", lhs.render(), rhs.render())
        })?;
    }
    let mut done = 0;
    while done < count {
        let e = small_bundle(field, rng);
        let m = rng.gen_range(2..=4);
        let mut germs: Vec<Germ<F>> = (0..m - 1).map(|_| random_germ(field, e.rank(), 2, rng)).collect();
        let last = if rng.gen_bool(0.5) {
            // force cancellation at a random rational point
            let partial = Germ::sum(field.clone(), e.rank(), &germs).neg();
            let bump = RationalFunction::from_poly(Polynomial::linear(field.clone(), &field.random_elem(rng)));
            partial.add(&random_germ(field, e.rank(), 2, rng).scale(&bump))
        } else {
            random_germ(field, e.rank(), 2, rng)
        };
        germs.push(last);
        let total = Germ::sum(field.clone(), e.rank(), &germs);
        if total.is_zero() || germs.iter().any(Germ::is_zero) {
            continue;
        }
        let divs: Vec<Divisor<F>> = germs.iter().map(|g| e.germ_divisor(g).unwrap()).collect();
        let floor = Divisor::pointwise_min(&divs).unwrap();
        let sum_div = e.germ_divisor(&total).unwrap();
        ensure(sum_div.dominates(&floor), || {
            format!("δ(Σα) = {} below min {}", sum_div.render(), floor.render())
        })?;
        done += 1;
    }
    Ok(())
}

fn divisor_calculus_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    divisor_calculus_cases(&Rationals, 250, &mut rng)?;
    divisor_calculus_cases(&fp(5), 125, &mut rng)?;
    divisor_calculus_cases(&fp(101), 125, &mut rng)?;
    within(start, Duration::from_secs(30))
}

/// Germs whose sum has higher order at `p` than the minimum of their orders,
/// built in the local frame at `p` and transported to the chart-0 frame.
fn cancelling_family<F: Field>(e: &VectorBundle<F>, p: &Point<F>, rng: &mut ChaCha8Rng) -> Vec<Germ<F>> {
    let field = e.field();
    let n = e.rank();
    let regular = |rng: &mut ChaCha8Rng| -> Germ<F> {
        loop {
            let coords: Vec<RationalFunction<F>> = (0..n)
                .map(|_| {
                    let f = RationalFunction::from_poly(common::random_poly(field, 2, rng));
                    if p.is_infinity() {
                        f.invert_variable()
                    } else {
                        f
                    }
                })
                .collect();
            let g = Germ::new(coords);
            if !g.is_zero() {
                return g;
            }
        }
    };
    let uniformizer = match p.rational_coordinate() {
        Some(a) => RationalFunction::from_poly(Polynomial::linear(field.clone(), &a)),
        None => RationalFunction::var(field.clone()).inv().unwrap(),
    };
    let m = rng.gen_range(2..=4);
    let mut local: Vec<Germ<F>> = (0..m - 1)
        .map(|_| {
            let g = regular(rng);
            if rng.gen_bool(0.3) {
                g.scale(&uniformizer)
            } else {
                g
            }
        })
        .collect();
    let tail = regular(rng).scale(&uniformizer.pow(2));
    local.push(Germ::sum(field.clone(), n, &local).neg().add(&tail));
    if p.is_infinity() {
        let t = laurent_to_rational(e.transition());
        local
            .iter()
            .map(|g| Germ::new(t.mul_vec(g.coords()).unwrap()))
            .collect()
    } else {
        local
    }
}

fn repair_cases<F: Field>(field: &F, count: usize, rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let (mut filtered, mut boosted) = (0, 0);
    let mut attempts = 0;
    while filtered < count || boosted < count {
        attempts += 1;
        ensure(attempts < 50 * count, || "too few valid instances".into())?;
        let e = small_bundle(field, rng);
        let p = common::random_rational_point(field, rng);
        let germs = cancelling_family(&e, &p, rng);
        if germs.iter().any(Germ::is_zero) {
            continue;
        }
        let j = match repair_filter(&e, &germs, &p) {
            Ok(j) => j,
            Err(Error::HypothesisViolated(_) | Error::DegenerateSum) => continue,
            Err(err) => return Err(format!("repair_filter: {err}")),
        };
        let orders: Vec<i64> = germs.iter().map(|g| e.order_at(g, &p).unwrap()).collect();
        let min = *orders.iter().min().unwrap();
        let subset: Vec<Germ<F>> = j.iter().map(|&i| germs[i].clone()).collect();
        let sub = Germ::sum(field.clone(), e.rank(), &subset);
        ensure(j.iter().all(|&i| orders[i] == min), || "J is not the argmin set".into())?;
        ensure(e.order_at(&sub, &p).unwrap() > min, || {
            "J-subsum has no order jump".into()
        })?;
        filtered += 1;

        let out = match repair_boost(&e, &subset, &p) {
            Ok(out) => out,
            Err(Error::DegenerateSum) => continue,
            Err(err) => return Err(format!("repair_boost: {err}")),
        };
        let pivot = e.germ_divisor(&subset[out.pivot]).unwrap();
        let new = e.germ_divisor(&out.new_germ).unwrap();
        ensure(out.new_degree > out.old_degree, || "degree did not increase".into())?;
        ensure(
            new.degree() == out.new_degree && pivot.degree() == out.old_degree,
            || "degree bookkeeping".into(),
        )?;
        ensure(new.dominates(&pivot), || {
            format!("{} does not dominate {}", new.render(), pivot.render())
        })?;
        ensure(new.value_at(&p).unwrap() > pivot.value_at(&p).unwrap(), || {
            "no strict gain at P".into()
        })?;
        boosted += 1;
    }
    Ok((filtered, boosted))
}

fn repair_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    repair_cases(&fp(5), 100, &mut rng)?;
    repair_cases(&Rationals, 100, &mut rng)?;
    within(start, Duration::from_secs(30))
}

fn twist_instance<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> Outcome {
    let rank = rng.gen_range(1..=3);
    let d = random_degrees(rank, -3, 3, rng);
    let (e, _) = random_bundle(rng.gen(), field, rank, &d, rng.gen_range(0..=6)).unwrap();
    let base = checked_split(&e)?;
    for k in -3..=3 {
        let twisted = e.twist(k);
        ensure(twisted.c1() == e.c1() + k * rank as i64, || "twist c1".into())?;
        let ty = checked_split(&twisted)?;
        let expected: Vec<i64> = base.iter().map(|d| d + k).collect();
        ensure(ty == expected, || format!("twist {k}: {ty:?} vs {expected:?}"))?;
    }
    Ok(())
}

fn structural_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        if i % 2 == 0 {
            twist_instance(&Rationals, &mut rng)?;
        } else {
            twist_instance(&fp(3), &mut rng)?;
        }
    }
    Ok(())
}

fn tamper_instance<F: Field>(field: &F, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let rank = rng.gen_range(2..=3);
    let d = random_degrees(rank, -3, 3, rng);
    let (e, _) = random_bundle(seed, field, rank, &d, rng.gen_range(1..=6)).unwrap();
    let s = split(&e).map_err(|err| err.to_string())?;
    let cert = certificate_from_basis(&e, &s.basis.germs).map_err(|err| err.to_string())?;
    ensure(verify_certificate(&e, &cert).is_valid(), || {
        "untampered certificate rejected".into()
    })?;

    let mut bumped = cert.clone();
    bumped.degrees[0] += 1;
    let got = verify_certificate(&e, &bumped).primary();
    ensure(got == Some(CertificateFailure::DegreeSum), || {
        format!("degree bump: {got:?}")
    })?;

    let mut bad_a = cert.clone();
    let t = Polynomial::var(field.clone());
    let col = rng.gen_range(0..rank);
    for i in 0..rank {
        let x = bad_a.a.get(i, col) * &t;
        bad_a.a.set(i, col, x);
    }
    let got = verify_certificate(&e, &bad_a).primary();
    ensure(got == Some(CertificateFailure::ANotUnimodular), || {
        format!("non-unimodular A: {got:?}")
    })?;

    // B·(I + c·s^k·E_ij) is still unimodular over k[s] but breaks the identity
    let mut bad_b = cert.clone();
    let i = rng.gen_range(0..rank);
    let j = (i + rng.gen_range(1..rank)) % rank;
    let c = random_nonzero_poly(field, 2, rng);
    for r in 0..rank {
        let x = bad_b.b.get(r, j) + &(bad_b.b.get(r, i) * &c);
        bad_b.b.set(r, j, x);
    }
    let got = verify_certificate(&e, &bad_b).failures;
    ensure(got == vec![CertificateFailure::IdentityMismatch], || {
        format!("wrong B: {got:?}")
    })
}

fn tamper_detection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..30u64 {
        if i % 2 == 0 {
            tamper_instance(&Rationals, i, &mut rng)?;
        } else {
            tamper_instance(&fp(5), i, &mut rng)?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 line-bundle section count", line_bundle_sections),
        ("2 diagonal recovery", diagonal_recovery),
        ("3 extension pair over F5 and Q", extension_pair),
        ("4 oracle triangle on random bundles", oracle_triangle),
        ("5 divisor calculus", divisor_calculus_suite),
        ("6 cancellation repair", repair_suite),
        ("7 degree sum and twist invariants", structural_invariants),
        ("8 certificate tamper detection", tamper_detection),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({:.2?}): {why}", start.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
