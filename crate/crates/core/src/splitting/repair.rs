//! The two cancellation-repair steps: restricting a cancelling sum to its
//! minimal-order terms, and rescaling the terms to raise the divisor.

use crate::arith::{Field, RationalFunction};
use crate::bundle::{Germ, VectorBundle};
use crate::divisor::{function_with_divisor, Divisor, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RepairOutcome<F: Field> {
    pub coefficients: Vec<RationalFunction<F>>,
    pub new_germ: Germ<F>,
    /// Index of the minimal-degree input germ.
    pub pivot: usize,
    /// Auxiliary point absorbing the degree surplus of the rescaled germs.
    pub auxiliary: Point<F>,
    pub old_degree: i64,
    pub new_degree: i64,
}

/// `None` stands for the order of the zero germ.
fn order_or_infinite<F: Field>(bundle: &VectorBundle<F>, germ: &Germ<F>, p: &Point<F>) -> Result<Option<i64>> {
    if germ.is_zero() {
        return Ok(None);
    }
    bundle.order_at(germ, p).map(Some)
}

fn exceeds(order: Option<i64>, bound: i64) -> bool {
    order.is_none_or(|o| o > bound)
}

/// Given `δ_P(Σα_i) > min_i δ_P(α_i)`, returns the indices `J` attaining the
/// minimum; the sub-sum over `J` still has order above the minimum.
pub fn repair_filter<F: Field>(bundle: &VectorBundle<F>, germs: &[Germ<F>], p: &Point<F>) -> Result<Vec<usize>> {
    if germs.is_empty() {
        return Err(Error::HypothesisViolated("no germs".into()));
    }
    let orders = germs
        .iter()
        .map(|g| bundle.order_at(g, p))
        .collect::<Result<Vec<_>>>()?;
    let min = *orders.iter().min().unwrap();
    let field = bundle.field().clone();
    let total = Germ::sum(field.clone(), bundle.rank(), germs);
    if !exceeds(order_or_infinite(bundle, &total, p)?, min) {
        return Err(Error::HypothesisViolated(format!(
            "order of the sum at {p} equals the minimum {min}"
        )));
    }
    let j: Vec<usize> = (0..germs.len()).filter(|&i| orders[i] == min).collect();
    let sub = Germ::sum(field, bundle.rank(), j.iter().map(|&i| &germs[i]));
    if sub.is_zero() {
        return Err(Error::DegenerateSum);
    }
    if bundle.order_at(&sub, p)? <= min {
        return Err(Error::Internal("minimal-order sub-sum lost the cancellation".into()));
    }
    Ok(j)
}

/// Candidate auxiliary points: ∞ (or `t = 0` when `P = ∞`), then the
/// rational points in the field's enumeration order.
fn auxiliary_candidates<F: Field>(field: &F, p: &Point<F>) -> Vec<Point<F>> {
    let mut out = Vec::new();
    if p.is_infinity() {
        out.push(Point::rational(field.clone(), &field.zero()));
    } else {
        out.push(Point::Infinity);
    }
    out.extend(field.enumerate(4096).iter().map(|a| Point::rational(field.clone(), a)));
    out
}

/// Given germs of equal order at a rational point `P` whose sum has higher
/// order there, finds `f_i` with `f_i(P) = 1` such that
/// `δ(Σ f_i α_i) ≥ δ(α_j)` everywhere and `>` at `P`, where `α_j` has
/// minimal degree. In particular the degree strictly increases.
pub fn repair_boost<F: Field>(bundle: &VectorBundle<F>, germs: &[Germ<F>], p: &Point<F>) -> Result<RepairOutcome<F>> {
    if p.residue_degree() != 1 {
        return Err(Error::UnsupportedResidueDegree(p.residue_degree()));
    }
    if germs.is_empty() {
        return Err(Error::HypothesisViolated("no germs".into()));
    }
    let orders = germs
        .iter()
        .map(|g| bundle.order_at(g, p))
        .collect::<Result<Vec<_>>>()?;
    let common = orders[0];
    if orders.iter().any(|&o| o != common) {
        return Err(Error::UnequalOrders);
    }
    let field = bundle.field().clone();
    let total = Germ::sum(field.clone(), bundle.rank(), germs);
    if !exceeds(order_or_infinite(bundle, &total, p)?, common) {
        return Err(Error::HypothesisViolated(format!(
            "order of the sum at {p} does not exceed {common}"
        )));
    }

    let divisors = germs
        .iter()
        .map(|g| bundle.germ_divisor(g))
        .collect::<Result<Vec<_>>>()?;
    let degrees: Vec<i64> = divisors.iter().map(Divisor::degree).collect();
    let pivot = (0..germs.len()).min_by_key(|&i| degrees[i]).unwrap();
    let base = &divisors[pivot];

    let mut auxiliary = None;
    for q in auxiliary_candidates(&field, p) {
        if q != *p && base.value_at(&q)? == 0 {
            auxiliary = Some(q);
            break;
        }
    }
    let q = auxiliary.ok_or(Error::NoAuxiliaryPoint)?;

    let mut coefficients = Vec::with_capacity(germs.len());
    for (i, div) in divisors.iter().enumerate() {
        let target = base.add(&Divisor::point(field.clone(), &q, degrees[i] - degrees[pivot]));
        coefficients.push(function_with_divisor(&target.sub(div), Some(p))?);
    }
    let new_germ = germs
        .iter()
        .zip(&coefficients)
        .fold(Germ::zero(field.clone(), bundle.rank()), |acc, (g, f)| {
            acc.add(&g.scale(f))
        });
    if new_germ.is_zero() {
        return Err(Error::DegenerateSum);
    }
    let new_div = bundle.germ_divisor(&new_germ)?;
    if !new_div.dominates(base) || new_div.value_at(p)? <= base.value_at(p)? {
        return Err(Error::Internal(
            "boosted divisor does not dominate the pivot divisor".into(),
        ));
    }
    Ok(RepairOutcome {
        coefficients,
        new_germ,
        pivot,
        auxiliary: q,
        old_degree: degrees[pivot],
        new_degree: new_div.degree(),
    })
}
