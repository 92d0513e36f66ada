//! Linear algebra over the base field.

use super::field::Field;

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in
/// place and returns the pivot columns.
pub fn rref<F: Field>(field: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(piv, r);
        let inv = field.inv(&rows[r][col]).unwrap();
        for x in &mut rows[r][col..] {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !field.is_zero(&pivot_row[c]) {
                    row[c] = field.sub(&row[c], &field.mul(&factor, &pivot_row[c]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` in the canonical RREF order: one vector per free
/// column, ascending, with a 1 in that column.
pub fn nullspace<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let pivots = rref(field, &mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> usize {
    rref(field, &mut rows, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{PrimeField, Rationals};

    #[test]
    fn nullspace_small() {
        let f = Rationals;
        let rows = vec![
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
            vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
        ];
        let ns = nullspace(&f, rows.clone(), 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert!(f.is_zero(&dot));
            }
        }
    }

    #[test]
    fn rank_mod_p() {
        let f = PrimeField::new(3).unwrap();
        // rows (1,1), (2,2) are dependent mod 3
        assert_eq!(rank(&f, vec![vec![1, 1], vec![2, 2]], 2), 1);
        assert_eq!(rank(&f, vec![vec![1, 1], vec![1, 2]], 2), 2);
        assert_eq!(nullspace(&f, vec![], 2).len(), 2);
    }
}
