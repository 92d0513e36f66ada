use std::fmt;

use super::field::Field;
use super::laurent::LaurentPolynomial;
use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Commutative ring element usable as a matrix entry. Zero and one are
/// produced from an existing element because the base field is a runtime value.
pub trait RingElement: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Ring elements with inverses of nonzero elements.
pub trait FieldElement: RingElement {
    fn inv(&self) -> Option<Self>;
}

macro_rules! ring_element_impl {
    ($ty:ident) => {
        impl<F: Field> RingElement for $ty<F> {
            fn zero_like(&self) -> Self {
                $ty::zero(self.field().clone())
            }
            fn one_like(&self) -> Self {
                $ty::one(self.field().clone())
            }
            fn is_zero(&self) -> bool {
                $ty::is_zero(self)
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

ring_element_impl!(Polynomial);
ring_element_impl!(LaurentPolynomial);
ring_element_impl!(RationalFunction);

impl<F: Field> FieldElement for RationalFunction<F> {
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: RingElement> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(cols: &[Vec<S>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if let Some(bad) = cols.iter().find(|col| col.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: bad.len(),
            });
        }
        let entries = (0..r)
            .flat_map(|i| cols.iter().map(move |col| col[i].clone()))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn identity(n: usize, proto: &S) -> Self {
        Self::diagonal(vec![proto.one_like(); n])
    }

    pub fn diagonal(diag: Vec<S>) -> Self {
        let n = diag.len();
        let zero = diag[0].zero_like();
        let mut entries = vec![zero; n * n];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T, G: FnMut(&S) -> T>(&self, f: G) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<T, G: FnMut(&S) -> Option<T>>(&self, f: G) -> Option<Matrix<T>> {
        let entries = self.entries.iter().map(f).collect::<Option<Vec<T>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let zero = self.entries[0].zero_like();
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.entries[0].zero_like(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|e| e.mul(c))
    }

    /// Multiplies column `j` by `c[j]`.
    pub fn scale_columns(&self, c: &[S]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, cj) in c.iter().enumerate() {
                let v = out.get(i, j).mul(cj);
                out.set(i, j, v);
            }
        }
        out
    }

    /// Cofactor expansion; only sensible for small sizes or when no
    /// division is available.
    pub fn det_expansion(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor_expansion(0, &cols))
    }

    fn minor_expansion(&self, row: usize, cols: &[usize]) -> S {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.entries[0].zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor_expansion(row + 1, &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
}

impl<S: FieldElement> Matrix<S> {
    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = self.entries[0].one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(det.zero_like());
            };
            if piv != col {
                a.swap(piv, col);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let inv = a[col][col].inv().unwrap();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv);
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let one = self.entries[0].one_like();
        let zero = one.zero_like();
        let mut a = self.to_rows();
        let mut inv: Vec<Vec<S>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].inv().unwrap();
            for c in 0..n {
                a[col][c] = a[col][c].mul(&p);
                inv[col][c] = inv[col][c].mul(&p);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let v = a[r][c].sub(&factor.mul(&a[col][c]));
                    a[r][c] = v;
                    let w = inv[r][c].sub(&factor.mul(&inv[col][c]));
                    inv[r][c] = w;
                }
            }
        }
        Self::from_rows(inv)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(piv, rank);
            let inv = a[rank][col].inv().unwrap();
            for r in rank + 1..rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].mul(&inv);
                let (top, rest) = a.split_at_mut(r);
                for (x, y) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                    *x = x.sub(&factor.mul(y));
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.entries.chunks(self.cols).collect();
        f.debug_list().entries(rows).finish()
    }
}

pub fn matrix_inverse<F: Field>(m: &Matrix<RationalFunction<F>>) -> Result<Matrix<RationalFunction<F>>> {
    m.inverse()
}

/// Minimum and maximum exponent over all nonzero terms.
pub fn laurent_span<F: Field>(m: &Matrix<LaurentPolynomial<F>>) -> Result<(i64, i64)> {
    let lo = m.entries().iter().filter_map(LaurentPolynomial::lo).min();
    let hi = m.entries().iter().filter_map(LaurentPolynomial::hi).max();
    lo.zip(hi).ok_or(Error::AllZeroMatrix)
}

pub fn laurent_to_rational<F: Field>(m: &Matrix<LaurentPolynomial<F>>) -> Matrix<RationalFunction<F>> {
    m.map(LaurentPolynomial::to_rational_function)
}

pub fn rational_to_laurent<F: Field>(m: &Matrix<RationalFunction<F>>) -> Option<Matrix<LaurentPolynomial<F>>> {
    m.try_map(RationalFunction::to_laurent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;

    type L = LaurentPolynomial<Rationals>;

    fn l(terms: &[(i64, i64)]) -> L {
        L::from_i64_terms(Rationals, terms)
    }

    fn lmat(rows: Vec<Vec<L>>) -> Matrix<L> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let id = laurent_to_rational(&Matrix::identity(2, &l(&[(0, 1)])));
        assert_eq!(matrix_inverse(&id).unwrap(), id);

        let m = lmat(vec![vec![l(&[(-1, 1)]), l(&[(-1, 1)])], vec![l(&[]), l(&[(1, 1)])]]);
        let expected = lmat(vec![vec![l(&[(1, 1)]), l(&[(-1, -1)])], vec![l(&[]), l(&[(-1, 1)])]]);
        let inv = matrix_inverse(&laurent_to_rational(&m)).unwrap();
        assert_eq!(rational_to_laurent(&inv).unwrap(), expected);

        let singular = lmat(vec![vec![l(&[(1, 1)]), l(&[(0, 1)])], vec![l(&[(1, 1)]), l(&[(0, 1)])]]);
        assert_eq!(matrix_inverse(&laurent_to_rational(&singular)), Err(Error::Singular));
    }

    #[test]
    fn span_examples() {
        let m = lmat(vec![vec![l(&[(-1, 1)]), l(&[(-1, 1)])], vec![l(&[]), l(&[(1, 1)])]]);
        assert_eq!(laurent_span(&m).unwrap(), (-1, 1));
        assert_eq!(laurent_span(&Matrix::identity(3, &l(&[(0, 1)]))).unwrap(), (0, 0));
        let d = Matrix::diagonal(vec![l(&[(3, 1)]), l(&[(-1, 1)])]);
        assert_eq!(laurent_span(&d).unwrap(), (-1, 3));
        let z = lmat(vec![vec![l(&[])]]);
        assert_eq!(laurent_span(&z), Err(Error::AllZeroMatrix));
    }

    #[test]
    fn determinants_agree() {
        let m = lmat(vec![
            vec![l(&[(0, 1), (1, 2)]), l(&[(-1, 1)]), l(&[(2, 3)])],
            vec![l(&[(0, 5)]), l(&[(1, -1)]), l(&[])],
            vec![l(&[(-2, 1)]), l(&[(0, 1)]), l(&[(1, 1)])],
        ]);
        let by_expansion = m.det_expansion().unwrap();
        let by_elimination = laurent_to_rational(&m).determinant().unwrap();
        assert_eq!(by_expansion.to_rational_function(), by_elimination);
        assert_eq!(laurent_to_rational(&m).rank(), 3);
    }
}
