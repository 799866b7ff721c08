//! Dense row-major matrices with exact integer and rational routines.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{common_denominator, floor_div};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows of equal length. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.iter_rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        }))
    }

    /// `v * self` for a row vector `v`.
    pub fn left_apply(&self, v: &[T]) -> Vec<T> {
        debug_assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = T::zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = acc + vk.clone() * self[(k, j)].clone();
                }
                acc
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Fraction-free Gaussian elimination in place. Returns the rank and, for a
/// square input, the determinant.
fn bareiss(m: &mut Matrix<BigInt>) -> (usize, BigInt) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap_rows(p, r);
            negate = !negate;
        }
        let piv = m[(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..cols {
                let v = (&piv * &m[(i, j)] - &lead * &m[(r, j)]) / &prev;
                m[(i, j)] = v;
            }
            m[(i, c)] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if negate {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

/// True iff every leading principal minor of the square matrix is positive.
/// Bareiss without pivoting produces exactly those minors as its pivots.
pub fn leading_minors_positive(m: &Matrix<BigInt>) -> bool {
    let n = m.rows;
    if !m.is_square() {
        return false;
    }
    let mut a = m.clone();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[(k, k)].is_positive() {
            return false;
        }
        let piv = a[(k, k)].clone();
        for i in k + 1..n {
            let lead = a[(i, k)].clone();
            for j in k + 1..n {
                let v = (&piv * &a[(i, j)] - &lead * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = piv;
    }
    true
}

pub fn rank_int(m: &Matrix<BigInt>) -> usize {
    bareiss(&mut m.clone()).0
}

/// Rank modulo the prime `2^31 - 1`, a lower bound for the rank over `Q`.
/// Rows are consumed in order and the scan stops once the rank reaches `cap`.
pub fn rank_mod_prime<'a>(rows: impl IntoIterator<Item = &'a [BigInt]>, cap: usize) -> usize {
    const P: u64 = (1 << 31) - 1;
    let p_big = BigInt::from(P);
    let inv = |a: u64| -> u64 {
        // Fermat: a^(P-2).
        let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        acc
    };
    // Echelon rows normalised to a leading 1, kept with their pivots.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for row in rows {
        if basis.len() >= cap {
            break;
        }
        let mut r: Vec<u64> = row
            .iter()
            .map(|x| {
                let m = x % &p_big;
                let m = if m.is_negative() { m + &p_big } else { m };
                m.iter_u64_digits().next().unwrap_or(0)
            })
            .collect();
        for (piv, b) in &basis {
            let f = r[*piv];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(b).skip(*piv) {
                    *x = (*x + (P - f) * y) % P;
                }
            }
        }
        if let Some(piv) = r.iter().position(|&x| x != 0) {
            let s = inv(r[piv]);
            r.iter_mut().for_each(|x| *x = *x * s % P);
            basis.push((piv, r));
        }
    }
    basis.len()
}

pub fn det_int(m: &Matrix<BigInt>) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    Ok(bareiss(&mut m.clone()).1)
}

/// Clears the denominators of each row separately (rank preserving).
fn scale_rows_to_int(m: &Matrix<BigRational>) -> Matrix<BigInt> {
    let mut out = Matrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        let den = common_denominator(m.row(i));
        for j in 0..m.cols {
            out[(i, j)] = (&m[(i, j)] * &den).to_integer();
        }
    }
    out
}

pub fn rank_rational(m: &Matrix<BigRational>) -> usize {
    rank_int(&scale_rows_to_int(m))
}

pub fn det_rational(m: &Matrix<BigRational>) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let mut scale = BigInt::one();
    for i in 0..m.rows {
        scale *= common_denominator(m.row(i));
    }
    let d = det_int(&scale_rows_to_int(m))?;
    Ok(BigRational::new(d, scale))
}

/// Solves `a x = b` for square nonsingular `a`. Returns `None` if singular.
pub fn solve_rational(a: &Matrix<BigRational>, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.rows;
    if !a.is_square() || b.len() != n {
        return None;
    }
    let mut m = Matrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    gauss_jordan(&mut m, n)?;
    Some((0..n).map(|i| m[(i, n)].clone()).collect())
}

pub fn inverse_rational(a: &Matrix<BigRational>) -> Option<Matrix<BigRational>> {
    let n = a.rows;
    if !a.is_square() {
        return None;
    }
    let mut m = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    gauss_jordan(&mut m, n)?;
    Some(Matrix::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
}

/// Reduces the leading `n x n` block to the identity.
fn gauss_jordan(m: &mut Matrix<BigRational>, n: usize) -> Option<()> {
    let cols = m.cols;
    for c in 0..n {
        let p = (c..n).find(|&i| !m[(i, c)].is_zero())?;
        m.swap_rows(p, c);
        let inv = m[(c, c)].recip();
        for j in c..cols {
            let v = &m[(c, j)] * &inv;
            m[(c, j)] = v;
        }
        for i in 0..n {
            if i == c || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..cols {
                let v = &m[(i, j)] - &f * &m[(c, j)];
                m[(i, j)] = v;
            }
        }
    }
    Some(())
}

/// Row Hermite normal form together with a unimodular transform.
#[derive(Clone, Debug)]
pub struct Hnf {
    /// The nonzero rows of the normal form, in echelon order.
    pub h: Matrix<BigInt>,
    /// Unimodular `u` with `u * a = [h; 0]`.
    pub u: Matrix<BigInt>,
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_axpy(m: &mut Matrix<BigInt>, target: usize, q: &BigInt, source: usize) {
    for j in 0..m.cols {
        let v = &m[(source, j)] * q;
        m[(target, j)] -= v;
    }
}

fn row_negate(m: &mut Matrix<BigInt>, i: usize) {
    for v in m.row_mut(i) {
        *v = -core::mem::take(v);
    }
}

/// Upper-echelon HNF: positive pivots, entries above each pivot in `[0, pivot)`.
pub fn hnf_rows(a: &Matrix<BigInt>) -> Hnf {
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = Matrix::<BigInt>::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by(|&x, &y| m[(x, c)].abs().cmp(&m[(y, c)].abs()));
            let Some(best) = best else { break };
            m.swap_rows(best, r);
            u.swap_rows(best, r);
            let mut clean = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = floor_div(&m[(i, c)], &m[(r, c)]);
                row_axpy(&mut m, i, &q, r);
                row_axpy(&mut u, i, &q, r);
                if !m[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            row_negate(&mut m, r);
            row_negate(&mut u, r);
        }
        for i in 0..r {
            let q = floor_div(&m[(i, c)], &m[(r, c)]);
            if !q.is_zero() {
                row_axpy(&mut m, i, &q, r);
                row_axpy(&mut u, i, &q, r);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let h = Matrix::from_fn(r, cols, |i, j| m[(i, j)].clone());
    Hnf { h, u, pivots }
}

/// A basis (as rows, in HNF) of the integer vectors `x` with `a x = 0`.
pub fn integer_kernel(a: &Matrix<BigInt>) -> Matrix<BigInt> {
    let n = a.cols;
    let t = hnf_rows(&a.transpose());
    let rank = t.rank();
    let rest: Vec<usize> = (rank..n).collect();
    let k = t.u.select_rows(&rest);
    if k.rows == 0 {
        return Matrix::zeros(0, n);
    }
    hnf_rows(&k).h
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|v| BigRational::from_integer(v.clone()))
}

pub fn zero_vec(n: usize) -> Vec<BigInt> {
    vec![BigInt::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_rank_agrees_on_small_matrices() {
        let cases = [
            int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]),
            int_matrix(&[&[0, 0], &[0, 0]]),
            int_matrix(&[&[5, -3, 0, 7], &[-1, 2, 2, 0], &[4, -1, 2, 7], &[0, 0, 0, 1]]),
        ];
        for m in cases {
            let r = rank_int(&m);
            assert_eq!(rank_mod_prime(m.iter_rows(), usize::MAX), r);
            assert_eq!(rank_mod_prime(m.iter_rows(), 1), r.min(1));
        }
        // A multiple of the prime vanishes modulo it.
        let p = int_matrix(&[&[2147483647]]);
        assert_eq!(rank_mod_prime(p.iter_rows(), 1), 0);
    }
    use proptest::prelude::*;

    fn brute_det(m: &Matrix<BigInt>) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &m[(0, j)] * brute_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_and_rank() {
        let m = int_matrix(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(det_int(&m).unwrap(), BigInt::from(6));
        let s = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_int(&s), 2);
        assert_eq!(det_int(&s).unwrap(), BigInt::zero());
        let z = int_matrix(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        assert_eq!(det_int(&z).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn kernel_of_support_matrix() {
        // c = (1,2,3,4), h = all ones: kernel spanned by (1,-1,-1,1) and (1,-2,1,0).
        let a = int_matrix(&[&[1, 2, 3, 4], &[1, 1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.rows(), 2);
        for r in k.iter_rows() {
            for ar in a.iter_rows() {
                let dot: BigInt = r.iter().zip(ar).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn rational_solve_and_inverse() {
        let a = to_rational(&int_matrix(&[&[2, 1], &[1, 3]]));
        let b = [BigRational::from_integer(3.into()), BigRational::from_integer(5.into())];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::new(4.into(), 5.into()));
        assert_eq!(x[1], BigRational::new(7.into(), 5.into()));
        let inv = inverse_rational(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(v in proptest::collection::vec(-6i64..7, 16)) {
            let m = Matrix::from_fn(4, 4, |i, j| BigInt::from(v[4 * i + j]));
            prop_assert_eq!(det_int(&m).unwrap(), brute_det(&m));
        }

        #[test]
        fn hnf_is_canonical_and_transform_is_exact(v in proptest::collection::vec(-5i64..6, 12)) {
            let a = Matrix::from_fn(4, 3, |i, j| BigInt::from(v[3 * i + j]));
            let t = hnf_rows(&a);
            let full = t.u.mul(&a).unwrap();
            for i in 0..4 {
                for j in 0..3 {
                    let want = if i < t.rank() { t.h[(i, j)].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&full[(i, j)], &want);
                }
            }
            prop_assert!(det_int(&t.u).unwrap().abs().is_one());
            prop_assert_eq!(t.rank(), rank_int(&a));
            for (r, &c) in t.pivots.iter().enumerate() {
                prop_assert!(t.h[(r, c)].is_positive());
                for i in 0..r {
                    prop_assert!(!t.h[(i, c)].is_negative() && t.h[(i, c)] < t.h[(r, c)]);
                }
            }
            // Same lattice, different generators: identical normal form.
            let mut b = a.clone();
            b.swap_rows(0, 3);
            row_axpy(&mut b, 1, &BigInt::from(-2), 2);
            prop_assert_eq!(hnf_rows(&b).h, t.h);
        }
    }
}
