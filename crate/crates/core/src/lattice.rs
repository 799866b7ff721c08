//! Vectors, Gram matrices, bases and shortest-vector enumeration.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ceil_div, common_denominator, floor_div, gcd_all, isqrt, round_div};
use crate::error::{Error, Result};
use crate::matrix::{det_rational, leading_minors_positive, rank_rational, Matrix};

/// An integer vector of positive length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty);
        }
        Ok(IntVector(coords))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|c| -c).collect())
    }

    /// The representative of `{self, -self}` whose first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> IntVector {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

/// A symmetric matrix of rational inner products.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    entries: Matrix<BigRational>,
}

impl GramMatrix {
    pub fn new(entries: Matrix<BigRational>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.rows(),
                found: entries.cols(),
            });
        }
        if entries.rows() == 0 {
            return Err(Error::Empty);
        }
        let n = entries.rows();
        for i in 0..n {
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn from_integers(m: &Matrix<BigInt>) -> Result<Self> {
        Self::new(m.map(|v| BigRational::from_integer(v.clone())))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_integers(&crate::matrix::int_matrix(rows))
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<BigRational> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[(i, j)]
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter_rows().flatten().all(|v| v.is_integer())
    }

    /// `(m, s)` with integer `m = s * self`, `s > 0` minimal.
    pub fn scaled_integral(&self) -> (Matrix<BigInt>, BigInt) {
        let s = common_denominator(self.entries.iter_rows().flatten());
        let m = self.entries.map(|v| (v * &s).to_integer());
        (m, s)
    }

    /// The integral Gram matrix of the similar lattice whose entries have gcd 1.
    pub fn primitive_integral(&self) -> Matrix<BigInt> {
        let (m, _) = self.scaled_integral();
        let g = gcd_all(m.iter_rows().flatten());
        if g.is_zero() {
            return m;
        }
        m.map(|v| v / &g)
    }

    pub fn determinant(&self) -> BigRational {
        det_rational(&self.entries).expect("square by construction")
    }

    pub fn is_positive_definite(&self) -> bool {
        leading_minors_positive(&self.scaled_integral().0)
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let n = self.dim();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigRational::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &self.entries[(i, j)] * &y[j];
                }
            }
            acc += row * &x[i];
        }
        acc
    }

    pub fn norm(&self, x: &[BigInt]) -> BigRational {
        self.inner(x, x)
    }

    /// Gram matrix of the basis whose vectors are the rows of `u` (`u G uᵀ`).
    pub fn transform(&self, u: &Matrix<BigInt>) -> Result<GramMatrix> {
        if u.cols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.cols(),
            });
        }
        let r = u.rows();
        let rows: Vec<Vec<BigInt>> = u.to_rows();
        let m = Matrix::from_fn(r, r, |i, j| self.inner(&rows[i], &rows[j]));
        GramMatrix::new(m)
    }
}

/// A basis of a sublattice of `Z^n` with its Euclidean Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<IntVector>,
    gram: GramMatrix,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::Empty);
        };
        let n = first.len();
        if let Some(v) = vectors.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let k = vectors.len();
        let coords = Matrix::from_fn(k, n, |i, j| {
            BigRational::from_integer(vectors[i].coords()[j].clone())
        });
        if rank_rational(&coords) != k {
            return Err(Error::LinearlyDependent);
        }
        let g = Matrix::from_fn(k, k, |i, j| BigRational::from_integer(vectors[i].dot(&vectors[j])));
        Ok(LatticeBasis {
            gram: GramMatrix::new(g)?,
            vectors,
        })
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].len()
    }

    /// The ambient vector with basis coordinates `x`.
    pub fn combine(&self, x: &[BigInt]) -> IntVector {
        let n = self.ambient_dim();
        let mut out = vec![BigInt::zero(); n];
        for (xi, v) in x.iter().zip(&self.vectors) {
            if xi.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(v.coords()) {
                *o += xi * c;
            }
        }
        IntVector(out)
    }
}

/// One representative per antipodal pair of shortest nonzero vectors, given by
/// coordinates with respect to the basis underlying `gram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorSet {
    minimum: BigRational,
    representatives: Vec<IntVector>,
    gram: GramMatrix,
}

impl MinimalVectorSet {
    /// Validates norms and antipodal uniqueness; representatives are sign
    /// normalized and sorted.
    pub fn new(gram: GramMatrix, minimum: BigRational, reps: Vec<IntVector>) -> Result<Self> {
        if !minimum.is_positive() {
            return Err(Error::InvalidInput("minimum must be positive".into()));
        }
        let mut reps: Vec<IntVector> = reps.iter().map(IntVector::sign_normalized).collect();
        for r in &reps {
            if r.len() != gram.dim() {
                return Err(Error::DimensionMismatch {
                    expected: gram.dim(),
                    found: r.len(),
                });
            }
            if gram.norm(r.coords()) != minimum {
                return Err(Error::InvalidInput("representative norm differs from minimum".into()));
            }
        }
        reps.sort();
        if reps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated antipodal pair".into()));
        }
        Ok(MinimalVectorSet {
            minimum,
            representatives: reps,
            gram,
        })
    }

    /// Skips the per-vector norm check; callers guarantee it by construction.
    pub(crate) fn from_trusted(gram: GramMatrix, minimum: BigRational, reps: Vec<IntVector>) -> Self {
        let mut reps: Vec<IntVector> = reps.iter().map(IntVector::sign_normalized).collect();
        reps.sort();
        reps.dedup();
        MinimalVectorSet {
            minimum,
            representatives: reps,
            gram,
        }
    }

    pub fn minimum(&self) -> &BigRational {
        &self.minimum
    }

    pub fn representatives(&self) -> &[IntVector] {
        &self.representatives
    }

    /// Index of the representative equal to `±v`.
    pub fn index_of(&self, v: &IntVector) -> Option<usize> {
        self.representatives.binary_search(&v.sign_normalized()).ok()
    }

    pub fn lattice_gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn inner(&self, i: usize, j: usize) -> BigRational {
        self.gram
            .inner(self.representatives[i].coords(), self.representatives[j].coords())
    }

    /// All pairwise inner products of the representatives.
    pub fn pairwise_gram(&self) -> Matrix<BigRational> {
        let n = self.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.inner(i, j);
                m[(j, i)] = v.clone();
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Re-expresses the set in the basis whose vectors are the rows of `u`
    /// (unimodular): coordinates become `x u⁻¹` and the Gram `u G uᵀ`.
    pub fn rebase(&self, u: &Matrix<BigInt>, u_inv: &Matrix<BigInt>) -> Result<Self> {
        let gram = self.gram.transform(u)?;
        // With u u⁻¹ = 1 the map is an isometry, so norms need no rechecking.
        if u.mul(u_inv)? != Matrix::identity(self.dim()) {
            return Err(Error::InvalidInput("u_inv is not the inverse of u".into()));
        }
        let small: Option<Vec<Vec<i64>>> = u_inv
            .iter_rows()
            .map(|r| r.iter().map(|x| x.to_i64().filter(|v| v.unsigned_abs() < 1 << 31)).collect())
            .collect();
        let reps = self
            .representatives
            .iter()
            .map(|r| {
                let x: Option<Vec<i64>> = r
                    .coords()
                    .iter()
                    .map(|c| c.to_i64().filter(|v| v.unsigned_abs() < 1 << 31))
                    .collect();
                match (&small, x) {
                    (Some(m), Some(x)) => IntVector(
                        (0..m[0].len())
                            .map(|j| BigInt::from(x.iter().zip(m).map(|(a, row)| *a as i128 * row[j] as i128).sum::<i128>()))
                            .collect(),
                    ),
                    _ => IntVector(u_inv.left_apply(r.coords())),
                }
            })
            .collect();
        Ok(MinimalVectorSet::from_trusted(gram, self.minimum.clone(), reps))
    }
}

/// Result of LLL reduction of an integral positive definite Gram matrix.
#[derive(Clone, Debug)]
pub struct Lll {
    /// Rows express the reduced basis in terms of the input basis.
    pub transform: Matrix<BigInt>,
    /// Gram matrix of the reduced basis.
    pub gram: Matrix<BigInt>,
    /// `d[k]` = leading `k x k` Gram determinant of the reduced basis, `d[0] = 1`.
    pub d: Vec<BigInt>,
    /// `lambda[(k, j)] = d[j+1] * mu_{k,j}` for `j < k` (0-based).
    pub lambda: Matrix<BigInt>,
}

/// Integral LLL (delta = 3/4) working on the Gram matrix only.
pub fn lll_gram(g: &Matrix<BigInt>) -> Result<Lll> {
    let n = g.rows();
    if !g.is_square() || n == 0 {
        return Err(Error::InvalidInput("LLL needs a nonempty square Gram matrix".into()));
    }
    let mut g = g.clone();
    let mut h = Matrix::<BigInt>::identity(n);
    let mut lam = Matrix::<BigInt>::zeros(n, n);
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    d[1] = g[(0, 0)].clone();
    if !d[1].is_positive() {
        return Err(Error::NotPositiveDefinite);
    }
    // 0-based basis index k; d[k+1] is its leading minor.
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = g[(k, j)].clone();
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[(k, i)] * &lam[(j, i)]) / &d[i];
                }
                if j < k {
                    lam[(k, j)] = u;
                } else {
                    if !u.is_positive() {
                        return Err(Error::NotPositiveDefinite);
                    }
                    d[k + 1] = u;
                }
            }
        }
        loop {
            reduce(&mut g, &mut h, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
            let l = &lam[(k, k - 1)];
            let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * l * l;
            if lhs < rhs {
                swap(&mut g, &mut h, &mut lam, &mut d, k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k.saturating_sub(1)).rev() {
            reduce(&mut g, &mut h, &mut lam, &d, k, l);
        }
        k += 1;
    }
    Ok(Lll {
        transform: h,
        gram: g,
        d,
        lambda: lam,
    })
}

fn reduce(
    g: &mut Matrix<BigInt>,
    h: &mut Matrix<BigInt>,
    lam: &mut Matrix<BigInt>,
    d: &[BigInt],
    k: usize,
    l: usize,
) {
    let dl = &d[l + 1];
    let two_abs = lam[(k, l)].abs() * 2u32;
    if two_abs <= *dl {
        return;
    }
    let q = round_div(&lam[(k, l)], dl);
    let n = g.rows();
    for j in 0..n {
        let v = &q * &g[(l, j)];
        g[(k, j)] -= v;
    }
    for j in 0..n {
        if j != k {
            g[(j, k)] = g[(k, j)].clone();
        }
    }
    let v = &q * &g[(k, l)];
    g[(k, k)] -= v;
    for j in 0..n {
        let v = &q * &h[(l, j)];
        h[(k, j)] -= v;
    }
    let v = &q * dl;
    lam[(k, l)] -= v;
    for i in 0..l {
        let v = &q * &lam[(l, i)];
        lam[(k, i)] -= v;
    }
}

fn swap(
    g: &mut Matrix<BigInt>,
    h: &mut Matrix<BigInt>,
    lam: &mut Matrix<BigInt>,
    d: &mut [BigInt],
    k: usize,
    kmax: usize,
) {
    let n = g.rows();
    g.swap_rows(k, k - 1);
    for i in 0..n {
        let a = g[(i, k)].clone();
        g[(i, k)] = g[(i, k - 1)].clone();
        g[(i, k - 1)] = a;
    }
    h.swap_rows(k, k - 1);
    for j in 0..k - 1 {
        let a = lam[(k, j)].clone();
        lam[(k, j)] = lam[(k - 1, j)].clone();
        lam[(k - 1, j)] = a;
    }
    let l = lam[(k, k - 1)].clone();
    let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[(i, k)].clone();
        let new_ik = (&d[k + 1] * &lam[(i, k - 1)] - &l * &t) / &d[k];
        let new_ik1 = (&b * &t + &l * &new_ik) / &d[k + 1];
        lam[(i, k)] = new_ik;
        lam[(i, k - 1)] = new_ik1;
    }
    d[k] = b;
}

/// Visits every nonzero `x` (one of each `±x`) with `xᵀ G x <= bound`, where
/// `G` is the integral Gram matrix that produced `lll`. Coordinates passed to
/// the visitor are with respect to the original basis. The visitor returns
/// `false` to stop early; the function returns `false` if it was stopped.
pub fn for_each_short_vector<F>(lll: &Lll, bound: &BigInt, mut visit: F) -> bool
where
    F: FnMut(&[BigInt], &BigInt) -> bool,
{
    let n = lll.gram.rows();
    let mut x = vec![BigInt::zero(); n];
    let budget = BigRational::from_integer(bound.clone());
    let mut out = vec![BigInt::zero(); n];
    enumerate_level(lll, n - 1, &budget, bound, &mut x, true, &mut out, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level<F>(
    lll: &Lll,
    i: usize,
    remaining: &BigRational,
    bound: &BigInt,
    x: &mut Vec<BigInt>,
    upper_zero: bool,
    out: &mut Vec<BigInt>,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[BigInt], &BigInt) -> bool,
{
    let n = x.len();
    let mut t = BigInt::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            t += &lll.lambda[(j, i)] * &x[j];
        }
    }
    let di = &lll.d[i + 1];
    let den = &lll.d[i] * di;
    let cap = floor_div(&(remaining.numer() * &den), remaining.denom());
    let ymax = isqrt(&cap);
    let mut lo = ceil_div(&(-&ymax - &t), di);
    let hi = floor_div(&(&ymax - &t), di);
    if upper_zero && lo.is_negative() {
        lo = BigInt::zero();
    }
    let mut xi = lo;
    while xi <= hi {
        let y = di * &xi + &t;
        let rest = remaining - BigRational::new(&y * &y, den.clone());
        let here_zero = upper_zero && xi.is_zero();
        x[i] = xi.clone();
        if i == 0 {
            if !here_zero {
                for (j, o) in out.iter_mut().enumerate() {
                    let mut acc = BigInt::zero();
                    for (k, xk) in x.iter().enumerate() {
                        if !xk.is_zero() {
                            acc += xk * &lll.transform[(k, j)];
                        }
                    }
                    *o = acc;
                }
                let norm = bound - (rest.to_integer());
                if !visit(out, &norm) {
                    x[i] = BigInt::zero();
                    return false;
                }
            }
        } else if !enumerate_level(lll, i - 1, &rest, bound, x, here_zero, out, visit) {
            x[i] = BigInt::zero();
            return false;
        }
        xi += 1u32;
    }
    x[i] = BigInt::zero();
    true
}

/// All `(coords, norm)` with `0 < norm <= bound`, one per antipodal pair,
/// sign normalized and sorted by norm then coordinates.
pub fn short_vectors(gram: &Matrix<BigInt>, bound: &BigInt) -> Result<Vec<(IntVector, BigInt)>> {
    let lll = lll_gram(gram)?;
    let mut found = Vec::new();
    for_each_short_vector(&lll, bound, |x, q| {
        found.push((IntVector(x.to_vec()).sign_normalized(), q.clone()));
        true
    });
    found.sort_by(|a, b| match a.1.cmp(&b.1) {
        Ordering::Equal => a.0.cmp(&b.0),
        o => o,
    });
    Ok(found)
}

/// Shortest nonzero vectors of an arbitrary positive definite Gram matrix.
pub fn minimal_vectors_general(gram: &GramMatrix) -> Result<MinimalVectorSet> {
    if !gram.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (m, s) = gram.scaled_integral();
    let lll = lll_gram(&m)?;
    let n = m.rows();
    let bound = (0..n).map(|i| lll.gram[(i, i)].clone()).min().expect("n > 0");
    let mut best = bound.clone();
    let mut reps: Vec<IntVector> = Vec::new();
    for_each_short_vector(&lll, &bound, |x, q| {
        match q.cmp(&best) {
            Ordering::Less => {
                best = q.clone();
                reps.clear();
                reps.push(IntVector(x.to_vec()));
            }
            Ordering::Equal => reps.push(IntVector(x.to_vec())),
            Ordering::Greater => {}
        }
        true
    });
    let minimum = BigRational::new(best, s);
    MinimalVectorSet::new(gram.clone(), minimum, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int_matrix;
    use proptest::prelude::*;

    fn brute_min(g: &Matrix<BigInt>, r: i64) -> (BigInt, usize) {
        let n = g.rows();
        let mut best: Option<BigInt> = None;
        let mut count = 0;
        let mut x = vec![-r; n];
        loop {
            if x.iter().any(|&c| c != 0) {
                let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
                let mut q = BigInt::zero();
                for i in 0..n {
                    for j in 0..n {
                        q += &xb[i] * &g[(i, j)] * &xb[j];
                    }
                }
                match best.as_ref().map(|b| q.cmp(b)) {
                    None | Some(Ordering::Less) => {
                        best = Some(q);
                        count = 1;
                    }
                    Some(Ordering::Equal) => count += 1,
                    _ => {}
                }
            }
            let mut i = 0;
            loop {
                if i == n {
                    return (best.unwrap(), count / 2);
                }
                if x[i] < r {
                    x[i] += 1;
                    break;
                }
                x[i] = -r;
                i += 1;
            }
        }
    }

    #[test]
    fn a2_and_identity() {
        let a2 = GramMatrix::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        let mv = minimal_vectors_general(&a2).unwrap();
        assert_eq!(*mv.minimum(), BigRational::from_integer(2.into()));
        assert_eq!(mv.len(), 3);
        let (m, c) = brute_min(&int_matrix(&[&[2, -1], &[-1, 2]]), 3);
        assert_eq!((m, c), (BigInt::from(2), 3));

        let z2 = GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let mv = minimal_vectors_general(&z2).unwrap();
        assert_eq!(mv.len(), 2);
        assert_eq!(mv.representatives()[0].coords(), &[BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn rejects_indefinite() {
        let g = GramMatrix::from_i64(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(minimal_vectors_general(&g), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn rational_gram() {
        let g = GramMatrix::new(Matrix::from_fn(2, 2, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::new((-1).into(), 2.into())
            }
        }))
        .unwrap();
        let mv = minimal_vectors_general(&g).unwrap();
        assert_eq!(*mv.minimum(), BigRational::one());
        assert_eq!(mv.len(), 3);
    }

    fn random_pd(v: &[i64], n: usize) -> Matrix<BigInt> {
        // B Bᵀ + I for a random integer B.
        let b = Matrix::from_fn(n, n, |i, j| BigInt::from(v[i * n + j]));
        let mut g = b.mul(&b.transpose()).unwrap();
        for i in 0..n {
            g[(i, i)] += 1u32;
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn lll_preserves_lattice(v in proptest::collection::vec(-4i64..5, 16)) {
            let g = random_pd(&v, 4);
            let r = lll_gram(&g).unwrap();
            let direct = r.transform.mul(&g).unwrap().mul(&r.transform.transpose()).unwrap();
            prop_assert_eq!(&direct, &r.gram);
            prop_assert!(crate::matrix::det_int(&r.transform).unwrap().abs().is_one());
        }

        #[test]
        fn minimum_matches_box_search(v in proptest::collection::vec(-2i64..3, 9)) {
            let g = random_pd(&v, 3);
            let mv = minimal_vectors_general(&GramMatrix::from_integers(&g).unwrap()).unwrap();
            // After adding I the entries are small enough that a box of radius 4 suffices.
            let (m, c) = brute_min(&g, 4);
            prop_assert_eq!(mv.minimum().to_integer(), m);
            prop_assert_eq!(mv.len(), c);
        }
    }
}
