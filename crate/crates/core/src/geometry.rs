//! Hollow sublattices, symmetric lattice polytopes, bases of small height and
//! the extreme indices of root sublattices in `A_n` and `D_n`.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{common_denominator, det_i128};
use crate::error::{Error, Result};
use crate::lattice::{GramMatrix, IntVector, LatticeBasis, MinimalVectorSet};
use crate::matrix::{det_int, integer_kernel, inverse_rational, solve_rational, to_rational, Matrix};
use crate::overlattice::sublattices;

/// Largest dimension accepted by the hollowness test.
pub const HOLLOW_MAX_DIM: usize = 6;
/// Largest dimension accepted by the polytope routines.
pub const POLYTOPE_MAX_DIM: usize = 5;

fn small(x: &BigInt) -> Result<i128> {
    x.to_i64()
        .map(i128::from)
        .ok_or_else(|| Error::InvalidInput("coordinate out of 64-bit range".to_string()))
}

/// Coordinates of `v` over `basis`; fails if `v` is not in the lattice.
pub fn lattice_coordinates(basis: &LatticeBasis, v: &IntVector) -> Result<Vec<BigInt>> {
    if v.len() != basis.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.ambient_dim(),
            found: v.len(),
        });
    }
    let rhs: Vec<BigRational> = basis
        .vectors()
        .iter()
        .map(|b| BigRational::from_integer(b.dot(v)))
        .collect();
    let y = solve_rational(basis.gram().entries(), &rhs).ok_or(Error::LinearlyDependent)?;
    let not_in = || Error::InvalidInput("vector does not lie in the lattice".to_string());
    if !y.iter().all(|c| c.is_integer()) {
        return Err(not_in());
    }
    let y: Vec<BigInt> = y.into_iter().map(|c| c.to_integer()).collect();
    if basis.combine(&y) != *v {
        return Err(not_in());
    }
    Ok(y)
}

/// Coordinates of `v` over the rows of `rows`, which must span a lattice
/// containing `v`.
fn coords_over(rows: &Matrix<BigInt>, v: &[BigInt]) -> Vec<BigInt> {
    let g = to_rational(&rows.mul(&rows.transpose()).expect("shapes agree"));
    let rhs: Vec<BigRational> = rows
        .iter_rows()
        .map(|r| BigRational::from_integer(r.iter().zip(v).map(|(a, b)| a * b).sum()))
        .collect();
    let y = solve_rational(&g, &rhs).expect("independent rows");
    y.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "vector outside the lattice");
            c.to_integer()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HollowReport {
    pub is_hollow: bool,
    pub index: BigUint,
}

/// Hollowness and index of the sublattice spanned by `vs` inside `lattice`.
pub fn hollow_index(lattice: &LatticeBasis, vs: &[IntVector]) -> Result<HollowReport> {
    let d = lattice.rank();
    if vs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: vs.len(),
        });
    }
    let rows = vs
        .iter()
        .map(|v| lattice_coordinates(lattice, v))
        .collect::<Result<Vec<_>>>()?;
    hollow_index_coords(&Matrix::from_rows(rows)?)
}

/// As [`hollow_index`], with the vectors given as rows of integer
/// coordinates over a basis of the ambient lattice.
pub fn hollow_index_coords(v: &Matrix<BigInt>) -> Result<HollowReport> {
    let d = v.rows();
    if !v.is_square() || d == 0 {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.cols(),
        });
    }
    if d > HOLLOW_MAX_DIM {
        return Err(Error::DimensionLimit { d, max: HOLLOW_MAX_DIM });
    }
    let det = det_int(v)?;
    if det.is_zero() {
        return Err(Error::LinearlyDependent);
    }
    let adj = inverse_rational(&to_rational(v))
        .expect("nonsingular")
        .map(|x| (x * &det).to_integer());
    let adj: Vec<Vec<i128>> = adj
        .iter_rows()
        .map(|r| r.iter().map(small).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let det_abs = small(&det)?.abs();
    // Interior points x = lambda v with sum |lambda_i| < 1, so |x_j| < max_i |v_ij|.
    let entries: Vec<Vec<i128>> = v
        .iter_rows()
        .map(|r| r.iter().map(small).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let reach: Vec<i128> = (0..d).map(|j| entries.iter().map(|r| r[j].abs()).max().unwrap_or(0)).collect();
    let lo: Vec<i128> = reach.iter().map(|&m| 1 - m).collect();
    let hi: Vec<i128> = reach.iter().map(|&m| m - 1).collect();
    let mut hollow = true;
    for_each_box_point(&lo, &hi, |x| {
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        let l1: i128 = (0..d)
            .map(|k| (0..d).map(|j| x[j] * adj[j][k]).sum::<i128>().abs())
            .sum();
        if l1 < det_abs {
            hollow = false;
        }
        hollow
    });
    Ok(HollowReport {
        is_hollow: hollow,
        index: det.magnitude().clone(),
    })
}

/// Calls `f` on every integer point of the box `lo..=hi` in lexicographic
/// order until it returns `false`.
fn for_each_box_point(lo: &[i128], hi: &[i128], mut f: impl FnMut(&[i128]) -> bool) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut x = lo.to_vec();
    loop {
        if !f(&x) {
            return;
        }
        let mut k = x.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
        }
    }
}

/// All systems of `d` vectors of `Z^d` in column Hermite normal form (one per
/// class under unimodular coordinate changes) with index at most `max_index`
/// that are hollow. Rows are the vectors.
pub fn hollow_systems(d: usize, max_index: u64) -> Result<Vec<(Matrix<BigInt>, u64)>> {
    let mut out = Vec::new();
    for n in 1..=max_index {
        for h in sublattices(d, n) {
            let v = h.transpose();
            if hollow_index_coords(&v)?.is_hollow {
                out.push((v, n));
            }
        }
    }
    Ok(out)
}

/// A centrally symmetric set `V = -V` of nonzero lattice vectors, stored as
/// one sign normalized representative per pair, in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricGeneratorSet {
    reps: Vec<IntVector>,
}

impl SymmetricGeneratorSet {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let d = vectors.first().ok_or(Error::Empty)?.len();
        let mut set = BTreeSet::new();
        for v in vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            if v.is_zero() {
                return Err(Error::InvalidInput("generator set contains zero".to_string()));
            }
            set.insert(v.sign_normalized());
        }
        Ok(SymmetricGeneratorSet {
            reps: set.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.reps[0].len()
    }

    pub fn representatives(&self) -> &[IntVector] {
        &self.reps
    }

    /// Every element of `V`, both signs.
    pub fn points(&self) -> Vec<IntVector> {
        self.reps.iter().flat_map(|v| [v.clone(), v.neg()]).collect()
    }
}

/// A facet `normal . x <= offset` with coprime integer data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i128>,
    pub offset: i128,
}

impl Facet {
    fn value(&self, x: &[i128]) -> i128 {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

fn points_i128(set: &SymmetricGeneratorSet) -> Result<Vec<Vec<i128>>> {
    set.points()
        .iter()
        .map(|v| v.coords().iter().map(small).collect())
        .collect()
}

/// Facets of `conv(V)`, found by solving for the hyperplane through each
/// linearly independent `d`-subset and keeping the supporting ones.
pub fn hull_facets(set: &SymmetricGeneratorSet) -> Result<Vec<Facet>> {
    let d = set.dim();
    if d > POLYTOPE_MAX_DIM {
        return Err(Error::DimensionLimit { d, max: POLYTOPE_MAX_DIM });
    }
    let pts = points_i128(set)?;
    let mut facets = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if pts.len() >= d {
        loop {
            if let Some(f) = hyperplane(&pts, &idx) {
                if pts.iter().all(|p| f.value(p) <= f.offset) {
                    facets.insert(f);
                }
            }
            if !next_combination(&mut idx, pts.len()) {
                break;
            }
        }
    }
    if facets.is_empty() {
        return Err(Error::DegenerateHull);
    }
    Ok(facets.into_iter().collect())
}

/// The hyperplane `a . x = 1` through the chosen points, scaled to integers.
fn hyperplane(pts: &[Vec<i128>], idx: &[usize]) -> Option<Facet> {
    let d = idx.len();
    let rows: Vec<Vec<i128>> = idx.iter().map(|&i| pts[i].clone()).collect();
    let det = det_i128(rows.clone());
    if det == 0 {
        return None;
    }
    // Cramer: a_k = det(rows with column k replaced by ones) / det.
    let mut normal: Vec<i128> = (0..d)
        .map(|k| {
            let mut m = rows.clone();
            for r in &mut m {
                r[k] = 1;
            }
            det_i128(m)
        })
        .collect();
    let mut offset = det;
    if offset < 0 {
        offset = -offset;
        normal.iter_mut().for_each(|a| *a = -*a);
    }
    let g = normal.iter().fold(offset, |g, &a| g.gcd(&a));
    normal.iter_mut().for_each(|a| *a /= g);
    Some(Facet { normal, offset: offset / g })
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn hull_points(set: &SymmetricGeneratorSet, strict: bool) -> Result<Vec<IntVector>> {
    let facets = hull_facets(set)?;
    let pts = points_i128(set)?;
    let d = set.dim();
    let reach: Vec<i128> = (0..d).map(|j| pts.iter().map(|p| p[j].abs()).max().unwrap_or(0)).collect();
    let lo: Vec<i128> = reach.iter().map(|&m| -m).collect();
    let mut out = Vec::new();
    for_each_box_point(&lo, &reach, |x| {
        let inside = facets.iter().all(|f| {
            let v = f.value(x);
            if strict {
                v < f.offset
            } else {
                v <= f.offset
            }
        });
        if inside {
            out.push(IntVector::from_i64(&x.iter().map(|&c| c as i64).collect::<Vec<_>>()).expect("nonempty"));
        }
        true
    });
    Ok(out)
}

/// Lattice points in the interior of `conv(V)`, in lexicographic order.
pub fn interior_lattice_points(set: &SymmetricGeneratorSet) -> Result<Vec<IntVector>> {
    hull_points(set, true)
}

/// Lattice points of the closed polytope `conv(V)`, in lexicographic order.
pub fn hull_lattice_points(set: &SymmetricGeneratorSet) -> Result<Vec<IntVector>> {
    hull_points(set, false)
}

/// The elements of `V` that are vertices of `conv(V)`: those lying on facets
/// whose normals span the whole space.
pub fn hull_vertices(set: &SymmetricGeneratorSet) -> Result<Vec<IntVector>> {
    let facets = hull_facets(set)?;
    let d = set.dim();
    let mut out = Vec::new();
    for v in set.points() {
        let x: Vec<i128> = v.coords().iter().map(small).collect::<Result<_>>()?;
        let tight: Vec<Vec<BigInt>> = facets
            .iter()
            .filter(|f| f.value(&x) == f.offset)
            .map(|f| f.normal.iter().map(|&a| BigInt::from(a)).collect())
            .collect();
        if !tight.is_empty() && crate::matrix::rank_int(&Matrix::from_rows(tight)?) == d {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

/// A basis `f` of the lattice with `v_i = sum_{j >= i} alpha_ij f_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallHeightBasis {
    /// The basis vectors `f_i`, ambient coordinates.
    pub basis: Vec<IntVector>,
    /// Coordinates of the input vectors over `basis`; upper triangular.
    pub alpha: Matrix<BigInt>,
    /// Index of the span of the input vectors.
    pub index: BigUint,
}

impl SmallHeightBasis {
    /// Whether `|alpha_ij| <= 2^max(0, j-i-1) I` for all `i <= j`.
    pub fn satisfies_bound(&self) -> bool {
        let d = self.alpha.rows();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let a = self.alpha[(i, j)].magnitude();
                if j < i {
                    a.is_zero()
                } else {
                    *a <= (&self.index << (j - i).saturating_sub(1))
                }
            })
        })
    }
}

/// Builds a basis of small height over the independent lattice vectors `vs`:
/// split off the linear form `pi` with `pi(v_0) = 1` and `pi(v_i) = 0`, recurse
/// on `ker(pi)`, and lift with the lexicographically smallest lattice point of
/// the closed parallelepiped spanned by the `v_i` on which `pi` takes its
/// smallest positive value.
pub fn small_height_basis(lattice: &LatticeBasis, vs: &[IntVector]) -> Result<SmallHeightBasis> {
    let d = lattice.rank();
    if vs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: vs.len(),
        });
    }
    let y = Matrix::from_rows(
        vs.iter()
            .map(|v| lattice_coordinates(lattice, v))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let det = det_int(&y)?;
    if det.is_zero() {
        return Err(Error::LinearlyDependent);
    }
    let rows: Vec<Vec<BigInt>> = y.to_rows();
    let f = build_basis(&Matrix::<BigInt>::identity(d), &rows);
    let fm = Matrix::from_rows(f.clone())?;
    let alpha = y
        .map(|x| BigRational::from_integer(x.clone()))
        .mul(&inverse_rational(&to_rational(&fm)).expect("basis"))?;
    debug_assert!(alpha.iter_rows().flatten().all(|x| x.is_integer()));
    let alpha = alpha.map(|x| x.to_integer());
    Ok(SmallHeightBasis {
        basis: f.iter().map(|c| lattice.combine(c)).collect(),
        alpha,
        index: det.magnitude().clone(),
    })
}

/// Parallelepiped coordinates `lambda` of the rows of `f` (ambient `Z^d`
/// coordinates) with respect to `vs`; used to confirm that a computed basis
/// lies in the closed fundamental domain `sum [0,1] v_i`.
pub fn parallelepiped_coordinates(vs: &[Vec<BigInt>], f: &[BigInt]) -> Vec<BigRational> {
    let m = Matrix::from_rows(vs.to_vec()).expect("rectangular");
    let g = to_rational(&m.mul(&m.transpose()).expect("shapes agree"));
    let rhs: Vec<BigRational> = vs
        .iter()
        .map(|r| BigRational::from_integer(r.iter().zip(f).map(|(a, b)| a * b).sum()))
        .collect();
    solve_rational(&g, &rhs).expect("independent")
}

/// `lb` holds a basis of a sublattice `L` of `Z^d` as rows; `vs` are
/// independent elements of `L`, as many as its rank. Returns the basis in
/// `Z^d` coordinates.
fn build_basis(lb: &Matrix<BigInt>, vs: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let r = vs.len();
    let vl = Matrix::from_rows(vs.iter().map(|v| coords_over(lb, v)).collect()).expect("rectangular");
    if r == 1 {
        let s = if vl[(0, 0)].is_negative() { -1 } else { 1 };
        return vec![lb.row(0).iter().map(|x| x * s).collect()];
    }
    let vinv = inverse_rational(&to_rational(&vl)).expect("independent");
    let lambda = |y: &[BigInt]| -> Vec<BigRational> {
        let yr: Vec<BigRational> = y.iter().cloned().map(BigRational::from_integer).collect();
        vinv.left_apply(&yr)
    };
    // pi on the basis of L is column 0 of vl^-1; pi(L) = (g/D) Z.
    let col: Vec<BigRational> = (0..r).map(|k| vinv[(k, 0)].clone()).collect();
    let den = common_denominator(col.iter());
    let nums: Vec<BigInt> = col.iter().map(|p| (p * &den).to_integer()).collect();
    let mut y = bezout(&nums);
    let kernel = integer_kernel(&Matrix::from_rows(vec![nums]).expect("row"));
    let sub = kernel.mul(lb).expect("shapes agree");
    let rest = build_basis(&sub, &vs[1..]);

    // One lattice point per coset of sum_{i>=1} Z v_i in ker(pi), then the
    // closure of the half-open box.
    let reduce = |y: &mut Vec<BigInt>| {
        let l = lambda(y);
        for i in 1..r {
            let fl = l[i].floor().to_integer();
            if !fl.is_zero() {
                for (a, b) in y.iter_mut().zip(vl.row(i)) {
                    *a -= &fl * b;
                }
            }
        }
    };
    reduce(&mut y);
    let rest_l: Vec<Vec<BigInt>> = rest.iter().map(|f| coords_over(lb, f)).collect();
    let rest_m = Matrix::from_rows(rest.clone()).expect("rectangular");
    let diag: Vec<i128> = (1..r)
        .map(|i| {
            let a = coords_over(&rest_m, &vs[i]);
            small(&a[i - 1]).expect("small index").abs()
        })
        .collect();
    let lo = vec![0i128; r - 1];
    let hi: Vec<i128> = diag.iter().map(|a| a - 1).collect();
    let mut best: Option<Vec<BigInt>> = None;
    for_each_box_point(&lo, &hi, |m| {
        let mut z = y.clone();
        for (mj, fj) in m.iter().zip(&rest_l) {
            for (a, b) in z.iter_mut().zip(fj) {
                *a += b * BigInt::from(*mj);
            }
        }
        reduce(&mut z);
        let l = lambda(&z);
        let zeros: Vec<usize> = (1..r).filter(|&i| l[i].is_zero()).collect();
        for mask in 0u32..(1 << zeros.len()) {
            let mut w = z.clone();
            for (bit, &i) in zeros.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    for (a, b) in w.iter_mut().zip(vl.row(i)) {
                        *a += b;
                    }
                }
            }
            let amb = lb.left_apply(&w);
            if best.as_ref().is_none_or(|b| amb < *b) {
                best = Some(amb);
            }
        }
        true
    });
    let mut out = vec![best.expect("the parallelepiped contains a lift")];
    out.extend(rest);
    out
}

/// Integers `y` with `sum y_k n_k = gcd(n)`.
fn bezout(nums: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    let mut y = vec![BigInt::zero(); nums.len()];
    for (k, n) in nums.iter().enumerate() {
        let e = g.extended_gcd(n);
        for c in y.iter_mut().take(k) {
            *c *= &e.x;
        }
        y[k] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        y.iter_mut().for_each(|c| *c = -&*c);
    }
    y
}

/// Independent minimal vectors spanning a sublattice of maximal index, found
/// exhaustively (first such system in lexicographic order of indices).
pub fn maximal_index_system(mv: &MinimalVectorSet) -> Result<(Vec<usize>, BigUint)> {
    let d = mv.dim();
    let reps: Vec<Vec<i128>> = mv
        .representatives()
        .iter()
        .map(|v| v.coords().iter().map(small).collect())
        .collect::<Result<_>>()?;
    if reps.len() < d {
        return Err(Error::LinearlyDependent);
    }
    let mut idx: Vec<usize> = (0..d).collect();
    let mut best: (Vec<usize>, i128) = (Vec::new(), 0);
    loop {
        let det = det_i128(idx.iter().map(|&i| reps[i].clone()).collect()).abs();
        if det > best.1 {
            best = (idx.clone(), det);
        }
        if !next_combination(&mut idx, reps.len()) {
            break;
        }
    }
    if best.1 == 0 {
        return Err(Error::LinearlyDependent);
    }
    Ok((best.0, BigUint::from(best.1 as u128)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootType {
    A,
    D,
}

impl core::fmt::Display for RootType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            RootType::A => "A",
            RootType::D => "D",
        })
    }
}

fn check_rank(t: RootType, n: usize) -> Result<()> {
    match t {
        RootType::A if n >= 1 => Ok(()),
        RootType::D if n >= 4 => Ok(()),
        _ => Err(Error::UnsupportedRootType(alloc::format!("{t}{n}"))),
    }
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

/// One root per pair: `e_i - e_j` (`i < j`) in `Z^(n+1)` for `A_n`;
/// `e_i - e_j`, `e_i + e_j` in `Z^n` for `D_n`.
pub fn positive_roots(t: RootType, n: usize) -> Result<Vec<IntVector>> {
    check_rank(t, n)?;
    let m = match t {
        RootType::A => n + 1,
        RootType::D => n,
    };
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut v = unit(m, i);
            v[j] = -1;
            out.push(IntVector::from_i64(&v)?);
            if t == RootType::D {
                v[j] = 1;
                out.push(IntVector::from_i64(&v)?);
            }
        }
    }
    Ok(out)
}

/// Simple roots as a lattice basis.
pub fn root_lattice_basis(t: RootType, n: usize) -> Result<LatticeBasis> {
    check_rank(t, n)?;
    let m = match t {
        RootType::A => n + 1,
        RootType::D => n,
    };
    let mut vs = Vec::with_capacity(n);
    for i in 0..m - 1 {
        let mut v = unit(m, i);
        v[i + 1] = -1;
        vs.push(v);
    }
    if t == RootType::D {
        let mut v = unit(m, n - 2);
        v[n - 1] = 1;
        vs.push(v);
    }
    LatticeBasis::new(vs.iter().map(|v| IntVector::from_i64(v)).collect::<Result<_>>()?)
}

/// The Cartan matrix, i.e. the Gram matrix of the simple roots.
pub fn cartan_gram(t: RootType, n: usize) -> Result<GramMatrix> {
    Ok(root_lattice_basis(t, n)?.gram().clone())
}

/// Maximal index of a sublattice generated by `n` independent roots: `1` for
/// `A_n`, `2^(n/2 - 1)` for `D_n` with `n` even.
pub fn root_lattice_extremes(t: RootType, n: usize) -> Result<BigUint> {
    check_rank(t, n)?;
    match t {
        RootType::A => Ok(BigUint::one()),
        RootType::D if n % 2 == 0 => Ok(BigUint::one() << (n / 2 - 1)),
        RootType::D => Err(Error::UnsupportedRootType(alloc::format!(
            "D{n}: only even rank is covered"
        ))),
    }
}

/// Largest dimension for the exhaustive root search.
pub const ROOT_SEARCH_MAX_DIM: usize = 8;

/// The same maximum by exhaustive branch and bound over sets of independent
/// roots. Since the Weyl group acts transitively on roots the first root is
/// fixed; a branch is cut once its Gram determinant times `2` per missing
/// root cannot beat the best one found.
pub fn max_root_index_exhaustive(t: RootType, n: usize) -> Result<BigUint> {
    check_rank(t, n)?;
    if n > ROOT_SEARCH_MAX_DIM {
        return Err(Error::DimensionLimit {
            d: n,
            max: ROOT_SEARCH_MAX_DIM,
        });
    }
    let roots: Vec<Vec<i128>> = positive_roots(t, n)?
        .iter()
        .map(|v| v.coords().iter().map(small).collect())
        .collect::<Result<_>>()?;
    let lattice_det: i128 = match t {
        RootType::A => n as i128 + 1,
        RootType::D => 4,
    };
    let mut best = 0i128;
    let mut chosen = vec![0usize];
    branch(&roots, n, &mut chosen, &mut best);
    let q = best / lattice_det;
    debug_assert_eq!(q * lattice_det, best);
    let idx = BigUint::from(q as u128).sqrt();
    debug_assert_eq!(&idx * &idx, BigUint::from(q as u128));
    Ok(idx)
}

fn gram_det(roots: &[Vec<i128>], chosen: &[usize]) -> i128 {
    let g: Vec<Vec<i128>> = chosen
        .iter()
        .map(|&a| {
            chosen
                .iter()
                .map(|&b| roots[a].iter().zip(&roots[b]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    det_i128(g)
}

fn branch(roots: &[Vec<i128>], n: usize, chosen: &mut Vec<usize>, best: &mut i128) {
    let gd = gram_det(roots, chosen);
    if gd == 0 {
        return;
    }
    let k = chosen.len();
    if k == n {
        *best = (*best).max(gd);
        return;
    }
    if gd << (n - k) <= *best {
        return;
    }
    let start = chosen.last().map_or(0, |&l| l + 1);
    for next in start..roots.len() {
        if roots.len() - next < n - k {
            break;
        }
        chosen.push(next);
        branch(roots, n, chosen, best);
        chosen.pop();
    }
}
