//! The lattices `L_d(h_1, ..., h_k)`: integer vectors of `Z^{d+2}` orthogonal
//! to the all-ones vector `c` and to a weight vector `h` listing the `d + 2`
//! smallest positive integers that are not holes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{minimal_vectors_general, IntVector, LatticeBasis, MinimalVectorSet};
use crate::matrix::{integer_kernel, Matrix};

/// Strictly increasing positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoleSequence(Vec<u64>);

impl HoleSequence {
    pub fn new(holes: Vec<u64>) -> Result<Self> {
        if holes.first() == Some(&0) {
            return Err(Error::InvalidHoles("holes must be positive".into()));
        }
        if holes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidHoles("holes must be strictly increasing".into()));
        }
        Ok(HoleSequence(holes))
    }

    pub fn empty() -> Self {
        HoleSequence(Vec::new())
    }

    pub fn holes(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn min_gap_at_least(&self, gap: u64) -> bool {
        self.0.windows(2).all(|w| w[1] - w[0] >= gap)
    }

    /// Gaps of at least 6 between consecutive holes.
    pub fn satisfies_perf(&self) -> bool {
        self.min_gap_at_least(6)
    }

    /// `h_1 >= 7`, gaps of at least 4 and `h_k = d + k + 1`.
    pub fn satisfies_auto(&self, d: usize) -> bool {
        let k = self.0.len() as u64;
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) => {
                first >= 7 && self.min_gap_at_least(4) && last == d as u64 + k + 1
            }
            _ => false,
        }
    }
}

impl fmt::Display for HoleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        Ok(())
    }
}

/// The `d + 2` smallest positive integers that are not holes.
pub fn support(d: usize, holes: &HoleSequence) -> Vec<u64> {
    let mut out = Vec::with_capacity(d + 2);
    let mut hi = holes.holes().iter().peekable();
    let mut x = 1u64;
    while out.len() < d + 2 {
        if hi.peek() == Some(&&x) {
            hi.next();
        } else {
            out.push(x);
        }
        x += 1;
    }
    out
}

fn validated_support(d: usize, holes: &HoleSequence) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    let s = support(d, holes);
    let omega = *s.last().expect("d + 2 > 0");
    if let Some(&h) = holes.holes().last() {
        if h > omega {
            return Err(Error::InvalidHoles(format!(
                "hole {h} lies beyond the largest support element {omega}"
            )));
        }
    }
    let g = s.iter().fold(0u64, |g, &x| g.gcd(&(x - s[0])));
    if g > 1 {
        return Err(Error::DegenerateSupport { gcd: g });
    }
    Ok(s)
}

/// A constructed family lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdLattice {
    d: usize,
    holes: HoleSequence,
    support: Vec<u64>,
    weight: IntVector,
    basis: LatticeBasis,
}

impl LdLattice {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn holes(&self) -> &HoleSequence {
        &self.holes
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn omega(&self) -> u64 {
        *self.support.last().expect("nonempty support")
    }

    pub fn weight(&self) -> &IntVector {
        &self.weight
    }

    pub fn basis(&self) -> &LatticeBasis {
        &self.basis
    }

    pub fn gram(&self) -> &crate::lattice::GramMatrix {
        self.basis.gram()
    }

    /// Position of a support value among the coordinates.
    pub fn position(&self, value: u64) -> Option<usize> {
        self.support.binary_search(&value).ok()
    }

    /// Coordinates of an ambient lattice vector with respect to the basis.
    pub fn basis_coordinates(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        let rows = self.basis.vectors();
        let pivots = pivot_columns(rows);
        let mut x: Vec<BigInt> = Vec::with_capacity(rows.len());
        for (r, &p) in pivots.iter().enumerate() {
            let mut acc = v.coords()[p].clone();
            for (rp, xr) in x.iter().enumerate() {
                acc -= xr * &rows[rp].coords()[p];
            }
            let (q, rem) = acc.div_rem(&rows[r].coords()[p]);
            if !rem.is_zero() {
                return None;
            }
            x.push(q);
        }
        (self.basis.combine(&x) == *v).then_some(x)
    }
}

fn pivot_columns(rows: &[IntVector]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.coords().iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect()
}

pub fn construct_ld(d: usize, holes: &HoleSequence) -> Result<LdLattice> {
    let s = validated_support(d, holes)?;
    let n = d + 2;
    let a = Matrix::from_fn(2, n, |i, j| {
        if i == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(s[j])
        }
    });
    let k = integer_kernel(&a);
    debug_assert_eq!(k.rows(), d);
    let vectors = k
        .to_rows()
        .into_iter()
        .map(IntVector::new)
        .collect::<Result<Vec<_>>>()?;
    let weight = IntVector::new(s.iter().map(|&x| BigInt::from(x)).collect())?;
    Ok(LdLattice {
        d,
        holes: holes.clone(),
        support: s,
        weight,
        basis: LatticeBasis::new(vectors)?,
    })
}

/// `<c,c><h,h> - <c,h>^2`.
pub fn ld_determinant(d: usize, holes: &HoleSequence) -> Result<BigUint> {
    let s = validated_support(d, holes)?;
    let cc = BigUint::from(s.len());
    let hh: BigUint = s.iter().map(|&x| BigUint::from(x) * x).sum();
    let ch: BigUint = s.iter().map(|&x| BigUint::from(x)).sum();
    Ok(cc * hh - &ch * &ch)
}

/// Ambient vectors `b_a + b_b - b_c - b_e` with `a + b = c + e` on the
/// support, one per antipodal pair.
pub fn quadruple_vectors(l: &LdLattice) -> Result<Vec<IntVector>> {
    let s = l.support();
    let n = s.len();
    let mut by_sum: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            by_sum.entry(s[a] + s[b]).or_default().push((a, b));
        }
    }
    let mut out = Vec::new();
    for pairs in by_sum.values() {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, e) in &pairs[i + 1..] {
                let mut v = alloc::vec![BigInt::zero(); n];
                v[a] += 1;
                v[b] += 1;
                v[c] -= 1;
                v[e] -= 1;
                out.push(IntVector::new(v)?);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::MinimumExceedsFour);
    }
    Ok(out)
}

/// Minimal vectors in basis coordinates. Falls back to general enumeration
/// when the support admits no quadruple (the minimum then exceeds 4).
pub fn ld_minimal_vectors(l: &LdLattice) -> Result<MinimalVectorSet> {
    let quads = match quadruple_vectors(l) {
        Ok(q) => q,
        Err(Error::MinimumExceedsFour) => return minimal_vectors_general(l.gram()),
        Err(e) => return Err(e),
    };
    let solver = FastSolver::new(l);
    let mut reps = Vec::with_capacity(quads.len());
    for q in &quads {
        let x = match solver.as_ref().and_then(|s| s.solve(q)) {
            Some(x) => x,
            None => l
                .basis_coordinates(q)
                .ok_or_else(|| Error::InvalidInput("vector outside the lattice".into()))?,
        };
        reps.push(IntVector::new(x)?);
    }
    Ok(MinimalVectorSet::from_trusted(
        l.gram().clone(),
        BigRational::from_integer(BigInt::from(4)),
        reps,
    ))
}

/// Triangular solve in `i128` for the common case of small basis entries.
struct FastSolver {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl FastSolver {
    fn new(l: &LdLattice) -> Option<Self> {
        let vecs = l.basis().vectors();
        let rows = vecs
            .iter()
            .map(|v| v.coords().iter().map(|c| c.to_i64().map(i128::from)).collect())
            .collect::<Option<Vec<Vec<i128>>>>()?;
        if rows.iter().flatten().any(|c| c.abs() > 1 << 40) {
            return None;
        }
        Some(FastSolver {
            pivots: pivot_columns(vecs),
            rows,
        })
    }

    fn solve(&self, v: &IntVector) -> Option<Vec<BigInt>> {
        let v: Vec<i128> = v.coords().iter().map(|c| c.to_i128()).collect::<Option<_>>()?;
        let mut x: Vec<i128> = Vec::with_capacity(self.rows.len());
        for (r, &p) in self.pivots.iter().enumerate() {
            let mut acc = v[p];
            for (rp, &xr) in x.iter().enumerate() {
                acc = acc.checked_sub(xr.checked_mul(self.rows[rp][p])?)?;
            }
            let piv = self.rows[r][p];
            if acc % piv != 0 {
                return None;
            }
            x.push(acc / piv);
        }
        for (j, &vj) in v.iter().enumerate() {
            let mut acc: i128 = 0;
            for (xr, row) in x.iter().zip(&self.rows) {
                acc = acc.checked_add(xr.checked_mul(row[j])?)?;
            }
            if acc != vj {
                return None;
            }
        }
        Some(x.into_iter().map(BigInt::from).collect())
    }
}

/// Reflection of the holes about the support: `{omega + 1 - h}`.
pub fn essential_partner(d: usize, holes: &HoleSequence) -> Result<HoleSequence> {
    let s = validated_support(d, holes)?;
    let omega = *s.last().expect("nonempty support");
    let mut out: Vec<u64> = holes
        .holes()
        .iter()
        .filter(|&&h| h <= omega)
        .map(|&h| omega + 1 - h)
        .collect();
    out.sort_unstable();
    HoleSequence::new(out)
}

/// Hole sequences with `h_1 >= 7`, gaps `>= 6` and `h_k = d + k + 1`, built
/// from the sequences `1 = s_1 < ... < s_{d-8}` counted by `alpha(d - 8)`.
pub fn family_members(d: usize) -> Result<Vec<HoleSequence>> {
    if d < 46 {
        return Err(Error::DimensionTooSmall { d, min: 46 });
    }
    let n = d - 8;
    let mut out = Vec::new();
    let mut holes = Vec::new();
    extend_alpha_sequences(n, 1, 1, None, &mut holes, &mut |s_last, holes| {
        let omega = s_last + 11;
        let mut h: Vec<u64> = holes.iter().map(|m| m + 5).collect();
        h.push(omega - 1);
        out.push(HoleSequence(h));
    });
    out.sort();
    Ok(out)
}

/// Walks all sequences starting at 1 with steps 1 or 2 whose skipped values
/// are at least 6 apart. `holes` collects the skipped values.
fn extend_alpha_sequences<F>(
    n: usize,
    len: usize,
    last: u64,
    last_hole: Option<u64>,
    holes: &mut Vec<u64>,
    emit: &mut F,
) where
    F: FnMut(u64, &[u64]),
{
    if len == n {
        emit(last, holes);
        return;
    }
    extend_alpha_sequences(n, len + 1, last + 1, last_hole, holes, emit);
    let skipped = last + 1;
    if last_hole.map_or(true, |h| skipped - h >= 6) {
        holes.push(skipped);
        extend_alpha_sequences(n, len + 1, last + 2, Some(skipped), holes, emit);
        holes.pop();
    }
}

/// The nine-dimensional lattices with gaps of at least 6 (holes below the
/// largest support element and `h_1 > 1`), one per essential-isomorphism
/// class, followed by `L_10(4,10)`.
pub fn table9_entries() -> Vec<(usize, HoleSequence)> {
    let d = 9;
    let mut reps: Vec<HoleSequence> = Vec::new();
    let mut stack: Vec<Vec<u64>> = alloc::vec![Vec::new()];
    while let Some(h) = stack.pop() {
        let hs = HoleSequence(h.clone());
        let s = support(d, &hs);
        let omega = *s.last().expect("nonempty");
        if h.last().map_or(true, |&x| x < omega) {
            if let Ok(p) = essential_partner(d, &hs) {
                let canon = if p < hs { p } else { hs.clone() };
                if !reps.contains(&canon) {
                    reps.push(canon);
                }
            }
            let start = h.last().map_or(2, |&x| x + 6);
            for next in start..=(d as u64 + h.len() as u64 + 2) {
                let mut e = h.clone();
                e.push(next);
                stack.push(e);
            }
        }
    }
    reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out: Vec<(usize, HoleSequence)> = reps.into_iter().map(|h| (d, h)).collect();
    out.push((10, HoleSequence(alloc::vec![4, 10])));
    out
}
