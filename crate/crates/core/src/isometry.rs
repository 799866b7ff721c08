//! Deciding isometry of positive definite forms by backtracking over images
//! of a reduced basis among short vectors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::common_denominator;
use crate::error::{Error, Result};
use crate::lattice::{lll_gram, short_vectors, GramMatrix};
use crate::matrix::{det_int, inverse_rational, to_rational, Matrix};

fn to_i64_matrix(m: &Matrix<BigInt>) -> Result<Vec<Vec<i64>>> {
    m.iter_rows()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .filter(|v| v.unsigned_abs() < 1 << 40)
                        .ok_or_else(|| Error::InvalidInput("Gram entries too large for isometry search".into()))
                })
                .collect()
        })
        .collect()
}

/// All vectors (both signs) of norm at most `bound`, with their products
/// against the form, in machine integers.
struct ShortSet {
    vecs: Vec<Vec<i64>>,
    /// `vecs[k] * gram`.
    images: Vec<Vec<i128>>,
    norms: Vec<i128>,
}

impl ShortSet {
    fn new(gram: &Matrix<BigInt>, bound: &BigInt) -> Result<Self> {
        let g = to_i64_matrix(gram)?;
        let d = g.len();
        let mut vecs = Vec::new();
        for (v, _) in short_vectors(gram, bound)? {
            let x: Vec<i64> = v
                .coords()
                .iter()
                .map(|c| c.to_i64().ok_or_else(|| Error::InvalidInput("short vector too large".into())))
                .collect::<Result<_>>()?;
            vecs.push(x.iter().map(|c| -c).collect());
            vecs.push(x);
        }
        let images: Vec<Vec<i128>> = vecs
            .iter()
            .map(|x| {
                (0..d)
                    .map(|j| (0..d).map(|k| x[k] as i128 * g[k][j] as i128).sum())
                    .collect()
            })
            .collect();
        let norms = vecs
            .iter()
            .zip(&images)
            .map(|(x, z)| dot(z, x))
            .collect();
        Ok(ShortSet { vecs, images, norms })
    }

    fn ip(&self, a: usize, b: usize) -> i128 {
        dot(&self.images[a], &self.vecs[b])
    }

    /// Histogram of inner products against the whole set.
    fn fingerprint(&self, a: usize) -> Vec<(i128, u32)> {
        let mut h: BTreeMap<i128, u32> = BTreeMap::new();
        for b in 0..self.vecs.len() {
            *h.entry(self.ip(a, b)).or_default() += 1;
        }
        h.into_iter().collect()
    }

    fn find(&self, x: &[i64]) -> Option<usize> {
        self.vecs.iter().position(|v| v == x)
    }
}

fn dot(z: &[i128], x: &[i64]) -> i128 {
    z.iter().zip(x).map(|(a, &b)| a * b as i128).sum()
}

/// A unimodular `t` with `t g1 tᵀ = g2`, or `None` when the forms are not
/// isometric. Fails with `BudgetExhausted` when the search visits more than
/// `node_budget` nodes.
pub fn isometry_equivalent(g1: &GramMatrix, g2: &GramMatrix, node_budget: u64) -> Result<Option<Matrix<BigInt>>> {
    let d = g1.dim();
    if g2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: g2.dim(),
        });
    }
    if !g1.is_positive_definite() || !g2.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if g1.determinant() != g2.determinant() {
        return Ok(None);
    }
    let s = common_denominator(g1.entries().iter_rows().flatten().chain(g2.entries().iter_rows().flatten()));
    let m1 = g1.entries().map(|x| (x * &s).to_integer());
    let m2 = g2.entries().map(|x| (x * &s).to_integer());
    let red = lll_gram(&m2)?;
    let m2r = &red.gram;
    let bound = (0..d).map(|i| m2r[(i, i)].clone()).max().expect("d >= 1");
    let s1 = ShortSet::new(&m1, &bound)?;
    let s2 = ShortSet::new(m2r, &bound)?;
    let mut n1 = s1.norms.clone();
    let mut n2 = s2.norms.clone();
    n1.sort_unstable();
    n2.sort_unstable();
    if n1 != n2 {
        return Ok(None);
    }
    let target = to_i64_matrix(m2r)?;
    // Candidate images of each reduced basis vector: equal norm and equal
    // fingerprint.
    let fp1: Vec<Vec<(i128, u32)>> = (0..s1.vecs.len()).map(|a| s1.fingerprint(a)).collect();
    let mut cands: Vec<Vec<usize>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut e = alloc::vec![0i64; d];
        e[i] = 1;
        let k = s2.find(&e).expect("basis vectors are short");
        let fp = s2.fingerprint(k);
        let c: Vec<usize> = (0..s1.vecs.len())
            .filter(|&a| s1.norms[a] == target[i][i] as i128 && fp1[a] == fp)
            .collect();
        if c.is_empty() {
            return Ok(None);
        }
        cands.push(c);
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut nodes = 0u64;
    if !search(&s1, &target, &cands, &mut chosen, &mut nodes, node_budget)? {
        return Ok(None);
    }
    let x = Matrix::from_fn(d, d, |i, j| BigInt::from(s1.vecs[chosen[i]][j]));
    let r_inv = inverse_rational(&to_rational(&red.transform))
        .expect("unimodular")
        .map(|v| v.to_integer());
    let t = r_inv.mul(&x)?;
    debug_assert!(det_int(&t)?.abs() == BigInt::from(1));
    debug_assert!(g1.transform(&t)? == *g2);
    Ok(Some(t))
}

fn search(
    s: &ShortSet,
    target: &[Vec<i64>],
    cands: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let i = chosen.len();
    if i == target.len() {
        return Ok(true);
    }
    for &a in &cands[i] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted(budget));
        }
        if chosen
            .iter()
            .enumerate()
            .all(|(j, &b)| s.ip(a, b) == target[i][j] as i128)
        {
            chosen.push(a);
            if search(s, target, cands, chosen, nodes, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Isometry after rescaling both forms to primitive integral matrices.
pub fn similar(g1: &GramMatrix, g2: &GramMatrix, node_budget: u64) -> Result<Option<Matrix<BigInt>>> {
    let p1 = GramMatrix::from_integers(&g1.primitive_integral())?;
    let p2 = GramMatrix::from_integers(&g2.primitive_integral())?;
    isometry_equivalent(&p1, &p2, node_budget)
}

/// Default node budget used by callers that do not configure one.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permuted_root_lattice() {
        let a2 = GramMatrix::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        let b = GramMatrix::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        let t = isometry_equivalent(&a2, &b, 1000).unwrap().unwrap();
        assert_eq!(a2.transform(&t).unwrap(), b);
    }

    #[test]
    fn different_forms() {
        let z2 = GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let other = GramMatrix::from_i64(&[&[1, 0], &[0, 2]]).unwrap();
        assert_eq!(isometry_equivalent(&z2, &other, 1000).unwrap(), None);
        // Same determinant, different minimum structure.
        let a = GramMatrix::from_i64(&[&[1, 0], &[0, 6]]).unwrap();
        let b = GramMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(isometry_equivalent(&a, &b, 1000).unwrap(), None);
    }

    #[test]
    fn similarity_ignores_scale() {
        let a2 = GramMatrix::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        let scaled = GramMatrix::from_i64(&[&[6, 3], &[3, 6]]).unwrap();
        assert!(similar(&a2, &scaled, 1000).unwrap().is_some());
    }

    #[test]
    fn tiny_budget_is_reported() {
        let a = GramMatrix::from_i64(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]).unwrap();
        assert_eq!(isometry_equivalent(&a, &a, 1), Err(Error::BudgetExhausted(1)));
    }
}
