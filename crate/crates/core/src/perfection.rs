//! Perfection via the rank of the rank-one symmetric tensors `v vᵀ`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::family::{ld_determinant, ld_minimal_vectors, LdLattice};
use crate::lattice::{minimal_vectors_general, GramMatrix, IntVector};
use crate::matrix::{rank_int, rank_mod_prime, solve_rational, Matrix};

pub fn tensor_width(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Upper-triangular entries of `v vᵀ`, row by row.
pub fn symmetric_square(v: &[BigInt]) -> Vec<BigInt> {
    let d = v.len();
    let mut out = Vec::with_capacity(tensor_width(d));
    for i in 0..d {
        for j in i..d {
            out.push(&v[i] * &v[j]);
        }
    }
    out
}

pub fn symmetric_rank(vectors: &[IntVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Err(Error::Empty);
    };
    let d = first.len();
    if let Some(v) = vectors.iter().find(|v| v.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    let rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| symmetric_square(v.coords())).collect();
    // Full rank modulo a prime certifies full rank; anything else is decided exactly.
    let width = tensor_width(d);
    if rank_mod_prime(rows.iter().map(Vec::as_slice), width) == width {
        return Ok(width);
    }
    Ok(rank_int(&Matrix::from_rows(rows)?))
}

/// Incremental echelon basis of symmetric squares; supports undo.
#[derive(Clone, Debug, Default)]
pub struct SymmetricRankTracker {
    width: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl SymmetricRankTracker {
    pub fn new(d: usize) -> Self {
        SymmetricRankTracker {
            width: tensor_width(d),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = symmetric_square(v);
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let a = row[*p].clone();
            let b = r[*p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x = &*x * &a - &b * y;
            }
            let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !g.is_zero() {
                for x in r.iter_mut() {
                    *x /= &g;
                }
            }
        }
        r
    }

    /// Adds `v vᵀ` if it is independent of the current span.
    pub fn push(&mut self, v: &[BigInt]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        self.rows.pop();
    }
}

/// A vector configuration together with its symmetric-tensor rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectSet {
    d: usize,
    vectors: Vec<IntVector>,
    rank2: usize,
}

impl PerfectSet {
    pub fn new(vectors: Vec<IntVector>) -> Result<Self> {
        let rank2 = symmetric_rank(&vectors)?;
        Ok(PerfectSet {
            d: vectors[0].len(),
            vectors,
            rank2,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[IntVector] {
        &self.vectors
    }

    pub fn rank2(&self) -> usize {
        self.rank2
    }

    pub fn is_perfect(&self) -> bool {
        self.rank2 == tensor_width(self.d)
    }
}

pub fn is_perfect(gram: &GramMatrix) -> Result<bool> {
    let mv = minimal_vectors_general(gram)?;
    Ok(symmetric_rank(mv.representatives())? == tensor_width(gram.dim()))
}

/// The unique symmetric form with `<v,v> = values[v]` on a perfect set of
/// exactly `d(d+1)/2` vectors. Positive definiteness is not checked.
pub fn gram_from_perfect_set(set: &PerfectSet, values: &[BigRational]) -> Result<GramMatrix> {
    let d = set.d;
    let w = tensor_width(d);
    if set.vectors.len() != w {
        return Err(Error::DimensionMismatch {
            expected: w,
            found: set.vectors.len(),
        });
    }
    if values.len() != w {
        return Err(Error::DimensionMismatch {
            expected: w,
            found: values.len(),
        });
    }
    // Unknown g_ij (i <= j) has coefficient v_i^2 on the diagonal, 2 v_i v_j off it.
    let a = Matrix::from_fn(w, w, |r, c| {
        let v = set.vectors[r].coords();
        let (i, j) = unflatten(d, c);
        let m = &v[i] * &v[j];
        let m = if i == j { m } else { m * 2 };
        BigRational::from_integer(m)
    });
    let sol = solve_rational(&a, values).ok_or(Error::NotPerfect {
        rank: set.rank2,
        full: w,
    })?;
    let g = Matrix::from_fn(d, d, |i, j| {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        sol[flatten(d, i, j)].clone()
    });
    GramMatrix::new(g)
}

fn flatten(d: usize, i: usize, j: usize) -> usize {
    i * d - i * (i + 1) / 2 + j
}

fn unflatten(d: usize, mut c: usize) -> (usize, usize) {
    for i in 0..d {
        let len = d - i;
        if c < len {
            return (i, i + c);
        }
        c -= len;
    }
    unreachable!("column index out of range")
}

/// Determinant, kissing pairs and tensor rank of a family lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdInvariants {
    pub det: BigUint,
    pub pairs: usize,
    pub d2: usize,
}

pub fn ld_invariants(l: &LdLattice) -> Result<LdInvariants> {
    let det = ld_determinant(l.d(), l.holes())?;
    let mv = ld_minimal_vectors(l)?;
    let d2 = symmetric_rank(mv.representatives())?;
    Ok(LdInvariants {
        det,
        pairs: mv.len(),
        d2,
    })
}
