//! Overlattices of `Z^d` as duals of sublattices in Hermite normal form.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{hnf_rows, inverse_rational, to_rational, Matrix};

/// A lattice `Λ ⊇ Z^d` with basis rows `numerators / denominator`; the
/// numerator matrix is in row Hermite normal form, which makes it canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overlattice {
    pub index: u64,
    pub denominator: BigInt,
    pub numerators: Matrix<BigInt>,
}

impl Overlattice {
    pub fn dim(&self) -> usize {
        self.numerators.rows()
    }

    pub fn basis(&self) -> Matrix<BigRational> {
        self.numerators
            .map(|x| BigRational::new(x.clone(), self.denominator.clone()))
    }

    /// Coordinates of `x` (rational, ambient) in the basis, if `x ∈ Λ`.
    pub fn coordinates(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let inv = inverse_rational(&self.basis()).expect("basis is invertible");
        let y = inv.left_apply(x);
        y.iter()
            .all(|c| c.is_integer())
            .then(|| y.into_iter().map(|c| c.to_integer()).collect())
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Canonical form of the lattice spanned by the rows of `basis`, which
    /// must contain `Z^d` with index `index`.
    pub fn from_basis(basis: &Matrix<BigRational>, index: u64) -> Self {
        let den = BigInt::from(index);
        let scaled = basis.map(|x| (x * &den).to_integer());
        let numerators = hnf_rows(&scaled).h;
        Overlattice {
            index,
            denominator: den,
            numerators,
        }
        .reduced()
    }

    /// Divides out a common factor of the denominator and all numerators.
    fn reduced(mut self) -> Self {
        let g = self
            .numerators
            .iter_rows()
            .flatten()
            .fold(self.denominator.clone(), |g, x| num_integer::Integer::gcd(&g, x));
        if !g.is_one() && !g.is_zero() {
            self.numerators = self.numerators.map(|x| x / &g);
            self.denominator /= &g;
        }
        self
    }
}

/// Row-HNF sublattices of `Z^d` with index exactly `n`.
pub fn sublattices(d: usize, n: u64) -> Vec<Matrix<BigInt>> {
    let mut out = Vec::new();
    let mut diag = Vec::with_capacity(d);
    diagonals(d, n, &mut diag, &mut |diag| {
        // Entries above pivot j range over [0, diag[j]).
        let mut m = Matrix::<BigInt>::zeros(d, d);
        for (i, &a) in diag.iter().enumerate() {
            m.row_mut(i)[i] = BigInt::from(a);
        }
        fill(&mut m, diag, 0, 1, &mut out);
    });
    out
}

fn diagonals(d: usize, n: u64, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if cur.len() == d - 1 {
        cur.push(n);
        f(cur);
        cur.pop();
        return;
    }
    for a in 1..=n {
        if n % a == 0 {
            cur.push(a);
            diagonals(d, n / a, cur, f);
            cur.pop();
        }
    }
}

/// Fills the strictly upper entries `(i, j)`, `i < j`, column by column.
fn fill(m: &mut Matrix<BigInt>, diag: &[u64], i: usize, j: usize, out: &mut Vec<Matrix<BigInt>>) {
    let d = diag.len();
    if j >= d {
        out.push(m.clone());
        return;
    }
    let (ni, nj) = if i + 1 < j { (i + 1, j) } else { (0, j + 1) };
    for v in 0..diag[j] {
        m.row_mut(i)[j] = BigInt::from(v);
        fill(m, diag, ni, nj, out);
    }
    m.row_mut(i)[j] = BigInt::zero();
}

/// Overlattices of `Z^d` with index exactly `n`, sorted by canonical form.
pub fn overlattices_of_index(d: usize, n: u64) -> Vec<Overlattice> {
    let mut level: Vec<Overlattice> = sublattices(d, n)
        .into_iter()
        .map(|s| {
            let dual = inverse_rational(&to_rational(&s))
                .expect("full rank")
                .transpose();
            Overlattice::from_basis(&dual, n)
        })
        .collect();
    level.sort();
    level
}

/// All overlattices of `Z^d` with index at most `max_index`, sorted by index
/// and then canonical form.
pub fn overlattices(d: usize, max_index: u64) -> Result<Vec<Overlattice>> {
    if d == 0 || max_index == 0 {
        return Err(Error::InvalidInput("overlattices need d >= 1 and max_index >= 1".into()));
    }
    Ok((1..=max_index).flat_map(|n| overlattices_of_index(d, n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(overlattices(2, 1).unwrap().len(), 1);
        let two = overlattices(2, 2).unwrap();
        assert_eq!(two.len(), 4);
        assert_eq!(two.iter().filter(|o| o.index == 2).count(), 3);
        assert_eq!(overlattices(3, 4).unwrap().len(), 56);
    }

    #[test]
    fn contains_integer_lattice() {
        for o in overlattices(3, 3).unwrap() {
            for i in 0..3 {
                let e: Vec<BigRational> = (0..3)
                    .map(|j| BigRational::from_integer(BigInt::from((i == j) as i64)))
                    .collect();
                assert!(o.contains(&e));
            }
        }
    }
}
