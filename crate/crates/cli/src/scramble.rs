//! Seeded random changes of basis.

use num_bigint::BigInt;
use perflat::lattice::GramMatrix;
use perflat::matrix::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Result;

/// A random unimodular `u` together with its inverse, built from `moves`
/// elementary row operations and swaps.
pub fn random_unimodular<R: Rng>(n: usize, moves: usize, rng: &mut R) -> (Matrix<BigInt>, Matrix<BigInt>) {
    let mut u = Matrix::<BigInt>::identity(n);
    let mut v = Matrix::<BigInt>::identity(n);
    if n < 2 {
        return (u, v);
    }
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        // u <- (I + c e_i e_jᵀ) u, v <- v (I - c e_i e_jᵀ)
        for k in 0..n {
            let add = &c * &u[(j, k)];
            u.row_mut(i)[k] += add;
            let sub = &c * &v[(k, i)];
            v.row_mut(k)[j] -= sub;
        }
        if rng.gen_bool(0.2) {
            u.swap_rows(i, j);
            for k in 0..n {
                v.row_mut(k).swap(i, j);
            }
        }
    }
    (u, v)
}

/// `u g uᵀ` for a random unimodular `u` drawn from `seed`, with `3n` moves.
pub fn scramble_gram(g: &GramMatrix, seed: u64) -> Result<(GramMatrix, Matrix<BigInt>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u, _) = random_unimodular(g.dim(), 3 * g.dim(), &mut rng);
    Ok((g.transform(&u)?, u))
}
