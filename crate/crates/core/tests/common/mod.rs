#![allow(dead_code)]

use num_bigint::BigInt;
use perflat::matrix::Matrix;
use rand::Rng;

/// A random unimodular `u` with its inverse, built from elementary moves.
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
        // u <- (I + c e_i e_j^T) u and v <- v (I - c e_i e_j^T).
        for k in 0..n {
            let add = &c * &u[(j, k)];
            u.row_mut(i)[k] += add;
            let sub = &c * &v[(k, i)];
            v.row_mut(k)[j] -= sub;
        }
        if rng.gen_bool(0.2) {
            u.swap_rows(i, j);
            // Swapping rows of u swaps columns of its inverse.
            for k in 0..n {
                let row = v.row_mut(k);
                row.swap(i, j);
            }
        }
    }
    (u, v)
}
