//! Small exact-arithmetic helpers shared by the other modules.

use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    if n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

pub fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Nearest integer to `a / b` (`b > 0`), halves rounded towards +infinity.
pub fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    floor_div(&(a * &two + b), &(b * &two))
}

pub fn to_biguint(v: &BigInt) -> Option<BigUint> {
    match v.sign() {
        Sign::Minus => None,
        _ => Some(v.magnitude().clone()),
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: &BigUint, k: u64) -> BigUint {
    if BigUint::from(k) > *n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn gcd_all<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a BigInt>,
{
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Determinant of a small square matrix by fraction-free elimination in
/// 128-bit integers. The caller keeps the entries small enough for the
/// intermediate minors to fit.
pub fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[c][c];
    }
    sign * prev
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_helpers() {
        assert_eq!(floor_div(&int(-7), &int(2)), int(-4));
        assert_eq!(ceil_div(&int(-7), &int(2)), int(-3));
        assert_eq!(ceil_div(&int(7), &int(2)), int(4));
        assert_eq!(round_div(&int(5), &int(2)), int(3));
        assert_eq!(round_div(&int(-5), &int(2)), int(-2));
        assert_eq!(round_div(&int(-7), &int(3)), int(-2));
        assert_eq!(isqrt(&int(24)), int(4));
        assert_eq!(isqrt(&int(25)), int(5));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigUint::from(9u32), 1), BigUint::from(9u32));
        assert_eq!(binomial(&BigUint::from(27u32), 3), BigUint::from(2925u32));
        assert_eq!(binomial(&BigUint::from(3u32), 5), BigUint::zero());
        assert_eq!(factorial(6), BigUint::from(720u32));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_i128(alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]]), -1);
        let a3 = alloc::vec![alloc::vec![2, -1, 0], alloc::vec![-1, 2, -1], alloc::vec![0, -1, 2]];
        assert_eq!(det_i128(a3), 4);
        assert_eq!(det_i128(alloc::vec![alloc::vec![1, 2], alloc::vec![2, 4]]), 0);
    }
}
