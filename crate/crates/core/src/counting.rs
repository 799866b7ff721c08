//! Exact counting formulas: the sequence `alpha`, its hole-refined
//! polynomial, the subgroup counts `sigma_d(N)` and the family count.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// `alpha(1), ..., alpha(n)`: sequences `1 = s_1 < ... < s_n` with steps 1
/// or 2 whose skipped integers are pairwise at distance at least 6.
pub fn alpha_table(n: usize) -> Vec<BigUint> {
    let mut t: Vec<BigUint> = Vec::with_capacity(n);
    for i in 1..=n {
        let v = if i <= 6 {
            BigUint::from(i)
        } else {
            &t[i - 2] + &t[i - 6]
        };
        t.push(v);
    }
    t
}

pub fn alpha(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidInput("alpha is defined for n >= 1".into()));
    }
    Ok(alpha_table(n).pop().expect("n >= 1"))
}

/// Coefficients of `t^k`, `k = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolePolynomial {
    coeffs: Vec<BigUint>,
}

impl HolePolynomial {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn eval_at_one(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    fn add_shifted(&self, other: &HolePolynomial) -> HolePolynomial {
        let len = self.coeffs.len().max(other.coeffs.len() + 1);
        let mut c = vec![BigUint::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in other.coeffs.iter().enumerate() {
            c[i + 1] += x;
        }
        HolePolynomial { coeffs: c }
    }
}

pub fn alpha_polynomial(n: usize) -> Result<HolePolynomial> {
    if n == 0 {
        return Err(Error::InvalidInput("alpha is defined for n >= 1".into()));
    }
    let mut t: Vec<HolePolynomial> = Vec::with_capacity(n);
    for i in 1..=n {
        let p = if i <= 6 {
            let mut c = vec![BigUint::one()];
            if i > 1 {
                c.push(BigUint::from(i - 1));
            }
            HolePolynomial { coeffs: c }
        } else {
            t[i - 2].add_shifted(&t[i - 6])
        };
        t.push(p);
    }
    Ok(t.pop().expect("n >= 1"))
}

/// A closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// Certified enclosure of the real root of `z^3 - z - 1` of width `2^-bits`.
pub fn plastic_root(bits: u32) -> Interval {
    let f = |z: &BigRational| z * z * z - z - BigRational::one();
    let mut lo = BigRational::one();
    let mut hi = BigRational::from_integer(BigInt::from(2));
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / BigInt::from(2);
        if f(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval { lo, hi }
}

/// `alpha(n) / rho^n` compared with its limit `(45 + 61 rho + 36 rho^2) / 161`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub n: usize,
    pub alpha: BigUint,
    pub rho: Interval,
    pub ratio: Interval,
    pub limit: Interval,
    /// Certified enclosure of `|ratio - limit|`.
    pub deviation: Interval,
}

pub fn alpha_asymptotic_check(n: usize) -> Result<AsymptoticReport> {
    if n < 10 {
        return Err(Error::InvalidInput("asymptotic check needs n >= 10".into()));
    }
    let a = alpha(n)?;
    let rho = plastic_root(128);
    let ai = BigRational::from_integer(BigInt::from(a.clone()));
    let ratio = Interval {
        lo: &ai / Pow::pow(&rho.hi, n),
        hi: &ai / Pow::pow(&rho.lo, n),
    };
    let lim = |r: &BigRational| {
        (BigRational::from_integer(45.into())
            + r * BigInt::from(61)
            + r * r * BigInt::from(36))
            / BigInt::from(161)
    };
    let limit = Interval {
        lo: lim(&rho.lo),
        hi: lim(&rho.hi),
    };
    let up = core::cmp::max((&ratio.hi - &limit.lo).abs(), (&limit.hi - &ratio.lo).abs());
    let zero = BigRational::zero();
    let down = [&ratio.lo - &limit.hi, &limit.lo - &ratio.hi, zero]
        .into_iter()
        .max()
        .expect("nonempty");
    Ok(AsymptoticReport {
        n,
        alpha: a,
        rho,
        ratio,
        limit,
        deviation: Interval { lo: down, hi: up },
    })
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of sublattices of index `n` in `Z^d` (equivalently of overlattices
/// of `Z^d` with index `n`).
pub fn sigma(d: usize, n: u64) -> Result<BigUint> {
    if d == 0 || n == 0 {
        return Err(Error::InvalidInput("sigma needs d >= 1 and N >= 1".into()));
    }
    let mut total = BigUint::one();
    for (p, e) in factorize(n) {
        let p = BigUint::from(p);
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for j in 1..d as u32 {
            num *= Pow::pow(&p, e + j) - 1u32;
            den *= Pow::pow(&p, j) - 1u32;
        }
        total *= num / den;
    }
    Ok(total)
}

/// Number of lattices in the family of dimension `d` (`d >= 46`).
pub fn family_count(d: usize) -> Result<BigUint> {
    if d < 46 {
        return Err(Error::DimensionTooSmall { d, min: 46 });
    }
    alpha(d - 8)
}
