//! Exact evaluation of the index bounds and the counting bounds built on them.
//! Floors involving `pi` are certified by rational enclosures of `pi`.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::arith::{binomial, factorial};
use crate::counting::Interval;
use crate::error::{Error, Result};

/// Enclosure of `pi` from Machin's formula using `terms` terms of each series.
pub fn pi_enclosure(terms: usize) -> Interval {
    let atan = |x: u64| {
        // Alternating series with decreasing terms: consecutive partial sums
        // bracket the limit.
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut pow = x.clone();
        let mut sum = BigRational::zero();
        let mut prev = BigRational::zero();
        for k in 0..terms {
            prev = sum.clone();
            let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &pow);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            pow *= &x2;
        }
        if prev <= sum {
            (prev, sum)
        } else {
            (sum, prev)
        }
    };
    let (a_lo, a_hi) = atan(5);
    let (b_lo, b_hi) = atan(239);
    Interval {
        lo: a_lo * BigInt::from(16) - b_hi * BigInt::from(4),
        hi: a_hi * BigInt::from(16) - b_lo * BigInt::from(4),
    }
}

/// `floor(c / pi^m)` for rational `c > 0`, refining the enclosure until the
/// floor is determined.
fn floor_over_pi_power(c: &BigRational, m: u32) -> BigUint {
    let mut terms = 16;
    loop {
        let pi = pi_enclosure(terms);
        let lo = (c / Pow::pow(&pi.hi, m)).floor();
        let hi = (c / Pow::pow(&pi.lo, m)).floor();
        if lo == hi {
            return lo.to_integer().to_biguint().expect("positive");
        }
        terms *= 2;
    }
}

/// `floor(sqrt(2) * c / pi^m)`, via `floor(sqrt(2 c^2 / pi^(2m)))`.
fn floor_sqrt2_over_pi_power(c: &BigRational, m: u32) -> BigUint {
    let mut terms = 16;
    loop {
        let pi = pi_enclosure(terms);
        let sq = c * c * BigInt::from(2);
        let lo = (&sq / Pow::pow(&pi.hi, 2 * m)).floor().to_integer();
        let hi = (&sq / Pow::pow(&pi.lo, 2 * m)).floor().to_integer();
        let (lo, hi) = (lo.sqrt(), hi.sqrt());
        if lo == hi {
            return lo.to_biguint().expect("positive");
        }
        terms *= 2;
    }
}

fn double_factorial(n: u64) -> BigUint {
    (1..=n).rev().step_by(2).fold(BigUint::one(), |acc, k| acc * k)
}

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `floor((4/pi)^(d/2) (d/2)!)`.
pub fn minkowski(d: usize) -> BigUint {
    let m = (d / 2) as u32;
    let c = if d % 2 == 0 {
        Pow::pow(BigUint::from(4u32), m) * factorial(m as u64)
    } else {
        Pow::pow(BigUint::from(2u32), m) * double_factorial(2 * m as u64 + 1)
    };
    floor_over_pi_power(&rat(c), m)
}

/// `floor((2/pi)^(d/2) Gamma(2 + d/2))`.
pub fn blichfeldt(d: usize) -> BigUint {
    let m = (d / 2) as u32;
    if d % 2 == 0 {
        let c = Pow::pow(BigUint::from(2u32), m) * factorial(m as u64 + 1);
        floor_over_pi_power(&rat(c), m)
    } else {
        let c = rat(double_factorial(2 * m as u64 + 3)) / BigInt::from(4);
        floor_sqrt2_over_pi_power(&c, m)
    }
}

/// Exact `gamma_d^d` for `d <= 8`.
pub fn hermite_power(d: usize) -> Option<BigRational> {
    let (n, q) = match d {
        1 => (1, 1),
        2 => (4, 3),
        3 => (2, 1),
        4 => (4, 1),
        5 => (8, 1),
        6 => (64, 3),
        7 => (64, 1),
        8 => (256, 1),
        _ => return None,
    };
    Some(BigRational::new(BigInt::from(n), BigInt::from(q)))
}

/// `floor(gamma_d^(d/2))` for `d <= 8`.
pub fn hermite(d: usize) -> Option<BigUint> {
    let g = hermite_power(d)?;
    Some(g.floor().to_integer().sqrt().to_biguint().expect("positive"))
}

/// The exact values `I_1, ..., I_9`.
pub fn best_known(d: usize) -> Option<BigUint> {
    const I: [u32; 9] = [1, 1, 1, 2, 2, 4, 8, 16, 16];
    d.checked_sub(1).and_then(|i| I.get(i)).map(|&v| BigUint::from(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d: usize,
    pub minkowski: BigUint,
    pub blichfeldt: BigUint,
    pub hermite: Option<BigUint>,
    pub best_known: Option<BigUint>,
}

pub fn id_upper_bounds(d: usize) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    Ok(BoundReport {
        d,
        minkowski: minkowski(d),
        blichfeldt: blichfeldt(d),
        hermite: hermite(d),
        best_known: best_known(d),
    })
}

/// Which value of `I_d` to plug into the counting bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdChoice {
    Minkowski,
    Blichfeldt,
    Hermite,
    BestKnown,
    Explicit(BigUint),
}

pub fn resolve_id(d: usize, choice: &IdChoice) -> Result<BigUint> {
    match choice {
        IdChoice::Minkowski => Ok(minkowski(d)),
        IdChoice::Blichfeldt => Ok(blichfeldt(d)),
        IdChoice::Hermite => hermite(d).ok_or(Error::UnknownId(d)),
        IdChoice::BestKnown => best_known(d).ok_or(Error::UnknownId(d)),
        IdChoice::Explicit(v) => Ok(v.clone()),
    }
}

/// The smallest available bound on `I_d`: the exact value when known,
/// otherwise the better of the two closed-form bounds.
pub fn best_available_id(d: usize) -> BigUint {
    best_known(d).unwrap_or_else(|| core::cmp::min(minkowski(d), blichfeldt(d)))
}

/// Certified enclosure of `log2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Log2Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Log2Interval {
    pub fn exact(v: BigInt) -> Self {
        let r = BigRational::from_integer(v);
        Log2Interval { lo: r.clone(), hi: r }
    }

    pub fn add(&self, other: &Log2Interval) -> Log2Interval {
        Log2Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn scale(&self, k: u64) -> Log2Interval {
        Log2Interval {
            lo: &self.lo * BigInt::from(k),
            hi: &self.hi * BigInt::from(k),
        }
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        ((&self.lo + &self.hi) / BigInt::from(2)).to_f64().unwrap_or(f64::NAN)
    }
}

const LOG_MANTISSA_BITS: u64 = 28;
const LOG_POWER_BITS: u32 = 14;

/// Encloses `log2(x)` for `x >= 1` with width below `2^-12`: with `x` in
/// `[m 2^s, (m+1) 2^s]` and `Q = 2^14`, `floor(log2(m^Q))` is an exact bit
/// length.
pub fn log2_interval(x: &BigUint) -> Result<Log2Interval> {
    if x.is_zero() {
        return Err(Error::InvalidInput("log2 of zero".into()));
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(LOG_MANTISSA_BITS);
    let m = x >> shift;
    let exact = (&m << shift) == *x;
    let q = 1u64 << LOG_POWER_BITS;
    let lo_bits = Pow::pow(&m, q).bits() - 1;
    let top = if exact { m.clone() } else { &m + 1u32 };
    let top_pow = Pow::pow(&top, q);
    // An exact power of two has an exact logarithm.
    let hi_bits = if top_pow.count_ones() == 1 {
        top_pow.bits() - 1
    } else {
        top_pow.bits()
    };
    let qi = BigInt::from(q);
    let s = BigInt::from(shift);
    Ok(Log2Interval {
        lo: BigRational::new(&s * &qi + BigInt::from(lo_bits), qi.clone()),
        hi: BigRational::new(&s * &qi + BigInt::from(hi_bits), qi),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountBound {
    pub id: BigUint,
    pub value: BigUint,
    pub log2: Log2Interval,
}

fn with_log(id: BigUint, value: BigUint) -> Result<CountBound> {
    let log2 = log2_interval(&value)?;
    Ok(CountBound { id, value, log2 })
}

fn three_pow_times(d: usize, id: &BigUint) -> BigUint {
    Pow::pow(BigUint::from(3u32), d as u32) * id
}

/// `I^(d+1) binom(3^d I, binom(d,2))` and the improved variant
/// `I^(d+1) binom(floor((3^d I - (2d+1))/2), binom(d,2))`.
pub fn perfect_count_upper(d: usize, choice: &IdChoice) -> Result<(CountBound, CountBound)> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    let id = resolve_id(d, choice)?;
    let k = (d * (d - 1) / 2) as u64;
    let lead = Pow::pow(&id, d as u32 + 1);
    let top = three_pow_times(d, &id);
    let base = &lead * binomial(&top, k);
    let reduced = if top >= BigUint::from(2 * d + 1) {
        (&top - BigUint::from(2 * d + 1)) / 2u32
    } else {
        BigUint::zero()
    };
    let improved = &lead * binomial(&reduced, k);
    Ok((with_log(id.clone(), base)?, with_log(id, improved)?))
}

/// `I^(d+1) binom(3^d I, k+1)`.
pub fn cell_count_upper(d: usize, k: usize, choice: &IdChoice) -> Result<CountBound> {
    if d == 0 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    if k > d * (d + 1) / 2 {
        return Err(Error::InvalidInput("cell dimension exceeds d(d+1)/2".into()));
    }
    let id = resolve_id(d, choice)?;
    let value = Pow::pow(&id, d as u32 + 1) * binomial(&three_pow_times(d, &id), k as u64 + 1);
    with_log(id, value)
}

/// `(d!)^(d+1) 2^(3^d d!)`: the log is always returned, the value for `d <= 3`.
pub fn polytope_count_upper(d: usize) -> Result<(Log2Interval, Option<BigUint>)> {
    if d == 0 {
        return Err(Error::DimensionTooSmall { d, min: 1 });
    }
    let f = factorial(d as u64);
    let e = Pow::pow(BigUint::from(3u32), d as u32) * &f;
    let log = log2_interval(&f)?
        .scale(d as u64 + 1)
        .add(&Log2Interval::exact(BigInt::from(e.clone())));
    let exact = if d <= 3 {
        let e = e.to_usize().expect("small exponent");
        Some(Pow::pow(&f, d as u32 + 1) << e)
    } else {
        None
    };
    Ok((log, exact))
}

/// `d!`, the bound on indices of hollow sublattices.
pub fn hollow_upper(d: usize) -> BigUint {
    factorial(d as u64)
}

/// Rows `d = 1..=max_d` of the index bound table.
pub fn bound_table(max_d: usize) -> Vec<BoundReport> {
    (1..=max_d).map(|d| id_upper_bounds(d).expect("d >= 1")).collect()
}
