//! Clebsch–Gordan coefficients in the Condon–Shortley phase convention.
//!
//! Values come from the Racah closed-form sum evaluated in exact rational
//! arithmetic; only the final square root is taken in floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C^{J M}_{j1 m1, j2 m2}` with every quantum number stored as twice its
/// value, so half-integers are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CgKey {
    pub two_j1: i32,
    pub two_m1: i32,
    pub two_j2: i32,
    pub two_m2: i32,
    pub two_j: i32,
    pub two_m: i32,
}

impl CgKey {
    pub fn new(two_j1: i32, two_m1: i32, two_j2: i32, two_m2: i32, two_j: i32, two_m: i32) -> Self {
        Self { two_j1, two_m1, two_j2, two_m2, two_j, two_m }
    }

    fn validate(&self) -> Result<()> {
        for (j, m, name) in [
            (self.two_j1, self.two_m1, "j1"),
            (self.two_j2, self.two_m2, "j2"),
            (self.two_j, self.two_m, "J"),
        ] {
            if j < 0 {
                return Err(Error::domain(format!("{name} must be non-negative, got {}/2", j)));
            }
            if m.abs() > j || (j - m) % 2 != 0 {
                return Err(Error::domain(format!("projection {m}/2 is not valid for {name} = {j}/2")));
            }
        }
        Ok(())
    }
}

fn factorial(n: i32) -> BigInt {
    (2..=n as i64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Evaluates a Clebsch–Gordan coefficient.
///
/// Returns zero when `m1 + m2 ≠ M` or the triangle condition fails.
pub fn clebsch_gordan(key: &CgKey) -> Result<f64> {
    key.validate()?;
    let CgKey { two_j1, two_m1, two_j2, two_m2, two_j, two_m } = *key;
    if two_m1 + two_m2 != two_m {
        return Ok(0.0);
    }
    if two_j < (two_j1 - two_j2).abs() || two_j > two_j1 + two_j2 {
        return Ok(0.0);
    }

    // every combination below is an integer once the parity checks pass
    let h = |x: i32| -> i32 {
        debug_assert_eq!(x % 2, 0);
        x / 2
    };
    let j_plus_j1_minus_j2 = h(two_j + two_j1 - two_j2);
    let j_minus_j1_plus_j2 = h(two_j - two_j1 + two_j2);
    let j1_plus_j2_minus_j = h(two_j1 + two_j2 - two_j);
    let j1_plus_j2_plus_j_plus_1 = h(two_j1 + two_j2 + two_j) + 1;
    let j1_minus_m1 = h(two_j1 - two_m1);
    let j1_plus_m1 = h(two_j1 + two_m1);
    let j2_minus_m2 = h(two_j2 - two_m2);
    let j2_plus_m2 = h(two_j2 + two_m2);
    let j_minus_m = h(two_j - two_m);
    let j_plus_m = h(two_j + two_m);
    let j_minus_j2_plus_m1 = h(two_j - two_j2 + two_m1);
    let j_minus_j1_minus_m2 = h(two_j - two_j1 - two_m2);

    let k_min = 0.max(-j_minus_j2_plus_m1).max(-j_minus_j1_minus_m2);
    let k_max = j1_plus_j2_minus_j.min(j1_minus_m1).min(j2_plus_m2);

    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let denom = factorial(k)
            * factorial(j1_plus_j2_minus_j - k)
            * factorial(j1_minus_m1 - k)
            * factorial(j2_plus_m2 - k)
            * factorial(j_minus_j2_plus_m1 + k)
            * factorial(j_minus_j1_minus_m2 + k);
        let term = BigRational::new(BigInt::one(), denom);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return Ok(0.0);
    }

    let numer = BigInt::from(two_j + 1)
        * factorial(j_plus_j1_minus_j2)
        * factorial(j_minus_j1_plus_j2)
        * factorial(j1_plus_j2_minus_j)
        * factorial(j_plus_m)
        * factorial(j_minus_m)
        * factorial(j1_minus_m1)
        * factorial(j1_plus_m1)
        * factorial(j2_minus_m2)
        * factorial(j2_plus_m2);
    let squared = BigRational::new(numer, factorial(j1_plus_j2_plus_j_plus_1)) * &sum * &sum;
    let magnitude = squared.to_f64().expect("finite rational").sqrt();
    Ok(if sum.is_negative() { -magnitude } else { magnitude })
}
