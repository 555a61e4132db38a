use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MultiPoly;
use crate::error::{Error, Result};

/// `numerator / denominator` with a positive integer denominator, kept
/// reduced (the gcd of the numerator's content and the denominator is 1).
///
/// Only used for intermediate series coefficients; results handed back to
/// callers go through [`RatPoly::into_poly`], which insists on denominator 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    num: MultiPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: MultiPoly, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::inconsistent("zero denominator"));
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        Ok(RatPoly { num, den }.normalized())
    }

    pub fn zero() -> Self {
        RatPoly::from(MultiPoly::zero())
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return RatPoly::zero_raw();
        }
        let g = self.num.content().gcd(&self.den);
        if g.is_one() {
            return self;
        }
        RatPoly {
            num: self.num.div_exact_int(&g).expect("gcd divides"),
            den: self.den / g,
        }
    }

    fn zero_raw() -> Self {
        RatPoly {
            num: MultiPoly::zero(),
            den: BigInt::one(),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplies by the rational `n / d`.
    pub fn scale(&self, n: &BigInt, d: &BigInt) -> Result<Self> {
        RatPoly::new(self.num.scale(n), &self.den * d)
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        RatPoly {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .normalized()
    }

    /// The polynomial itself, provided every denominator has cancelled.
    pub fn into_poly(self) -> Result<MultiPoly> {
        if self.den.is_one() {
            Ok(self.num)
        } else {
            Err(Error::inconsistent(format!(
                "coefficient ({}) / {} is not integral",
                self.num, self.den
            )))
        }
    }
}

impl From<MultiPoly> for RatPoly {
    fn from(num: MultiPoly) -> Self {
        RatPoly {
            num,
            den: BigInt::one(),
        }
    }
}

impl Add<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = rhs.num.scale(&(&l / &rhs.den));
        RatPoly { num: a + b, den: l }.normalized()
    }
}

impl Sub<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = rhs.num.scale(&(&l / &rhs.den));
        RatPoly { num: a - b, den: l }.normalized()
    }
}

impl Mul<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        RatPoly {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}
