//! Arbitrary-precision rational scalar.
//!
//! All arithmetic in this crate is exact; there is no floating-point mode.
//! `Rat` wraps [`num::BigRational`], which keeps values reduced to lowest
//! terms with a positive denominator.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms, denominator positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Parses `"p/q"` or `"p"` with optional sign.
    pub fn parse(s: &str) -> Result<Self> {
        BigRational::from_str(s.trim())
            .map(Rat)
            .map_err(|e| Error::parse(format!("bad rational {s:?}: {e}")))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::from_int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $assign_trait for Rat {
            fn $assign_method(&mut self, rhs: Rat) {
                (self.0).$assign_method(rhs.0);
            }
        }
        impl $assign_trait<&Rat> for Rat {
            fn $assign_method(&mut self, rhs: &Rat) {
                (self.0).$assign_method(&rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl DivAssign for Rat {
    fn div_assign(&mut self, rhs: Rat) {
        assert!(!rhs.is_zero(), "division by zero");
        self.0 /= rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::one()
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_positive_denominator() {
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(Rat::new(-4, -6), Rat::new(2, 3));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-3/2", "22/7"] {
            assert_eq!(Rat::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Rat::parse("4/6").unwrap().to_string(), "2/3");
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let a = Rat::new(1, 3);
        let b = Rat::new(1, 6);
        assert_eq!(a.clone() + b.clone(), Rat::new(1, 2));
        assert_eq!(a.clone() - b.clone(), Rat::new(1, 6));
        assert_eq!(a.clone() * b.clone(), Rat::new(1, 18));
        assert_eq!(a / b, Rat::from_int(2));
    }
}
