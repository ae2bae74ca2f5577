//! Commutative-ring abstraction shared by rationals, dual numbers and
//! polynomials, plus the dual-number scalar itself.
//!
//! All matrix algorithms in this crate (determinant by cofactor expansion,
//! adjugate, corner minors, products) are written once over [`Ring`] and are
//! division-free, so they apply verbatim to exact rationals, to dual numbers
//! (for exact first derivatives) and to sparse polynomials.

use num::{One, Zero};
use std::fmt::Debug;
use std::ops::{Mul, Neg, Sub};

use crate::rat::Rat;

/// Minimal commutative-ring interface used by the generic linear algebra.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// Dual number `re + du·ε` with `ε² = 0` over exact rationals.
///
/// Evaluating a polynomial map at `A + ε·D` yields the value in `re` and the
/// exact directional derivative along `D` in `du`. This is how Jacobians are
/// evaluated at rational points without expanding symbolic derivatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dual {
    pub re: Rat,
    pub du: Rat,
}

impl Dual {
    pub fn constant(re: Rat) -> Self {
        Dual { re, du: Rat::zero() }
    }

    /// The value `re + 1·ε`: a coordinate being differentiated.
    pub fn variable(re: Rat) -> Self {
        Dual { re, du: Rat::one() }
    }
}

impl std::ops::Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { re: self.re + rhs.re, du: self.du + rhs.du }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { re: self.re - rhs.re, du: self.du - rhs.du }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual {
            du: self.re.clone() * rhs.du.clone() + self.du * rhs.re.clone(),
            re: self.re * rhs.re,
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { re: -self.re, du: -self.du }
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::constant(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.du.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::constant(Rat::one())
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.du.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        // d/dt (t^2) at t = 5 is 10.
        let t = Dual::variable(Rat::from_int(5));
        let sq = t.clone() * t;
        assert_eq!(sq.re, Rat::from_int(25));
        assert_eq!(sq.du, Rat::from_int(10));
    }

    #[test]
    fn nilpotent_square() {
        let eps = Dual { re: Rat::zero(), du: Rat::one() };
        assert!((eps.clone() * eps).is_zero());
    }
}
