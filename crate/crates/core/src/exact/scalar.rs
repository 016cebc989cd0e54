//! Exact scalar domains: arbitrary-precision rationals and real quadratic
//! extensions `Q(√d)`. Finite fields live in [`super::fq`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field arithmetic used by the generic linear algebra.
pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero; callers check `is_zero` first.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(v: i64) -> Self;
}

impl ExactField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub fn big_rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element `a + b√d` of the real quadratic field `Q(√d)`.
///
/// `d` is carried in the value; a rational (b = 0) is compatible with any
/// radicand, otherwise operations require matching `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        QuadRat { a, b, d }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadRat {
            a,
            b: Zero::zero(),
            d: 0,
        }
    }

    pub fn sqrt_d(d: i64) -> Self {
        QuadRat {
            a: Zero::zero(),
            b: One::one(),
            d,
        }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    fn radicand_with(&self, other: &Self) -> i64 {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d,
            (_, true) => self.d,
            _ => {
                assert_eq!(self.d, other.d, "mixed quadratic radicands");
                self.d
            }
        }
    }

    /// Sign of `a + b√d` computed exactly (d ≥ 0).
    pub fn signum(&self) -> i32 {
        let (az, bz) = (Zero::is_zero(&self.a), Zero::is_zero(&self.b));
        if az && bz {
            return 0;
        }
        if bz {
            return if self.a.is_positive() { 1 } else { -1 };
        }
        if az {
            return if self.b.is_positive() { 1 } else { -1 };
        }
        // a and b nonzero: compare a² vs b²d when signs differ.
        let sa = self.a.is_positive();
        let sb = self.b.is_positive();
        if sa == sb {
            return if sa { 1 } else { -1 };
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => {
                if sa {
                    1
                } else {
                    -1
                }
            }
            std::cmp::Ordering::Less => {
                if sb {
                    1
                } else {
                    -1
                }
            }
            std::cmp::Ordering::Equal => 0,
        }
    }
}

impl fmt::Debug for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.d)
        }
    }
}

impl ExactField for QuadRat {
    fn zero() -> Self {
        QuadRat::rational(Zero::zero())
    }
    fn one() -> Self {
        QuadRat::rational(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn add(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        QuadRat {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        QuadRat {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        let dd = BigRational::from_integer(BigInt::from(d));
        QuadRat {
            a: &self.a * &other.a + &self.b * &other.b * &dd,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
    }
    fn div(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        let dd = BigRational::from_integer(BigInt::from(d));
        // 1/(a + b√d) = (a - b√d)/(a² - b²d); the norm is nonzero when d is
        // not a perfect square of a rational, which holds for the square-free
        // radicands used here.
        let norm = &other.a * &other.a - &other.b * &other.b * &dd;
        assert!(!Zero::is_zero(&norm), "division by zero in Q(√d)");
        let conj = QuadRat {
            a: other.a.clone(),
            b: -other.b.clone(),
            d,
        };
        let num = self.mul(&conj);
        QuadRat {
            a: num.a / norm.clone(),
            b: num.b / norm,
            d,
        }
    }
    fn neg(&self) -> Self {
        QuadRat {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }
    fn from_int(v: i64) -> Self {
        QuadRat::rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Add for QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: QuadRat) -> QuadRat {
        ExactField::add(&self, &rhs)
    }
}
impl Sub for QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: QuadRat) -> QuadRat {
        ExactField::sub(&self, &rhs)
    }
}
impl Mul for QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: QuadRat) -> QuadRat {
        ExactField::mul(&self, &rhs)
    }
}
impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        ExactField::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r2 = QuadRat::sqrt_d(2);
        let sq = ExactField::mul(&r2, &r2);
        assert_eq!(sq, QuadRat::from_int(2));
    }

    #[test]
    fn quad_division_round_trip() {
        let x = QuadRat::new(big_rational(3, 2), big_rational(-1, 3), 2);
        let y = QuadRat::new(big_rational(1, 5), big_rational(7, 2), 2);
        let q = x.div(&y);
        assert_eq!(ExactField::mul(&q, &y), x);
    }

    #[test]
    fn quad_sign_mixed_terms() {
        // 3 - 2√2 > 0 since 9 > 8; 1 - √2 < 0.
        let pos = QuadRat::new(big_rational(3, 1), big_rational(-2, 1), 2);
        let neg = QuadRat::new(big_rational(1, 1), big_rational(-1, 1), 2);
        assert_eq!(pos.signum(), 1);
        assert_eq!(neg.signum(), -1);
        assert_eq!(QuadRat::from_int(0).signum(), 0);
    }
}
