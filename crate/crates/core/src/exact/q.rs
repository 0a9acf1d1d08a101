//! Rational coefficients with an inline `i64` representation that spills to
//! `BigRational` on overflow.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Canonical: `Small(n, d)` is reduced with `d > 0`; `Big` only holds values
/// that do not fit `Small`, so derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Default for Q {
    fn default() -> Self {
        Q::Small(0, 1)
    }
}

impl Q {
    pub const ZERO: Q = Q::Small(0, 1);
    pub const ONE: Q = Q::Small(1, 1);

    pub fn int(v: i64) -> Q {
        Q::Small(v, 1)
    }

    /// Panics when `den == 0`.
    pub fn frac(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(a, _) => *a < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Q::Small(a, _) => *a > 0,
            Q::Big(r) => r.is_positive(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Panics on zero.
    pub fn recip(&self) -> Q {
        match self {
            Q::Small(a, b) => {
                assert!(*a != 0, "reciprocal of zero");
                Q::from_i128(*b as i128, *a as i128)
            }
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    /// `self * m` for a small integer `m`.
    pub fn mul_int(&self, m: i64) -> Q {
        match self {
            Q::Small(a, b) => {
                if *b == 1 {
                    if let Some(p) = a.checked_mul(m) {
                        return Q::Small(p, 1);
                    }
                }
                Q::from_i128(*a as i128 * m as i128, *b as i128)
            }
            Q::Big(r) => Q::from_big(&**r * BigRational::from_integer(BigInt::from(m))),
        }
    }

    fn big_op(a: &Q, b: &Q, f: impl Fn(BigRational, BigRational) -> BigRational) -> Q {
        Q::from_big(f(a.to_big(), b.to_big()))
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        match (self, rhs) {
            (Q::Small(a, 1), Q::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Q::Small(s, 1),
                None => Q::from_i128(*a as i128 + *c as i128, 1),
            },
            (Q::Small(a, b), Q::Small(c, d)) => {
                if b == d {
                    match a.checked_add(*c) {
                        Some(n) => {
                            let g = n.gcd(b);
                            Q::Small(n / g, b / g)
                        }
                        None => Q::from_i128(*a as i128 + *c as i128, *b as i128),
                    }
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match a.checked_mul(d).zip(c.checked_mul(b)).and_then(|(x, y)| x.checked_add(y)) {
                        Some(n) => Q::from_i128(n, b * d),
                        None => Q::big_op(self, rhs, |x, y| x + y),
                    }
                }
            }
            _ => Q::big_op(self, rhs, |x, y| x + y),
        }
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        match (self, rhs) {
            (Q::Small(0, _), _) | (_, Q::Small(0, _)) => Q::ZERO,
            (Q::Small(a, 1), Q::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Q::Small(p, 1),
                None => Q::from_i128(*a as i128 * *c as i128, 1),
            },
            (Q::Small(a, b), Q::Small(c, d)) => {
                // cross-cancel so the product is already reduced
                let g1 = a.gcd(d);
                let g2 = c.gcd(b);
                let (a, d) = (a / g1, d / g1);
                let (c, b) = (c / g2, b / g2);
                match a.checked_mul(c).zip(b.checked_mul(d)) {
                    Some((n, m)) => Q::Small(n, m),
                    None => Q::from_i128(a as i128 * c as i128, b as i128 * d as i128),
                }
            }
            _ => Q::big_op(self, rhs, |x, y| x * y),
        }
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(a, b) => match a.checked_neg() {
                Some(n) => Q::Small(n, *b),
                None => Q::from_i128(-(*a as i128), *b as i128),
            },
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, rhs: &Q) -> Q {
        self + &(-rhs)
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(a, 1) => write!(f, "{a}"),
            Q::Small(a, b) => write!(f, "{a}/{b}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Self {
        Q::from_big(r)
    }
}

impl One for Q {
    fn one() -> Self {
        Q::ONE
    }
}

impl Zero for Q {
    fn zero() -> Self {
        Q::ZERO
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        &self + &rhs
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_spills_to_big() {
        let big = Q::int(i64::MAX);
        let s = &big + &Q::ONE;
        assert!(matches!(s, Q::Big(_)));
        let back = &s - &Q::ONE;
        assert_eq!(back, Q::int(i64::MAX));
        assert_eq!(-Q::int(i64::MIN), Q::from_big(BigRational::from_integer(-BigInt::from(i64::MIN))));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in any::<i64>(), b in 1i64..1000, c in any::<i64>(), d in 1i64..1000) {
            let x = Q::frac(a, b);
            let y = Q::frac(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!(&x + &y, Q::from_big(&bx + &by));
            prop_assert_eq!(&x * &y, Q::from_big(&bx * &by));
            prop_assert_eq!(&x - &y, Q::from_big(&bx - &by));
        }
    }
}
