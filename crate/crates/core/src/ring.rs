//! Minimal algebraic traits shared by the coefficient domains.

use std::fmt::Debug;


pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        let step = if n < 0 { one.neg() } else { one };
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&step);
        }
        acc
    }

    fn pow_u(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// Forwards `+ - * unary-` on owned values and references to the `Ring` methods.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl std::ops::Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $crate::ring::Ring::add(self, rhs)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::ring::Ring::add(&self, &rhs)
            }
        }
        impl std::ops::Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $crate::ring::Ring::sub(self, rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::ring::Ring::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                $crate::ring::Ring::mul(self, rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::ring::Ring::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg(self)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg(&self)
            }
        }
    };
}
pub(crate) use impl_ring_ops;
