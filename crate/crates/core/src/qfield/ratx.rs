//! Elements of Q(q)(x) with the operators `sigma_q`, `delta_x` and `delta_q`.

use std::fmt;

use super::polyx::PolyX;
use super::qrat::QRat;
use super::FieldError;
use crate::ring::{impl_ring_ops, Field, Ring};

/// A rational function `num / den` in `x` over Q(q), with `gcd(num, den) = 1`
/// and `den` monic in `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatX {
    num: PolyX,
    den: PolyX,
}

impl RatX {
    /// Builds `num / den` in canonical form.
    pub fn try_new(num: PolyX, den: PolyX) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Ring::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        Ok(RatX { num, den }.with_monic_den())
    }

    /// Panicking variant of [`RatX::try_new`].
    pub fn new(num: PolyX, den: PolyX) -> Self {
        Self::try_new(num, den).expect("RatX with zero denominator")
    }

    fn with_monic_den(self) -> Self {
        if self.den.is_monic() {
            return self;
        }
        let inv = self.den.leading_coeff().inv().unwrap();
        RatX {
            num: self.num.scale(&inv),
            den: self.den.scale(&inv),
        }
    }

    pub fn from_poly(p: PolyX) -> Self {
        RatX {
            num: p,
            den: PolyX::one(),
        }
    }

    pub fn from_qrat(c: QRat) -> Self {
        Self::from_poly(PolyX::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_qrat(QRat::from_int(n))
    }

    pub fn x() -> Self {
        Self::from_poly(PolyX::x())
    }

    pub fn q() -> Self {
        Self::from_qrat(QRat::q())
    }

    /// `x^k` for any integer `k`.
    pub fn x_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(PolyX::monomial(QRat::one(), k as usize))
        } else {
            RatX {
                num: PolyX::one(),
                den: PolyX::monomial(QRat::one(), (-k) as usize),
            }
        }
    }

    pub fn numer(&self) -> &PolyX {
        &self.num
    }

    pub fn denom(&self) -> &PolyX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an element of Q(q) if it is free of `x`.
    pub fn as_qrat(&self) -> Option<QRat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Ring::zero();
        }
        RatX {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatX {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .with_monic_den())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(Ring::mul(self, &other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self, FieldError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        Ok(RatX {
            num: self.num.pow_u(n as u32),
            den: self.den.pow_u(n as u32),
        }
        .with_monic_den())
    }

    /// `sigma_q^n`: `f(x) -> f(q^n x)`. An automorphism, so no gcd is needed.
    pub fn sigma_pow(&self, n: i64) -> Self {
        if n == 0 {
            return self.clone();
        }
        RatX {
            num: self.num.sigma_pow(n),
            den: self.den.sigma_pow(n),
        }
        .with_monic_den()
    }

    pub fn sigma_q(&self) -> Self {
        self.sigma_pow(1)
    }

    pub fn sigma_q_inv(&self) -> Self {
        self.sigma_pow(-1)
    }

    /// `x d/dx`.
    pub fn delta_x(&self) -> Self {
        if self.den.is_one() {
            return RatX::from_poly(self.num.delta_x());
        }
        let top = &(&self.num.delta_x() * &self.den) - &(&self.num * &self.den.delta_x());
        RatX::new(top, &self.den * &self.den)
    }

    /// `q d/dq`, acting on the Q(q) coefficients and killing `x`.
    pub fn delta_q(&self) -> Self {
        if self.den.is_one() {
            return RatX::from_poly(self.num.delta_q());
        }
        let top = &(&self.num.delta_q() * &self.den) - &(&self.num * &self.den.delta_q());
        RatX::new(top, &self.den * &self.den)
    }

    /// Evaluates at `x = x0`; `None` at a pole.
    pub fn eval(&self, x0: &QRat) -> Option<QRat> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return None;
        }
        self.num.eval(x0).checked_div(&d).ok()
    }
}

impl Ring for RatX {
    fn zero() -> Self {
        RatX {
            num: PolyX::zero(),
            den: PolyX::one(),
        }
    }

    fn one() -> Self {
        RatX {
            num: PolyX::one(),
            den: PolyX::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatX::from_poly(&self.num + &other.num);
            }
            return RatX::new(&self.num + &other.num, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.exact_div(&g);
        let b = other.den.exact_div(&g);
        let num = &(&self.num * &b) + &(&other.num * &a);
        RatX::new(num, &a * &other.den)
    }

    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Ring::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatX::from_poly(&self.num * &other.num);
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &other.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &other.den.exact_div(&g1);
        RatX { num, den }.with_monic_den()
    }

    fn neg(&self) -> Self {
        RatX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn from_i64(n: i64) -> Self {
        RatX::from_int(n)
    }
}

impl Field for RatX {
    fn inv(&self) -> Option<Self> {
        RatX::inv(self).ok()
    }
}

impl_ring_ops!(RatX);

impl Default for RatX {
    fn default() -> Self {
        Ring::zero()
    }
}

impl From<QRat> for RatX {
    fn from(c: QRat) -> Self {
        RatX::from_qrat(c)
    }
}

impl From<PolyX> for RatX {
    fn from(p: PolyX) -> Self {
        RatX::from_poly(p)
    }
}

impl fmt::Display for RatX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        // a single-term monic denominator is x^k
        if self.den.term_count() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatX({self})")
    }
}
