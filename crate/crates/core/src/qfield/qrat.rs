//! Elements of Q(q): normalized ratios of polynomials in `q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::qpoly::QPoly;
use super::FieldError;
use crate::ring::{impl_ring_ops, Field, Ring};

/// An element of Q(q).
///
/// Canonical form: `gcd(num, den) = 1` and `den` monic, so two values are equal
/// exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    /// Builds `num / den` in canonical form. Panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "QRat with zero denominator");
        if num.is_zero() {
            return QRat {
                num,
                den: QPoly::one(),
            };
        }
        let (num, den) = if den.is_monomial() || num.is_monomial() {
            // only the common q-power can be shared with a monomial
            let v = num.valuation().unwrap().min(den.valuation().unwrap());
            (num.shift_down(v), den.shift_down(v))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            QRat { num, den }
        } else {
            let inv = BigRational::one() / lc;
            QRat {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// The generator `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            Self::from_poly(QPoly::q_pow(n as u32))
        } else {
            QRat {
                num: QPoly::one(),
                den: QPoly::q_pow((-n) as u32),
            }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// A constant of Q, i.e. free of `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// q-adic valuation: order of vanishing at `q = 0`. `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? as i64 - self.den.valuation().unwrap() as i64)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(QRat::new(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(Ring::mul(self, &other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self, FieldError> {
        if n >= 0 {
            Ok(QRat {
                num: self.num.pow(n as u32),
                den: self.den.pow(n as u32),
            }
            .renormalized())
        } else {
            self.inv()?.pow(-n)
        }
    }

    // powers of a canonical pair stay coprime; only the leading coefficient needs fixing
    fn renormalized(self) -> Self {
        let lc = self.den.leading_coeff();
        if lc.is_one() {
            self
        } else {
            let inv = BigRational::one() / lc;
            QRat {
                num: self.num.scale(&inv),
                den: self.den.scale(&inv),
            }
        }
    }

    /// `q d/dq`.
    pub fn delta_q(&self) -> Self {
        if self.den.is_one() {
            return QRat::from_poly(self.num.delta_q());
        }
        // (n' d - n d') / d^2
        let top = self
            .num
            .delta_q()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.delta_q()));
        QRat::new(top, self.den.mul(&self.den))
    }

    /// Returns `Some(n)` when the value is exactly `q^n`.
    pub fn q_power_test(&self) -> Result<Option<i64>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInput("q_power_test"));
        }
        if self.num.is_monomial() && self.den.is_monomial() && self.num.leading_coeff().is_one()
        {
            Ok(self.valuation())
        } else {
            Ok(None)
        }
    }

    /// Evaluates at a rational value of `q`; `None` at a pole.
    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(q) / d)
        }
    }

    fn needs_parens(&self) -> bool {
        self.den.is_one() && self.num.terms().len() > 1
    }

    /// Display wrapped in parentheses when it prints as a bare sum.
    pub fn to_atom_string(&self) -> String {
        if self.needs_parens() {
            format!("({self})")
        } else {
            self.to_string()
        }
    }

    /// True when the numerator is a single negative term, so the printed form
    /// starts with a minus sign that can be pulled out.
    pub fn is_negative_term(&self) -> bool {
        self.num.terms().len() == 1 && self.num.terms()[0].1.is_negative()
    }
}

impl Ring for QRat {
    fn zero() -> Self {
        QRat::from_poly(QPoly::zero())
    }

    fn one() -> Self {
        QRat::from_poly(QPoly::one())
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
                return QRat::from_poly(self.num.add(&other.num));
            }
            return QRat::new(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.exact_div(&g);
        let b = other.den.exact_div(&g);
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        QRat::new(num, a.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Ring::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return QRat::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel to keep the product canonical with small gcds
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let num = self.num.exact_div(&g1).mul(&other.num.exact_div(&g2));
        let den = self.den.exact_div(&g2).mul(&other.den.exact_div(&g1));
        QRat { num, den }.renormalized()
    }

    fn neg(&self) -> Self {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_i64(n: i64) -> Self {
        QRat::from_int(n)
    }
}

impl Field for QRat {
    fn inv(&self) -> Option<Self> {
        QRat::inv(self).ok()
    }
}

impl_ring_ops!(QRat);

impl Default for QRat {
    fn default() -> Self {
        Ring::zero()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.terms().len() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}
