//! Truncated two-sided series with tracked validity, and coefficient-wise
//! checks of the theta functional equation and heat equation.
//!
//! `theta_q(x) = sum_n q^(-n(n-1)/2) x^n`. Under this exponent convention both
//! `theta_q(qx) = qx theta_q(x)` and `2 delta_q theta = -delta_x^2 theta + delta_x theta`
//! hold exactly; with `q^(+n(n-1)/2)` the functional equation fails.

use thiserror::Error;

use crate::qfield::{PolyX, QRat};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("window size must be at least 1, got {0}")]
    BadSize(i64),
    #[error("no index is valid in the window intersection")]
    EmptyWindow,
}

/// `sum_{n=lo}^{hi} c_n x^n`, known to agree with the represented series on `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentWindow {
    lo: i64,
    hi: i64,
    coeffs: Vec<QRat>,
}

impl LaurentWindow {
    /// Builds a window from `f(n)` for `n` in `[lo, hi]`.
    pub fn from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> QRat) -> Result<Self, ThetaError> {
        if lo > hi {
            return Err(ThetaError::EmptyWindow);
        }
        Ok(LaurentWindow {
            lo,
            hi,
            coeffs: (lo..=hi).map(f).collect(),
        })
    }

    /// The constant series `1`, valid on `[-n, n]`.
    pub fn one(n: i64) -> Result<Self, ThetaError> {
        if n < 1 {
            return Err(ThetaError::BadSize(n));
        }
        Self::from_fn(-n, n, |k| if k == 0 { QRat::one() } else { QRat::zero() })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Coefficient of `x^n`; `None` outside the valid range.
    pub fn coeff(&self, n: i64) -> Option<&QRat> {
        if n < self.lo || n > self.hi {
            None
        } else {
            Some(&self.coeffs[(n - self.lo) as usize])
        }
    }

    /// Overwrites one coefficient; used to build negative controls.
    pub fn with_coeff(mut self, n: i64, c: QRat) -> Self {
        if n >= self.lo && n <= self.hi {
            self.coeffs[(n - self.lo) as usize] = c;
        }
        self
    }

    fn map_indexed(&self, f: impl Fn(i64, &QRat) -> QRat) -> Self {
        LaurentWindow {
            lo: self.lo,
            hi: self.hi,
            coeffs: (self.lo..=self.hi)
                .zip(&self.coeffs)
                .map(|(n, c)| f(n, c))
                .collect(),
        }
    }

    /// `x -> qx`: `c_n -> q^n c_n`.
    pub fn sigma_q(&self) -> Self {
        self.map_indexed(|n, c| c * &QRat::q_pow(n))
    }

    /// `c_n -> n c_n`.
    pub fn delta_x(&self) -> Self {
        self.map_indexed(|n, c| c * &QRat::from_int(n))
    }

    /// `q d/dq` on every coefficient.
    pub fn delta_q(&self) -> Self {
        self.map_indexed(|_, c| c.delta_q())
    }

    pub fn scale(&self, s: &QRat) -> Self {
        self.map_indexed(|_, c| c * s)
    }

    /// Multiplication by `qx`; the valid range moves up by one.
    pub fn mul_by_qx(&self) -> Self {
        LaurentWindow {
            lo: self.lo + 1,
            hi: self.hi + 1,
            coeffs: self.coeffs.iter().map(|c| c * &QRat::q()).collect(),
        }
    }

    fn combine(&self, other: &Self, f: impl Fn(&QRat, &QRat) -> QRat) -> Result<Self, ThetaError> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        Self::from_fn(lo, hi, |n| f(self.coeff(n).unwrap(), other.coeff(n).unwrap()))
    }

    /// Sum on the intersection of valid ranges.
    pub fn add(&self, other: &Self) -> Result<Self, ThetaError> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ThetaError> {
        self.combine(other, |a, b| a - b)
    }

    /// Product with a polynomial in `x`. Coefficient `n` of the product needs
    /// `c_{n-i}` for every exponent `i` of `p`, so the valid range shrinks to
    /// `[lo + deg p, hi + val p]`.
    pub fn mul_poly(&self, p: &PolyX) -> Result<Self, ThetaError> {
        if p.is_zero() {
            return Self::from_fn(self.lo, self.hi, |_| QRat::zero());
        }
        let d = p.deg0() as i64;
        let v = p.x_valuation().unwrap() as i64;
        let lo = self.lo + d;
        let hi = self.hi + v;
        Self::from_fn(lo, hi, |n| {
            let mut acc = QRat::zero();
            for i in v..=d {
                let pi = p.coeff(i as usize);
                if !pi.is_zero() {
                    acc = &acc + &(&pi * self.coeff(n - i).unwrap());
                }
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// `theta_q` on `[-n, n]`.
pub fn theta_window(n: i64) -> Result<LaurentWindow, ThetaError> {
    if n < 1 {
        return Err(ThetaError::BadSize(n));
    }
    // n(n-1) is always even
    LaurentWindow::from_fn(-n, n, |k| QRat::q_pow(-(k * (k - 1) / 2)))
}

/// `sigma_q(w) - qx * w` vanishes where both sides are valid.
pub fn functional_equation_holds(w: &LaurentWindow) -> Result<bool, ThetaError> {
    Ok(w.sigma_q().sub(&w.mul_by_qx())?.is_zero())
}

/// Which sign pattern of the heat equation to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatForm {
    /// `2 delta_q + delta_x^2 - delta_x`
    Standard,
    /// `2 delta_q - delta_x^2 + delta_x`, a negative control
    SignFlipped,
}

pub fn heat_equation_holds(w: &LaurentWindow, form: HeatForm) -> bool {
    let two_dq = w.delta_q().scale(&QRat::from_int(2));
    let dx = w.delta_x();
    let dxx = dx.delta_x();
    // all three share the window, so the combinations cannot fail
    let rest = dxx.sub(&dx).unwrap();
    let total = match form {
        HeatForm::Standard => two_dq.add(&rest),
        HeatForm::SignFlipped => two_dq.sub(&rest),
    };
    total.unwrap().is_zero()
}

/// `theta_q(qx) = qx theta_q(x)` on `[-n+1, n]`.
pub fn verify_functional_equation(n: i64) -> Result<bool, ThetaError> {
    functional_equation_holds(&theta_window(n)?)
}

/// `2 delta_q theta + delta_x^2 theta - delta_x theta = 0` on `[-n, n]`.
pub fn verify_heat_equation(n: i64) -> Result<bool, ThetaError> {
    Ok(heat_equation_holds(&theta_window(n)?, HeatForm::Standard))
}
