//! Repeated `partial_2` of a simple polar term `l_i (x l - a') / (x - alpha)`.
//!
//! Work in the variable `u = 1/(x - alpha)`, so `x = 1/u + a0` with `a0 = alpha`
//! and `ak = partial_2^k(alpha)`. Since `alpha` does not depend on `x`,
//! `partial_2(u) = -u^2 (x l - a1) = -u l - u^2 (a0 l - a1)`, and the starting
//! term is `l_i l + l_i (a0 l - a1) u`. Reducing mod `(x - alpha)` replaces
//! `x l - a'` by `a0 l - a1`.

use std::fmt;

use super::EllError;
use crate::mpoly::MPoly;
use crate::qfield::QRat;
use crate::ring::Ring;

pub const DEFAULT_JMAX: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolarVar {
    /// `1/(x - alpha)`
    U,
    /// `partial_2^k(alpha)`
    Alpha(u32),
    Ell,
    /// `e_i = partial_2^(i+1)(l)`
    E(u32),
}

impl fmt::Display for PolarVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarVar::U => write!(f, "u"),
            PolarVar::Alpha(k) => write!(f, "a{k}"),
            PolarVar::Ell => write!(f, "l"),
            PolarVar::E(i) => write!(f, "e{i}"),
        }
    }
}

pub type PolarElem = MPoly<PolarVar, QRat>;

fn var(v: PolarVar) -> PolarElem {
    PolarElem::var(v)
}

/// `partial_2` on the polar ring.
pub fn partial2_polar(p: &PolarElem) -> PolarElem {
    let r: Result<PolarElem, ()> = p.derive(
        |c| PolarElem::constant(c.delta_q()),
        |v| {
            Ok(match *v {
                PolarVar::U => {
                    let u = var(PolarVar::U);
                    let lead = polar_base();
                    -(&u * &var(PolarVar::Ell)) - &(&u * &u) * &lead
                }
                PolarVar::Alpha(k) => var(PolarVar::Alpha(k + 1)),
                PolarVar::Ell => var(PolarVar::E(0)),
                PolarVar::E(i) => var(PolarVar::E(i + 1)),
            })
        },
    );
    r.unwrap()
}

/// `x l - a'` reduced mod `(x - alpha)`: `a0 l - a1`.
pub fn polar_base() -> PolarElem {
    &var(PolarVar::Alpha(0)) * &var(PolarVar::Ell) - var(PolarVar::Alpha(1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivexprReport {
    pub j: u32,
    pub l_i: i64,
    /// `partial_2^j` of the polar term, as a polynomial in `u`.
    pub expansion: PolarElem,
    /// Coefficient of `u^(j+1)`.
    pub leading: PolarElem,
    /// `l_i (-1)^j j! (a0 l - a1)^(j+1)`
    pub expected: PolarElem,
    /// Everything in `expansion` below `u^(j+1)`, including the `u^0` part.
    pub remainder: PolarElem,
}

impl DerivexprReport {
    pub fn matches(&self) -> bool {
        self.leading == self.expected
    }
}

/// Computes `partial_2^j(l_i (x l - a')/(x - alpha))` and compares its
/// highest polar coefficient with `l_i (-1)^j j! (x l - a')^(j+1)`.
pub fn derivexpr_leading_polar(j: u32, l_i: i64, jmax: u32) -> Result<DerivexprReport, EllError> {
    if j > jmax {
        return Err(EllError::OrderTooHigh { j, jmax });
    }
    let li = PolarElem::constant(QRat::from_int(l_i));
    let mut cur = &li * &var(PolarVar::Ell) + &(&li * &polar_base()) * &var(PolarVar::U);
    for _ in 0..j {
        cur = partial2_polar(&cur);
    }
    let parts = cur.collect_in(&PolarVar::U);
    let top = j + 1;
    let leading = parts.get(&top).cloned().unwrap_or_default();
    debug_assert!(parts.keys().all(|&k| k <= top));
    let fact: i64 = (1..=j as i64).product();
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let expected = (&li * &polar_base().pow_u(top)).scale(&QRat::from_int(sign * fact));
    let remainder = &cur - &(&leading * &PolarElem::var_pow(PolarVar::U, top));
    Ok(DerivexprReport {
        j,
        l_i,
        expansion: cur,
        leading,
        expected,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_orders_match() {
        for j in 0..=3 {
            let rep = derivexpr_leading_polar(j, 2, DEFAULT_JMAX).unwrap();
            assert!(rep.matches(), "order {j}");
        }
        assert!(derivexpr_leading_polar(4, 1, DEFAULT_JMAX).is_err());
    }

    #[test]
    fn base_case_is_the_input() {
        let rep = derivexpr_leading_polar(0, 1, DEFAULT_JMAX).unwrap();
        assert_eq!(rep.leading, polar_base());
        assert_eq!(rep.remainder, var(PolarVar::Ell));
    }

    #[test]
    fn first_derivative_by_hand() {
        // partial_2(l_i l + l_i b u) with b = a0 l - a1:
        // l_i e0 + l_i (a1 l + a0 e0 - a2) u - l_i b l u - l_i b^2 u^2
        let li = PolarElem::constant(QRat::from_int(3));
        let (u, l) = (var(PolarVar::U), var(PolarVar::Ell));
        let (a0, a1, a2) = (
            var(PolarVar::Alpha(0)),
            var(PolarVar::Alpha(1)),
            var(PolarVar::Alpha(2)),
        );
        let e0 = var(PolarVar::E(0));
        let b = polar_base();
        let expected = &li * &e0 + &(&li * &(&(&a1 * &l) + &(&a0 * &e0) - a2)) * &u
            - &(&(&li * &b) * &l) * &u
            - &(&li * &(&b * &b)) * &(&u * &u);
        let rep = derivexpr_leading_polar(1, 3, DEFAULT_JMAX).unwrap();
        assert_eq!(rep.expansion, expected);
    }
}
