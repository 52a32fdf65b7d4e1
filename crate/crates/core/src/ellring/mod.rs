//! A formal (sigma, partial_2)-ring standing in for the elliptic extension
//! `C_E(x, l)` with `l = x theta_q'(x)/theta_q(x)`.
//!
//! Elements are polynomials in `l` and σ-invariant symbols over Q(q)(x). Each
//! symbol is `delta_x^b partial_2^a l` for `(a, b) != (0, 0)`. The named ones are
//! `e_i = partial_2^(i+1) l` and `d_i = delta_x^(i+1) l`.
//!
//! * `sigma`: `x -> qx` on coefficients, `l -> l + 1`, symbols fixed.
//! * `partial_2 = l delta_x + delta_q`: `partial_2(x) = x l`, `partial_2(l) = e_0`.
//! * `delta_x`: `delta_x(l) = d_0` and `delta_x` raises `b`.
//!
//! Since `[delta_x, partial_2] = d_0 delta_x`, `partial_2` of a mixed symbol is
//! rewritten into normal form instead of introducing a fresh name.

mod derivexpr;

pub use derivexpr::{derivexpr_leading_polar, DerivexprReport, PolarElem, PolarVar, DEFAULT_JMAX};

use std::fmt;

use thiserror::Error;

use crate::mpoly::MPoly;
use crate::qfield::{QRat, RatX};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllError {
    #[error("action not closed: symbol of order {order} exceeds the table bound {bound}")]
    ActionNotClosed { order: u32, bound: u32 },
    #[error("order {j} exceeds the configured maximum {jmax}")]
    OrderTooHigh { j: u32, jmax: u32 },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EllVar {
    /// The quasi-periodic function `l`, with `sigma(l) = l + 1`.
    Ell,
    /// `delta_x^dx partial_2^d2 l`, fixed by `sigma`.
    Sym { d2: u32, dx: u32 },
}

impl EllVar {
    pub fn e(i: u32) -> Self {
        EllVar::Sym { d2: i + 1, dx: 0 }
    }

    pub fn d(i: u32) -> Self {
        EllVar::Sym { d2: 0, dx: i + 1 }
    }

    pub fn order(&self) -> u32 {
        match self {
            EllVar::Ell => 0,
            EllVar::Sym { d2, dx } => d2 + dx,
        }
    }
}

impl fmt::Display for EllVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EllVar::Ell => write!(f, "l"),
            EllVar::Sym { d2: 0, dx } => write!(f, "d{}", dx - 1),
            EllVar::Sym { d2, dx: 0 } => write!(f, "e{}", d2 - 1),
            EllVar::Sym { d2, dx } => write!(f, "dx{}(e{})", dx, d2 - 1),
        }
    }
}

pub type EllElem = MPoly<EllVar, RatX>;

/// What `partial_2(l)` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllModel {
    /// `partial_2(l) = e_0`, a free symbol.
    Free,
    /// `partial_2(l) = (d_0 - d_1)/2`, forced by the heat equation for `theta_q`.
    Heat,
}

/// Ring context: the model, the symbol-order bound, and the shift of `l` under
/// `sigma` (1 in the genuine ring; other values give broken negative controls).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllRing {
    model: EllModel,
    max_order: u32,
    ell_shift: i64,
}

pub const DEFAULT_MAX_ORDER: u32 = 8;

impl Default for EllRing {
    fn default() -> Self {
        EllRing::new(EllModel::Free)
    }
}

impl EllRing {
    pub fn new(model: EllModel) -> Self {
        EllRing {
            model,
            max_order: DEFAULT_MAX_ORDER,
            ell_shift: 1,
        }
    }

    pub fn with_max_order(mut self, max_order: u32) -> Self {
        self.max_order = max_order;
        self
    }

    /// A deliberately wrong ring where `sigma(l) = l + shift`.
    pub fn with_ell_shift(mut self, shift: i64) -> Self {
        self.ell_shift = shift;
        self
    }

    pub fn model(&self) -> EllModel {
        self.model
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn ell() -> EllElem {
        EllElem::var(EllVar::Ell)
    }

    pub fn x() -> EllElem {
        EllElem::constant(RatX::x())
    }

    pub fn e(i: u32) -> EllElem {
        EllElem::var(EllVar::e(i))
    }

    pub fn d(i: u32) -> EllElem {
        EllElem::var(EllVar::d(i))
    }

    pub fn constant(c: RatX) -> EllElem {
        EllElem::constant(c)
    }

    pub fn qconst(c: QRat) -> EllElem {
        EllElem::constant(RatX::from_qrat(c))
    }

    fn sym(&self, d2: u32, dx: u32) -> Result<EllElem, EllError> {
        if d2 + dx > self.max_order {
            return Err(EllError::ActionNotClosed {
                order: d2 + dx,
                bound: self.max_order,
            });
        }
        Ok(EllElem::var(EllVar::Sym { d2, dx }))
    }

    /// `x -> qx`, `l -> l + 1`; a ring automorphism.
    pub fn sigma(&self, e: &EllElem) -> EllElem {
        self.sigma_pow(e, 1)
    }

    pub fn sigma_pow(&self, e: &EllElem, n: i64) -> EllElem {
        let shift = QRat::from_int(self.ell_shift * n);
        let r: Result<EllElem, ()> = e.eval_hom(
            |c| EllElem::constant(c.sigma_pow(n)),
            |v| {
                Ok(match v {
                    EllVar::Ell => Self::ell() + Self::qconst(shift.clone()),
                    s => EllElem::var(*s),
                })
            },
        );
        r.unwrap()
    }

    /// The derivation `delta_x`, with `delta_x(l) = d_0`.
    pub fn delta_x(&self, e: &EllElem) -> Result<EllElem, EllError> {
        e.derive(
            |c| EllElem::constant(c.delta_x()),
            |v| match *v {
                EllVar::Ell => self.sym(0, 1),
                EllVar::Sym { d2, dx } => self.sym(d2, dx + 1),
            },
        )
    }

    /// `partial_2(l)` in the current model.
    fn partial2_ell(&self) -> Result<EllElem, EllError> {
        match self.model {
            EllModel::Free => self.sym(1, 0),
            EllModel::Heat => {
                let half = QRat::from_ratio(1, 2);
                Ok((self.sym(0, 1)? - self.sym(0, 2)?).scale(&RatX::from_qrat(half)))
            }
        }
    }

    /// `partial_2(delta_x^b partial_2^a l)` using `partial_2 delta_x = delta_x partial_2 - d_0 delta_x`.
    fn partial2_sym(&self, d2: u32, dx: u32) -> Result<EllElem, EllError> {
        let mut cur = if d2 == 0 {
            self.partial2_ell()?
        } else {
            self.sym(d2 + 1, 0)?
        };
        let d0 = self.sym(0, 1)?;
        for i in 1..=dx {
            let inner = self.sym(d2, i)?;
            cur = self.delta_x(&cur)? - &d0 * &inner;
        }
        Ok(cur)
    }

    /// The derivation `partial_2 = l delta_x + delta_q`.
    pub fn partial2(&self, e: &EllElem) -> Result<EllElem, EllError> {
        let ell = Self::ell();
        e.derive(
            |c| &ell.scale(&c.delta_x()) + &EllElem::constant(c.delta_q()),
            |v| match *v {
                EllVar::Ell => self.partial2_ell(),
                EllVar::Sym { d2, dx } => self.partial2_sym(d2, dx),
            },
        )
    }

    /// Divides by a nonzero element of Q(q)(x).
    pub fn div_ratx(e: &EllElem, c: &RatX) -> Result<EllElem, EllError> {
        let inv = c.inv().map_err(|_| EllError::DivisionByZero)?;
        Ok(e.scale(&inv))
    }
}

/// Outcome of the heat-section identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeatIdentityReport {
    /// `partial_2(qx)/(qx) = l + 1`
    pub log_derivative_ok: bool,
    /// `sigma(u) - u = l + 1`
    pub telescoping_ok: bool,
    pub u: EllElem,
    pub sigma_u_minus_u: EllElem,
}

impl HeatIdentityReport {
    pub fn holds(&self) -> bool {
        self.log_derivative_ok && self.telescoping_ok
    }
}

/// The telescoper `u = (l^2 + l)/2` used for `partial_2(qx)/(qx)`.
pub fn heat_telescoper() -> EllElem {
    let ell = EllRing::ell();
    (&ell * &ell + ell).scale(&RatX::from_qrat(QRat::from_ratio(1, 2)))
}

/// Checks `partial_2(qx)/(qx) = l + 1 = sigma(u) - u` for the given `u`.
pub fn heat_identity_with(ring: &EllRing, u: &EllElem) -> Result<HeatIdentityReport, EllError> {
    let qx = RatX::x().scale(&QRat::q());
    let target = EllRing::ell() + EllElem::one();
    let ratio = EllRing::div_ratx(&ring.partial2(&EllElem::constant(qx.clone()))?, &qx)?;
    let diff = ring.sigma(u) - u.clone();
    Ok(HeatIdentityReport {
        log_derivative_ok: ratio == target,
        telescoping_ok: diff == target,
        u: u.clone(),
        sigma_u_minus_u: diff,
    })
}

/// The identity in the genuine ring with `u = (l^2 + l)/2`.
pub fn verify_heat_identity() -> bool {
    heat_identity_with(&EllRing::default(), &heat_telescoper())
        .map(|r| r.holds())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> EllRing {
        EllRing::default()
    }

    #[test]
    fn action_examples() {
        let r = ring();
        let l = EllRing::ell();
        let l2 = &l * &l;
        let one = EllElem::one();
        let two_l = l.scale(&RatX::from_int(2));
        assert_eq!(r.sigma(&l2), &(&l2 + &two_l) + &one);
        let x2 = EllElem::constant(RatX::x_pow(2));
        assert_eq!(r.partial2(&x2).unwrap(), &x2.scale(&RatX::from_int(2)) * &l);
        assert_eq!(r.delta_x(&l2).unwrap(), &two_l * &EllRing::d(0));
    }

    #[test]
    fn basic_relations() {
        let r = ring();
        let l = EllRing::ell();
        assert_eq!(r.sigma(&l) - l.clone(), EllElem::one());
        assert_eq!(r.partial2(&EllRing::x()).unwrap(), &EllRing::x() * &l);
        assert_eq!(r.partial2(&l).unwrap(), EllRing::e(0));
        assert_eq!(r.sigma(&EllRing::e(3)), EllRing::e(3));
    }

    #[test]
    fn heat_identity_and_controls() {
        assert!(verify_heat_identity());
        let l = EllRing::ell();
        let minus = (&l * &l - l.clone()).scale(&RatX::from_qrat(QRat::from_ratio(1, 2)));
        let rep = heat_identity_with(&ring(), &minus).unwrap();
        assert!(!rep.telescoping_ok);
        assert_eq!(rep.sigma_u_minus_u, l);
        let broken = ring().with_ell_shift(0);
        assert!(!heat_identity_with(&broken, &heat_telescoper()).unwrap().holds());
    }

    #[test]
    fn commutator_on_generators() {
        let r = ring();
        for g in [EllRing::ell(), EllRing::x(), EllRing::e(0), EllRing::d(1)] {
            let lhs = r.delta_x(&r.partial2(&g).unwrap()).unwrap()
                - r.partial2(&r.delta_x(&g).unwrap()).unwrap();
            let rhs = &EllRing::d(0) * &r.delta_x(&g).unwrap();
            assert_eq!(lhs, rhs, "generator {g}");
        }
    }

    #[test]
    fn heat_model_relation() {
        let r = EllRing::new(EllModel::Heat);
        let half = RatX::from_qrat(QRat::from_ratio(1, 2));
        assert_eq!(
            r.partial2(&EllRing::ell()).unwrap(),
            (EllRing::d(0) - EllRing::d(1)).scale(&half)
        );
    }

    #[test]
    fn order_bound_is_enforced() {
        let r = ring().with_max_order(2);
        let d1 = EllRing::d(1);
        assert!(matches!(
            r.delta_x(&d1),
            Err(EllError::ActionNotClosed { order: 3, bound: 2 })
        ));
    }
}
