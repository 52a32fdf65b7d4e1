//! Rational q-telescoping `f(qx) - f(x) = g(x)` and the two closed-form
//! telescopers in `l`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ellring::{EllElem, EllRing};
use crate::orbit::q_dispersion;
use crate::qfield::{PolyX, QRat, RatX};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TelescopeError {
    #[error("mu must be nonzero")]
    ZeroMu,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `g` has a nonzero constant term in its Laurent part; `sigma - 1` never produces one.
    ConstantTerm(QRat),
    /// The proper part over this denominator is not a coboundary.
    PolarOrbit { denominator: PolyX },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::ConstantTerm(c) => write!(f, "constant term {c}"),
            Obstruction::PolarOrbit { denominator } => {
                write!(f, "polar orbit of {denominator}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelescopeResult {
    pub g: RatX,
    pub f: Option<RatX>,
    pub obstruction: Option<Obstruction>,
}

impl TelescopeResult {
    pub fn found(&self) -> bool {
        self.f.is_some()
    }
}

/// Splits `g` into a Laurent polynomial `sum c_n x^n` and a proper fraction
/// `b / d0` with `d0` prime to `x`.
fn laurent_split(g: &RatX) -> (BTreeMap<i64, QRat>, PolyX, PolyX) {
    let num = g.numer();
    let den = g.denom();
    let (d0, m) = den.strip_x();
    let (quot, rem) = num.div_rem(den);
    let mut laurent: BTreeMap<i64, QRat> = BTreeMap::new();
    let mut push = |n: i64, c: QRat| {
        if !c.is_zero() {
            let e = laurent.entry(n).or_insert_with(QRat::zero);
            *e = &*e + &c;
        }
    };
    for (i, c) in quot.coeffs().iter().enumerate() {
        push(i as i64, c.clone());
    }
    let (a_part, b_part) = if m == 0 {
        (PolyX::zero(), rem)
    } else if d0.is_constant() {
        (rem.scale(&d0.leading_coeff().inv().unwrap()), PolyX::zero())
    } else {
        // rem / (x^m d0) = A / x^m + B / d0 with s d0 + t x^m = 1
        let xm = PolyX::monomial(QRat::one(), m);
        let (_, s, _) = d0.ext_gcd(&xm);
        let a = (&s * &rem).rem(&xm);
        let b = (&rem - &(&a * &d0)).exact_div(&xm);
        (a, b)
    };
    for (i, c) in a_part.coeffs().iter().enumerate() {
        push(i as i64 - m as i64, c.clone());
    }
    (laurent, b_part, d0)
}

/// Solves `sigma_q(f) - f = b/d0` for a proper `f`, with `d0` prime to `x`.
///
/// Index the poles in one q-orbit by `beta q^i`. If `F` carries the poles that
/// have another pole above them, then `B1/F = sigma(g) - g + g` with
/// `g = sigma^(-1)(B1/F)`, and `g` sits one step higher. Every orbit segment
/// shrinks by one per round, so after `h` rounds (`h` the largest
/// self-dispersion of `d0`) each orbit holds a single pole position, and a
/// nonzero remainder cannot be a coboundary.
fn proper_telescope(b: &PolyX, d0: &PolyX) -> Option<RatX> {
    if b.is_zero() {
        return Some(RatX::zero());
    }
    let span = q_dispersion(d0, d0).ok()?.max().unwrap_or(0);
    let mut rest = RatX::new(b.clone(), d0.clone());
    let mut f = RatX::zero();
    for round in 0..span {
        if rest.is_zero() {
            break;
        }
        let d = rest.denom().clone();
        // roots of d with another root q^k above them, k <= span - round
        let mut t = PolyX::one();
        for k in 1..=span - round {
            let g = d.gcd(&d.sigma_pow(k));
            if !g.is_constant() {
                t = t.exact_div(&t.gcd(&g)) * g;
            }
        }
        if t.is_constant() {
            break;
        }
        // big_f: the part of d supported on the roots of t
        let mut big_f = PolyX::one();
        let mut other = d.clone();
        loop {
            let g = other.gcd(&t);
            if g.is_constant() {
                break;
            }
            other = other.exact_div(&g);
            big_f = &big_f * &g;
        }
        // numer/(F R) = B1/F + B2/R with s F + u R = 1, B1 = (numer u) mod F
        let (_, _, u) = big_f.ext_gcd(&other);
        let b1 = (rest.numer() * &u).rem(&big_f);
        let piece = RatX::new(b1, big_f);
        let lifted = piece.sigma_pow(-1);
        f = &f + &lifted;
        rest = &(&rest - &piece) + &lifted;
    }
    if rest.is_zero() {
        Some(f)
    } else {
        None
    }
}

/// Finds `f` with `f(qx) - f(x) = g(x)` and zero constant term, or the obstruction.
pub fn rational_telescope(g: &RatX) -> TelescopeResult {
    if g.is_zero() {
        return TelescopeResult {
            g: g.clone(),
            f: Some(RatX::zero()),
            obstruction: None,
        };
    }
    let (laurent, b, d0) = laurent_split(g);
    if let Some(c) = laurent.get(&0) {
        return TelescopeResult {
            g: g.clone(),
            f: None,
            obstruction: Some(Obstruction::ConstantTerm(c.clone())),
        };
    }
    let mut f = RatX::zero();
    for (&n, c) in &laurent {
        let denom = &QRat::q_pow(n) - &QRat::one();
        f = &f + &RatX::x_pow(n).scale(&c.checked_div(&denom).unwrap());
    }
    match proper_telescope(&b, &d0) {
        Some(fp) => {
            let f = &f + &fp;
            assert_eq!(&f.sigma_q() - &f, *g, "telescoper failed to re-verify");
            TelescopeResult {
                g: g.clone(),
                f: Some(f),
                obstruction: None,
            }
        }
        None => TelescopeResult {
            g: g.clone(),
            f: None,
            obstruction: Some(Obstruction::PolarOrbit { denominator: d0 }),
        },
    }
}

/// A telescoper `u` in the `l`-ring with its checked target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllTelescope {
    pub u: EllElem,
    pub target: EllElem,
    /// `sigma(u) - u = target` holds exactly.
    pub verified: bool,
}

fn ell_check(ring: &EllRing, u: EllElem, target: EllElem) -> EllTelescope {
    let verified = ring.sigma(&u) - u.clone() == target;
    EllTelescope {
        u,
        target,
        verified,
    }
}

/// `u = (r/2)(l^2 - l)` with `sigma(u) - u = r l`, so `partial_2(x^r)/x^r` telescopes.
pub fn ell_telescope_monomial(r: i64) -> EllTelescope {
    let ell = EllRing::ell();
    let half_r = RatX::from_qrat(QRat::from_ratio(r, 2));
    let u = (&ell * &ell - ell.clone()).scale(&half_r);
    let target = ell.scale(&RatX::from_int(r));
    ell_check(&EllRing::default(), u, target)
}

/// Solves `sigma(k l) - k l = c` for the constant `k` by computing
/// `sigma(l) - l` in the ring.
pub fn ell_coboundary_constant(ring: &EllRing, c: &QRat) -> Option<QRat> {
    let ell = EllRing::ell();
    let step = (ring.sigma(&ell) - ell).as_constant()?.as_qrat()?;
    c.checked_div(&step).ok()
}

/// Telescoper for `delta_q(mu)/mu`. The coefficient of `l` comes from
/// [`ell_coboundary_constant`]; since `sigma(l) = l + 1` it is `delta_q(mu)/mu`
/// itself, with no factor `1/2`.
pub fn ell_telescope_mu(mu: &QRat) -> Result<EllTelescope, TelescopeError> {
    if mu.is_zero() {
        return Err(TelescopeError::ZeroMu);
    }
    let ring = EllRing::default();
    let c = mu.delta_q().checked_div(mu).unwrap();
    let k = ell_coboundary_constant(&ring, &c).expect("sigma(l) - l is a nonzero constant");
    let u = EllRing::ell().scale(&RatX::from_qrat(k));
    Ok(ell_check(&ring, u, EllRing::qconst(c)))
}

/// Whether `u = (delta_q(mu)/(2 mu)) l` satisfies `sigma(u) - u = delta_q(mu)/mu`.
pub fn ell_telescope_mu_half_form_holds(mu: &QRat) -> Result<bool, TelescopeError> {
    if mu.is_zero() {
        return Err(TelescopeError::ZeroMu);
    }
    let ring = EllRing::default();
    let c = mu.delta_q().checked_div(mu).unwrap();
    let half = &c * &QRat::from_ratio(1, 2);
    let u = EllRing::ell().scale(&RatX::from_qrat(half));
    Ok(ell_check(&ring, u, EllRing::qconst(c)).verified)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_examples() {
        let res = rational_telescope(&RatX::x());
        let expect = RatX::x().scale(&(QRat::q() - QRat::one()).inv().unwrap());
        assert_eq!(res.f, Some(expect));

        let res = rational_telescope(&RatX::one());
        assert!(!res.found());
        assert_eq!(res.obstruction, Some(Obstruction::ConstantTerm(QRat::one())));
    }

    #[test]
    fn coboundary_of_simple_pole() {
        // alpha = 2q + 1
        let alpha = &(QRat::from_int(2) * QRat::q()) + &QRat::one();
        let f = RatX::new(PolyX::one(), PolyX::linear(alpha));
        let g = &f.sigma_q() - &f;
        let res = rational_telescope(&g);
        assert_eq!(res.f, Some(f));
    }

    #[test]
    fn laurent_and_double_pole() {
        // f = 1/x^2 + x + 1/(x - 3)^2 + 1/(x - 3q)
        let f = RatX::x_pow(-2)
            + RatX::x()
            + RatX::new(PolyX::one(), PolyX::linear(QRat::from_int(3)).pow_u(2))
            + RatX::new(PolyX::one(), PolyX::linear(QRat::from_int(3) * QRat::q()));
        let g = &f.sigma_q() - &f;
        let res = rational_telescope(&g);
        assert_eq!(res.f, Some(f));
    }

    #[test]
    fn lone_pole_is_an_obstruction() {
        let g = RatX::new(PolyX::one(), PolyX::linear(QRat::one()));
        let res = rational_telescope(&g);
        assert!(matches!(res.obstruction, Some(Obstruction::PolarOrbit { .. })));
    }

    #[test]
    fn monomial_telescoper() {
        for r in [0, 1, 2, -3] {
            assert!(ell_telescope_monomial(r).verified);
        }
        assert!(ell_telescope_monomial(0).u.is_zero());
    }

    #[test]
    fn mu_telescoper_constant() {
        let ring = EllRing::default();
        // sigma(c l) - c l = c, so the coefficient is c itself
        assert_eq!(
            ell_coboundary_constant(&ring, &QRat::from_int(5)),
            Some(QRat::from_int(5))
        );
        let t = ell_telescope_mu(&QRat::q()).unwrap();
        assert!(t.verified);
        assert_eq!(t.target, EllElem::one());
        assert!(ell_telescope_mu(&QRat::one()).unwrap().u.is_zero());
        let t2 = ell_telescope_mu(&QRat::q_pow(2)).unwrap();
        assert_eq!(t2.target, EllRing::qconst(QRat::from_int(2)));
        assert!(!ell_telescope_mu_half_form_holds(&QRat::q()).unwrap());
        assert!(ell_telescope_mu(&QRat::zero()).is_err());
    }
}
