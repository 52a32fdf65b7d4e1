//! Degree-bounded search for integrability certificates.
//!
//! `sigma(B) = A B A^-1 + d(A) A^-1` is linear in the entries of `B`, so with
//! `B = (1/denom) * (polynomial entries with unknown coefficients)` it becomes a
//! linear system over Q(q) after matching coefficients in `x` (and in `l` and
//! the elliptic symbols when the ansatz allows them). Everything is checked in
//! the multiplied-out form `sigma(B) A - A B - d(A) = 0`, which needs no
//! inverse of `A`.
//!
//! A `None` answer means "none within this ansatz", not "none".

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ellring::{EllElem, EllError, EllModel, EllRing, EllVar};
use crate::linalg::{solve_linear, Matrix};
use crate::mpoly::Monomial;
use crate::orbit::q_dispersion;
use crate::qfield::{q_power_test, PolyX, QPoly, QRat, RatX};
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrabilityError {
    #[error("system matrix must be square and nonempty")]
    NotSquare,
    #[error("system matrix is singular")]
    Singular,
    #[error("ansatz denominator is zero")]
    ZeroDenominator,
    #[error("lambda must have the form mu x^r")]
    NotMonomial,
    #[error("mu = {0} is not a power of q")]
    NotQPower(QRat),
    #[error(transparent)]
    Ell(#[from] EllError),
}

/// `sigma(Y) = A Y` with `A` invertible over Q(q)(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSystem {
    a: Matrix<RatX>,
}

impl DiffSystem {
    pub fn new(a: Matrix<RatX>) -> Result<Self, IntegrabilityError> {
        if !a.is_square() || a.rows() == 0 {
            return Err(IntegrabilityError::NotSquare);
        }
        if a.det().is_zero() {
            return Err(IntegrabilityError::Singular);
        }
        Ok(DiffSystem { a })
    }

    /// The rank-one system `y(qx) = a y(x)`.
    pub fn scalar(a: RatX) -> Result<Self, IntegrabilityError> {
        Self::new(Matrix::scalar(a))
    }

    pub fn matrix(&self) -> &Matrix<RatX> {
        &self.a
    }

    pub fn nu(&self) -> usize {
        self.a.rows()
    }

    fn lifted(&self) -> Matrix<EllElem> {
        self.a.map(|c| EllElem::constant(c.clone()))
    }
}

/// Which derivation accompanies `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `delta_x = x d/dx`
    DeltaX,
    /// `partial_2 = l delta_x + delta_q`
    Partial2,
}

impl Derivation {
    pub fn apply(&self, ring: &EllRing, e: &EllElem) -> Result<EllElem, EllError> {
        match self {
            Derivation::DeltaX => ring.delta_x(e),
            Derivation::Partial2 => ring.partial2(e),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::DeltaX => write!(f, "delta_x"),
            Derivation::Partial2 => write!(f, "partial_2"),
        }
    }
}

/// Entries of `B` range over `x^i l^j / denom` with `i <= degbound`, `j <= ell_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ansatz {
    pub denom: PolyX,
    pub degbound: usize,
    pub ell_degree: u32,
}

impl Ansatz {
    pub fn new(denom: PolyX, degbound: usize) -> Self {
        Ansatz {
            denom,
            degbound,
            ell_degree: 0,
        }
    }

    pub fn with_ell_degree(mut self, ell_degree: u32) -> Self {
        self.ell_degree = ell_degree;
        self
    }

    /// Denominator: the squarefree part of the entry denominators times the
    /// numerator of `det A`, times its sigma-shifts `x -> x/q^i` up to the
    /// largest self-dispersion. Numerator degree: that denominator's degree plus
    /// the largest entry degree plus 2.
    pub fn default_for(sys: &DiffSystem) -> Self {
        let mut poles = sys.a.det().numer().make_monic();
        let mut entry_deg = 0;
        for c in sys.a.entries() {
            poles = poles.lcm(c.denom());
            entry_deg = entry_deg.max(c.numer().deg0().max(c.denom().deg0()));
        }
        let poles = poles.squarefree_part();
        let (core, m) = poles.strip_x();
        let span = if core.is_constant() {
            0
        } else {
            q_dispersion(&core, &core)
                .ok()
                .and_then(|d| d.max())
                .unwrap_or(0)
        };
        let mut denom = PolyX::monomial(QRat::one(), m.min(1));
        for i in 0..=span {
            denom = &denom * &core.sigma_pow(-i);
        }
        let degbound = denom.deg0() + entry_deg + 2;
        Ansatz::new(denom, degbound)
    }

    fn basis(&self) -> Vec<EllElem> {
        let inv = RatX::new(PolyX::one(), self.denom.clone());
        let mut out = Vec::new();
        for j in 0..=self.ell_degree {
            for i in 0..=self.degbound {
                let c = &inv * &RatX::x_pow(i as i64);
                out.push(EllElem::var_pow(EllVar::Ell, j).scale(&c));
            }
        }
        out
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "denominator {}, x-degree <= {}, l-degree <= {}",
            self.denom, self.degbound, self.ell_degree
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityCertificate {
    pub b: Matrix<EllElem>,
    pub deriv: Derivation,
    pub ansatz: Ansatz,
}

/// Rows of `sum_k u_k columns[k] = rhs` over Q(q), one per monomial in the
/// ring variables and per power of `x` after clearing denominators.
fn rows_over_qrat(columns: &[EllElem], rhs: &EllElem) -> (Vec<Vec<QRat>>, Vec<QRat>) {
    let mut monomials: BTreeSet<Monomial<EllVar>> = BTreeSet::new();
    for e in columns.iter().chain(std::iter::once(rhs)) {
        monomials.extend(e.terms().map(|(m, _)| m.clone()));
    }
    let mut rows = Vec::new();
    let mut rhs_out = Vec::new();
    for m in &monomials {
        let coeffs: Vec<RatX> = columns.iter().map(|c| c.coeff(m)).collect();
        let r = rhs.coeff(m);
        let mut den = PolyX::one();
        for c in coeffs.iter().chain(std::iter::once(&r)) {
            if !c.is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let clear = |c: &RatX| c.numer() * &den.exact_div(c.denom());
        let polys: Vec<PolyX> = coeffs.iter().map(clear).collect();
        let rpoly = clear(&r);
        let top = polys.iter().chain(std::iter::once(&rpoly)).map(|p| p.deg0()).max().unwrap_or(0);
        for d in 0..=top {
            let row: Vec<QRat> = polys.iter().map(|p| p.coeff(d)).collect();
            let b = rpoly.coeff(d);
            if b.is_zero() && row.iter().all(|c| c.is_zero()) {
                continue;
            }
            rows.push(row);
            rhs_out.push(b);
        }
    }
    (rows, rhs_out)
}

/// Q as a [`Field`], for systems whose unknowns are rational numbers.
#[derive(Debug, Clone, PartialEq)]
struct Rat(BigRational);

impl Ring for Rat {
    fn zero() -> Self {
        Rat(Zero::zero())
    }
    fn one() -> Self {
        Rat(One::one())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.0)
    }
    fn add(&self, other: &Self) -> Self {
        Rat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rat(-&self.0)
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(&self.0)).then(|| Rat(self.0.recip()))
    }
}

fn qpoly_lcm(a: &QPoly, b: &QPoly) -> QPoly {
    a.exact_div(&a.gcd(b)).mul(b).make_monic()
}

/// Splits Q(q)-rows into Q-rows by matching powers of `q`, for unknowns in Q.
fn rows_over_rationals(rows: &[Vec<QRat>], rhs: &[QRat]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let mut out_rows = Vec::new();
    let mut out_rhs = Vec::new();
    for (row, b) in rows.iter().zip(rhs) {
        let mut den = QPoly::one();
        for c in row.iter().chain(std::iter::once(b)) {
            if !c.is_zero() {
                den = qpoly_lcm(&den, c.denom());
            }
        }
        let clear = |c: &QRat| c.numer().mul(&den.exact_div(c.denom()));
        let nums: Vec<QPoly> = row.iter().map(clear).collect();
        let bnum = clear(b);
        let mut exps: BTreeSet<u32> = BTreeSet::new();
        for p in nums.iter().chain(std::iter::once(&bnum)) {
            exps.extend(p.terms().iter().map(|(e, _)| *e));
        }
        for e in exps {
            out_rows.push(nums.iter().map(|p| Rat(p.coeff(e))).collect());
            out_rhs.push(Rat(bnum.coeff(e)));
        }
    }
    (out_rows, out_rhs)
}

/// `sigma(B) A - A B - d(A)`.
fn single_residual(
    ring: &EllRing,
    a: &Matrix<EllElem>,
    b: &Matrix<EllElem>,
    deriv: Derivation,
) -> Result<Matrix<EllElem>, EllError> {
    let da = a.try_map(|e| deriv.apply(ring, e))?;
    let sb = b.map(|e| ring.sigma(e));
    Ok(sb.mul(a).sub(&a.mul(b)).sub(&da))
}

/// Checks `sigma(B) = A B A^-1 + d(A) A^-1` exactly.
pub fn check_single(sys: &DiffSystem, b: &Matrix<EllElem>, deriv: Derivation) -> Result<bool, IntegrabilityError> {
    let ring = EllRing::default();
    Ok(single_residual(&ring, &sys.lifted(), b, deriv)?.is_zero())
}

/// Searches `B` within the ansatz. `Ok(None)` means none within the ansatz.
pub fn solve_single(
    sys: &DiffSystem,
    deriv: Derivation,
    ansatz: &Ansatz,
) -> Result<Option<IntegrabilityCertificate>, IntegrabilityError> {
    if ansatz.denom.is_zero() {
        return Err(IntegrabilityError::ZeroDenominator);
    }
    let ring = EllRing::default();
    let a = sys.lifted();
    let nu = sys.nu();
    let basis = ansatz.basis();
    let nb = basis.len();
    let da = a.try_map(|e| deriv.apply(&ring, e))?;

    // column for the unknown at entry (i, j), basis element k
    let mut columns: Vec<Matrix<EllElem>> = Vec::with_capacity(nu * nu * nb);
    for i in 0..nu {
        for j in 0..nu {
            for bk in &basis {
                let mut e = Matrix::zeros(nu, nu);
                e.set(i, j, bk.clone());
                let se = e.map(|v| ring.sigma(v));
                columns.push(se.mul(&a).sub(&a.mul(&e)));
            }
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in 0..nu {
        for c in 0..nu {
            let col: Vec<EllElem> = columns.iter().map(|m| m.get(r, c).clone()).collect();
            let (mut rr, mut bb) = rows_over_qrat(&col, da.get(r, c));
            rows.append(&mut rr);
            rhs.append(&mut bb);
        }
    }
    let Some(sol) = solve_linear(&rows, &rhs, columns.len()) else {
        return Ok(None);
    };
    let b = Matrix::from_fn(nu, nu, |i, j| {
        let mut acc = EllElem::zero();
        for (k, bk) in basis.iter().enumerate() {
            let u = &sol[(i * nu + j) * nb + k];
            if !u.is_zero() {
                acc = acc + bk.scale(&RatX::from_qrat(u.clone()));
            }
        }
        acc
    });
    assert!(
        single_residual(&ring, &a, &b, deriv)?.is_zero(),
        "certificate failed to re-verify"
    );
    Ok(Some(IntegrabilityCertificate {
        b,
        deriv,
        ansatz: ansatz.clone(),
    }))
}

/// Which of the three compatibility equations hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleReport {
    /// `sigma(B1) = A B1 A^-1 + delta_x(A) A^-1`
    pub sigma_delta_x: bool,
    /// `sigma(B2) = A B2 A^-1 + partial_2(A) A^-1`
    pub sigma_partial2: bool,
    /// `partial_2(B1) + B1 B2 + delta_x(l) B1 = delta_x(B2) + B2 B1`
    pub compatibility: bool,
}

impl TripleReport {
    pub fn holds(&self) -> bool {
        self.sigma_delta_x && self.sigma_partial2 && self.compatibility
    }
}

/// Checks the system `sigma(Y) = AY, delta_x Y = B1 Y, partial_2 Y = B2 Y`.
pub fn check_triple_report(
    ring: &EllRing,
    sys: &DiffSystem,
    b1: &Matrix<EllElem>,
    b2: &Matrix<EllElem>,
) -> Result<TripleReport, IntegrabilityError> {
    let a = sys.lifted();
    let sigma_delta_x = single_residual(ring, &a, b1, Derivation::DeltaX)?.is_zero();
    let sigma_partial2 = single_residual(ring, &a, b2, Derivation::Partial2)?.is_zero();
    let d0 = EllRing::d(0);
    let lhs = b1
        .try_map(|e| ring.partial2(e))?
        .add(&b1.mul(b2))
        .add(&b1.map(|e| &d0 * e));
    let rhs = b2.try_map(|e| ring.delta_x(e))?.add(&b2.mul(b1));
    Ok(TripleReport {
        sigma_delta_x,
        sigma_partial2,
        compatibility: lhs == rhs,
    })
}

pub fn check_triple(
    ring: &EllRing,
    sys: &DiffSystem,
    b1: &Matrix<EllElem>,
    b2: &Matrix<EllElem>,
) -> Result<bool, IntegrabilityError> {
    Ok(check_triple_report(ring, sys, b1, b2)?.holds())
}

/// `partial_2(theta_q)/theta_q` in the heat model: `(l^2 + l)/2 - d0/2`.
///
/// The `sigma`-invariant part is pinned down by the compatibility equation,
/// which forces `delta_x` of it to be `partial_2(l) - d0/2 = -d1/2`.
pub fn theta_log_partial2() -> EllElem {
    let half = RatX::from_qrat(QRat::from_ratio(1, 2));
    let l = EllRing::ell();
    (&(&l * &l) + &l - EllRing::d(0)).scale(&half)
}

/// `b1 = delta_x(y)/y` and `b2 = partial_2(y)/y` for `y = x^(s-r) theta_q^r`,
/// which solves `y(qx) = q^s x^r y(x)`. Valid in the heat model.
pub fn worked_example(r: i64, s: i64) -> (EllElem, EllElem) {
    let l = EllRing::ell();
    let b1 = &l.scale(&RatX::from_int(r)) + &EllRing::qconst(QRat::from_int(s - r));
    let b2 = &l.scale(&RatX::from_int(s - r)) + &theta_log_partial2().scale(&RatX::from_int(r));
    (b1, b2)
}

/// The rank-one system `y(qx) = q^s x^r y(x)`.
pub fn monomial_system(r: i64, s: i64) -> DiffSystem {
    let a = RatX::x_pow(r).scale(&QRat::q_pow(s));
    DiffSystem::scalar(a).expect("nonzero scalar")
}

/// Ansatz for the unknowns `alpha`, `beta` of the upper-triangular example:
/// Q-linear combinations of `q^a x^i l^j s / denom` with `s` from `symbols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagAnsatz {
    pub q_range: (i64, i64),
    pub x_degree: usize,
    pub ell_degree: u32,
    pub symbols: Vec<EllElem>,
    pub denom: PolyX,
}

impl Default for DiagAnsatz {
    fn default() -> Self {
        DiagAnsatz {
            q_range: (-1, 1),
            x_degree: 1,
            ell_degree: 1,
            symbols: vec![EllElem::one(), EllRing::d(0), EllRing::e(0)],
            denom: PolyX::one(),
        }
    }
}

impl DiagAnsatz {
    fn basis(&self) -> Vec<EllElem> {
        let inv = RatX::new(PolyX::one(), self.denom.clone());
        let mut out = Vec::new();
        for a in self.q_range.0..=self.q_range.1 {
            for i in 0..=self.x_degree {
                for j in 0..=self.ell_degree {
                    let c = RatX::x_pow(i as i64).scale(&QRat::q_pow(a));
                    let c = &c * &inv;
                    let m = EllElem::var_pow(EllVar::Ell, j).scale(&c);
                    for s in &self.symbols {
                        out.push(&m * s);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagReport {
    pub mu: QRat,
    pub r: i64,
    pub s: i64,
    pub eta: RatX,
    pub alpha: Option<EllElem>,
    pub beta: Option<EllElem>,
    /// Each of the three conditions, re-checked at the returned `(alpha, beta)`.
    pub conditions: [bool; 3],
}

impl DiagReport {
    pub fn solvable(&self) -> bool {
        self.alpha.is_some()
    }
}

/// The three conditions for `[[lambda, eta], [0, lambda]]`, `lambda = mu x^r`,
/// as residuals that vanish exactly at a solution:
///
/// * `(sigma(alpha) - alpha) mu x^r - (delta_x(eta) - r eta)`
/// * `(sigma(beta) - beta + l (sigma(alpha) - alpha)) mu x^r - (delta_q(eta) - (delta_q(mu)/mu) eta)`
/// * `partial_2(alpha) + d0 alpha - delta_x(beta)`
pub fn diag_conditions(
    ring: &EllRing,
    mu: &QRat,
    r: i64,
    eta: &RatX,
    alpha: &EllElem,
    beta: &EllElem,
) -> Result<[EllElem; 3], IntegrabilityError> {
    let lam = EllElem::constant(RatX::x_pow(r).scale(mu));
    let l = EllRing::ell();
    let da = ring.sigma(alpha) - alpha.clone();
    let db = ring.sigma(beta) - beta.clone();
    let eta_e = EllElem::constant(eta.clone());
    let c1_target = ring.delta_x(&eta_e)? - eta_e.scale(&RatX::from_int(r));
    let log_mu = mu.delta_q().checked_div(mu).expect("mu is nonzero");
    let c2_target = EllElem::constant(eta.delta_q() - eta.scale(&log_mu));
    let c1 = &da * &lam - c1_target;
    let c2 = &(&db + &(&l * &da)) * &lam - c2_target;
    let c3 = ring.partial2(alpha)? + &EllRing::d(0) * alpha - ring.delta_x(beta)?;
    Ok([c1, c2, c3])
}

/// Reads `lambda = mu x^r`.
fn split_monomial(lambda: &RatX) -> Result<(QRat, i64), IntegrabilityError> {
    let (num, k) = lambda.numer().strip_x();
    let (den, m) = lambda.denom().strip_x();
    match (num.as_constant(), den.as_constant()) {
        (Some(a), Some(b)) if !a.is_zero() => {
            Ok((a.checked_div(&b).expect("nonzero"), k as i64 - m as i64))
        }
        _ => Err(IntegrabilityError::NotMonomial),
    }
}

/// Solves the three conditions for `alpha`, `beta` within the ansatz, with
/// rational (q-free) unknown coefficients so that `delta_q` stays linear.
pub fn diag_example_conditions(
    ring: &EllRing,
    lambda: &RatX,
    eta: &RatX,
    ansatz: &DiagAnsatz,
) -> Result<DiagReport, IntegrabilityError> {
    let (mu, r) = split_monomial(lambda)?;
    let s = q_power_test(&mu)
        .ok()
        .flatten()
        .ok_or_else(|| IntegrabilityError::NotQPower(mu.clone()))?;
    let basis = ansatz.basis();
    let nb = basis.len();
    let zero = EllElem::zero();
    let constant = diag_conditions(ring, &mu, r, eta, &zero, &zero)?;
    // residual(alpha, beta) = linear part + constant
    let mut columns: Vec<[EllElem; 3]> = Vec::with_capacity(2 * nb);
    for b in &basis {
        let c = diag_conditions(ring, &mu, r, &RatX::zero(), b, &zero)?;
        columns.push(c);
    }
    for b in &basis {
        let c = diag_conditions(ring, &mu, r, &RatX::zero(), &zero, b)?;
        columns.push(c);
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..3 {
        let col: Vec<EllElem> = columns.iter().map(|c| c[k].clone()).collect();
        let target = -constant[k].clone();
        let (qr, qb) = rows_over_qrat(&col, &target);
        let (mut rr, mut bb) = rows_over_rationals(&qr, &qb);
        rows.append(&mut rr);
        rhs.append(&mut bb);
    }
    let mut report = DiagReport {
        mu: mu.clone(),
        r,
        s,
        eta: eta.clone(),
        alpha: None,
        beta: None,
        conditions: [false; 3],
    };
    let Some(sol) = solve_linear(&rows, &rhs, 2 * nb) else {
        return Ok(report);
    };
    let combine = |offset: usize| {
        let mut acc = EllElem::zero();
        for (k, b) in basis.iter().enumerate() {
            let u = &sol[offset + k];
            if !u.is_zero() {
                acc = acc + b.scale(&RatX::from_qrat(QRat::from_rational(u.0.clone())));
            }
        }
        acc
    };
    let alpha = combine(0);
    let beta = combine(nb);
    let res = diag_conditions(ring, &mu, r, eta, &alpha, &beta)?;
    report.conditions = [res[0].is_zero(), res[1].is_zero(), res[2].is_zero()];
    assert!(report.conditions.iter().all(|&c| c), "certificate failed to re-verify");
    report.alpha = Some(alpha);
    report.beta = Some(beta);
    Ok(report)
}

/// The heat-model ring the worked example lives in.
pub fn heat_ring() -> EllRing {
    EllRing::new(EllModel::Heat)
}
