//! Jet variables for `sigma(Y) = A Y` with commuting derivations.
//!
//! The ring `S = F[X^(alpha)_ij, 1/det X]` with `X^(alpha) = d^alpha X`. The
//! difference structure is forced by `sigma(X) = A X`:
//! `sigma(d^alpha X) = sum_{i <= alpha} binom(alpha, i) d^i(A) d^(alpha - i)(X)`.
//! Derivation `k` acts on coefficients as `c_k delta_x` with a constant `c_k`,
//! so all derivations commute with each other and with `sigma`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::qfield::{QRat, RatX};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProlongError {
    #[error("jet order {order} exceeds the ring order {bound}")]
    OrderTooHigh { order: u32, bound: u32 },
    #[error("multi-index has {got} entries, expected {expected}")]
    BadMultiIndex { got: usize, expected: usize },
    #[error("system matrix must be square, nonempty and invertible")]
    BadMatrix,
    #[error("no value for jet variable {0}")]
    MissingVariable(String),
    #[error("generator {index} of the larger ideal does not vanish at the point")]
    NotAPoint { index: usize },
    #[error("det X vanishes at the point")]
    SingularPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum JetVar {
    /// Entry `(i, j)` of `d^alpha X`.
    X { i: usize, j: usize, alpha: Vec<u32> },
    /// The formal inverse of `det X`.
    InvDet,
}

impl JetVar {
    pub fn x(i: usize, j: usize, alpha: Vec<u32>) -> Self {
        JetVar::X { i, j, alpha }
    }

    /// `|alpha|`, with 0 for the inverse determinant.
    pub fn order(&self) -> u32 {
        match self {
            JetVar::X { alpha, .. } => alpha.iter().sum(),
            JetVar::InvDet => 0,
        }
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetVar::X { i, j, alpha } => {
                write!(f, "X{}{}", i + 1, j + 1)?;
                if alpha.iter().any(|&a| a > 0) {
                    let parts: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
                    write!(f, "[{}]", parts.join(","))?;
                }
                Ok(())
            }
            JetVar::InvDet => write!(f, "invdet"),
        }
    }
}

pub type JetElem = MPoly<JetVar, RatX>;

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// All multi-indices `i <= alpha` componentwise.
fn below(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=a).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// All multi-indices of length `n` with `|alpha| <= k`.
pub fn multi_indices(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let used: u32 = p.iter().sum();
                (0..=k - used).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetRing {
    a: Matrix<RatX>,
    det_a: RatX,
    order: u32,
    scales: Vec<QRat>,
    /// Added to the coefficient of `d^alpha(A) X`; nonzero only for controls.
    leibniz_error: i64,
}

impl JetRing {
    /// One derivation, `delta_x`.
    pub fn new(a: Matrix<RatX>, order: u32) -> Result<Self, ProlongError> {
        Self::with_derivations(a, order, vec![QRat::one()])
    }

    /// Derivation `k` acts on Q(q)(x) as `scales[k] * delta_x`.
    pub fn with_derivations(a: Matrix<RatX>, order: u32, scales: Vec<QRat>) -> Result<Self, ProlongError> {
        if !a.is_square() || a.rows() == 0 || scales.is_empty() {
            return Err(ProlongError::BadMatrix);
        }
        let det_a = a.det();
        if det_a.is_zero() {
            return Err(ProlongError::BadMatrix);
        }
        Ok(JetRing {
            a,
            det_a,
            order,
            scales,
            leibniz_error: 0,
        })
    }

    /// A deliberately wrong Leibniz rule, for negative controls.
    pub fn with_leibniz_error(mut self, offset: i64) -> Self {
        self.leibniz_error = offset;
        self
    }

    pub fn nu(&self) -> usize {
        self.a.rows()
    }

    pub fn n_derivs(&self) -> usize {
        self.scales.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn system(&self) -> &Matrix<RatX> {
        &self.a
    }

    fn check_alpha(&self, alpha: &[u32], bound: u32) -> Result<(), ProlongError> {
        if alpha.len() != self.n_derivs() {
            return Err(ProlongError::BadMultiIndex {
                got: alpha.len(),
                expected: self.n_derivs(),
            });
        }
        let order: u32 = alpha.iter().sum();
        if order > bound {
            return Err(ProlongError::OrderTooHigh { order, bound });
        }
        Ok(())
    }

    pub fn var(&self, i: usize, j: usize, alpha: Vec<u32>) -> JetElem {
        JetElem::var(JetVar::x(i, j, alpha))
    }

    pub fn zero_index(&self) -> Vec<u32> {
        vec![0; self.n_derivs()]
    }

    fn unit(&self, k: usize) -> Vec<u32> {
        let mut e = self.zero_index();
        e[k] = 1;
        e
    }

    /// The matrix `d^alpha X` of jet variables.
    pub fn x_matrix(&self, alpha: &[u32]) -> Matrix<JetElem> {
        Matrix::from_fn(self.nu(), self.nu(), |i, j| self.var(i, j, alpha.to_vec()))
    }

    /// `det X` as a jet polynomial.
    pub fn det_x(&self) -> JetElem {
        self.x_matrix(&self.zero_index()).det()
    }

    /// `d^i(A)` entrywise, with `d_k = scales[k] delta_x`.
    fn deriv_a(&self, i: &[u32]) -> Matrix<RatX> {
        let mut m = self.a.clone();
        for (k, &times) in i.iter().enumerate() {
            for _ in 0..times {
                m = m.map(|c| c.delta_x().scale(&self.scales[k]));
            }
        }
        m
    }

    /// `sigma(d^alpha X) = sum_{i <= alpha} binom(alpha, i) d^i(A) d^(alpha-i)(X)`.
    pub fn sigma_on_jet(&self, alpha: &[u32]) -> Result<Matrix<JetElem>, ProlongError> {
        self.check_alpha(alpha, self.order)?;
        let nu = self.nu();
        let mut acc = Matrix::zeros(nu, nu);
        for i in below(alpha) {
            let mut coeff: i64 = alpha.iter().zip(&i).map(|(&a, &b)| binomial(a, b)).product();
            if i == alpha && alpha.iter().any(|&a| a > 0) {
                coeff += self.leibniz_error;
            }
            let rest: Vec<u32> = alpha.iter().zip(&i).map(|(a, b)| a - b).collect();
            let da = self.deriv_a(&i).map(|c| JetElem::constant(c.scale(&QRat::from_int(coeff))));
            acc = acc.add(&da.mul(&self.x_matrix(&rest)));
        }
        Ok(acc)
    }

    /// `sigma` on the whole ring: `x -> qx` on coefficients, jets by
    /// [`JetRing::sigma_on_jet`], `1/det X -> (1/det A)(1/det X)`.
    pub fn sigma(&self, e: &JetElem) -> Result<JetElem, ProlongError> {
        let inv_det_a = self.det_a.inv().expect("det A is nonzero");
        let mut cache: BTreeMap<Vec<u32>, Matrix<JetElem>> = BTreeMap::new();
        e.eval_hom(
            |c| JetElem::constant(c.sigma_q()),
            |v| match v {
                JetVar::X { i, j, alpha } => {
                    if !cache.contains_key(alpha) {
                        cache.insert(alpha.clone(), self.sigma_on_jet(alpha)?);
                    }
                    Ok(cache[alpha].get(*i, *j).clone())
                }
                JetVar::InvDet => Ok(JetElem::var(JetVar::InvDet).scale(&inv_det_a)),
            },
        )
    }

    /// Derivation `k`: raises `alpha_k`, and `d(1/det X) = -(1/det X)^2 d(det X)`.
    pub fn derive(&self, k: usize, e: &JetElem) -> Result<JetElem, ProlongError> {
        let scale = self.scales[k].clone();
        let unit = self.unit(k);
        let mut det_image: Option<JetElem> = None;
        e.derive(
            |c| JetElem::constant(c.delta_x().scale(&scale)),
            |v| match v {
                JetVar::X { i, j, alpha } => {
                    let raised: Vec<u32> = alpha.iter().zip(&unit).map(|(a, b)| a + b).collect();
                    self.check_alpha(&raised, self.order + 1)?;
                    Ok(self.var(*i, *j, raised))
                }
                JetVar::InvDet => {
                    if det_image.is_none() {
                        det_image = Some(self.derive(k, &self.det_x())?);
                    }
                    let inv = JetElem::var(JetVar::InvDet);
                    Ok(-(&(&inv * &inv) * det_image.as_ref().unwrap()))
                }
            },
        )
    }

    /// Checks `sigma(d_m X^(alpha)) = d_m(sigma(X^(alpha)))` for every entry,
    /// every derivation and every `|alpha| < k`, and for `1/det X` modulo
    /// `det X * invdet = 1`. Deriving `1/det X` reaches order one, so the
    /// ring needs order at least `max(k, 1)`.
    pub fn commutation_check(&self, k: u32) -> Result<bool, ProlongError> {
        if k.max(1) > self.order {
            return Err(ProlongError::OrderTooHigh {
                order: k.max(1),
                bound: self.order,
            });
        }
        let nu = self.nu();
        let mut gens: Vec<JetElem> = vec![JetElem::var(JetVar::InvDet)];
        for alpha in multi_indices(self.n_derivs(), k.saturating_sub(1)) {
            for i in 0..nu {
                for j in 0..nu {
                    gens.push(self.var(i, j, alpha.clone()));
                }
            }
        }
        if k == 0 {
            gens.truncate(1);
        }
        for g in &gens {
            for m in 0..self.n_derivs() {
                let lhs = self.sigma(&self.derive(m, g)?)?;
                let rhs = self.derive(m, &self.sigma(g)?)?;
                if !self.vanishes_mod_det(&(lhs - rhs)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `e` is zero once `invdet = 1/det X`: with `e = sum c_k invdet^k`,
    /// that is `sum c_k det^(N-k) = 0` for the top power `N`.
    pub fn vanishes_mod_det(&self, e: &JetElem) -> bool {
        let parts = e.collect_in(&JetVar::InvDet);
        let top = parts.keys().copied().max().unwrap_or(0);
        let det = self.det_x();
        let mut acc = JetElem::zero();
        for (k, c) in parts {
            acc = acc + c * det.pow_u(top - k);
        }
        acc.is_zero()
    }

    /// `det(X) * invdet - 1`.
    pub fn det_relation(&self) -> JetElem {
        &self.det_x() * &JetElem::var(JetVar::InvDet) - JetElem::one()
    }
}

/// Largest `|alpha|` among the variables of `e`.
pub fn jet_order(e: &JetElem) -> u32 {
    e.variables().iter().map(JetVar::order).max().unwrap_or(0)
}

/// Generators of an ideal of `S_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    pub generators: Vec<JetElem>,
    pub order: u32,
}

impl IdealGens {
    /// The order is the larger of `min_order` and the top jet order used.
    pub fn new(generators: Vec<JetElem>, min_order: u32) -> Self {
        let used = generators.iter().map(jet_order).max().unwrap_or(0);
        IdealGens {
            generators,
            order: used.max(min_order),
        }
    }

    /// The generators together with `det(X) invdet - 1`.
    pub fn full_generators(&self, ring: &JetRing) -> Vec<JetElem> {
        let mut out = self.generators.clone();
        out.push(ring.det_relation());
        out
    }
}

/// `pi_1(I)`: the generators followed by their nonzero first derivatives, one
/// derivation after another. The result lives in `S_(order+1)`.
pub fn prolong_ideal(ring: &JetRing, ideal: &IdealGens) -> Result<IdealGens, ProlongError> {
    let mut gens = ideal.generators.clone();
    for g in &ideal.generators {
        for k in 0..ring.n_derivs() {
            let d = ring.derive(k, g)?;
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ok(IdealGens {
        generators: gens,
        order: ideal.order + 1,
    })
}

/// Values of the jet variables in Q(q)(x).
pub type JetPoint = BTreeMap<JetVar, RatX>;

/// Evaluates `e` at the point. A missing `invdet` is filled in from `det X`.
pub fn eval_at(ring: &JetRing, e: &JetElem, point: &JetPoint) -> Result<RatX, ProlongError> {
    let r: Result<MPoly<(), RatX>, ProlongError> = e.eval_hom(
        |c| MPoly::constant(c.clone()),
        |v| {
            if let Some(val) = point.get(v) {
                return Ok(MPoly::constant(val.clone()));
            }
            if *v == JetVar::InvDet {
                let det = eval_at(ring, &ring.det_x(), point)?;
                let inv = det.inv().map_err(|_| ProlongError::SingularPoint)?;
                return Ok(MPoly::constant(inv));
            }
            Err(ProlongError::MissingVariable(v.to_string()))
        },
    );
    Ok(r?.as_constant().unwrap_or_else(RatX::zero))
}

/// Point-wise test of `pi_1(I_(k-1)) in I_k`: at a zero of `I_k`, every
/// generator of `pi_1(I_(k-1))` must vanish. Necessary, not sufficient.
pub fn kernel_condition_check(
    ring: &JetRing,
    lower: &IdealGens,
    upper: &IdealGens,
    point: &JetPoint,
) -> Result<bool, ProlongError> {
    for (index, g) in upper.generators.iter().enumerate() {
        if !eval_at(ring, g, point)?.is_zero() {
            return Err(ProlongError::NotAPoint { index });
        }
    }
    let prolonged = prolong_ideal(ring, lower)?;
    for g in &prolonged.generators {
        if !eval_at(ring, g, point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
