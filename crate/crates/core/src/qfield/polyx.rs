//! Dense polynomials in `x` over Q(q).

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::qpoly::{gcd_degree_mod_p, pow_mod, QPoly, SCREEN_PRIME};
use super::qrat::QRat;
use super::resultant::{clear_denominators, interpolate_q};
use crate::ring::{impl_ring_ops, Ring};

/// A polynomial `sum c_i x^i` with `c_i` in Q(q). The zero polynomial has no
/// coefficients and the last stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    coeffs: Vec<QRat>,
}

impl PolyX {
    pub fn from_coeffs(mut coeffs: Vec<QRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyX { coeffs }
    }

    pub fn constant(c: QRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(QRat::one(), 1)
    }

    pub fn monomial(c: QRat, k: usize) -> Self {
        if c.is_zero() {
            return Ring::zero();
        }
        let mut coeffs = vec![QRat::zero(); k];
        coeffs.push(c);
        PolyX { coeffs }
    }

    /// `x - root`.
    pub fn linear(root: QRat) -> Self {
        PolyX {
            coeffs: vec![-root, QRat::one()],
        }
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QRat {
        self.coeffs.get(i).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> QRat {
        self.coeffs.last().cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<QRat> {
        match self.coeffs.len() {
            0 => Some(QRat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Order of vanishing at `x = 0`; `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides out the largest power of `x`; returns the quotient and the power.
    pub fn strip_x(&self) -> (PolyX, usize) {
        match self.x_valuation() {
            None => (self.clone(), 0),
            Some(v) => (
                PolyX {
                    coeffs: self.coeffs[v..].to_vec(),
                },
                v,
            ),
        }
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![QRat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyX { coeffs }
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Ring::zero();
        }
        PolyX {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        if self.coeffs.is_empty() || self.is_monic() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Euclidean division over Q(q). Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("PolyX division by zero");
        let inv_lc = divisor.leading_coeff().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Ring::zero(), self.clone());
        }
        let mut quot = vec![QRat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + i] = &rem[k + i] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (PolyX::from_coeffs(quot), PolyX::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact PolyX division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (`gcd(0, 0) = 0`).
    ///
    /// A specialization of `q` first screens out coprime pairs; otherwise a
    /// primitive pseudo-remainder sequence runs over Q[q], which keeps
    /// coefficient growth in check far better than Euclid over Q(q).
    pub fn gcd(&self, other: &Self) -> Self {
        let (a, b) = if self.deg0() >= other.deg0() {
            (self, other)
        } else {
            (other, self)
        };
        if b.is_zero() {
            return a.make_monic();
        }
        if b.is_constant() {
            return Ring::one();
        }
        if coprime_mod_p(a, b) {
            return Ring::one();
        }
        gcd_by_evaluation(a, b)
    }

    /// Monic lcm; `lcm(p, 0) = 0`.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Ring::zero();
        }
        (&self.exact_div(&self.gcd(other)) * other).make_monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        if self.deg0() > 0 && other.deg0() > 0 && self.gcd(other).is_one() {
            return coprime_cofactors(self, other);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyX::one(), PolyX::zero());
        let (mut t0, mut t1) = (PolyX::zero(), PolyX::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s2;
            let t2 = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().inv().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        PolyX::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &QRat::from_int(i as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return PolyX::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).make_monic()
    }

    /// `P(s x)`.
    pub fn compose_scale(&self, s: &QRat) -> Self {
        let mut p = QRat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &p);
            p = &p * s;
        }
        PolyX::from_coeffs(out)
    }

    /// `sigma_q^n`: `P(x) -> P(q^n x)`.
    pub fn sigma_pow(&self, n: i64) -> Self {
        PolyX {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &QRat::q_pow(n * i as i64))
                .collect(),
        }
    }

    pub fn sigma_q(&self) -> Self {
        self.sigma_pow(1)
    }

    /// `x d/dx`.
    pub fn delta_x(&self) -> Self {
        PolyX::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &QRat::from_int(i as i64))
                .collect(),
        )
    }

    /// `q d/dq` on the coefficients.
    pub fn delta_q(&self) -> Self {
        PolyX::from_coeffs(self.coeffs.iter().map(|c| c.delta_q()).collect())
    }

    pub fn eval(&self, x: &QRat) -> QRat {
        let mut acc = QRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Writes the polynomial with `var` as variable name in the parseable syntax.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, c) = if c.is_negative_term() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let xpart = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                write!(f, "{}", c.to_atom_string())?;
            } else if c.is_one() {
                write!(f, "{xpart}")?;
            } else if c.numer().terms().len() > 1 && c.denom().is_one() {
                write!(f, "({c})*{xpart}")?;
            } else {
                write!(f, "{c}*{xpart}")?;
            }
        }
        Ok(())
    }

    /// Number of printed terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl Ring for PolyX {
    fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    fn one() -> Self {
        PolyX::constant(QRat::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        PolyX::from_coeffs(out)
    }

    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ring::zero();
        }
        let mut out = vec![QRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        PolyX::from_coeffs(out)
    }

    fn neg(&self) -> Self {
        PolyX {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl_ring_ops!(PolyX);

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "x")
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyX({self})")
    }
}

/// Sample values of `q` for the coprimality screen.
/// Image of `p` at `q = t` modulo the screening prime.
fn image_mod_p(p: &PolyX, t: u64) -> Option<Vec<u64>> {
    p.coeffs()
        .iter()
        .map(|c| {
            let n = c.numer().eval_mod_p(t)?;
            let d = c.denom().eval_mod_p(t)?;
            (d != 0).then(|| n * pow_mod(d, SCREEN_PRIME - 2) % SCREEN_PRIME)
        })
        .collect()
}

/// Coprimality proved by one specialization `q = t` modulo a prime: if both
/// leading coefficients survive, the image gcd has degree at least the true one.
fn coprime_mod_p(a: &PolyX, b: &PolyX) -> bool {
    [1_000_003u64, 77_777].iter().any(|&t| {
        let (Some(x), Some(y)) = (image_mod_p(a, t), image_mod_p(b, t)) else {
            return false;
        };
        if x.last() == Some(&0) || y.last() == Some(&0) {
            return false;
        }
        gcd_degree_mod_p(x, y) == 0
    })
}

/// Specialization points for `q`: 2, -2, 3, -3, ...; `0` and `+-1` are skipped
/// because q-shifts collapse there.
fn eval_points() -> impl Iterator<Item = BigRational> {
    (2i64..).flat_map(|k| [k, -k]).map(|k| BigRational::from_integer(k.into()))
}

fn specialize(p: &[QPoly], t: &BigRational) -> Vec<BigRational> {
    let mut v: Vec<BigRational> = p.iter().map(|c| c.eval(t)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn monic_gcd_over_q(mut x: Vec<BigRational>, mut y: Vec<BigRational>) -> Vec<BigRational> {
    while !y.is_empty() {
        let r = rational_rem(&x, &y);
        x = y;
        y = r;
    }
    let lc = x.last().unwrap().clone();
    x.iter().map(|c| c / &lc).collect()
}

/// Gcd over Q(q) by specializing `q` and interpolating.
///
/// With `A`, `B` primitive in Z[q][x] and `G` their primitive gcd, `lc(G)`
/// divides `gamma = gcd(lc A, lc B)`, so `gamma G / lc(G)` lies in Q[q][x] with
/// q-degree at most `deg gamma + min(deg_q A, deg_q B)`. At a point `t` where
/// both leading coefficients survive, `deg gcd(A(t), B(t)) >= deg G`, with
/// equality away from finitely many unlucky `t`. Points of minimal degree are
/// interpolated and the candidate is confirmed by exact division, so the
/// answer never rests on luck.
fn gcd_by_evaluation(a: &PolyX, b: &PolyX) -> PolyX {
    let ac = primitive(clear_denominators(a).0);
    let bc = primitive(clear_denominators(b).0);
    let (la, lb) = (ac.last().unwrap(), bc.last().unwrap());
    let gamma = la.gcd(lb);
    let qdeg = |v: &[QPoly]| v.iter().filter_map(|c| c.degree()).max().unwrap_or(0) as usize;
    let need = gamma.degree().unwrap() as usize + qdeg(&ac).min(qdeg(&bc)) + 1;
    let mut best: Option<usize> = None;
    let mut nodes: Vec<BigRational> = Vec::new();
    let mut values: Vec<Vec<BigRational>> = Vec::new();
    for t in eval_points() {
        if la.eval(&t).is_zero() || lb.eval(&t).is_zero() {
            continue;
        }
        let g = monic_gcd_over_q(specialize(&ac, &t), specialize(&bc, &t));
        let d = g.len() - 1;
        if d == 0 {
            return Ring::one();
        }
        match best {
            Some(m) if d > m => continue,
            Some(m) if d == m => {}
            _ => {
                best = Some(d);
                nodes.clear();
                values.clear();
            }
        }
        let gt = gamma.eval(&t);
        values.push(g.iter().map(|c| c * &gt).collect());
        nodes.push(t);
        if nodes.len() < need {
            continue;
        }
        let cand: Vec<QPoly> = (0..=d)
            .map(|i| {
                let vals: Vec<BigRational> = values.iter().map(|v| v[i].clone()).collect();
                QPoly::from_dense(&interpolate_q(&nodes, &vals))
            })
            .collect();
        let cand = primitive(cand);
        if pseudo_rem(&ac, &cand).is_empty() && pseudo_rem(&bc, &cand).is_empty() {
            return PolyX::from_coeffs(cand.into_iter().map(QRat::from_poly).collect()).make_monic();
        }
        // every point so far was unlucky; a lower degree will turn up
    }
    unreachable!("eval_points is infinite")
}

fn rational_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].clone();
    while rem.len() > db {
        let c = rem.last().unwrap() / &lc;
        let shift = rem.len() - 1 - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        rem.pop();
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

/// Divides out the gcd of the coefficients (over Q[q]) and trims zeros.
fn primitive(mut v: Vec<QPoly>) -> Vec<QPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let mut content = QPoly::zero();
    for c in &v {
        content = content.gcd(c);
        if content.is_one() {
            return v;
        }
    }
    if content.is_zero() {
        return v;
    }
    v.iter().map(|c| c.exact_div(&content)).collect()
}

/// `lc(b)^(deg a - deg b + 1) a mod b` over Q[q].
fn pseudo_rem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db {
        let top = rem.pop().unwrap();
        let shift = rem.len() - db;
        for c in rem.iter_mut() {
            *c = c.mul(lc);
        }
        for (i, bc) in b[..db].iter().enumerate() {
            rem[shift + i] = rem[shift + i].sub(&top.mul(bc));
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
    }
    rem
}

fn zp_trim(mut v: Vec<QPoly>) -> Vec<QPoly> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zp_mul(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![QPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    zp_trim(out)
}

/// `(c a - b) / div`, exactly.
fn zp_combine(a: &[QPoly], c: &QPoly, b: &[QPoly], div: &QPoly) -> Vec<QPoly> {
    let n = a.len().max(b.len());
    let zero = QPoly::zero();
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero).mul(c);
            x.sub(b.get(i).unwrap_or(&zero)).exact_div(div)
        })
        .collect();
    zp_trim(out)
}

/// `lc(b)^(deg a - deg b + 1) a = quot b + rem`, with no early exit, so the
/// power of `lc(b)` is exact. Needs `deg a >= deg b`.
fn pseudo_divrem(a: &[QPoly], b: &[QPoly]) -> (Vec<QPoly>, Vec<QPoly>) {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let lc = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![QPoly::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let top = rem.pop().unwrap();
        for c in quot.iter_mut().chain(rem.iter_mut()) {
            *c = c.mul(lc);
        }
        for (i, bc) in b[..db].iter().enumerate() {
            rem[k + i] = rem[k + i].sub(&top.mul(bc));
        }
        quot[k] = top;
    }
    (zp_trim(quot), zp_trim(rem))
}

/// Subresultant PRS with cofactors: `s A + t B = r` with `r` in Q[q]. Every
/// division is exact, so coefficients stay polynomial and no content gcds
/// are needed. `None` when `A` and `B` share a factor.
fn subresultant_cofactors(a: &[QPoly], b: &[QPoly]) -> Option<(QPoly, Vec<QPoly>, Vec<QPoly>)> {
    let (mut u, mut v) = (a.to_vec(), b.to_vec());
    let (mut su, mut sv) = (vec![QPoly::one()], Vec::new());
    let (mut tu, mut tv) = (Vec::new(), vec![QPoly::one()]);
    let (mut g, mut h) = (QPoly::one(), QPoly::one());
    while v.len() > 1 {
        let d = (u.len() - v.len()) as u32;
        let (quot, rem) = pseudo_divrem(&u, &v);
        if rem.is_empty() {
            return None;
        }
        let lcp = v.last().unwrap().pow(d + 1);
        let div = g.mul(&h.pow(d));
        let s_next = zp_combine(&su, &lcp, &zp_mul(&quot, &sv), &div);
        let t_next = zp_combine(&tu, &lcp, &zp_mul(&quot, &tv), &div);
        let r_next = zp_combine(&rem, &QPoly::one(), &[], &div);
        (u, v) = (v, r_next);
        (su, sv) = (sv, s_next);
        (tu, tv) = (tv, t_next);
        g = u.last().unwrap().clone();
        if d > 0 {
            h = g.pow(d).exact_div(&h.pow(d - 1));
        }
    }
    Some((v.pop()?, sv, tv))
}

/// `(1, s, t)` with `s a + t b = 1` for coprime non-constant `a`, `b`.
fn coprime_cofactors(a: &PolyX, b: &PolyX) -> (PolyX, PolyX, PolyX) {
    let (ac, da) = clear_denominators(a);
    let (bc, db) = clear_denominators(b);
    let (r, si, ti) = if ac.len() >= bc.len() {
        subresultant_cofactors(&ac, &bc)
    } else {
        subresultant_cofactors(&bc, &ac).map(|(r, t, s)| (r, s, t))
    }
    .expect("coprime inputs");
    // si ac + ti bc = r with a = ac / da and b = bc / db
    let lift = |v: Vec<QPoly>, den: &QPoly| {
        let scale = QRat::new(den.clone(), r.clone());
        PolyX::from_coeffs(v.into_iter().map(|c| &QRat::from_poly(c) * &scale).collect())
    };
    (PolyX::one(), lift(si, &da), lift(ti, &db))
}

/// Resultant of two polynomials over Q(q) (Euclidean remainder sequence).
pub fn resultant(a: &PolyX, b: &PolyX) -> QRat {
    if a.is_zero() || b.is_zero() {
        return QRat::zero();
    }
    let (da, db) = (a.deg0(), b.deg0());
    if db == 0 {
        return b.leading_coeff().pow(da as i64).unwrap();
    }
    if da == 0 {
        return a.leading_coeff().pow(db as i64).unwrap();
    }
    let sign = if (da * db) % 2 == 1 {
        QRat::from_int(-1)
    } else {
        QRat::one()
    };
    if da < db {
        return &sign * &resultant(b, a);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return QRat::zero();
    }
    let dr = r.deg0();
    let lcb = b.leading_coeff().pow((da - dr) as i64).unwrap();
    &(&sign * &lcb) * &resultant(b, &r)
}

/// Newton interpolation of the polynomial through `(nodes[i], values[i])`.
pub fn interpolate(nodes: &[QRat], values: &[QRat]) -> PolyX {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    let mut dd: Vec<QRat> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &nodes[i] - &nodes[i - level];
            dd[i] = num.checked_div(&den).expect("distinct interpolation nodes");
        }
    }
    let mut result = PolyX::zero();
    for i in (0..n).rev() {
        result = &(&result * &PolyX::linear(nodes[i].clone())) + &PolyX::constant(dd[i].clone());
    }
    result
}

/// `Res_x(P(x), Q(y x))` by exact resultants over Q(q) at integer values of
/// `y`. Slow; kept as an independent check of [`super::resultant_x`].
pub fn resultant_x_direct(p: &PolyX, q: &PolyX) -> PolyX {
    let bound = p.deg0() * q.deg0();
    let nodes: Vec<QRat> = (1..=bound as i64 + 1).map(QRat::from_int).collect();
    let values: Vec<QRat> = nodes
        .iter()
        .map(|y| resultant(p, &q.compose_scale(y)))
        .collect();
    interpolate(&nodes, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::resultant_x;

    fn lin(root: QRat) -> PolyX {
        PolyX::linear(root)
    }

    #[test]
    fn gcd_of_products_with_rational_roots() {
        let common = &lin(QRat::q()) * &lin(&QRat::from_int(2) * &QRat::q_pow(2));
        let a = &(&common * &lin(QRat::from_ratio(-1, 3))) * &lin(QRat::q_pow(-1));
        let b = &(&common * &lin(QRat::from_int(3))) * &common;
        assert_eq!(a.gcd(&b), common);
        // coprime pair, decided at the first specialization
        assert!(a.gcd(&lin(&QRat::q() + &QRat::one())).is_one());
        // q = 2 is a root of this leading coefficient and must be skipped
        let lc = &QRat::q() - &QRat::from_int(2);
        let bad = PolyX::from_coeffs(vec![QRat::one(), lc]);
        assert!(bad.gcd(&lin(QRat::one())).is_one());
    }

    #[test]
    fn gcd_finds_common_linear_factor() {
        let a = &lin(QRat::one()) * &lin(QRat::q());
        let b = &lin(QRat::q()) * &lin(QRat::from_int(3));
        assert_eq!(a.gcd(&b), lin(QRat::q()));
    }

    #[test]
    fn ext_gcd_identity() {
        let a = &lin(QRat::one()) * &lin(QRat::q());
        let b = lin(QRat::from_int(2));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, PolyX::one());
    }

    #[test]
    fn ext_gcd_cofactors_are_minimal() {
        let qp1 = &QRat::q() + &QRat::one();
        let a = PolyX::from_coeffs(vec![qp1.clone(), QRat::zero(), QRat::q_pow(-2), QRat::from_ratio(1, 3), &QRat::q() - &QRat::from_int(2)]);
        let cases = [
            (a.clone(), lin(QRat::q_pow(3))),
            (lin(qp1.clone()), a.clone()),
            (a.clone(), a.sigma_pow(1)),
            (&a * &lin(QRat::from_int(2)), &lin(QRat::q()).pow_u(2) * &lin(qp1)),
        ];
        for (a, b) in cases {
            let (g, s, t) = a.ext_gcd(&b);
            assert!(g.is_one());
            assert!(&(&s * &a) + &(&t * &b) == g, "{a} / {b}");
            assert!(s.deg0() < b.deg0() && t.deg0() < a.deg0());
        }
    }

    #[test]
    fn resultant_of_linears() {
        // Res(x - a, x - b) = a - b up to sign convention: Res(x-a, x-b) = (a - b)
        let r = resultant(&lin(QRat::from_int(2)), &lin(QRat::from_int(5)));
        assert_eq!(r, QRat::from_int(-3));
    }

    #[test]
    fn resultant_x_root_at_q_cubed() {
        let p = lin(QRat::one());
        let q = lin(QRat::q_pow(3));
        let r = resultant_x(&p, &q);
        assert!(r.eval(&QRat::q_pow(3)).is_zero());
        assert!(!r.eval(&QRat::q_pow(2)).is_zero());
    }

    #[test]
    fn resultant_x_identical_linear() {
        let p = lin(QRat::one());
        let r = resultant_x(&p, &p);
        assert!(r.eval(&QRat::one()).is_zero());
    }

    #[test]
    fn resultant_x_root_zero_vs_one_has_no_q_power_root() {
        // P = x, Q = x - 1: Res_x(x, y x - 1) = -1, never zero
        let r = resultant_x(&PolyX::x(), &lin(QRat::one()));
        for n in -6..=6 {
            assert!(!r.eval(&QRat::q_pow(n)).is_zero());
        }
    }

    #[test]
    fn display_round_shapes() {
        let p = &lin(QRat::one()) * &lin(QRat::q());
        assert_eq!(p.to_string(), "x^2 + (-q - 1)*x + q");
        let p = PolyX::linear(QRat::q_pow(-1));
        assert_eq!(p.to_string(), "x - 1/q");
    }
}
