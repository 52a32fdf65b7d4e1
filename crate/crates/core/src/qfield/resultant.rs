//! `Res_x(P(x), Q(yx))` by evaluation and interpolation.
//!
//! Clearing q-denominators puts the resultant in Q[q][y]. Specializing both `q`
//! and `y` to integers turns each sample into a Sylvester determinant over Q,
//! which avoids gcd-heavy arithmetic in Q(q). The samples are interpolated in
//! `q`, then in `y`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::polyx::PolyX;
use super::qpoly::QPoly;
use super::qrat::QRat;
use crate::ring::Ring;

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Writes `p = (sum c_i x^i) / d` with `c_i` in Z[q].
pub(super) fn clear_denominators(p: &PolyX) -> (Vec<QPoly>, QPoly) {
    let mut d = QPoly::one();
    for c in p.coeffs() {
        let g = d.gcd(c.denom());
        d = d.mul(&c.denom().exact_div(&g));
    }
    let cs: Vec<QPoly> = p
        .coeffs()
        .iter()
        .map(|c| c.numer().mul(&d.exact_div(c.denom())))
        .collect();
    let mut l = BigInt::one();
    for c in &cs {
        for (_, r) in c.terms() {
            l = l.lcm(r.denom());
        }
    }
    let l = BigRational::from_integer(l);
    (cs.iter().map(|c| c.scale(&l)).collect(), d.scale(&l))
}

/// Determinant over Z by fraction-free (Bareiss) elimination.
fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester resultant of `a` (degree `da`) and `b` (degree `db`), with
/// coefficient lists in ascending order and formal degrees taken from the lists.
fn sylvester(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..db {
        for (i, c) in a.iter().rev().enumerate() {
            m[r][r + i] = c.clone();
        }
    }
    for r in 0..da {
        for (i, c) in b.iter().rev().enumerate() {
            m[db + r][r + i] = c.clone();
        }
    }
    det(m)
}

/// Newton interpolation over Q; returns ascending coefficients.
pub(super) fn interpolate_q(nodes: &[BigRational], values: &[BigRational]) -> Vec<BigRational> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&nodes[i] - &nodes[i - level]);
        }
    }
    let mut result: Vec<BigRational> = vec![BigRational::zero()];
    for i in (0..n).rev() {
        // result = result * (t - nodes[i]) + dd[i]
        let mut next = vec![BigRational::zero(); result.len() + 1];
        for (k, c) in result.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &nodes[i];
        }
        next[0] += &dd[i];
        result = next;
    }
    result
}

/// Newton interpolation in `y` with Q[q] values at integer nodes.
fn interpolate_qpoly(nodes: &[BigRational], values: &[QPoly]) -> Vec<QPoly> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let inv = BigRational::one() / (&nodes[i] - &nodes[i - level]);
            dd[i] = dd[i].sub(&dd[i - 1]).scale(&inv);
        }
    }
    let mut result: Vec<QPoly> = vec![QPoly::zero()];
    for i in (0..n).rev() {
        let mut next = vec![QPoly::zero(); result.len() + 1];
        for (k, c) in result.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.scale(&nodes[i]));
        }
        next[0] = next[0].add(&dd[i]);
        result = next;
    }
    result
}

/// `Res_x(P(x), Q(y x))` as a polynomial in the auxiliary variable `y`.
///
/// It vanishes at `y0` exactly when `P(x)` and `Q(y0 x)` share a root
/// (for `y0 != 0`).
pub fn resultant_x(p: &PolyX, q: &PolyX) -> PolyX {
    if p.is_zero() || q.is_zero() {
        return PolyX::zero();
    }
    let (dp, dq) = (p.deg0(), q.deg0());
    let (pc, p_den) = clear_denominators(p);
    let (qc, q_den) = clear_denominators(q);
    let qdeg = |v: &[QPoly]| v.iter().filter_map(|c| c.degree()).max().unwrap_or(0) as usize;
    // homogeneous of degree dq in P's coefficients and dp in Q's
    let bound_q = dq * qdeg(&pc) + dp * qdeg(&qc);
    let bound_y = dp * dq;
    let tnodes: Vec<BigRational> = (1..=bound_q + 1).map(int).collect();
    let ynodes: Vec<BigRational> = (1..=bound_y + 1).map(int).collect();

    let mut per_y: Vec<QPoly> = Vec::with_capacity(ynodes.len());
    for y in &ynodes {
        let values: Vec<BigRational> = tnodes
            .iter()
            .map(|t| {
                let a: Vec<BigInt> = pc.iter().map(|c| c.eval(t).to_integer()).collect();
                let mut ypow = BigInt::one();
                let b: Vec<BigInt> = qc
                    .iter()
                    .map(|c| {
                        let v = c.eval(t).to_integer() * &ypow;
                        ypow *= y.to_integer();
                        v
                    })
                    .collect();
                BigRational::from_integer(sylvester(&a, &b))
            })
            .collect();
        per_y.push(QPoly::from_dense(&interpolate_q(&tnodes, &values)));
    }
    let ycoeffs = interpolate_qpoly(&ynodes, &per_y);
    // Res(P, Q) = Res(P~, Q~) / (p_den^dq q_den^dp)
    let scale = QRat::new(QPoly::one(), p_den.pow(dq as u32).mul(&q_den.pow(dp as u32)));
    PolyX::from_coeffs(
        ycoeffs
            .into_iter()
            .map(|c| &QRat::from_poly(c) * &scale)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::polyx::resultant_x_direct;

    #[test]
    fn agrees_with_direct_computation() {
        let p = &PolyX::linear(QRat::q()) * &PolyX::linear(QRat::from_ratio(1, 3));
        let q = &PolyX::linear(&QRat::q_pow(2) + &QRat::one()) * &PolyX::linear(QRat::q_pow(-1));
        assert_eq!(resultant_x(&p, &q), resultant_x_direct(&p, &q));
        let c = PolyX::constant(QRat::q());
        assert_eq!(resultant_x(&p, &c), resultant_x_direct(&p, &c));
    }

    #[test]
    fn sylvester_matches_euclid() {
        let a: Vec<BigInt> = [-2, -3, -1].map(BigInt::from).to_vec();
        let b: Vec<BigInt> = [5, 1].map(BigInt::from).to_vec();
        // Res(-(x^2 + 3x + 2), x + 5) = (-1)^2 * (-(25 - 15 + 2)) = -12
        assert_eq!(sylvester(&a, &b), BigInt::from(-12));
    }
}
