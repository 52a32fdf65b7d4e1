//! q-dispersion, q-shift equivalence and the orbit normal form
//! `a = atilde * f(qx)/f(x)`.
//!
//! Shift direction: `shift_equivalent(P, Q) = (n, c)` means `Q(x) = c P(x/q^n)`,
//! so the roots of `Q` are `q^n` times the roots of `P`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::qfield::{resultant_x, PolyX, QRat, RatX};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{0}: input must be nonzero")]
    ZeroInput(&'static str),
    #[error("polynomial is divisible by x; strip x-powers before computing the dispersion")]
    DivisibleByX,
    #[error("unsupported orbit configuration: {0}")]
    Unsupported(String),
}

/// The integers `n` with `gcd(P(x), Q(q^n x))` non-constant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dispersion {
    pub shifts: BTreeSet<i64>,
}

impl Dispersion {
    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn max(&self) -> Option<i64> {
        self.shifts.iter().next_back().copied()
    }

    pub fn contains(&self, n: i64) -> bool {
        self.shifts.contains(&n)
    }
}

/// All `n` with `r(q^n) = 0`.
///
/// A vanishing sum `sum r_i q^(n i)` must attain its minimal q-adic valuation
/// at least twice, so candidate exponents come from the lower Newton polygon
/// of the valuations `v_i`. Each candidate is then confirmed exactly.
pub fn q_power_roots(r: &PolyX) -> BTreeSet<i64> {
    let vals: Vec<(i64, i64)> = r
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    let mut out = BTreeSet::new();
    if vals.len() < 2 {
        return out;
    }
    let mut candidates = BTreeSet::new();
    for (a, &(i, vi)) in vals.iter().enumerate() {
        for &(j, vj) in &vals[a + 1..] {
            if (vi - vj) % (j - i) == 0 {
                candidates.insert((vi - vj) / (j - i));
            }
        }
    }
    for n in candidates {
        let min = vals.iter().map(|&(i, v)| v + n * i).min().unwrap();
        if vals.iter().filter(|&&(i, v)| v + n * i == min).count() < 2 {
            continue;
        }
        if r.eval(&QRat::q_pow(n)).is_zero() {
            out.insert(n);
        }
    }
    out
}

/// q-adic valuations (at `q = 0`) of the roots of `p` over the Puiseux field,
/// read off the lower Newton polygon of the coefficient valuations.
fn root_valuations(p: &PolyX) -> BTreeSet<Ratio<i64>> {
    let pts: Vec<(i64, i64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|v| (i as i64, v)))
        .collect();
    // lower hull by monotone chain
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| Ratio::new(w[0].1 - w[1].1, w[1].0 - w[0].0))
        .collect()
}

/// The q-dispersion set of `P` and `Q`.
///
/// If `P(b) = 0` and `Q(q^n b) = 0` then `n` is the difference of two root
/// valuations, so the candidates are finite and few. Each one is confirmed by
/// a gcd, which is the same as `Res_x(P(x), Q(q^n x)) = 0`, i.e. `q^n` being a
/// root of [`resultant_x`]. Interpolating that resultant in full is far slower
/// and is kept as a cross-check.
pub fn q_dispersion(p: &PolyX, q: &PolyX) -> Result<Dispersion, OrbitError> {
    if p.is_zero() || q.is_zero() {
        return Err(OrbitError::ZeroInput("q_dispersion"));
    }
    if p.x_valuation().unwrap() > 0 || q.x_valuation().unwrap() > 0 {
        return Err(OrbitError::DivisibleByX);
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Dispersion::default());
    }
    let (vp, vq) = (root_valuations(p), root_valuations(q));
    let mut shifts = BTreeSet::new();
    for b in &vp {
        for g in &vq {
            let n = g - b;
            if n.is_integer() && !shifts.contains(&n.to_integer()) {
                let n = n.to_integer();
                if !p.gcd(&q.sigma_pow(n)).is_constant() {
                    shifts.insert(n);
                }
            }
        }
    }
    Ok(Dispersion { shifts })
}

/// Dispersion read off the full auxiliary resultant; slow, for cross-checks.
pub fn q_dispersion_by_resultant(p: &PolyX, q: &PolyX) -> Result<Dispersion, OrbitError> {
    if p.is_zero() || q.is_zero() {
        return Err(OrbitError::ZeroInput("q_dispersion"));
    }
    if p.x_valuation().unwrap() > 0 || q.x_valuation().unwrap() > 0 {
        return Err(OrbitError::DivisibleByX);
    }
    if p.is_constant() || q.is_constant() {
        return Ok(Dispersion::default());
    }
    Ok(Dispersion {
        shifts: q_power_roots(&resultant_x(p, q)),
    })
}

/// Returns `(n, c)` with `Q(x) = c P(x/q^n)` when such a pair exists.
pub fn shift_equivalent(p: &PolyX, q: &PolyX) -> Option<(i64, QRat)> {
    if p.is_zero() || q.is_zero() || p.degree() != q.degree() {
        return None;
    }
    let nz: Vec<usize> = (0..=p.deg0()).filter(|&k| !p.coeff(k).is_zero()).collect();
    let i = nz[0];
    if q.coeff(i).is_zero() {
        return None;
    }
    let n = match nz.get(1) {
        None => 0,
        Some(&j) => {
            if q.coeff(j).is_zero() {
                return None;
            }
            // (Q_j/Q_i)/(P_j/P_i) = q^(-n (j - i))
            let ratio = (&q.coeff(j) * &p.coeff(i))
                .checked_div(&(&q.coeff(i) * &p.coeff(j)))
                .ok()?;
            let m = ratio.q_power_test().ok()??;
            let span = (j - i) as i64;
            if m % span != 0 {
                return None;
            }
            -m / span
        }
    };
    let c = (&q.coeff(i) * &QRat::q_pow(n * i as i64))
        .checked_div(&p.coeff(i))
        .ok()?;
    if p.sigma_pow(-n).scale(&c) == *q {
        Some((n, c))
    } else {
        None
    }
}

/// The orbit normal form of a rank-one coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReduction {
    pub a: RatX,
    pub atilde: RatX,
    pub f: RatX,
    pub mu: QRat,
    pub r: i64,
    /// Surviving orbit representatives with their exponents; monic and prime to `x`.
    pub factors: Vec<(PolyX, i64)>,
}

impl OrbitReduction {
    /// True when `atilde = mu * x^r`.
    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Re-checks `a = atilde * sigma_q(f) / f`.
    pub fn verify(&self) -> bool {
        let rhs = &self.atilde * &self.f.sigma_q().checked_div(&self.f).unwrap();
        rhs == self.a
    }
}

const REFINE_GUARD: usize = 10_000;

type Atoms = Vec<(PolyX, i64)>;

fn push_atom(atoms: &mut Atoms, p: PolyX, e: i64) {
    if e != 0 && !p.is_constant() {
        atoms.push((p.make_monic(), e));
    }
}

/// Pairwise gcd refinement: afterwards the atoms are pairwise coprime.
fn coprime_refine(atoms: &mut Atoms) -> bool {
    let mut changed = false;
    'outer: loop {
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                let g = atoms[i].0.gcd(&atoms[j].0);
                if g.is_constant() {
                    continue;
                }
                let (bj, ej) = atoms.remove(j);
                let (bi, ei) = atoms.remove(i);
                push_atom(atoms, bi.exact_div(&g), ei);
                push_atom(atoms, bj.exact_div(&g), ej);
                push_atom(atoms, g, ei + ej);
                changed = true;
                continue 'outer;
            }
        }
        return changed;
    }
}

/// Finds one pair of atoms sharing part of a q-orbit without being wholly
/// shift-equivalent, and splits it.
fn shift_split(atoms: &mut Atoms) -> Result<bool, OrbitError> {
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            let disp = q_dispersion(&atoms[i].0, &atoms[j].0)?;
            for &n in &disp.shifts {
                if i == j && n == 0 {
                    continue;
                }
                if i != j {
                    if let Some((m, _)) = shift_equivalent(&atoms[i].0, &atoms[j].0) {
                        if m == n {
                            continue;
                        }
                    }
                }
                let g = atoms[i].0.gcd(&atoms[j].0.sigma_pow(n));
                debug_assert!(!g.is_constant());
                if i == j {
                    let (b, e) = atoms.remove(i);
                    push_atom(atoms, b.exact_div(&g), e);
                    push_atom(atoms, g, e);
                } else {
                    let gj = g.sigma_pow(-n).make_monic();
                    let (bj, ej) = atoms.remove(j);
                    let (bi, ei) = atoms.remove(i);
                    push_atom(atoms, bi.exact_div(&g), ei);
                    push_atom(atoms, g, ei);
                    push_atom(atoms, bj.exact_div(&gj), ej);
                    push_atom(atoms, gj, ej);
                }
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn atom_key(p: &PolyX) -> (usize, String) {
    (p.deg0(), p.to_string())
}

/// Computes `a = atilde * sigma_q(f)/f` with every q-orbit of zeros and poles
/// of `atilde` carried by a single factor.
pub fn orbit_reduce(a: &RatX) -> Result<OrbitReduction, OrbitError> {
    if a.is_zero() {
        return Err(OrbitError::ZeroInput("orbit_reduce"));
    }
    let (n0, rn) = a.numer().strip_x();
    let (d0, rd) = a.denom().strip_x();
    let mut mu = n0
        .leading_coeff()
        .checked_div(&d0.leading_coeff())
        .expect("nonzero leading coefficient");
    let r = rn as i64 - rd as i64;

    let mut atoms: Atoms = Vec::new();
    push_atom(&mut atoms, n0, 1);
    push_atom(&mut atoms, d0, -1);

    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > REFINE_GUARD {
            return Err(OrbitError::Unsupported(
                "factor refinement did not stabilize".into(),
            ));
        }
        coprime_refine(&mut atoms);
        if !shift_split(&mut atoms)? {
            break;
        }
    }

    // group wholly shift-equivalent atoms into orbits
    atoms.sort_by_key(|(p, _)| atom_key(p));
    let mut groups: Vec<Vec<(PolyX, i64, i64)>> = Vec::new();
    for (b, e) in atoms {
        let hit = groups
            .iter()
            .position(|g| shift_equivalent(&g[0].0, &b).is_some());
        match hit {
            Some(k) => {
                let n = shift_equivalent(&groups[k][0].0, &b).unwrap().0;
                groups[k].push((b, e, n));
            }
            None => groups.push(vec![(b, e, 0)]),
        }
    }

    let mut f = RatX::one();
    let mut factors: Vec<(PolyX, i64)> = Vec::new();
    for group in groups {
        // representative: smallest shift, so every other member sits at n >= 0
        let rep = group
            .iter()
            .min_by(|x, y| x.2.cmp(&y.2).then_with(|| atom_key(&x.0).cmp(&atom_key(&y.0))))
            .unwrap()
            .0
            .clone();
        let mut total = 0i64;
        for (b, e, _) in &group {
            let (n, c) = shift_equivalent(&rep, b).expect("orbit member");
            debug_assert!(n >= 0);
            total += e;
            mu = &mu * &c.pow(*e).unwrap();
            if n > 0 {
                // rep(x/q^n) = rep(x) * F / sigma(F) with F = prod_{i=1..n} rep(x/q^i)
                let mut big_f = PolyX::one();
                for i in 1..=n {
                    big_f = &big_f * &rep.sigma_pow(-i);
                }
                f = &f * &RatX::from_poly(big_f).pow(-e).unwrap();
            }
        }
        if total != 0 {
            factors.push((rep, total));
        }
    }
    factors.sort_by_key(|(p, _)| atom_key(p));

    let mut atilde = RatX::from_qrat(mu.clone()) * RatX::x_pow(r);
    for (p, e) in &factors {
        atilde = &atilde * &RatX::from_poly(p.clone()).pow(*e).unwrap();
    }
    let lc = f.numer().leading_coeff();
    let f = f.scale(&lc.inv().unwrap());

    let red = OrbitReduction {
        a: a.clone(),
        atilde,
        f,
        mu,
        r,
        factors,
    };
    if !red.verify() {
        return Err(OrbitError::Unsupported(
            "reconstruction a = atilde * f(qx)/f(x) failed".into(),
        ));
    }
    let mut all = PolyX::one();
    for (p, _) in &red.factors {
        all = &all * p;
    }
    let disp = q_dispersion(&all, &all)?;
    if disp.shifts.iter().any(|&n| n != 0) {
        return Err(OrbitError::Unsupported(
            "a refined factor still meets its own q-orbit".into(),
        ));
    }
    Ok(red)
}
